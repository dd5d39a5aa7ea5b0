// Exhaustive search for loops over run-length compositions (stars and bars),
// rotation-class grouping, the closed-form count of admissible parity
// patterns with its brute-force oracle, the exponent-correspondence maps
// between the two determinant expansions, and the gamma = 1 ratio bound.
#pragma once

#include "loopforge/loop.hpp"
#include "loopforge/matrix.hpp"

#include <iterator>
#include <optional>

namespace loopforge {

struct Composition {
    long rho = 0, nu = 0;
    std::vector<long> parts;  // nu positive entries summing to rho
};

// Lazy lexicographic stream of all positive compositions of rho into nu
// parts; exactly C(rho-1, nu-1) items.
class CompositionRange {
public:
    CompositionRange(long rho, long nu);

    class iterator {
    public:
        using iterator_category = std::input_iterator_tag;
        using value_type = Composition;
        using difference_type = std::ptrdiff_t;
        using pointer = const Composition*;
        using reference = const Composition&;

        iterator() = default;  // end
        iterator(long rho, long nu);
        reference operator*() const { return current_; }
        pointer operator->() const { return &current_; }
        iterator& operator++();
        friend bool operator==(const iterator& a, const iterator& b) {
            return a.done_ == b.done_ && (a.done_ || a.current_.parts == b.current_.parts);
        }
        friend bool operator!=(const iterator& a, const iterator& b) { return !(a == b); }

    private:
        Composition current_;
        bool done_ = true;
    };

    iterator begin() const { return {rho_, nu_}; }
    iterator end() const { return {}; }

private:
    long rho_, nu_;
};

// Materialized lexicographic list.
std::vector<Composition> compositions(long rho, long nu);

// C(rho-1, nu-1).
Int composition_count(long rho, long nu);

// One loop per realizable composition, anchored at the start value the
// closed-form formula yields (rotations stay distinct records; group with
// rotation_classes).  gamma defaults to 2^rho - 3^nu, which makes every
// formula value an odd integer; an explicit gamma keeps only compositions
// whose formula value is a positive integer whose orbit realizes them.
// jobs > 1 partitions the composition stream; output is identical for any
// job count.
std::vector<IntegralLoop> search_loops(long rho, long nu,
                                       const std::optional<Int>& gamma = {},
                                       int jobs = 1);

// Groups loops whose run-length vectors are cyclic rotations of one another;
// returns index sets into the input, ordered by the smallest rotation key.
std::vector<std::vector<size_t>> rotation_classes(const std::vector<IntegralLoop>& loops);

// Number of length-n parity patterns (x_1..x_n >= 0, sum = n) whose weighted
// sum is 0 mod n: closed form (1/n) sum_{d|n} C(2d-1, d) phi(n/d), and the
// brute-force tuple enumeration it must match.
Int count_F(long n);
Int count_F_brute(long n);

// The (1/n)-scaled circulant exponent map and its inverse: entry (i,j) of
// the forward matrix is ((i-j+1) mod n)/n.  Forward requires sum(y) = n
// (sum-mismatch otherwise); the round trip is the identity.  n = 1 is the
// degenerate bijection y=(1) <-> w=(0).
std::vector<Rat> exponent_map(const std::vector<Int>& y);
std::vector<Rat> exponent_map_inverse(const std::vector<Rat>& w);

// The underlying matrices, exposed for direct verification; the inverse is
// the explicit circulant construction (ones then (2 +- n(n-1))/2 in the last
// two columns, scaled by 2/(n(n-1))), not a numeric inversion.  n >= 2.
RatMatrix exponent_matrix(long n);
RatMatrix exponent_inverse_matrix(long n);

enum class RatioBound { admissible, below_log_bound, above_two };

// Classifies rho/nu against (log2(3), 2] by exact integer comparisons:
// 2^rho <= 3^nu is below the lower bound, rho > 2 nu is above two.
RatioBound ratio_bound_check(long rho, long nu);

}  // namespace loopforge
