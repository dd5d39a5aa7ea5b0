// Exact dense decompositions over GMP scalars: fraction-free Bareiss
// determinants, rational Gauss-Jordan inversion, ranks over Q and F_p, and a
// division-free determinant template for matrices over commutative rings
// without division (memoized Laplace expansion on column subsets).
#pragma once

#include "loopforge/matrix.hpp"

#include <vector>

namespace loopforge {

// Exact determinant by Bareiss elimination (all divisions exact).
Int det_exact(const IntMatrix& a);
Rat det_exact(const RatMatrix& a);

// Exact inverse by Gauss-Jordan; throws singular_matrix_error when det = 0
// and dimension_mismatch_error when not square.
RatMatrix inverse_exact(const RatMatrix& a);
inline RatMatrix inverse_exact(const IntMatrix& a) { return inverse_exact(to_rational(a)); }

// Rank over Q.
long rank_exact(const RatMatrix& a);
inline long rank_exact(const IntMatrix& a) { return rank_exact(to_rational(a)); }

// Rank of (a mod p) over the field F_p; p must be prime.
long rank_mod_p(const IntMatrix& a, const Int& p);

// Determinant by Laplace expansion memoized on column subsets; never divides,
// so it works over any commutative ring scalar (default-constructible zero,
// +=, *, unary -).  Dimension capped at 20 (the memo table is 2^n entries).
template <typename Scalar>
Scalar det_division_free(const DenseMatrix<Scalar>& a) {
    if (a.rows() != a.cols())
        throw dimension_mismatch_error("det_division_free: matrix must be square");
    const int n = static_cast<int>(a.rows());
    if (n == 0) throw dimension_mismatch_error("det_division_free: empty matrix");
    if (n > 20) throw invalid_argument_error("det_division_free: dimension capped at 20");

    // memo[mask] = det of the minor on rows (n - popcount(mask))..n-1 and the
    // column set mask, filled bottom-up by popcount.
    const size_t full = (size_t{1} << n) - 1;
    std::vector<Scalar> memo(full + 1);
    std::vector<char> ready(full + 1, 0);
    memo[0] = Scalar();  // empty minor; never multiplied in (n >= 1)

    struct Frame {
        size_t mask;
        bool expanded;
    };
    std::vector<Frame> stack{{full, false}};
    while (!stack.empty()) {
        auto [mask, expanded] = stack.back();
        stack.pop_back();
        if (ready[mask]) continue;
        const int k = __builtin_popcountll(mask);
        const int row = n - k;
        if (k == 1) {
            const int col = __builtin_ctzll(mask);
            memo[mask] = a(row, col);
            ready[mask] = 1;
            continue;
        }
        if (!expanded) {
            stack.push_back({mask, true});
            for (size_t rest = mask; rest;) {
                const int col = __builtin_ctzll(rest);
                rest &= rest - 1;
                stack.push_back({mask ^ (size_t{1} << col), false});
            }
            continue;
        }
        Scalar acc;
        int sign = 1;
        for (size_t rest = mask; rest;) {
            const int col = __builtin_ctzll(rest);
            rest &= rest - 1;
            const Scalar term = a(row, col) * memo[mask ^ (size_t{1} << col)];
            if (sign > 0)
                acc += term;
            else
                acc += -term;
            sign = -sign;
        }
        memo[mask] = acc;
        ready[mask] = 1;
    }
    return memo[full];
}

}  // namespace loopforge
