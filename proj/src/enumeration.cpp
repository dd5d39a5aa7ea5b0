#include "loopforge/enumeration.hpp"

#include <algorithm>
#include <future>
#include <map>

namespace loopforge {

// ----- compositions -----

namespace {

void check_composition_args(long rho, long nu) {
    if (nu < 1) throw invalid_argument_error("compositions: nu must be positive");
    if (rho < 1) throw invalid_argument_error("compositions: rho must be positive");
}

}  // namespace

CompositionRange::CompositionRange(long rho, long nu) : rho_(rho), nu_(nu) {
    check_composition_args(rho, nu);
}

CompositionRange::iterator::iterator(long rho, long nu) : done_(rho < nu) {
    if (done_) return;  // no composition fits nu positive parts
    current_.rho = rho;
    current_.nu = nu;
    current_.parts.assign(static_cast<size_t>(nu), 1);
    current_.parts.back() = rho - nu + 1;
}

CompositionRange::iterator& CompositionRange::iterator::operator++() {
    auto& p = current_.parts;
    const long nu = current_.nu;
    // Rightmost position whose suffix has slack can absorb a +1; the suffix
    // then resets to its lexicographic minimum (ones, remainder at the end).
    long j = nu - 2;
    long suffix = nu >= 1 ? p[static_cast<size_t>(nu - 1)] : 0;
    while (j >= 0 && suffix == nu - 1 - j) {
        suffix += p[static_cast<size_t>(j)];
        --j;
    }
    if (j < 0) {
        done_ = true;
        return *this;
    }
    p[static_cast<size_t>(j)] += 1;
    const long slots = nu - 1 - j;
    for (long i = j + 1; i < nu - 1; ++i) p[static_cast<size_t>(i)] = 1;
    p[static_cast<size_t>(nu - 1)] = suffix - slots;
    return *this;
}

std::vector<Composition> compositions(long rho, long nu) {
    std::vector<Composition> out;
    for (const Composition& c : CompositionRange(rho, nu)) out.push_back(c);
    return out;
}

Int composition_count(long rho, long nu) {
    check_composition_args(rho, nu);
    return binomial(static_cast<unsigned long>(rho - 1), static_cast<unsigned long>(nu - 1));
}

// ----- loop search -----

std::vector<IntegralLoop> search_loops(long rho, long nu, const std::optional<Int>& gamma,
                                       int jobs) {
    check_composition_args(rho, nu);
    const Int q = pow2(static_cast<unsigned long>(rho)) - pow3(static_cast<unsigned long>(nu));
    if (q <= 0) throw invalid_argument_error("search_loops: 2^rho must exceed 3^nu");
    const Gamma g(gamma.value_or(q));

    const std::vector<Composition> comps = compositions(rho, nu);
    const size_t total = comps.size();
    const size_t workers = std::clamp<size_t>(jobs < 1 ? 1 : static_cast<size_t>(jobs), 1, 64);

    auto run_slice = [&](size_t lo, size_t hi) {
        std::vector<IntegralLoop> found;
        for (size_t i = lo; i < hi; ++i) {
            try {
                found.push_back(loop_from_m(g, comps[i].parts));
            } catch (const not_a_cycle_error&) {
                // composition not realized; skip
            }
        }
        return found;
    };

    if (workers == 1 || total < 2) return run_slice(0, total);

    // Contiguous chunks concatenated in order keep the output independent of
    // the worker count.
    const size_t chunk = (total + workers - 1) / workers;
    std::vector<std::future<std::vector<IntegralLoop>>> futures;
    for (size_t lo = 0; lo < total; lo += chunk)
        futures.push_back(std::async(std::launch::async, run_slice, lo, std::min(lo + chunk, total)));
    std::vector<IntegralLoop> out;
    for (auto& f : futures) {
        std::vector<IntegralLoop> part = f.get();
        out.insert(out.end(), std::make_move_iterator(part.begin()),
                   std::make_move_iterator(part.end()));
    }
    return out;
}

std::vector<std::vector<size_t>> rotation_classes(const std::vector<IntegralLoop>& loops) {
    // Key: gamma plus the lexicographically smallest rotation of m.
    std::map<std::pair<Int, std::vector<long>>, std::vector<size_t>> buckets;
    for (size_t i = 0; i < loops.size(); ++i) {
        const std::vector<long>& m = loops[i].m;
        std::vector<long> best = m;
        std::vector<long> rot = m;
        for (size_t r = 1; r < m.size(); ++r) {
            std::rotate(rot.begin(), rot.begin() + 1, rot.end());
            if (rot < best) best = rot;
        }
        buckets[{loops[i].gamma, best}].push_back(i);
    }
    std::vector<std::vector<size_t>> out;
    out.reserve(buckets.size());
    for (auto& [key, idx] : buckets) out.push_back(std::move(idx));
    return out;
}

// ----- counting -----

Int count_F(long n) {
    if (n < 1) throw invalid_argument_error("count_F: n must be positive");
    Int acc = 0;
    for (long d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        acc += binomial(static_cast<unsigned long>(2 * d - 1), static_cast<unsigned long>(d)) *
               euler_phi(Int(n / d));
    }
    return exact_div(acc, Int(n));
}

namespace {

void brute_rec(long n, long pos, long remaining, long weight_mod, Int& count) {
    if (pos == n) {
        // last coordinate forced; its weight n*remaining is 0 mod n
        if (weight_mod == 0) ++count;
        return;
    }
    for (long x = 0; x <= remaining; ++x)
        brute_rec(n, pos + 1, remaining - x, (weight_mod + pos * x) % n, count);
}

}  // namespace

Int count_F_brute(long n) {
    if (n < 1) throw invalid_argument_error("count_F_brute: n must be positive");
    if (n > 14) throw invalid_argument_error("count_F_brute: oracle capped at n = 14");
    Int count = 0;
    brute_rec(n, 1, n, 0, count);
    return count;
}

// ----- exponent correspondence -----

RatMatrix exponent_matrix(long n) {
    if (n < 1) throw invalid_argument_error("exponent_matrix: n must be positive");
    RatMatrix t(n, n);
    for (long i = 1; i <= n; ++i)
        for (long j = 1; j <= n; ++j) {
            Rat e(((i - j + 1) % n + n) % n, n);
            e.canonicalize();  // mpq_class(a, b) does not reduce on its own
            t(i - 1, j - 1) = e;
        }
    return t;
}

RatMatrix exponent_inverse_matrix(long n) {
    if (n < 2) throw invalid_argument_error("exponent_inverse_matrix: n must be at least 2");
    const Int half = Int(n) * (n - 1) / 2;
    std::vector<Rat> first(static_cast<size_t>(n), Rat(1));
    first[static_cast<size_t>(n - 2)] = Rat(1 + half);
    first[static_cast<size_t>(n - 1)] = Rat(1 - half);
    RatMatrix t(n, n);
    const Rat scale(1, half);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            t(i, j) = first[static_cast<size_t>(((j - i) % n + n) % n)] * scale;
    return t;
}

std::vector<Rat> exponent_map(const std::vector<Int>& y) {
    const long n = static_cast<long>(y.size());
    if (n < 1) throw invalid_argument_error("exponent_map: empty vector");
    Int sum = 0;
    for (const Int& v : y) sum += v;
    if (sum != n)
        throw invalid_argument_error("exponent_map: sum-mismatch, entries must sum to n");
    if (n == 1) return {Rat(0)};
    const RatMatrix t = exponent_matrix(n);
    std::vector<Rat> w(static_cast<size_t>(n), Rat(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) w[static_cast<size_t>(i)] += t(i, j) * Rat(y[static_cast<size_t>(j)]);
    return w;
}

std::vector<Rat> exponent_map_inverse(const std::vector<Rat>& w) {
    const long n = static_cast<long>(w.size());
    if (n < 1) throw invalid_argument_error("exponent_map_inverse: empty vector");
    if (n == 1) {
        if (w[0] != 0) throw invalid_argument_error("exponent_map_inverse: n=1 expects w=(0)");
        return {Rat(1)};
    }
    const RatMatrix t = exponent_inverse_matrix(n);
    std::vector<Rat> y(static_cast<size_t>(n), Rat(0));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) y[static_cast<size_t>(i)] += t(i, j) * w[static_cast<size_t>(j)];
    return y;
}

// ----- ratio bound -----

RatioBound ratio_bound_check(long rho, long nu) {
    if (rho < 1 || nu < 1) throw invalid_argument_error("ratio_bound_check: counts must be positive");
    if (pow2(static_cast<unsigned long>(rho)) <= pow3(static_cast<unsigned long>(nu)))
        return RatioBound::below_log_bound;
    if (rho > 2 * nu) return RatioBound::above_two;
    return RatioBound::admissible;
}

}  // namespace loopforge
