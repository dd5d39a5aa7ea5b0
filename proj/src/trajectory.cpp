#include "loopforge/trajectory.hpp"

namespace loopforge {

Int step(const Gamma& gamma, const Int& n) {
    if (n < 1) throw invalid_argument_error("step: n must be positive");
    if (is_odd(n)) return 3 * n + gamma.value;
    return n / 2;
}

int char_bit(const Gamma& gamma, const Int& n, long i) {
    if (i < 0) throw invalid_argument_error("char_bit: index must be nonnegative");
    Int x = n;
    for (long j = 0; j < i; ++j) x = step(gamma, x);
    return is_odd(x) ? 1 : 0;
}

std::vector<Int> trajectory(const Gamma& gamma, const Int& n, long k) {
    if (k < 0) throw invalid_argument_error("trajectory: negative length");
    std::vector<Int> out;
    out.reserve(static_cast<size_t>(k));
    Int x = n;
    for (long j = 0; j < k; ++j) {
        out.push_back(x);
        if (j + 1 < k) x = step(gamma, x);
    }
    return out;
}

std::vector<int> characteristic_trajectory(const Gamma& gamma, const Int& n, long k) {
    if (k < 0) throw invalid_argument_error("characteristic_trajectory: negative length");
    std::vector<int> bits;
    bits.reserve(static_cast<size_t>(k));
    Int x = n;
    for (long j = 0; j < k; ++j) {
        bits.push_back(is_odd(x) ? 1 : 0);
        if (j + 1 < k) x = step(gamma, x);
    }
    return bits;
}

Int closed_form_iterate(const Gamma& gamma, const Int& n, long t) {
    if (n < 1) throw invalid_argument_error("closed_form_iterate: n must be positive");
    if (t < 0) throw invalid_argument_error("closed_form_iterate: t must be nonnegative");
    if (t == 0) return n;

    // Only the parity pattern feeds the formula; the value comes out of the
    // closed form alone.
    const std::vector<int> bits = characteristic_trajectory(gamma, n, t);
    std::vector<long> odd_at;
    for (long i = 0; i < t; ++i)
        if (bits[static_cast<size_t>(i)]) odd_at.push_back(i);

    const long nu = static_cast<long>(odd_at.size());
    const long rho = t - nu;
    if (nu == 0) {
        // Every iterate halved; n is divisible by 2^t.
        Int num = n;
        if (!divides(pow2(static_cast<unsigned long>(rho)), num))
            throw internal_inconsistency_error("closed_form_iterate: even-only pattern without divisibility");
        return num / pow2(static_cast<unsigned long>(rho));
    }

    const long m0 = odd_at[0];
    // weight = 3^{nu-1} + sum_r 3^{nu-1-r} 2^{m_1+...+m_r}, gap exponents
    // accumulated left to right.
    Int weight = pow3(static_cast<unsigned long>(nu - 1));
    long gap_sum = 0;
    for (long r = 1; r < nu; ++r) {
        gap_sum += odd_at[static_cast<size_t>(r)] - odd_at[static_cast<size_t>(r - 1)] - 1;
        weight += pow3(static_cast<unsigned long>(nu - 1 - r)) * pow2(static_cast<unsigned long>(gap_sum));
    }

    const Int numerator = pow3(static_cast<unsigned long>(nu)) * n +
                          gamma.value * pow2(static_cast<unsigned long>(m0)) * weight;
    const Int denom = pow2(static_cast<unsigned long>(rho));
    if (!divides(denom, numerator))
        throw internal_inconsistency_error("closed_form_iterate: 2^rho does not divide the numerator");
    return numerator / denom;
}

namespace {

struct StepBudget {
    const Gamma& gamma;
    const TrajectoryLimits& limits;
    long used = 0;
    CycleSearch::Miss miss = CycleSearch::Miss::none;

    // Applies the map once; returns false when a limit trips.
    bool advance(Int& x) {
        if (used >= limits.max_steps) {
            miss = CycleSearch::Miss::step_budget;
            return false;
        }
        x = step(gamma, x);
        ++used;
        if (limits.max_value != 0 && x > limits.max_value) {
            miss = CycleSearch::Miss::value_cap;
            return false;
        }
        return true;
    }
};

}  // namespace

CycleSearch detect_cycle(const Gamma& gamma, const Int& n, const TrajectoryLimits& limits) {
    if (n < 1) throw invalid_argument_error("detect_cycle: n must be positive");
    CycleSearch result;
    StepBudget budget{gamma, limits};

    // Phase 1 (Brent): find the cycle length lam.
    long power = 1, lam = 1;
    Int tortoise = n;
    Int hare = n;
    if (!budget.advance(hare)) {
        result.miss = budget.miss;
        return result;
    }
    while (tortoise != hare) {
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        if (!budget.advance(hare)) {
            result.miss = budget.miss;
            return result;
        }
        ++lam;
    }

    // Phase 2: walk two cursors lam apart; they meet at the cycle entry.
    tortoise = n;
    hare = n;
    for (long i = 0; i < lam; ++i) {
        if (!budget.advance(hare)) {
            result.miss = budget.miss;
            return result;
        }
    }
    while (tortoise != hare) {
        if (!budget.advance(tortoise) || !budget.advance(hare)) {
            result.miss = budget.miss;
            return result;
        }
    }

    result.found = true;
    result.entry = tortoise;
    result.length = lam;
    return result;
}

}  // namespace loopforge
