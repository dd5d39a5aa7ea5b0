// Forward orbit machinery for the map n -> 3n + gamma (n odd), n -> n/2
// (n even), with gamma a fixed positive odd integer: stepping, parity
// (characteristic) sequences, a closed-form evaluation of the t-th iterate
// driven only by the first t parity bits, and cycle detection.
#pragma once

#include "loopforge/numeric.hpp"

#include <vector>

namespace loopforge {

// The odd parameter of the map.  Constructing one validates it once so the
// hot paths never re-check.
struct Gamma {
    Int value;
    explicit Gamma(Int v) : value(std::move(v)) {
        if (value < 1 || !is_odd(value))
            throw invalid_argument_error("gamma must be a positive odd integer");
    }
};

struct TrajectoryLimits {
    long max_steps = 1000000;
    Int max_value = pow2(512);  // 0 disables the cap
};

// ----- stepping -----

// One application of the map; n must be positive.
Int step(const Gamma& gamma, const Int& n);

// Parity of the i-th iterate (i = 0 is n itself): 1 odd, 0 even.
int char_bit(const Gamma& gamma, const Int& n, long i);

// The first k iterates, starting with n itself.
std::vector<Int> trajectory(const Gamma& gamma, const Int& n, long k);

// Parities of the first k iterates.
std::vector<int> characteristic_trajectory(const Gamma& gamma, const Int& n, long k);

// ----- closed form -----

// Evaluates the t-th iterate from the parity pattern of the first t steps:
// with nu odd iterates among them at positions i_0 < ... < i_{nu-1},
// leading even run m_0 = i_0 and gaps m_r = i_r - i_{r-1} - 1,
//
//   C^t(n) = (3^nu n + gamma 2^{m_0} (3^{nu-1}
//             + sum_{r=1}^{nu-1} 3^{nu-1-r} 2^{m_1+...+m_r})) / 2^{rho},
//
// where rho = t - nu counts the even iterates.  With nu = 0 this degenerates
// to n / 2^t.  The division is exact for genuine trajectories; a remainder
// signals corrupted input and raises internal_inconsistency_error.
Int closed_form_iterate(const Gamma& gamma, const Int& n, long t);

// ----- cycle detection -----

struct CycleSearch {
    bool found = false;
    Int entry;        // first iterate that lies on the cycle
    long length = 0;  // minimal N with C^N(entry) == entry
    enum class Miss { none, step_budget, value_cap } miss = Miss::none;
};

// Brent's algorithm; every map application counts against limits.max_steps
// and every produced value against limits.max_value (when nonzero).
CycleSearch detect_cycle(const Gamma& gamma, const Int& n,
                         const TrajectoryLimits& limits = {});

}  // namespace loopforge
