// The circulant companion of a loop: weighted run-length exponents
// a_i = sum_k k*m_{(i+k-2 mod nu)+1}, the entries z_i = 2^{a_i/nu} carried
// exactly in Z[s]/(s^nu - 2), the determinant correspondence |det M| =
// |det R|, ranks of circulants over Q and F_p through polynomial GCDs, and
// the modular singularity criteria for det M.
#pragma once

#include "loopforge/loop.hpp"
#include "loopforge/polymod.hpp"
#include "loopforge/radical.hpp"

namespace loopforge {

struct ZProfile {
    long nu = 0;
    std::vector<long> a;  // a[i] is the exponent of z_{i+1}: z = 2^{a/nu}
    bool integral = false;  // every a[i] divisible by nu
    std::vector<Int> z;     // populated exactly when integral
};

ZProfile z_profile(const IntegralLoop& loop);

// General circulant: row i is the first row cyclically shifted right i times.
IntMatrix circulant_matrix(const std::vector<Int>& first_row);

// R = sum_j z_j P^{j-1} over the radical ring (entry (i,j) carries
// s^{a_{(j-i mod nu)+1}}), exact whether or not the profile is integral.
RadicalMatrix build_R(const ZProfile& zp);

// Integer circulant with first row z; requires an integral profile.
IntMatrix build_R_integer(const ZProfile& zp);

// prod_{i<j} (x_j - x_i).
Rat vandermonde_det(const std::vector<Rat>& xs);

// det of the integer circulant with first row z as the resultant
// Res(w^nu - 1, f) with f(w) = z_1 + z_2 w + ... + z_nu w^{nu-1}, evaluated
// as an exact Sylvester determinant (no complex roots of unity ever appear).
Int circulant_det_resultant(const std::vector<Int>& z);

struct DetsMatch {
    Int det_m;
    RadicalElement det_r_radical;
    bool radical_integral = false;  // s^1..s^{nu-1} coefficients all vanish
    Int det_r;                      // constant term of the reduction
    bool match = false;             // |det_m| == |det_r|
};

// det M against the circulant determinant computed in the radical ring.
DetsMatch dets_match(const IntegralLoop& loop);

// Rank of the circulant with first row z: nu - deg gcd(f, w^nu - 1), over Q
// or over F_p.  The modular variant requires p prime with p not dividing nu.
long circulant_rank(const std::vector<Int>& z);
long circulant_rank(const std::vector<Int>& z, const Int& p);

// True iff p generates the full multiplicative group mod nu (order nu - 1).
// Both arguments must be prime and distinct.
bool primitive_root_check(const Int& p, const Int& nu);

// Shared verdict shape for the three modular singularity checks.  kind is the
// theorem's own voice; consistent records whether the exact determinant
// agrees (always true for hypothesis_not_met).
struct TheoremVerdict {
    Int p;
    enum class Kind { nonsingular_mod_p, singular_mod_p, hypothesis_not_met } kind =
        Kind::hypothesis_not_met;
    std::string reason;      // filled for hypothesis_not_met
    bool consistent = true;
};

// For every prime p | 2^rho - 3^nu: screens nu prime, integral z, p != nu,
// and the primitive-root condition; where all hold, applies the criterion
//   p does not divide det M  <=>  p does not divide sum(z) and some pair
//   z_i != z_j (mod p),
// and cross-checks it against det_exact(M) mod p.
std::vector<TheoremVerdict> theorem_x_check(const IntegralLoop& loop);

// Prime-power hypothesis check: with a, b, c from the divisibility profile,
// a > 0 and c > b - a force det M == 0 (mod p); the boundary c == b - a is
// reported as the exception case, not applied.
TheoremVerdict mod_gamma_prime_check(const IntegralLoop& loop, const Int& p);

// When 2^rho - 3^nu is prime and gamma divides every loop-vector entry,
// det M == 0 (mod 2^rho - 3^nu).
TheoremVerdict prop_mod_gamma_check(const IntegralLoop& loop);

}  // namespace loopforge
