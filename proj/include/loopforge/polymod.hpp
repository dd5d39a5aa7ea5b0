// Dense univariate polynomials over the prime field F_p, just enough for
// Euclidean GCDs: the singularity criteria reduce to whether the circulant's
// associated polynomial shares a zero with w^nu - 1 modulo p.
#pragma once

#include "loopforge/numeric.hpp"

#include <vector>

namespace loopforge {

struct PolyModP {
    Int p;                    // prime modulus
    std::vector<Int> coeffs;  // ascending degree, reduced mod p, no leading zeros
};

// Reduces mod p and strips leading zeros; validates primality of p.
PolyModP make_poly(const Int& p, const std::vector<Int>& coeffs);

// w^n - 1 over F_p.
PolyModP make_cyclotomic_span(const Int& p, long n);

// Degree; -1 for the zero polynomial.
long poly_degree(const PolyModP& f);

bool poly_is_zero(const PolyModP& f);

// Scales so the leading coefficient is 1; zero stays zero.
PolyModP poly_monic(const PolyModP& f);

// Remainder of f modulo g (g nonzero); moduli must match.
PolyModP poly_rem(const PolyModP& f, const PolyModP& g);

// Monic GCD by Euclid's algorithm; gcd(f, 0) = monic f, gcd(0, 0) = 0.
// Throws modulus_mismatch_error when the moduli differ.
PolyModP poly_gcd_fp(const PolyModP& f, const PolyModP& g);

}  // namespace loopforge
