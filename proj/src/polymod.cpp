#include "loopforge/polymod.hpp"

namespace loopforge {

namespace {

void strip(PolyModP& f) {
    while (!f.coeffs.empty() && f.coeffs.back() == 0) f.coeffs.pop_back();
}

Int inv_mod(const Int& a, const Int& p) {
    Int r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
        throw internal_inconsistency_error("inv_mod: element not invertible");
    return r;
}

}  // namespace

PolyModP make_poly(const Int& p, const std::vector<Int>& coeffs) {
    if (!is_probable_prime(p)) throw invalid_argument_error("make_poly: modulus must be prime");
    PolyModP f{p, {}};
    f.coeffs.reserve(coeffs.size());
    for (const Int& c : coeffs) f.coeffs.push_back(mod_nonneg(c, p));
    strip(f);
    return f;
}

PolyModP make_cyclotomic_span(const Int& p, long n) {
    if (n < 1) throw invalid_argument_error("make_cyclotomic_span: n must be positive");
    std::vector<Int> c(static_cast<size_t>(n) + 1, Int(0));
    c[0] = -1;
    c[static_cast<size_t>(n)] = 1;
    return make_poly(p, c);
}

long poly_degree(const PolyModP& f) { return static_cast<long>(f.coeffs.size()) - 1; }

bool poly_is_zero(const PolyModP& f) { return f.coeffs.empty(); }

PolyModP poly_monic(const PolyModP& f) {
    if (poly_is_zero(f)) return f;
    PolyModP g = f;
    const Int scale = inv_mod(g.coeffs.back(), g.p);
    for (Int& c : g.coeffs) c = mod_nonneg(c * scale, g.p);
    return g;
}

PolyModP poly_rem(const PolyModP& f, const PolyModP& g) {
    if (f.p != g.p) throw modulus_mismatch_error("poly_rem: moduli differ");
    if (poly_is_zero(g)) throw invalid_argument_error("poly_rem: division by zero polynomial");
    PolyModP r = f;
    const long dg = poly_degree(g);
    const Int lead_inv = inv_mod(g.coeffs.back(), g.p);
    while (poly_degree(r) >= dg) {
        const long shift = poly_degree(r) - dg;
        const Int q = mod_nonneg(r.coeffs.back() * lead_inv, r.p);
        for (long i = 0; i <= dg; ++i) {
            Int& c = r.coeffs[static_cast<size_t>(i + shift)];
            c = mod_nonneg(c - q * g.coeffs[static_cast<size_t>(i)], r.p);
        }
        strip(r);
    }
    return r;
}

PolyModP poly_gcd_fp(const PolyModP& f, const PolyModP& g) {
    if (f.p != g.p) throw modulus_mismatch_error("poly_gcd_fp: moduli differ");
    PolyModP a = f, b = g;
    while (!poly_is_zero(b)) {
        PolyModP r = poly_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(a);
}

}  // namespace loopforge
