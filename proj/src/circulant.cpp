#include "loopforge/circulant.hpp"

#include "loopforge/exact_linalg.hpp"
#include "loopforge/loop_matrices.hpp"

namespace loopforge {

namespace {

// Minimal rational-coefficient polynomial Euclid for ranks over Q.
using RatPoly = std::vector<Rat>;  // ascending degree, no leading zeros

void strip(RatPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

long degree(const RatPoly& f) { return static_cast<long>(f.size()) - 1; }

RatPoly rem(RatPoly f, const RatPoly& g) {
    const long dg = degree(g);
    while (degree(f) >= dg) {
        const Rat q = f.back() / g.back();
        const long shift = degree(f) - dg;
        for (long i = 0; i <= dg; ++i)
            f[static_cast<size_t>(i + shift)] -= q * g[static_cast<size_t>(i)];
        strip(f);
    }
    return f;
}

RatPoly gcd_poly(RatPoly a, RatPoly b) {
    while (!b.empty()) {
        RatPoly r = rem(std::move(a), b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

}  // namespace

ZProfile z_profile(const IntegralLoop& loop) {
    const long nu = loop.odd_count;
    ZProfile zp;
    zp.nu = nu;
    zp.a.resize(static_cast<size_t>(nu), 0);
    for (long i = 0; i < nu; ++i) {
        long acc = 0;
        for (long k = 1; k < nu; ++k)
            acc += k * loop.m[static_cast<size_t>((i + k - 1) % nu)];
        zp.a[static_cast<size_t>(i)] = acc;
    }
    zp.integral = true;
    for (long ai : zp.a)
        if (ai % nu != 0) zp.integral = false;
    if (zp.integral) {
        zp.z.reserve(static_cast<size_t>(nu));
        for (long ai : zp.a) zp.z.push_back(pow2(static_cast<unsigned long>(ai / nu)));
    }
    return zp;
}

IntMatrix circulant_matrix(const std::vector<Int>& first_row) {
    const long n = static_cast<long>(first_row.size());
    if (n == 0) throw invalid_argument_error("circulant_matrix: empty first row");
    IntMatrix c(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) c(i, j) = first_row[static_cast<size_t>(((j - i) % n + n) % n)];
    return c;
}

RadicalMatrix build_R(const ZProfile& zp) {
    const long nu = zp.nu;
    if (nu < 1) throw invalid_argument_error("build_R: empty profile");
    RadicalMatrix r(nu, nu);
    for (long i = 0; i < nu; ++i)
        for (long j = 0; j < nu; ++j)
            r(i, j) = RadicalElement::s_power(
                nu, zp.a[static_cast<size_t>(((j - i) % nu + nu) % nu)]);
    return r;
}

IntMatrix build_R_integer(const ZProfile& zp) {
    if (!zp.integral) throw invalid_argument_error("build_R_integer: profile is not integral");
    return circulant_matrix(zp.z);
}

Rat vandermonde_det(const std::vector<Rat>& xs) {
    Rat d = 1;
    const long n = static_cast<long>(xs.size());
    for (long i = 0; i < n; ++i)
        for (long j = i + 1; j < n; ++j)
            d *= xs[static_cast<size_t>(j)] - xs[static_cast<size_t>(i)];
    return d;
}

Int circulant_det_resultant(const std::vector<Int>& z) {
    const long nu = static_cast<long>(z.size());
    if (nu == 0) throw invalid_argument_error("circulant_det_resultant: empty z");
    if (nu == 1) return z[0];
    // f(w) = z_1 + ... + z_nu w^{nu-1}; strip leading zeros first.
    std::vector<Int> f = z;
    while (!f.empty() && f.back() == 0) f.pop_back();
    if (f.empty()) return 0;
    const long df = static_cast<long>(f.size()) - 1;
    if (df == 0) return pow_int(f[0], static_cast<unsigned long>(nu));
    // Sylvester matrix of g = w^nu - 1 (monic) and f: Res(g, f) = prod f(zeta)
    // over the nu-th roots of unity, which is exactly the circulant det.
    const long dim = nu + df;
    IntMatrix s = IntMatrix::Zero(dim, dim);
    for (long r = 0; r < df; ++r) {  // rows of g's coefficients, descending
        s(r, r) = 1;
        s(r, r + nu) = -1;
    }
    for (long r = 0; r < nu; ++r)
        for (long i = 0; i <= df; ++i) s(df + r, r + i) = f[static_cast<size_t>(df - i)];
    return det_exact(s);
}

DetsMatch dets_match(const IntegralLoop& loop) {
    DetsMatch out;
    out.det_m = det_exact(build_matrices(loop).M);
    out.det_r_radical = radical_det(build_R(z_profile(loop)));
    out.radical_integral = out.det_r_radical.is_integral();
    out.det_r = out.det_r_radical.constant_term();
    out.match = out.radical_integral && abs(out.det_m) == abs(out.det_r);
    return out;
}

long circulant_rank(const std::vector<Int>& z) {
    const long nu = static_cast<long>(z.size());
    if (nu == 0) throw invalid_argument_error("circulant_rank: empty z");
    RatPoly f;
    for (const Int& zi : z) f.emplace_back(zi);
    strip(f);
    if (f.empty()) return 0;
    RatPoly g(static_cast<size_t>(nu) + 1, Rat(0));
    g[0] = -1;
    g[static_cast<size_t>(nu)] = 1;
    return nu - degree(gcd_poly(f, g));
}

long circulant_rank(const std::vector<Int>& z, const Int& p) {
    const long nu = static_cast<long>(z.size());
    if (nu == 0) throw invalid_argument_error("circulant_rank: empty z");
    if (!is_probable_prime(p)) throw invalid_argument_error("circulant_rank: p must be prime");
    if (divides(p, Int(nu)))
        throw invalid_argument_error("circulant_rank: p divides nu");
    const PolyModP f = make_poly(p, std::vector<Int>(z.begin(), z.end()));
    const PolyModP g = make_cyclotomic_span(p, nu);
    if (poly_is_zero(f)) return 0;
    return nu - poly_degree(poly_gcd_fp(f, g));
}

bool primitive_root_check(const Int& p, const Int& nu) {
    if (!is_probable_prime(p) || !is_probable_prime(nu))
        throw invalid_argument_error("primitive_root_check: both arguments must be prime");
    if (mod_nonneg(p, nu) == 0) return false;  // p == nu: not even a unit
    return multiplicative_order(mod_nonneg(p, nu), nu) == nu - 1;
}

std::vector<TheoremVerdict> theorem_x_check(const IntegralLoop& loop) {
    const Int q = loop_denominator(loop);
    const ZProfile zp = z_profile(loop);
    const Int nu(loop.odd_count);
    const bool nu_prime = is_probable_prime(nu);

    std::vector<TheoremVerdict> out;
    Int det_m;       // computed lazily, only when some prime is eligible
    bool have_det = false;

    for (const Int& p : prime_divisors(q)) {
        TheoremVerdict v;
        v.p = p;
        if (!nu_prime) {
            v.reason = "nu is not prime";
        } else if (!zp.integral) {
            v.reason = "z-profile is not integral";
        } else if (p == nu) {
            v.reason = "p equals nu";
        } else if (!primitive_root_check(p, nu)) {
            v.reason = "p is not a primitive root mod nu";
        } else {
            Int sum_z = 0;
            for (const Int& zi : zp.z) sum_z += zi;
            bool some_pair_differs = false;
            for (size_t i = 0; i < zp.z.size() && !some_pair_differs; ++i)
                for (size_t j = i + 1; j < zp.z.size() && !some_pair_differs; ++j)
                    if (mod_nonneg(zp.z[i] - zp.z[j], p) != 0) some_pair_differs = true;
            const bool criterion_nonsingular = !divides(p, sum_z) && some_pair_differs;
            if (!have_det) {
                det_m = det_exact(build_matrices(loop).M);
                have_det = true;
            }
            const bool det_nonsingular = mod_nonneg(det_m, p) != 0;
            v.kind = criterion_nonsingular ? TheoremVerdict::Kind::nonsingular_mod_p
                                           : TheoremVerdict::Kind::singular_mod_p;
            v.consistent = (criterion_nonsingular == det_nonsingular);
        }
        out.push_back(std::move(v));
    }
    return out;
}

TheoremVerdict mod_gamma_prime_check(const IntegralLoop& loop, const Int& p) {
    const DivisibilityProfile prof = divisibility_profile(loop, p);
    TheoremVerdict v;
    v.p = p;
    if (prof.a == 0) {
        v.reason = "p does not divide the loop vector";
        return v;
    }
    if (prof.c == prof.b - prof.a) {
        v.reason = "boundary case c = b - a";
        return v;
    }
    if (prof.c < prof.b - prof.a) {
        v.reason = "c < b - a";
        return v;
    }
    const Int det_m = det_exact(build_matrices(loop).M);
    v.kind = TheoremVerdict::Kind::singular_mod_p;
    v.consistent = (mod_nonneg(det_m, p) == 0);
    return v;
}

TheoremVerdict prop_mod_gamma_check(const IntegralLoop& loop) {
    const Int q = loop_denominator(loop);
    TheoremVerdict v;
    v.p = q;
    if (!is_probable_prime(q)) {
        v.reason = "2^rho - 3^nu is not prime";
        return v;
    }
    const LoopVector lv = loop_vector(loop);
    for (const Int& e : lv.entries) {
        if (!divides(loop.gamma, e)) {
            v.reason = "gamma does not divide every loop-vector entry";
            return v;
        }
    }
    const Int det_m = det_exact(build_matrices(loop).M);
    v.kind = TheoremVerdict::Kind::singular_mod_p;
    v.consistent = (mod_nonneg(det_m, q) == 0);
    return v;
}

}  // namespace loopforge
