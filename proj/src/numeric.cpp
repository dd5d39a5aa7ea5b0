#include "loopforge/numeric.hpp"

#include <algorithm>
#include <map>

namespace loopforge {

// ----- basic arithmetic -----

Int pow2(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

Int pow3(unsigned long e) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
    return r;
}

Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

Int exact_div(const Int& x, const Int& d) {
    if (d == 0 || !divides(d, x))
        throw not_divisible_error("exact_div: " + to_dec(d) + " does not divide " + to_dec(x));
    Int q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
}

long multiplicity(const Int& x, const Int& p) {
    if (x == 0) throw invalid_argument_error("multiplicity: x must be nonzero");
    if (p <= 1) throw invalid_argument_error("multiplicity: p must exceed 1");
    Int r = abs(x);
    long e = 0;
    while (divides(p, r)) {
        mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
        ++e;
    }
    return e;
}

long two_adic_valuation(const Int& x) {
    if (x == 0) throw invalid_argument_error("two_adic_valuation: x must be nonzero");
    return static_cast<long>(mpz_scan1(x.get_mpz_t(), 0));
}

Int mod_nonneg(const Int& x, const Int& m) {
    if (m <= 0) throw invalid_argument_error("mod_nonneg: modulus must be positive");
    Int r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    return r;
}

// ----- primes and factoring -----

bool is_probable_prime(const Int& n) {
    if (n < 2) return false;
    return mpz_probab_prime_p(n.get_mpz_t(), 32) != 0;
}

namespace {

// Pollard rho with Brent's cycle shortcut; n must be odd composite, not a
// prime power obstacle for our sizes (recursion sorts the pieces out).
Int pollard_rho(const Int& n) {
    if (divides(Int(2), n)) return 2;
    gmp_randclass rng(gmp_randinit_default);
    rng.seed(0xC0FFEEul);
    while (true) {
        Int y = rng.get_z_range(n - 3) + 2;
        Int c = rng.get_z_range(n - 1) + 1;
        Int x = y, d = 1, q = 1, ys = y;
        const long m = 128;
        long r = 1;
        while (d == 1) {
            x = y;
            for (long i = 0; i < r; ++i) y = mod_nonneg(y * y + c, n);
            long k = 0;
            while (k < r && d == 1) {
                ys = y;
                const long lim = std::min(m, r - k);
                for (long i = 0; i < lim; ++i) {
                    y = mod_nonneg(y * y + c, n);
                    q = mod_nonneg(q * abs(x - y), n);
                }
                d = gcd_int(q, n);
                k += m;
            }
            r *= 2;
        }
        if (d == n) {
            // Backtrack one step at a time.
            do {
                ys = mod_nonneg(ys * ys + c, n);
                d = gcd_int(abs(x - ys), n);
            } while (d == 1);
        }
        if (d != n) return d;
    }
}

void factor_into(Int n, std::map<Int, long>& acc) {
    if (n == 1) return;
    if (is_probable_prime(n)) {
        ++acc[n];
        return;
    }
    const Int d = pollard_rho(n);
    factor_into(d, acc);
    factor_into(n / d, acc);
}

}  // namespace

std::vector<std::pair<Int, long>> factorize(Int n) {
    if (n < 1) throw invalid_argument_error("factorize: n must be positive");
    std::map<Int, long> acc;
    // Strip small primes first; trial division covers everything the sweeps
    // produce, Pollard rho handles stray large cofactors.
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++acc[Int(p)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        }
    }
    unsigned long d = 17;
    while (n > 1 && d < 100000 && Int(d) * d <= n) {
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            ++acc[Int(d)];
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        }
        d += 2;
    }
    factor_into(n, acc);
    return {acc.begin(), acc.end()};
}

std::vector<Int> prime_divisors(const Int& n) {
    std::vector<Int> ps;
    for (const auto& [p, e] : factorize(n)) ps.push_back(p);
    return ps;
}

Int euler_phi(const Int& n) {
    if (n < 1) throw invalid_argument_error("euler_phi: n must be positive");
    Int r = n;
    for (const auto& [p, e] : factorize(n)) r = r / p * (p - 1);
    return r;
}

Int multiplicative_order(const Int& a, const Int& m) {
    if (m <= 1) throw invalid_argument_error("multiplicative_order: modulus must exceed 1");
    if (gcd_int(a, m) != 1)
        throw invalid_argument_error("multiplicative_order: arguments must be coprime");
    // Order divides phi(m); peel prime factors off the exponent.
    Int ord = euler_phi(m);
    for (const auto& [p, e] : factorize(ord)) {
        for (long i = 0; i < e; ++i) {
            Int cand = ord / p;
            Int t;
            mpz_powm(t.get_mpz_t(), a.get_mpz_t(), cand.get_mpz_t(), m.get_mpz_t());
            if (t == 1)
                ord = cand;
            else
                break;
        }
    }
    return ord;
}

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// ----- conversions -----

std::string to_dec(const Int& x) { return x.get_str(10); }

std::string to_dec(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str(10);
    return c.get_num().get_str(10) + "/" + c.get_den().get_str(10);
}

Int parse_int(const std::string& s) {
    if (s.empty()) throw invalid_argument_error("parse_int: empty string");
    Int r;
    if (mpz_set_str(r.get_mpz_t(), s.c_str(), 10) != 0)
        throw invalid_argument_error("parse_int: not a base-10 integer: '" + s + "'");
    return r;
}

long to_long(const Int& x) {
    if (!x.fits_slong_p()) throw invalid_argument_error("to_long: value out of range");
    return x.get_si();
}

}  // namespace loopforge
