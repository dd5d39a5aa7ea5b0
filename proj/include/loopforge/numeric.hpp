// Exact scalar layer: arbitrary-precision integers and rationals plus the
// small number-theoretic helpers the loop machinery leans on (powers,
// multiplicities, factoring, primality, totient, binomials).
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loopforge {

using Int = mpz_class;
using Rat = mpq_class;

// ----- errors -----

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct invalid_argument_error : error {
    using error::error;
};
struct not_a_cycle_error : error {
    using error::error;
};
struct not_divisible_error : error {
    using error::error;
};
struct dimension_mismatch_error : error {
    using error::error;
};
struct ring_mismatch_error : error {
    using error::error;
};
struct modulus_mismatch_error : error {
    using error::error;
};
struct singular_matrix_error : error {
    using error::error;
};
struct internal_inconsistency_error : error {
    using error::error;
};
struct degenerate_denominator_error : error {
    using error::error;
};

// ----- basic arithmetic -----

Int pow2(unsigned long e);
Int pow3(unsigned long e);
Int pow_int(const Int& base, unsigned long e);

inline bool is_odd(const Int& x) { return mpz_odd_p(x.get_mpz_t()) != 0; }
inline bool is_even(const Int& x) { return mpz_even_p(x.get_mpz_t()) != 0; }

inline Int gcd_int(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline bool divides(const Int& d, const Int& x) {
    return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

// Exact quotient; throws when d does not divide x.
Int exact_div(const Int& x, const Int& d);

// Largest e with p^e | x.  Requires x != 0 and p > 1.
long multiplicity(const Int& x, const Int& p);

// Number of trailing zero bits; requires x != 0.
long two_adic_valuation(const Int& x);

// Nonnegative remainder of x mod m (m > 0).
Int mod_nonneg(const Int& x, const Int& m);

// ----- primes and factoring -----

bool is_probable_prime(const Int& n);

// Sorted (prime, exponent) pairs for n >= 1; empty for n == 1.
std::vector<std::pair<Int, long>> factorize(Int n);

// Distinct prime divisors of n, ascending.
std::vector<Int> prime_divisors(const Int& n);

Int euler_phi(const Int& n);

// Multiplicative order of a modulo m; requires gcd(a, m) == 1, m > 1.
Int multiplicative_order(const Int& a, const Int& m);

Int binomial(unsigned long n, unsigned long k);

// ----- conversions -----

// True when the rational is an integer (canonicalized denominator 1).
inline bool is_integral(const Rat& x) {
    Rat c = x;
    c.canonicalize();
    return c.get_den() == 1;
}

std::string to_dec(const Int& x);
std::string to_dec(const Rat& x);  // "p" or "p/q", canonicalized

// Parses a base-10 integer (optional leading '-'); throws on junk.
Int parse_int(const std::string& s);

// Throws unless x fits in long.
long to_long(const Int& x);

}  // namespace loopforge
