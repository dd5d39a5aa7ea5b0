// The circulant side of the determinant story: run-weight profiles, the
// radical-ring circulant, the resultant route, ranks, polynomial GCDs over
// F_p, and the three singularity criteria.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopforge/circulant.hpp"
#include "loopforge/loop_matrices.hpp"
#include "loopforge/polymod.hpp"

using namespace loopforge;

namespace {

IntegralLoop get(long gamma, long n) {
    std::optional<IntegralLoop> loop = find_loop(Gamma(gamma), n);
    REQUIRE(loop.has_value());
    return anchor_at(*loop, n);
}

IntegralLoop get_big(const char* gamma, const char* n) {
    std::optional<IntegralLoop> loop = find_loop(Gamma(parse_int(gamma)), parse_int(n));
    REQUIRE(loop.has_value());
    return anchor_at(*loop, parse_int(n));
}

}  // namespace

// ----- profiles -----

TEST_CASE("run-weight profile of the gamma=485 loop is integral") {
    const ZProfile zp = z_profile(get(485, 19));  // m = (1,1,7)
    CHECK(zp.nu == 3);
    CHECK(zp.a == std::vector<long>{3, 15, 9});
    CHECK(zp.integral);
    CHECK(zp.z == std::vector<Int>{2, 32, 8});
}

TEST_CASE("run-weight profile of the gamma=101 loop is not integral") {
    const ZProfile zp = z_profile(get(101, 19));  // m = (1,1,5)
    CHECK(zp.a == std::vector<long>{3, 11, 7});
    CHECK_FALSE(zp.integral);
    CHECK(zp.z.empty());  // no integer weights to report
}

TEST_CASE("run-weight profiles of the gamma=1048333 loops") {
    CHECK(z_profile(get_big("1048333", "373")).z ==
          std::vector<Int>{8, 8192, 2048, 256, 32});
    CHECK(z_profile(get_big("1048333", "184337")).z ==
          std::vector<Int>{256, 128, 512, 128, 512});
}

TEST_CASE("uniform run lengths give uniform weights") {
    const ZProfile zp = z_profile(loop_from_m(Gamma(37), {2, 2, 2}));
    CHECK(zp.integral);
    CHECK(zp.z == std::vector<Int>{4, 4, 4});
}

// ----- circulant construction -----

TEST_CASE("circulant rows are successive right shifts") {
    const IntMatrix r = circulant_matrix({2, 32, 8});
    CHECK(r(0, 0) == 2);
    CHECK(r(0, 1) == 32);
    CHECK(r(0, 2) == 8);
    CHECK(r(1, 0) == 8);
    CHECK(r(1, 1) == 2);
    CHECK(r(1, 2) == 32);
    CHECK(r(2, 0) == 32);
    CHECK(r(2, 1) == 8);
    CHECK(r(2, 2) == 2);
}

TEST_CASE("integer circulant of an integral profile") {
    const IntMatrix r = build_R_integer(z_profile(get(485, 19)));
    CHECK(det_exact(r) == 31752);
}

TEST_CASE("radical circulant reduces to an integer determinant") {
    // integral profile: all radical coefficients above s^0 vanish
    const RadicalElement d485 = radical_det(build_R(z_profile(get(485, 19))));
    CHECK(d485.is_integral());
    CHECK(d485.constant_term() == 31752);

    // non-integral profile: the determinant still collapses to a constant
    const RadicalElement d101 = radical_det(build_R(z_profile(get(101, 19))));
    CHECK(d101.is_integral());
    CHECK(d101.constant_term() == 1800);
}

TEST_CASE("determinant pairs match on the worked loops") {
    const DetsMatch d485 = dets_match(get(485, 19));
    CHECK(d485.det_m == -31752);
    CHECK(d485.det_r == 31752);
    CHECK(d485.radical_integral);
    CHECK(d485.match);

    const DetsMatch d101 = dets_match(get(101, 19));
    CHECK(d101.det_m == -1800);
    CHECK(d101.det_r == 1800);
    CHECK(d101.match);

    const DetsMatch big = dets_match(get_big("1048333", "373"));
    CHECK(big.det_m == parse_int("36861972294903300096"));
    CHECK(big.det_r == big.det_m);
    CHECK(big.match);
}

TEST_CASE("rotation-sensitive determinant signs") {
    const IntegralLoop anchored = get_big("3367", "18611");
    CHECK(det_exact(build_matrices(anchored).M) == parse_int("-1910471786496"));
    const IntegralLoop canonical = anchor_at(anchored, 925);
    CHECK(det_exact(build_matrices(canonical).M) == parse_int("1910471786496"));
}

TEST_CASE("the re-derived large determinant and its witness prime") {
    const IntegralLoop loop = get_big("4193575", "3403");  // m = (3,1,1,3,2,12)
    CHECK(loop.m == std::vector<long>{3, 1, 1, 3, 2, 12});
    const Int det = det_exact(build_matrices(loop).M);
    CHECK(det == parse_int("1198591822881410672230400"));
    CHECK(mod_nonneg(det, 83) == 0);
}

// ----- resultant route -----

TEST_CASE("resultant route equals elimination") {
    CHECK(circulant_det_resultant({2, 32, 8}) == 31752);
    CHECK(circulant_det_resultant({1, 1, 1}) == 0);
    CHECK(circulant_det_resultant({5}) == 5);
    CHECK(circulant_det_resultant({3, 5}) == -16);  // a^2 - b^2
    for (const std::vector<Int> z :
         {std::vector<Int>{4, 4, 4}, {1, 2, 3, 4}, {8, 8192, 2048, 256, 32}})
        CHECK(circulant_det_resultant(z) == det_exact(circulant_matrix(z)));
}

TEST_CASE("vandermonde products") {
    CHECK(vandermonde_det({Rat(1), Rat(5)}) == 4);
    CHECK(vandermonde_det({Rat(2), Rat(2), Rat(7)}) == 0);
    CHECK(vandermonde_det({Rat(1), Rat(2), Rat(3)}) == 2);
    CHECK(vandermonde_det({Rat(7)}) == 1);  // empty product
}

// ----- ranks -----

TEST_CASE("circulant ranks over Q and over F_p") {
    CHECK(circulant_rank({1, 1, 1}) == 1);
    CHECK(circulant_rank({2, 32, 8}) == 3);
    CHECK(circulant_rank({2, 32, 8}, 5) == 3);
    CHECK(circulant_rank({2, 2, 3}, 5) == 3);
    CHECK(circulant_rank({1, 1, 1}, 5) == 1);
    CHECK(rank_mod_p(circulant_matrix({2, 32, 8}), 5) == 3);
}

TEST_CASE("rank over F_p rejects bad moduli") {
    CHECK_THROWS_AS(circulant_rank({1, 2, 3}, 6), invalid_argument_error);
    CHECK_THROWS_AS(circulant_rank({1, 2, 3}, 3), invalid_argument_error);  // p divides nu
}

// ----- polynomials over F_p -----

TEST_CASE("polynomial plumbing over F_p") {
    const PolyModP f = make_poly(5, {7, 12, 1});  // reduces to 2 + 2w + w^2
    CHECK(f.coeffs == std::vector<Int>{2, 2, 1});
    CHECK(poly_degree(f) == 2);
    CHECK(poly_degree(make_poly(5, {})) == -1);
    CHECK(poly_is_zero(make_poly(5, {10, 5})));
    CHECK(make_cyclotomic_span(5, 3).coeffs == std::vector<Int>{4, 0, 0, 1});  // w^3 - 1
    CHECK(poly_monic(make_poly(5, {2, 4})).coeffs == std::vector<Int>{3, 1});
    CHECK_THROWS_AS(make_poly(6, {1}), invalid_argument_error);
}

TEST_CASE("gcd with the span polynomial counts shared roots of unity") {
    const PolyModP cyc = make_cyclotomic_span(5, 3);
    CHECK(poly_degree(poly_gcd_fp(make_poly(5, {1, 1, 1}), cyc)) == 2);
    CHECK(poly_degree(poly_gcd_fp(make_poly(5, {2, 32, 8}), cyc)) == 0);
    CHECK(poly_gcd_fp(make_poly(5, {2, 4}), make_poly(5, {})).coeffs ==
          std::vector<Int>{3, 1});
    CHECK(poly_is_zero(poly_gcd_fp(make_poly(5, {}), make_poly(5, {}))));
    CHECK_THROWS_AS(poly_gcd_fp(make_poly(5, {1}), make_poly(7, {1})),
                    modulus_mismatch_error);
}

TEST_CASE("the gcd divides both inputs") {
    const PolyModP f = make_poly(7, {3, 0, 2, 1});
    const PolyModP g = make_poly(7, {1, 4, 1});
    const PolyModP d = poly_gcd_fp(f, g);
    CHECK(poly_is_zero(poly_rem(f, d)));
    CHECK(poly_is_zero(poly_rem(g, d)));
}

// ----- singularity criteria -----

TEST_CASE("primitive-root screening") {
    CHECK(primitive_root_check(13, 5));
    CHECK_FALSE(primitive_root_check(11, 5));
    CHECK(primitive_root_check(5, 3));
    CHECK(primitive_root_check(2, 3));
    CHECK_FALSE(primitive_root_check(3, 3));  // p not a unit mod nu
}

TEST_CASE("singularity criterion for the gamma=485 loop") {
    const std::vector<TheoremVerdict> vs = theorem_x_check(get(485, 19));
    REQUIRE(vs.size() == 2);  // 2^9 - 3^3 = 485 = 5 * 97
    CHECK(vs[0].p == 5);
    CHECK(vs[0].kind == TheoremVerdict::Kind::nonsingular_mod_p);
    CHECK(vs[0].consistent);
    CHECK(vs[1].p == 97);
    CHECK(vs[1].kind == TheoremVerdict::Kind::hypothesis_not_met);
    CHECK(vs[1].reason == "p is not a primitive root mod nu");
}

TEST_CASE("singularity criterion for the gamma=1048333 loop") {
    const std::vector<TheoremVerdict> vs = theorem_x_check(get_big("1048333", "184337"));
    REQUIRE(vs.size() == 3);  // 1048333 = 11 * 13 * 7331
    for (const TheoremVerdict& v : vs) {
        CHECK(v.consistent);
        if (v.p == 13) CHECK(v.kind == TheoremVerdict::Kind::nonsingular_mod_p);
        if (v.p == 11) CHECK(v.kind == TheoremVerdict::Kind::hypothesis_not_met);
        if (v.p == 7331) CHECK(v.kind == TheoremVerdict::Kind::hypothesis_not_met);
    }
}

TEST_CASE("criterion hypotheses screen out the wrong shapes") {
    // nu = 4 is not prime
    for (const TheoremVerdict& v : theorem_x_check(get(47, 85)))
        CHECK(v.reason == "nu is not prime");
    // non-integral profile
    for (const TheoremVerdict& v : theorem_x_check(get(101, 19)))
        CHECK(v.reason == "z-profile is not integral");
}

TEST_CASE("prime-power singularity from the divisibility profile") {
    const TheoremVerdict hit = mod_gamma_prime_check(get_big("3367", "18611"), 37);
    CHECK(hit.kind == TheoremVerdict::Kind::singular_mod_p);
    CHECK(hit.consistent);

    const TheoremVerdict boundary = mod_gamma_prime_check(get(625, 5), 5);
    CHECK(boundary.kind == TheoremVerdict::Kind::hypothesis_not_met);
    CHECK(boundary.reason == "boundary case c = b - a");

    const TheoremVerdict coprime = mod_gamma_prime_check(get(37, 23), 5);
    CHECK(coprime.kind == TheoremVerdict::Kind::hypothesis_not_met);
    CHECK(coprime.reason == "p does not divide the loop vector");
}

TEST_CASE("prime-modulus singularity for repeated-period loops") {
    const TheoremVerdict v7 = prop_mod_gamma_check(loop_from_m(Gamma(7), {2, 2}));
    CHECK(v7.kind == TheoremVerdict::Kind::singular_mod_p);
    CHECK(v7.consistent);

    const TheoremVerdict v37 = prop_mod_gamma_check(loop_from_m(Gamma(37), {2, 2, 2}));
    CHECK(v37.kind == TheoremVerdict::Kind::singular_mod_p);
    CHECK(v37.consistent);

    // composite denominator: hypothesis not met
    CHECK(prop_mod_gamma_check(get(943, 133)).kind ==
          TheoremVerdict::Kind::hypothesis_not_met);
    // prime denominator but gamma does not divide the vector
    const TheoremVerdict v23 = prop_mod_gamma_check(get(37, 23));
    CHECK(v23.kind == TheoremVerdict::Kind::hypothesis_not_met);
    CHECK(v23.reason == "gamma does not divide every loop-vector entry");
}
