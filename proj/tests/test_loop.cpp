// Loop construction and structure: canonical anchoring, run-length
// realization, the start formula, telescoping, scaling and the divisibility
// bookkeeping, pinned to hand-computed loops.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopforge/loop.hpp"
#include "loopforge/trajectory.hpp"

using namespace loopforge;

namespace {

IntegralLoop get(long gamma, long n) {
    std::optional<IntegralLoop> loop = find_loop(Gamma(gamma), n);
    REQUIRE(loop.has_value());
    return *loop;
}

}  // namespace

// ----- construction -----

TEST_CASE("canonicalize anchors at the smallest odd member") {
    const IntegralLoop unit = canonicalize({4, 2, 1}, Gamma(1));
    CHECK(unit.start == 1);
    CHECK(unit.period == 3);
    CHECK(unit.even_count == 2);
    CHECK(unit.odd_count == 1);
    CHECK(unit.m == std::vector<long>{2});

    // same cycle handed over starting at 53 lands on the same anchor
    const IntegralLoop rot = canonicalize(trajectory(Gamma(37), 53, 9), Gamma(37));
    CHECK(rot.start == 23);
    CHECK(rot.m == std::vector<long>{1, 2, 3});
}

TEST_CASE("canonicalize rejects sequences that are not cycles") {
    CHECK_THROWS_AS(canonicalize({7, 22, 11}, Gamma(1)), not_a_cycle_error);
    CHECK_THROWS_AS(canonicalize({4, 2, 2}, Gamma(1)), not_a_cycle_error);
}

TEST_CASE("run lengths realize loops") {
    const IntegralLoop loop = loop_from_m(Gamma(37), {1, 2, 3});
    CHECK(loop.start == 23);
    CHECK(loop.period == 9);
    CHECK(loop.even_count == 6);
    CHECK(loop.odd_count == 3);
    CHECK(loop_vector(loop).entries == std::vector<Int>{23, 53, 49});

    const IntegralLoop five = loop_from_m(Gamma(5), {1, 1, 3});
    CHECK(five.start == 19);
    CHECK(loop_vector(five).entries == std::vector<Int>{19, 31, 49});
}

TEST_CASE("unrealizable run lengths are rejected") {
    // formula value is negative once 3^nu outgrows 2^rho
    CHECK_THROWS_AS(loop_from_m(Gamma(5), {1, 1}), not_a_cycle_error);
    // formula value is not an integer
    CHECK_THROWS_AS(loop_from_m(Gamma(1), {1, 3}), not_a_cycle_error);
}

TEST_CASE("repeated periods are step-consistent and accepted") {
    const IntegralLoop doubled = loop_from_m(Gamma(7), {2, 2});
    CHECK(doubled.start == 7);
    CHECK(doubled.period == 6);
    CHECK(doubled.odd_count == 2);
    CHECK(loop_vector(doubled).entries == std::vector<Int>{7, 7});
    CHECK_NOTHROW(validate_loop(doubled));
}

TEST_CASE("orbit search finds the loop the orbit falls into") {
    const IntegralLoop loop = get(1, 7);
    CHECK(loop.start == 1);
    CHECK(loop.m == std::vector<long>{2});

    const IntegralLoop big = get(625, 629);
    CHECK(big.period == 144);
    CHECK(big.even_count == 101);
    CHECK(big.odd_count == 43);
}

TEST_CASE("orbit search misses report nothing instead of lying") {
    TrajectoryLimits limits;
    limits.max_steps = 4;
    CHECK_FALSE(find_loop(Gamma(1), 27, limits).has_value());
}

TEST_CASE("re-anchoring rotates the run lengths") {
    const IntegralLoop loop = get(37, 23);
    const IntegralLoop at53 = anchor_at(loop, 53);
    CHECK(at53.start == 53);
    CHECK(at53.m == std::vector<long>{2, 3, 1});
    CHECK(loop_vector(at53).entries == std::vector<Int>{53, 49, 23});
    CHECK(anchor_at(at53, 23).m == loop.m);
    CHECK_THROWS_AS(anchor_at(loop, 25), invalid_argument_error);
    CHECK_THROWS_AS(anchor_at(loop, 106), invalid_argument_error);  // even member
}

TEST_CASE("validation rejects tampered loops") {
    IntegralLoop loop = get(37, 23);
    CHECK_NOTHROW(validate_loop(loop));
    loop.m[0] += 1;
    CHECK_THROWS_AS(validate_loop(loop), not_a_cycle_error);

    IntegralLoop other = get(37, 23);
    other.members[1] += 2;
    CHECK_THROWS_AS(validate_loop(other), not_a_cycle_error);
}

// ----- structure -----

TEST_CASE("denominator and telescope") {
    const IntegralLoop loop = get(37, 23);
    CHECK(loop_denominator(loop) == 37);  // 2^6 - 3^3
    CHECK(telescope_check(loop));
    CHECK(loop_vector(loop).index_seq == std::vector<long>{0, 2, 5});

    // canonical anchor is the smallest odd member, 319; re-anchor at 421
    const IntegralLoop canon = get(13, 421);
    CHECK(canon.start == 319);
    const IntegralLoop big = anchor_at(canon, 421);
    CHECK(loop_vector(big).entries == std::vector<Int>{421, 319, 485, 367, 557});
    CHECK(loop_vector(big).index_seq == std::vector<long>{0, 3, 5, 8, 10});
    CHECK(telescope_check(big));
}

TEST_CASE("start formula reproduces the anchors") {
    CHECK(loop_formula(Gamma(175), 0, {1, 3, 2, 2}) == 157);
    CHECK(loop_formula(Gamma(37), 0, {1, 2, 3}) == 23);
    CHECK(loop_formula(Gamma(1), 0, {2}) == 1);
    // a leading even run scales the anchor by 2^{m0}
    CHECK(loop_formula(Gamma(37), 1, {1, 2, 3}) == 46);
    CHECK(loop_formula(Gamma(37), 2, {1, 2, 3}) == 92);
    // non-realizable patterns still evaluate, just not to an odd integer
    CHECK(loop_formula(Gamma(1), 0, {1, 3}) == Rat(5, 7));
}

TEST_CASE("similarity of loop vectors is rotation") {
    const std::vector<Int> v{133, 671, 739, 395};
    const VectorRelation rot = vector_relation(v, {671, 739, 395, 133});
    CHECK(rot.kind == VectorRelation::Kind::similar);
    CHECK(rot.shift == 1);
    CHECK(vector_relation(v, v).kind == VectorRelation::Kind::equal);
    CHECK(vector_relation(v, {133, 671, 395, 739}).kind == VectorRelation::Kind::distinct);
    CHECK(vector_relation({23, 53, 49}, {19, 47, 89}).kind == VectorRelation::Kind::distinct);
    // different lengths are never related
    CHECK(vector_relation(v, {133, 671, 739}).kind == VectorRelation::Kind::distinct);
}

TEST_CASE("rotated anchors give similar vectors") {
    const IntegralLoop loop = anchor_at(get(13, 421), 421);
    const VectorRelation rel =
        vector_relation(loop_vector(loop), loop_vector(anchor_at(loop, 485)));
    CHECK(rel.kind == VectorRelation::Kind::similar);
    CHECK(rel.shift == 2);
}

// ----- scaling -----

TEST_CASE("scaling divides gamma and every member") {
    const IntegralLoop a = get(65455, 65);
    CHECK(count_scaled(a) == 4);

    const IntegralLoop b = scale_loop(a, 5);
    CHECK(b.gamma == 13091);
    CHECK(b.start == 13);
    CHECK(b.m == a.m);
    CHECK_NOTHROW(validate_loop(b));

    const IntegralLoop c = scale_loop(scale_loop(a, 5), 13);
    CHECK(c.gamma == 1007);
    CHECK(c.start == 1);
    CHECK(c.m == a.m);
}

TEST_CASE("scaling requires a factor shared with every member") {
    CHECK_THROWS_AS(scale_loop(get(37, 23), 3), not_divisible_error);
    CHECK_THROWS_AS(scale_loop(get(65455, 65), 7), not_divisible_error);
}

TEST_CASE("scaled-loop counting multiplies run multiplicities") {
    CHECK(count_scaled(get(175, 133)) == 2);   // shared factor 7
    CHECK(count_scaled(get(37, 23)) == 1);     // nothing shared
    CHECK(count_scaled(get(65455, 65)) == 4);  // shared factor 65 = 5 * 13
}

// ----- divisibility -----

TEST_CASE("profiles satisfy the alternating-sum identity") {
    const DivisibilityProfile p37 = divisibility_profile(get(3367, 18611), 37);
    CHECK(p37.a == 1);
    CHECK(p37.b == 1);
    CHECK(p37.c == 1);
    CHECK(p37.d == 1);

    const DivisibilityProfile p5 = divisibility_profile(get(625, 5), 5);
    CHECK(p5.a == 1);
    CHECK(p5.b == 4);
    CHECK(p5.c == 3);
    CHECK(p5.d == 0);

    const DivisibilityProfile coprime = divisibility_profile(get(37, 23), 5);
    CHECK(coprime.a == 0);
    CHECK(coprime.b == 0);
    CHECK(coprime.c == 0);
    CHECK(coprime.d == 0);
}

TEST_CASE("profiles demand an odd prime") {
    CHECK_THROWS_AS(divisibility_profile(get(37, 23), 2), invalid_argument_error);
    CHECK_THROWS_AS(divisibility_profile(get(37, 23), 15), invalid_argument_error);
    CHECK_THROWS_AS(lemma_alpha_check(get(37, 23), 9), invalid_argument_error);
}

TEST_CASE("two-of-three propagation on consecutive members") {
    CHECK(lemma_alpha_check(get(625, 629), 5));
    CHECK(lemma_alpha_check(get(7, 7), 7));
    CHECK(lemma_alpha_check(get(65455, 65), 5));
    CHECK(lemma_alpha_check(get(65455, 65), 13));
    CHECK(lemma_alpha_check(get(37, 23), 5));  // vacuous for a coprime prime
}

TEST_CASE("no odd member of the gamma=625 long loop is a multiple of five") {
    const IntegralLoop loop = get(625, 629);
    for (const Int& e : loop_vector(loop).entries) CHECK_FALSE(divides(Int(5), e));
}
