// Orbit machinery: stepping, parity sequences, the closed-form iterate and
// Brent cycle detection, pinned to hand-computed values.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "loopforge/trajectory.hpp"

using namespace loopforge;

// ----- parameter validation -----

TEST_CASE("gamma must be odd and positive") {
    CHECK_NOTHROW(Gamma(1));
    CHECK_NOTHROW(Gamma(37));
    CHECK_THROWS_AS(Gamma(0), invalid_argument_error);
    CHECK_THROWS_AS(Gamma(4), invalid_argument_error);
    CHECK_THROWS_AS(Gamma(-3), invalid_argument_error);
}

TEST_CASE("stepping requires a positive argument") {
    const Gamma g(1);
    CHECK(step(g, 7) == 22);
    CHECK(step(g, 22) == 11);
    CHECK_THROWS_AS(step(g, 0), invalid_argument_error);
    CHECK_THROWS_AS(step(g, -4), invalid_argument_error);
}

// ----- trajectories -----

TEST_CASE("trajectory of 7 under gamma=1") {
    const std::vector<Int> expect{7, 22, 11, 34, 17, 52, 26, 13};
    CHECK(trajectory(Gamma(1), 7, 8) == expect);
    CHECK(trajectory(Gamma(1), 7, 0).empty());
}

TEST_CASE("trajectory of 157 under gamma=175") {
    const std::vector<Int> expect{157, 646, 323, 1144, 572, 286,
                                  143, 604, 302, 151, 628, 314};
    CHECK(trajectory(Gamma(175), 157, 12) == expect);
}

TEST_CASE("parity bits match the odd/even pattern") {
    CHECK(characteristic_trajectory(Gamma(1), 7, 8) ==
          std::vector<int>{1, 0, 1, 0, 1, 0, 0, 1});
    CHECK(characteristic_trajectory(Gamma(1), 19, 9) ==
          std::vector<int>{1, 0, 1, 0, 0, 0, 1, 0, 1});
    CHECK(characteristic_trajectory(Gamma(37), 23, 9) ==
          std::vector<int>{1, 0, 1, 0, 0, 1, 0, 0, 0});
}

TEST_CASE("single parity bits agree with the full sequence") {
    const Gamma g(37);
    const std::vector<int> bits = characteristic_trajectory(g, 23, 9);
    for (long i = 0; i < 9; ++i) CHECK(char_bit(g, 23, i) == bits[static_cast<size_t>(i)]);
}

// ----- closed form -----

TEST_CASE("closed form hits the printed iterates") {
    CHECK(closed_form_iterate(Gamma(1), 19, 9) == 52);
    CHECK(closed_form_iterate(Gamma(37), 23, 9) == 23);
    CHECK(closed_form_iterate(Gamma(1), 7, 0) == 7);
}

TEST_CASE("closed form degenerates to halving on even-only stretches") {
    CHECK(closed_form_iterate(Gamma(5), 48, 4) == 3);
    CHECK(closed_form_iterate(Gamma(99), 1024, 10) == 1);
}

TEST_CASE("closed form equals simulation everywhere sampled") {
    for (const long g : {1L, 5L, 37L, 175L}) {
        const Gamma gamma(g);
        for (const long n : {7L, 19L, 23L, 27L, 157L}) {
            const std::vector<Int> traj = trajectory(gamma, n, 26);
            for (long t = 0; t < 26; ++t)
                CHECK(closed_form_iterate(gamma, n, t) == traj[static_cast<size_t>(t)]);
        }
    }
}

// ----- cycle detection -----

TEST_CASE("cycle detection from 7 under gamma=1") {
    const CycleSearch c = detect_cycle(Gamma(1), 7);
    REQUIRE(c.found);
    CHECK(c.entry == 4);  // orbit enters the cycle {4,2,1} at the value 4
    CHECK(c.length == 3);
    CHECK(c.miss == CycleSearch::Miss::none);
}

TEST_CASE("cycle detection lands on long loops") {
    const CycleSearch c = detect_cycle(Gamma(625), 629);
    REQUIRE(c.found);
    CHECK(c.length == 144);
}

TEST_CASE("a starting point on the cycle is its own entry") {
    const CycleSearch c = detect_cycle(Gamma(37), 23);
    REQUIRE(c.found);
    CHECK(c.entry == 23);
    CHECK(c.length == 9);
}

TEST_CASE("step budget misses are reported, not thrown") {
    TrajectoryLimits limits;
    limits.max_steps = 5;
    const CycleSearch c = detect_cycle(Gamma(1), 27, limits);
    CHECK_FALSE(c.found);
    CHECK(c.miss == CycleSearch::Miss::step_budget);
}

TEST_CASE("value cap misses are reported, not thrown") {
    TrajectoryLimits limits;
    limits.max_value = 100;
    const CycleSearch c = detect_cycle(Gamma(1), 27, limits);
    CHECK_FALSE(c.found);
    CHECK(c.miss == CycleSearch::Miss::value_cap);
}

TEST_CASE("a zero cap disables the value limit") {
    TrajectoryLimits limits;
    limits.max_value = 0;
    const CycleSearch c = detect_cycle(Gamma(1), 27, limits);
    CHECK(c.found);
    CHECK(c.length == 3);
}
