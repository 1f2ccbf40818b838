#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "scratchoff/errors.hpp"
#include "scratchoff/zeta.hpp"
#include "support/oracles.hpp"

using namespace scratchoff;
using scratchoff::testing::binom_at_least_oracle;

TEST_CASE("zeta degenerate orders") {
    CHECK(zeta(0, 17, 5.0) == 1.0);
    CHECK(zeta(0, 0, 3.0) == 1.0);
    CHECK(zeta(3, 2, 1.0) == 0.0);
    CHECK(zeta(101, 100, 0.5) == 0.0);
}

TEST_CASE("zeta single fair trial") {
    CHECK(zeta(1, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("zeta matches the three-trial enumeration") {
    // 4 of the 8 equiprobable outcomes of 3 fair trials have >= 2 wins
    CHECK(zeta(2, 3, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(binom_at_least_oracle(2, 3, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("zeta closed form at l = 1") {
    // 1 - (255/256)^256, evaluated independently
    CHECK(zeta(1, 256, 8.0) == doctest::Approx(0.6328402451084637).epsilon(1e-13));

    for (uint64_t t : {1, 2, 3, 10, 100, 999, 10000}) {
        for (double d : {0.5, 1.0, 4.0, 8.0}) {
            const double p = std::exp2(-d);
            const double closed = 1.0 - std::exp(double(t) * std::log1p(-p));
            CHECK(std::fabs(zeta(1, t, d) - closed) < 1e-12);
        }
    }
}

TEST_CASE("zeta agrees with the exhaustive oracle") {
    for (uint64_t t = 0; t <= 12; ++t)
        for (uint64_t l = 0; l <= t; ++l)
            for (double d : {1.0, 2.0, 3.0})
                CHECK(std::fabs(zeta(l, t, d) - binom_at_least_oracle(l, t, d)) < 1e-12);
}

TEST_CASE("zeta monotonicity over a difficulty grid") {
    const double ds[] = {0.5, 1.0, 2.0, 4.0, 8.0};
    for (double d : ds) {
        for (uint64_t t = 1; t <= 100; ++t) {
            for (uint64_t l = 1; l <= 5; ++l) {
                CHECK(zeta(l, t, d) <= zeta(l - 1, t, d) + 1e-15); // non-increasing in l
                CHECK(zeta(l, t + 1, d) + 1e-15 >= zeta(l, t, d)); // non-decreasing in t
            }
        }
    }
    for (uint64_t l = 1; l <= 5; ++l)
        for (uint64_t t = l; t <= 100; t += 7)
            for (size_t i = 1; i < 5; ++i)
                CHECK(zeta(l, t, ds[i]) <= zeta(l, t, ds[i - 1]) + 1e-15);
}

TEST_CASE("zeta large-t tail stays within tolerance of the complement identity") {
    // P[X >= l] + P[X <= l-1] = 1: evaluate both sides near the mode at t = 1e6
    const uint64_t t = 1000000;
    const double d = 1.0;
    for (uint64_t l : {uint64_t(499000), uint64_t(500000), uint64_t(501000)}) {
        double lower = 0.0;
        for (uint64_t i = 0; i < l; ++i) lower += binom_pmf(i, t, 0.5);
        CHECK(std::fabs(zeta(l, t, d) - (1.0 - lower)) < 1e-11);
    }
}

TEST_CASE("paper-literal expansion") {
    CHECK(zeta_paper_literal(1, 1.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(zeta_paper_literal(1, 2.0, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(zeta_paper_literal(1, 4.0, 2.0) == doctest::Approx(0.421875).epsilon(1e-14));

    CHECK_THROWS_AS(zeta_paper_literal(2, 4.0, 2.0), UnsupportedOrder);
    CHECK_THROWS_AS(zeta_paper_literal(0, 4.0, 2.0), UnsupportedOrder);
}

TEST_CASE("paper-literal equals the point mass and bounds the tail") {
    for (uint64_t t = 1; t <= 64; ++t) {
        for (double d : {1.0, 3.0, 8.0}) {
            const double literal = zeta_paper_literal(1, double(t), d);
            const double pmf = binom_pmf(1, t, std::exp2(-d));
            CHECK(literal == doctest::Approx(pmf).epsilon(1e-12));
            CHECK(literal <= zeta(1, t, d) + 1e-14);
        }
    }
}

TEST_CASE("exhaustive oracle edge cases") {
    CHECK(binom_at_least_oracle(0, 5, 3.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(binom_at_least_oracle(3, 2, 1.0) == 0.0);
    CHECK_THROWS_AS(binom_at_least_oracle(1, 21, 1.0), TooLarge);
}

TEST_CASE("zeta rejects negative difficulty") {
    CHECK_THROWS_AS(zeta(1, 10, -1.0), InvalidParameter);
}
