// Copyright 2026 the betwheel authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "betwheel/divergence.hpp"

using namespace betwheel;
using divergence::DivergenceSpec;
using divergence::SeriesVariant;

TEST_CASE("kl_bernoulli frozen spot values") {
    CHECK(divergence::kl_bernoulli(0.6, 0.61) ==
          doctest::Approx(2.0892907636539258e-4).epsilon(1e-14));
    CHECK(divergence::kl_bernoulli(0.61, 0.6) ==
          doctest::Approx(2.0954202298961181e-4).epsilon(1e-14));
    CHECK(divergence::kl_bernoulli(0.7, 0.65) ==
          doctest::Approx(5.7825560396211855e-3).epsilon(1e-14));
    CHECK(divergence::kl_bernoulli(0.37, 0.37) == 0.0);
}

TEST_CASE("kl_bernoulli is asymmetric and centered at p=q") {
    CHECK(divergence::kl_bernoulli(0.6, 0.61) !=
          divergence::kl_bernoulli(0.61, 0.6));
    for (double q : {0.2, 0.5, 0.8}) {
        for (double p : {0.1, 0.4, 0.6, 0.9}) {
            if (p == q) continue;
            CHECK(divergence::kl_bernoulli(q, p) > 0.0);
        }
    }
}

TEST_CASE("kl_bernoulli rejects boundary arguments") {
    CHECK_THROWS_AS(divergence::kl_bernoulli(0.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(divergence::kl_bernoulli(1.0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(divergence::kl_bernoulli(0.5, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(divergence::kl_bernoulli(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("kl_series frozen values at q=0.6, eps=0.01") {
    const double q = 0.6;
    const double eps = 0.01;

    // The quadratic term is shared by both variants.
    CHECK(divergence::kl_series(q, eps, SeriesVariant::AsPrinted, 2) ==
          doctest::Approx(2.0833333333333333e-4).epsilon(1e-15));
    CHECK(divergence::kl_series(q, eps, SeriesVariant::DerivativeBased, 2) ==
          doctest::Approx(2.0833333333333333e-4).epsilon(1e-15));

    CHECK(divergence::kl_series(q, eps, SeriesVariant::AsPrinted, 3) ==
          doctest::Approx(2.0682870370370370e-4).epsilon(1e-14));
    CHECK(divergence::kl_series(q, eps, SeriesVariant::AsPrinted, 4) ==
          doctest::Approx(2.0681954089506173e-4).epsilon(1e-14));
    CHECK(divergence::kl_series(q, eps, SeriesVariant::AsPrinted, 5) ==
          doctest::Approx(2.0681930700231481e-4).epsilon(1e-14));

    CHECK(divergence::kl_series(q, eps, SeriesVariant::DerivativeBased, 3) ==
          doctest::Approx(2.0891203703703704e-4).epsilon(1e-14));
    CHECK(divergence::kl_series(q, eps, SeriesVariant::DerivativeBased, 4) ==
          doctest::Approx(2.0892891589506173e-4).epsilon(1e-14));
    CHECK(divergence::kl_series(q, eps, SeriesVariant::DerivativeBased, 5) ==
          doctest::Approx(2.0892907262731481e-4).epsilon(1e-14));
}

TEST_CASE("derivative-based truncations collapse order by order") {
    // Each added term must bring the series a factor ~eps closer to the
    // exact divergence; the frozen remainders are 1.7e-8, 1.6e-10, 3.7e-12.
    const double exact = divergence::kl_bernoulli(0.6, 0.61);
    const double r3 = std::abs(
        exact - divergence::kl_series(0.6, 0.01, SeriesVariant::DerivativeBased, 3));
    const double r4 = std::abs(
        exact - divergence::kl_series(0.6, 0.01, SeriesVariant::DerivativeBased, 4));
    const double r5 = std::abs(
        exact - divergence::kl_series(0.6, 0.01, SeriesVariant::DerivativeBased, 5));
    CHECK(r3 == doctest::Approx(1.7039328e-8).epsilon(1e-4));
    CHECK(r4 == doctest::Approx(1.6047033e-10).epsilon(1e-4));
    CHECK(r5 == doctest::Approx(3.7380778e-12).epsilon(1e-4));
    CHECK(r4 < r3 / 50.0);
    CHECK(r5 < r4 / 20.0);
}

TEST_CASE("the printed cubic stalls at O(eps^3)") {
    // Its cubic correction has the wrong sign, so adding terms does not
    // converge to the exact value: the order-5 remainder stays at the
    // order-3 scale.
    const double exact = divergence::kl_bernoulli(0.6, 0.61);
    const double r3 = std::abs(
        exact - divergence::kl_series(0.6, 0.01, SeriesVariant::AsPrinted, 3));
    const double r5 = std::abs(
        exact - divergence::kl_series(0.6, 0.01, SeriesVariant::AsPrinted, 5));
    CHECK(r3 == doctest::Approx(2.10037266e-6).epsilon(1e-4));
    CHECK(r5 > 1e-6);
}

TEST_CASE("kl_series validates inputs") {
    CHECK_THROWS_AS(divergence::kl_series(0.6, 0.01, SeriesVariant::AsPrinted, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(divergence::kl_series(0.6, 0.01, SeriesVariant::AsPrinted, 6),
                    std::invalid_argument);
    CHECK_THROWS_AS(divergence::kl_series(0.6, 0.5, SeriesVariant::AsPrinted, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(divergence::kl_series(0.0, 0.01, SeriesVariant::AsPrinted, 3),
                    std::invalid_argument);
}

TEST_CASE("bregman closed forms") {
    const auto se = DivergenceSpec::squared_euclidean();
    CHECK(divergence::bregman(se, 0.7, 0.4) ==
          doctest::Approx(0.09).epsilon(1e-15));

    const auto is = DivergenceSpec::itakura_saito();
    CHECK(divergence::bregman(is, 0.6, 0.5) ==
          doctest::Approx(0.017678443206045374).epsilon(1e-14));
    CHECK(divergence::bregman(is, 0.5, 0.6) ==
          doctest::Approx(0.01565489012728796).epsilon(1e-14));

    const auto kl = DivergenceSpec::kl();
    CHECK(divergence::bregman(kl, 0.61, 0.6) ==
          doctest::Approx(divergence::kl_bernoulli(0.6, 0.61)).epsilon(1e-15));
}

TEST_CASE("custom generators reproduce the built-in closed forms") {
    const auto custom_se = DivergenceSpec::custom(
        [](double t) { return t * t; }, [](double t) { return 2.0 * t; });
    const auto se = DivergenceSpec::squared_euclidean();
    for (double x : {0.1, 0.4, 0.9}) {
        for (double y : {0.2, 0.5, 0.8}) {
            CHECK(divergence::bregman(custom_se, x, y) ==
                  doctest::Approx(divergence::bregman(se, x, y)).epsilon(1e-12));
        }
    }
    CHECK_THROWS_AS(DivergenceSpec::custom(nullptr, [](double) { return 0.0; }),
                    std::invalid_argument);
    CHECK_THROWS_AS(DivergenceSpec::custom([](double) { return 0.0; }, nullptr),
                    std::invalid_argument);
}

TEST_CASE("generator domains are enforced") {
    const auto kl = DivergenceSpec::kl();
    CHECK_THROWS_AS(kl.generator(0.0), std::domain_error);
    CHECK_THROWS_AS(kl.generator(1.0), std::domain_error);
    CHECK_THROWS_AS(kl.derivative(-0.5), std::domain_error);

    const auto is = DivergenceSpec::itakura_saito();
    CHECK_THROWS_AS(is.generator(0.0), std::domain_error);
    CHECK_THROWS_AS(is.derivative(-1.0), std::domain_error);
    CHECK(is.generator(2.0) == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
}

TEST_CASE("from_center places the candidate in the first Bregman slot") {
    const auto kl = DivergenceSpec::kl();
    CHECK(divergence::from_center(kl, 0.6, 0.61) ==
          divergence::kl_bernoulli(0.6, 0.61));
    const auto is = DivergenceSpec::itakura_saito();
    CHECK(divergence::from_center(is, 0.6, 0.5) ==
          divergence::bregman(is, 0.5, 0.6));
}

TEST_CASE("from_center grows monotonically away from the center") {
    for (const auto& spec :
         {DivergenceSpec::kl(), DivergenceSpec::itakura_saito(),
          DivergenceSpec::squared_euclidean()}) {
        const double q = 0.6;
        double previous = 0.0;
        for (double p = 0.61; p < 0.95; p += 0.01) {
            const double value = divergence::from_center(spec, q, p);
            CHECK(value > previous);
            previous = value;
        }
        previous = 0.0;
        for (double p = 0.59; p > 0.05; p -= 0.01) {
            const double value = divergence::from_center(spec, q, p);
            CHECK(value > previous);
            previous = value;
        }
    }
}

TEST_CASE("solve_uncertainty_set frozen roots") {
    const auto kl_set =
        divergence::solve_uncertainty_set(DivergenceSpec::kl(), 0.6, 0.005);
    CHECK(kl_set.p_minus == doctest::Approx(0.5507185343280673).epsilon(1e-13));
    CHECK(kl_set.p_plus == doctest::Approx(0.6486141047216655).epsilon(1e-13));

    const auto is_set = divergence::solve_uncertainty_set(
        DivergenceSpec::itakura_saito(), 0.6, 0.005);
    CHECK(is_set.p_minus == doctest::Approx(0.5419831097590573).epsilon(1e-13));
    CHECK(is_set.p_plus == doctest::Approx(0.6620164458671038).epsilon(1e-13));

    // Squared Euclidean inverts to q -+ sqrt(alpha).
    const auto se_set = divergence::solve_uncertainty_set(
        DivergenceSpec::squared_euclidean(), 0.6, 0.0025);
    CHECK(se_set.p_minus == doctest::Approx(0.55).epsilon(1e-13));
    CHECK(se_set.p_plus == doctest::Approx(0.65).epsilon(1e-13));
}

TEST_CASE("a zero budget collapses the set onto the center") {
    const auto set =
        divergence::solve_uncertainty_set(DivergenceSpec::kl(), 0.6, 0.0);
    CHECK(set.p_minus == 0.6);
    CHECK(set.p_plus == 0.6);
    CHECK(set.budget_alpha == 0.0);
}

TEST_CASE("solver residuals stay within 1e-12 on random instances") {
    std::mt19937_64 rng(20260814);
    std::uniform_real_distribution<double> q_dist(0.05, 0.95);
    std::uniform_real_distribution<double> u_dist(0.0, 1.0);
    for (const auto& spec :
         {DivergenceSpec::kl(), DivergenceSpec::itakura_saito(),
          DivergenceSpec::squared_euclidean()}) {
        for (int i = 0; i < 200; ++i) {
            const double q = q_dist(rng);
            const double lo = divergence::from_center(spec, q, 1e-15);
            const double hi = divergence::from_center(spec, q, 1.0 - 1e-15);
            const double alpha = u_dist(rng) * 0.95 * std::min(lo, hi);
            const auto set = divergence::solve_uncertainty_set(spec, q, alpha);
            CHECK(set.p_minus <= q);
            CHECK(q <= set.p_plus);
            CHECK(std::abs(divergence::from_center(spec, q, set.p_minus) - alpha) <=
                  1e-12);
            CHECK(std::abs(divergence::from_center(spec, q, set.p_plus) - alpha) <=
                  1e-12);
        }
    }
}

TEST_CASE("unattainable budgets raise NoRootError with the failing side") {
    // From q=0.6 the divergence to the boundaries is about 0.916 (lower)
    // and 0.511 (upper), so 0.6 only breaks the upper side.
    try {
        divergence::solve_uncertainty_set(DivergenceSpec::kl(), 0.6, 0.6);
        FAIL("expected NoRootError");
    } catch (const divergence::NoRootError& error) {
        CHECK(error.side() == divergence::NoRootError::Side::Upper);
        CHECK(error.attainable() ==
              doctest::Approx(0.5108256237659907).epsilon(1e-6));
    }
    try {
        divergence::solve_uncertainty_set(DivergenceSpec::kl(), 0.6, 1.0);
        FAIL("expected NoRootError");
    } catch (const divergence::NoRootError& error) {
        CHECK(error.side() == divergence::NoRootError::Side::Lower);
        CHECK(error.attainable() ==
              doctest::Approx(0.9162907318741551).epsilon(1e-6));
    }
    CHECK_THROWS_AS(divergence::solve_uncertainty_set(
                        DivergenceSpec::squared_euclidean(), 0.6, 0.5),
                    divergence::NoRootError);
}

TEST_CASE("solve_uncertainty_set validates q and alpha") {
    const auto kl = DivergenceSpec::kl();
    CHECK_THROWS_AS(divergence::solve_uncertainty_set(kl, 0.0, 0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(divergence::solve_uncertainty_set(kl, 0.6, -0.01),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        divergence::solve_uncertainty_set(kl, 0.6,
                                          std::numeric_limits<double>::infinity()),
        std::invalid_argument);
}
