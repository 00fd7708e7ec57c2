#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "alphatime/exit_time.hpp"
#include "alphatime/rng.hpp"

using namespace alphatime;

TEST_CASE("elliptic oracle on balls") {
    const BallDomain b1 = BallDomain::make(1, 1.0);
    CHECK(exit_oracle(b1, std::vector<double>{0.0}) == 0.5);
    CHECK(exit_oracle(b1, std::vector<double>{1.0}) == 0.0);
    CHECK(exit_oracle(b1, std::vector<double>{0.6}) ==
          doctest::Approx((1.0 - 0.36) / 2.0).epsilon(1e-14));
    const BallDomain b2 = BallDomain::make(2, 1.0);
    CHECK(exit_oracle(b2, std::vector<double>{0.0, 0.0}) == 0.25);
    CHECK_THROWS_AS(exit_oracle(b1, std::vector<double>{1.5}),
                    std::invalid_argument);
}

TEST_CASE("getoor conditional mean is the identity in tau") {
    CHECK(getoor_conditional_mean(1.0) == 1.0);
    CHECK(getoor_conditional_mean(0.5) == 0.5);
    CHECK(getoor_conditional_mean(0.0) == 0.0);
    CHECK_THROWS_AS(getoor_conditional_mean(-1.0), std::invalid_argument);
}

TEST_CASE("getoor identity observed directly on Cauchy paths") {
    // MC exit of the Cauchy skeleton from (-1,1): mean must approach 1
    RngStream rng(51, 0);
    const int n = 20000;
    const double h = 5e-4;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double c = 0.0;
        double t = 0.0;
        while (std::abs(c) < 1.0) {
            c += h * rng.cauchy();
            t += h;
        }
        sum += t;
    }
    const double mean = sum / n;
    CHECK(mean == doctest::Approx(getoor_conditional_mean(1.0)).epsilon(0.05));
}

TEST_CASE("collapsed estimator approaches the oracle") {
    const BallDomain ball = BallDomain::make(1, 1.0);
    const std::vector<double> x0{0.0};
    const ExitMcResult r =
        exit_time_mc(ball, x0, 1e-3, 20000, ExitEstimator::collapsed, 52);
    CHECK(!r.too_coarse);
    CHECK(std::abs(r.estimate.mean - 0.5) < 0.06);
}

TEST_CASE("two-stage and collapsed estimators agree") {
    const BallDomain ball = BallDomain::make(1, 1.0);
    const std::vector<double> x0{0.0};
    const ExitMcResult a =
        exit_time_mc(ball, x0, 1e-3, 20000, ExitEstimator::two_stage, 53);
    const ExitMcResult b =
        exit_time_mc(ball, x0, 1e-3, 20000, ExitEstimator::collapsed, 54);
    const double joint = std::sqrt(a.estimate.std_error * a.estimate.std_error +
                                   b.estimate.std_error * b.estimate.std_error);
    CHECK(std::abs(a.estimate.mean - b.estimate.mean) <= 4.0 * joint);
}

TEST_CASE("refinement ladder extrapolates to the oracle") {
    const BallDomain ball = BallDomain::make(1, 1.0);
    const std::vector<double> x0{0.0};
    const ExitRefinement ref = exit_time_refinement(
        ball, x0, 2e-3, 3, 20000, ExitEstimator::collapsed, 55);
    REQUIRE(ref.levels.size() == 3);
    CHECK(ref.levels[0].h == 2e-3);
    CHECK(ref.levels[2].h == 5e-4);
    CHECK(std::abs(ref.extrapolated - 0.5) / 0.5 < 0.05);
    CHECK(ref.trend_converging);
}

TEST_CASE("estimated mean decreases along a radius") {
    const BallDomain ball = BallDomain::make(1, 1.0);
    double prev = 1e300;
    for (double x : {0.0, 0.2, 0.4, 0.6, 0.8}) {
        const ExitMcResult r = exit_time_mc(ball, std::vector<double>{x}, 1e-3,
                                            20000, ExitEstimator::collapsed, 56);
        CHECK(r.estimate.mean < prev);
        prev = r.estimate.mean;
    }
}

TEST_CASE("radius scaling: doubling R multiplies the mean by about 4") {
    const std::vector<double> x0{0.0};
    const ExitMcResult r1 = exit_time_mc(BallDomain::make(1, 1.0), x0, 2e-3,
                                         20000, ExitEstimator::collapsed, 57);
    const ExitMcResult r2 = exit_time_mc(BallDomain::make(1, 2.0), x0, 2e-3,
                                         20000, ExitEstimator::collapsed, 58);
    const double joint =
        std::sqrt(16.0 * r1.estimate.std_error * r1.estimate.std_error +
                  r2.estimate.std_error * r2.estimate.std_error);
    // small systematic allowance: the two levels sit at different
    // effective resolutions, so their sqrt(h) biases do not cancel
    CHECK(std::abs(r2.estimate.mean - 4.0 * r1.estimate.mean) <=
          4.0 * joint + 0.03);
}

TEST_CASE("argument validation and coarse-step flag") {
    const BallDomain ball = BallDomain::make(1, 1.0);
    const std::vector<double> x0{0.0};
    CHECK_THROWS_AS(
        exit_time_mc(ball, x0, 1e-3, 100, ExitEstimator::collapsed, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(
        exit_time_mc(ball, x0, 0.0, 2000, ExitEstimator::collapsed, 1),
        std::invalid_argument);
    CHECK_THROWS_AS(exit_time_mc(ball, std::vector<double>{1.0}, 1e-3, 2000,
                                 ExitEstimator::collapsed, 1),
                    std::invalid_argument);
    const ExitMcResult coarse =
        exit_time_mc(ball, x0, 0.2, 2000, ExitEstimator::collapsed, 59);
    CHECK(coarse.too_coarse);
    CHECK_THROWS_AS(exit_time_refinement(ball, x0, 1e-3, 1, 2000,
                                         ExitEstimator::collapsed, 1),
                    std::invalid_argument);
}
