#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "alphatime/densities.hpp"
#include "alphatime/mc.hpp"
#include "alphatime/sampling.hpp"
#include "alphatime/stats.hpp"

using namespace alphatime;

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> draw(std::uint64_t n, std::uint64_t seed,
                         const std::function<double(RngStream&)>& gen) {
    std::vector<double> out;
    mc::fill(n, seed, 0, gen, 1, out);
    return out;
}
}  // namespace

TEST_CASE("characteristic function: E[cos(xi Y(1))] = exp(-|xi|^alpha)") {
    const std::uint64_t n = 200000;
    const double bound = 4.0 / std::sqrt(static_cast<double>(n));
    int stream = 0;
    for (const char* a : {"1/3", "1/2", "1", "3/2", "2"}) {
        const std::string s(a);
        const auto slash = s.find('/');
        const AlphaIndex alpha =
            slash == std::string::npos
                ? AlphaIndex::of(std::stoi(s), 1)
                : AlphaIndex::of(std::stoi(s.substr(0, slash)),
                                 std::stoi(s.substr(slash + 1)));
        for (double xi : {0.5, 1.0, 2.0}) {
            const Estimate est = mc::estimate(
                n, 42 + 1000 * (++stream), 0,
                [&](RngStream& rng) {
                    return std::cos(xi * sample_symmetric_stable(alpha, 1.0, rng));
                },
                1);
            const double target = std::exp(-std::pow(xi, alpha.value()));
            INFO("alpha=", a, " xi=", xi);
            CHECK(std::abs(est.mean - target) <= bound);
        }
    }
}

TEST_CASE("alpha = 2, t = 0.5 has variance 1") {
    const auto v = draw(200000, 5, [](RngStream& rng) {
        return sample_symmetric_stable(AlphaIndex::of(2, 1), 0.5, rng);
    });
    double sum_sq = 0.0;
    for (double x : v) sum_sq += x * x;
    CHECK(sum_sq / static_cast<double>(v.size()) ==
          doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("alpha = 1 draws pass a KS test against the Cauchy CDF") {
    auto v = draw(100000, 6, [](RngStream& rng) {
        return sample_symmetric_stable(AlphaIndex::of(1, 1), 1.0, rng);
    });
    std::sort(v.begin(), v.end());
    const double d = ks_statistic(
        v, [](double y) { return 0.5 + std::atan(y) / kPi; });
    CHECK(d < ks_critical(0.01, static_cast<double>(v.size())));
}

TEST_CASE("scaling law: Y(t) equals t^{1/alpha} Y(1) in distribution") {
    for (const AlphaIndex alpha :
         {AlphaIndex::of(1, 2), AlphaIndex::of(3, 2), AlphaIndex::of(2, 1)}) {
        const double t = 1.7;
        auto a = draw(60000, 11, [&](RngStream& rng) {
            return sample_symmetric_stable(alpha, t, rng);
        });
        auto b = draw(60000, 12, [&](RngStream& rng) {
            return std::pow(t, 1.0 / alpha.value()) *
                   sample_symmetric_stable(alpha, 1.0, rng);
        });
        const double d = ks_two_sample(a, b);
        const double n_eff = 60000.0 * 60000.0 / 120000.0;
        INFO("alpha=", alpha.str());
        CHECK(d < ks_critical(0.01, n_eff));
    }
}

TEST_CASE("subordinator: Laplace functional and positivity") {
    const std::uint64_t n = 200000;
    const Estimate est = mc::estimate(
        n, 13, 0,
        [](RngStream& rng) {
            return std::exp(-sample_subordinator(0.5, 1.0, rng));
        },
        1);
    CHECK(std::abs(est.mean - std::exp(-1.0)) <= 4.0 * est.std_error);

    RngStream rng(14, 0);
    for (int i = 0; i < 10000; ++i)
        CHECK(sample_subordinator(0.25, 0.7, rng) > 0.0);
}

TEST_CASE("subordinator beta = 1/2 KS against the closed-form CDF") {
    auto v = draw(100000, 15, [](RngStream& rng) {
        return sample_subordinator(0.5, 1.0, rng);
    });
    std::sort(v.begin(), v.end());
    // CDF of the Levy law with LT e^{-sqrt(lambda)}: erfc(1/(2 sqrt s))
    const double d = ks_statistic(
        v, [](double s) { return std::erfc(1.0 / (2.0 * std::sqrt(s))); });
    CHECK(d < ks_critical(0.01, static_cast<double>(v.size())));
}

TEST_CASE("subordinator stable scaling: T_2 = 4 T_1 in law for beta = 1/2") {
    auto a = draw(60000, 16, [](RngStream& rng) {
        return sample_subordinator(0.5, 2.0, rng);
    });
    auto b = draw(60000, 17, [](RngStream& rng) {
        return 4.0 * sample_subordinator(0.5, 1.0, rng);
    });
    const double d = ks_two_sample(a, b);
    CHECK(d < ks_critical(0.01, 30000.0));
}

TEST_CASE("brownian path skeleton: variance 2t and start point") {
    const std::vector<double> grid{0.0, 1.0};
    const std::vector<double> start{0.0};
    double sum_sq = 0.0;
    const int n = 100000;
    RngStream rng(18, 0);
    for (int i = 0; i < n; ++i) {
        const PathSkeleton sk =
            sample_path(PathSpec::brownian(1), grid, start, rng);
        CHECK(sk.at(0) == 0.0);
        sum_sq += sk.at(1) * sk.at(1);
    }
    CHECK(sum_sq / n == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("stable skeleton endpoint matches the one-shot marginal in law") {
    const std::vector<double> grid{0.0, 0.5, 1.0};
    const std::vector<double> start{0.0};
    auto a = draw(50000, 19, [&](RngStream& rng) {
        return sample_path(PathSpec::symmetric_stable(AlphaIndex::of(1, 1)),
                           grid, start, rng)
            .at(2);
    });
    auto b = draw(50000, 20, [](RngStream& rng) {
        return sample_symmetric_stable(AlphaIndex::of(1, 1), 1.0, rng);
    });
    CHECK(ks_two_sample(a, b) < ks_critical(0.01, 25000.0));
}

TEST_CASE("subordinator paths are strictly increasing") {
    const std::vector<double> grid{0.0, 0.3, 0.7, 1.1, 2.0};
    const std::vector<double> start{0.0};
    RngStream rng(21, 0);
    for (int i = 0; i < 5000; ++i) {
        const PathSkeleton sk =
            sample_path(PathSpec::subordinator(0.5), grid, start, rng);
        for (std::size_t j = 1; j < sk.size(); ++j)
            CHECK(sk.at(j) > sk.at(j - 1));
    }
}

TEST_CASE("alpha-time marginal matches the quadrature profile") {
    // E[cos(Z^0_Y(1))] = g(1; 1, 1) for the Cauchy clock
    const double target =
        weighted_kernel_value(AlphaIndex::of(1, 1), 1.0, 1.0);
    const std::vector<double> x0{0.0};
    const Estimate est = mc::estimate(
        400000, 22, 0,
        [&](RngStream& rng) {
            return std::cos(
                sample_alpha_time_marginal(AlphaIndex::of(1, 1), 1.0, x0, rng)[0]);
        },
        1);
    CHECK(std::abs(est.mean - target) <= 4.0 * est.std_error);
}

TEST_CASE("alpha-time marginal collapses to the start point as t -> 0") {
    const std::vector<double> x0{1.3};
    const Estimate est = mc::estimate(
        50000, 23, 0,
        [&](RngStream& rng) {
            return sample_alpha_time_marginal(AlphaIndex::of(2, 1), 1e-10, x0,
                                              rng)[0];
        },
        1);
    CHECK(est.mean == doctest::Approx(1.3).epsilon(1e-4));
}

TEST_CASE("alpha-time marginal is symmetric about the origin") {
    auto v = draw(60000, 24, [](RngStream& rng) {
        const std::vector<double> x0{0.0};
        return sample_alpha_time_marginal(AlphaIndex::of(1, 1), 2.0, x0, rng)[0];
    });
    std::vector<double> first(v.begin(), v.begin() + 30000);
    std::vector<double> flipped(v.begin() + 30000, v.end());
    for (auto& x : flipped) x = -x;
    CHECK(ks_two_sample(first, flipped) < ks_critical(0.01, 15000.0));
}

TEST_CASE("argument validation") {
    RngStream rng(1, 0);
    CHECK_THROWS_AS(sample_symmetric_stable(AlphaIndex::of(1, 1), 0.0, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(sample_symmetric_stable(AlphaIndex::of(1, 1), -1.0, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(AlphaIndex::of(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(AlphaIndex::of(0, 2), std::invalid_argument);
    CHECK_THROWS_AS(sample_subordinator(1.0, 1.0, rng), std::invalid_argument);
    CHECK_THROWS_AS(sample_subordinator(0.0, 1.0, rng), std::invalid_argument);
    const std::vector<double> start{0.0};
    const std::vector<double> empty{};
    const std::vector<double> bad{0.0, 0.5, 0.5};
    const std::vector<double> nonzero{0.5, 1.0};
    CHECK_THROWS_AS(
        sample_path(PathSpec::brownian(1), empty, start, rng),
        std::invalid_argument);
    CHECK_THROWS_AS(sample_path(PathSpec::brownian(1), bad, start, rng),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        sample_path(PathSpec::brownian(1), nonzero, start, rng),
        std::invalid_argument);
    CHECK_THROWS_AS(sample_alpha_time_marginal(AlphaIndex::of(1, 1), 0.0,
                                               start, rng),
                    std::invalid_argument);
}

TEST_CASE("AlphaIndex reduces to lowest terms") {
    const AlphaIndex a = AlphaIndex::of(2, 4);
    CHECK(a.l == 1);
    CHECK(a.m == 2);
    CHECK(a.value() == 0.5);
    CHECK(AlphaIndex::of(4, 2).is_two());
    CHECK(AlphaIndex::of(3, 3).is_one());
}
