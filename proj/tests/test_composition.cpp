#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "alphatime/composition.hpp"

using namespace alphatime;

namespace {
const std::vector<double> kOrigin{0.0};
}

TEST_CASE("constant plane wave is preserved by every clock") {
    for (auto spec : {CompositionSpec::cauchy_time(PlaneWave{{0.0}}),
                      CompositionSpec::btp(PlaneWave{{0.0}}),
                      CompositionSpec::alpha_time(AlphaIndex::of(1, 2),
                                                  PlaneWave{{0.0}})})
        for (double t : {0.2, 1.0, 3.0})
            CHECK(u_quadrature(spec, t, std::vector<double>{0.9}) == 1.0);
}

TEST_CASE("effective beta per variant") {
    CHECK(effective_beta(CompositionSpec::cauchy_time(PlaneWave{{2.0}})) == 4.0);
    CHECK(effective_beta(CompositionSpec::eps_weighted(PlaneWave{{1.0}}, 1.0)) ==
          2.0);
    CHECK(effective_beta(CompositionSpec::eps_weighted(PlaneWave{{2.0}}, 0.5)) ==
          4.0);
    CHECK(effective_beta(CompositionSpec::feynman_kac(PlaneWave{{1.0}}, -1.0)) ==
          2.0);
    CHECK(effective_beta(CompositionSpec::btp(PlaneWave{{1.0}})) == 1.0);
}

TEST_CASE("quadrature value equals the frozen profile references") {
    CHECK(u_quadrature(CompositionSpec::cauchy_time(PlaneWave{{1.0}}), 1.0,
                       kOrigin) ==
          doctest::Approx(0.39562711831892246).epsilon(1e-12));
    CHECK(u_quadrature(CompositionSpec::btp(PlaneWave{{1.0}}), 1.0, kOrigin) ==
          doctest::Approx(std::exp(1.0) * std::erfc(1.0)).epsilon(1e-12));
    // at x != 0 the cosine factor multiplies in
    CHECK(u_quadrature(CompositionSpec::cauchy_time(PlaneWave{{1.0}}), 1.0,
                       std::vector<double>{1.1}) ==
          doctest::Approx(std::cos(1.1) * 0.39562711831892246).epsilon(1e-12));
}

TEST_CASE("MC agrees with quadrature for every sampled variant") {
    const std::uint64_t n = 400000;
    int stream = 0;
    const auto check = [&](const CompositionSpec& spec, double t) {
        const double uq = u_quadrature(spec, t, kOrigin);
        const Estimate um = u_mc(spec, t, kOrigin, n, 500 + 97 * (++stream), 1);
        INFO(variant_name(spec.variant), " t=", t);
        CHECK(std::abs(uq - um.mean) <= 4.0 * um.std_error);
    };
    check(CompositionSpec::cauchy_time(PlaneWave{{1.0}}), 1.0);
    check(CompositionSpec::cauchy_time(PlaneWave{{2.0}}), 0.5);
    check(CompositionSpec::eps_weighted(PlaneWave{{1.0}}, 1.0), 1.0);
    check(CompositionSpec::eps_weighted(PlaneWave{{1.0}}, 0.5), 2.0);
    check(CompositionSpec::feynman_kac(PlaneWave{{1.0}}, -1.0), 1.0);
    check(CompositionSpec::alpha_time(AlphaIndex::of(1, 2), PlaneWave{{1.0}}),
          1.0);
    check(CompositionSpec::alpha_time(AlphaIndex::of(3, 2), PlaneWave{{0.5}}),
          1.0);
    check(CompositionSpec::btp(PlaneWave{{1.0}}), 1.0);
}

TEST_CASE("eps-weighted profile matches g(t; 1, 1/eps + eps k^2)") {
    const auto spec = CompositionSpec::eps_weighted(PlaneWave{{1.0}}, 1.0);
    CHECK(u_quadrature(spec, 1.0, kOrigin) ==
          doctest::Approx(weighted_kernel_value(AlphaIndex::of(1, 1), 2.0, 1.0))
              .epsilon(1e-13));
}

TEST_CASE("feynman-kac at kappa = 0 reduces to the weight expectation") {
    // E[e^{-|C(t)|}] = g(t; 1, 1)
    const auto spec = CompositionSpec::feynman_kac(PlaneWave{{0.0}}, -1.0);
    CHECK(u_quadrature(spec, 1.0, std::vector<double>{2.2}) ==
          doctest::Approx(0.39562711831892246).epsilon(1e-12));
    const Estimate um = u_mc(spec, 1.0, std::vector<double>{2.2}, 300000, 91, 1);
    CHECK(std::abs(um.mean - 0.39562711831892246) <= 4.0 * um.std_error);
}

TEST_CASE("gaussian bump route: quadrature vs MC") {
    const auto spec = CompositionSpec::cauchy_time(GaussianBump{{0.0}, 1.0});
    const double uq = u_quadrature(spec, 1.0, kOrigin);
    const Estimate um = u_mc(spec, 1.0, kOrigin, 400000, 92, 1);
    CHECK(std::abs(uq - um.mean) <= 4.0 * um.std_error);
    // bounded by sup f = 1
    CHECK(uq > 0.0);
    CHECK(uq < 1.0);
}

TEST_CASE("initial condition: u -> f as t goes to 0") {
    for (double k : {0.5, 1.0, 2.0}) {
        const auto spec = CompositionSpec::cauchy_time(PlaneWave{{k}});
        CHECK(std::abs(u_quadrature(spec, 1e-4, kOrigin) - 1.0) <= 1e-2);
    }
}

TEST_CASE("boundedness: |u| <= sup |f| across variants") {
    for (double k : {0.5, 1.7}) {
        CHECK(u_quadrature(CompositionSpec::cauchy_time(PlaneWave{{k}}), 0.8,
                           kOrigin) <= 1.0);
        CHECK(u_quadrature(CompositionSpec::eps_weighted(PlaneWave{{k}}, 0.7),
                           0.8, kOrigin) <= 1.0);
        CHECK(u_quadrature(CompositionSpec::feynman_kac(PlaneWave{{k}}, -0.3),
                           0.8, kOrigin) <= 1.0);
        CHECK(u_quadrature(CompositionSpec::btp(PlaneWave{{k}}), 0.8, kOrigin) <=
              1.0);
    }
}

TEST_CASE("ictbap closed forms") {
    const std::vector<double> k_unit{1.0};
    for (double t : {0.3, 1.0, 2.5})
        CHECK(u_ictbap(k_unit, t, kOrigin).closed_form ==
              doctest::Approx(1.0).epsilon(1e-14));
    const std::vector<double> k_sqrt2{std::numbers::sqrt2};
    CHECK(u_ictbap(k_sqrt2, 1.0, kOrigin).closed_form ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    const std::vector<double> k_zero{0.0};
    CHECK(u_ictbap(k_zero, 2.0, kOrigin).closed_form ==
          doctest::Approx(std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("ictbap quadrature branch stays within its reported error") {
    for (double k2 : {0.0, 1.0, 2.0, 4.0})
        for (double t : {0.5, 1.0, 2.0}) {
            const std::vector<double> kv{std::sqrt(k2)};
            const IctbapValue v = u_ictbap(kv, t, kOrigin);
            INFO("k2=", k2, " t=", t);
            CHECK(std::abs(v.quadrature - v.closed_form) <= v.quadrature_error);
        }
}

TEST_CASE("spec factories enforce the variant constraints") {
    CHECK_THROWS_AS(CompositionSpec::eps_weighted(PlaneWave{{1.0}}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(CompositionSpec::feynman_kac(PlaneWave{{1.0}}, 0.5),
                    std::invalid_argument);
    CHECK(CompositionSpec::cauchy_time(PlaneWave{{1.0}}).alpha.is_one());
    CHECK(CompositionSpec::btp(PlaneWave{{1.0}}).alpha.is_two());
    CHECK_THROWS_AS(
        u_quadrature(CompositionSpec::cauchy_time(PlaneWave{{1.0}}), 0.0,
                     kOrigin),
        std::invalid_argument);
    CompositionSpec ict;
    ict.variant = Variant::ictbap;
    ict.f = PlaneWave{{1.0}};
    CHECK_THROWS_AS(u_mc(ict, 1.0, kOrigin, 1000, 1, 1), std::invalid_argument);
}
