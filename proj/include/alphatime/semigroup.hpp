#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "alphatime/stats.hpp"

namespace alphatime {

/// f(x) = cos(kappa . x). Bounded, smooth, and an eigenfunction of the
/// Laplacian: Delta f = -|kappa|^2 f, so every spatial derivative in the
/// PDE checks is closed form.
struct PlaneWave {
    std::vector<double> kappa;

    double operator()(std::span<const double> x) const;
    double kappa_sq() const;
    std::size_t dim() const { return kappa.size(); }
};

/// f(x) = exp(-|x - center|^2 / a). The heat semigroup maps this family
/// to itself with width a + 4s and amplitude (a/(a+4s))^{n/2}.
struct GaussianBump {
    std::vector<double> center;
    double width = 1.0;  // a > 0

    double operator()(std::span<const double> x) const;
    std::size_t dim() const { return center.size(); }
};

/// Constant potential c <= 0.
struct ConstantPotential {
    double c = 0.0;
    explicit ConstantPotential(double value);
    ConstantPotential() = default;
};

using TestFunction = std::variant<PlaneWave, GaussianBump>;

double evaluate(const TestFunction& f, std::span<const double> x);

/// T_s f(x) for the Brownian outer process with generator Delta
/// (per-coordinate variance 2s). Closed form for both families.
double heat_semigroup_apply(const TestFunction& f, double s,
                            std::span<const double> x);

/// Delta^j f(x) = (-|kappa|^2)^j cos(kappa . x).
double generator_power(const PlaneWave& f, int j, std::span<const double> x);

/// Constant-potential Feynman-Kac semigroup: e^{c s} T_s f(x), exact.
double fk_semigroup_apply(const PlaneWave& f, ConstantPotential c, double s,
                          std::span<const double> x);

/// Non-constant potential for the Monte Carlo oracle: evaluated by a
/// Riemann sum along a Brownian skeleton with step h (O(h) bias).
struct PathPotential {
    std::function<double(std::span<const double>)> c;
    double step = 1e-3;
};

using PotentialSpec = std::variant<ConstantPotential, PathPotential>;

/// Monte Carlo estimate of v(s,x) = E[f(X^x(s)) exp(int_0^s c(X(r)) dr)].
/// Unbiased for constant potentials (single exact Gaussian step);
/// O(h)-biased for path potentials.
Estimate mc_semigroup(const TestFunction& f, const PotentialSpec& pot,
                      double s, std::span<const double> x, std::uint64_t n,
                      std::uint64_t seed, int workers = 1);

}  // namespace alphatime
