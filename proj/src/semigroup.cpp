#include "alphatime/semigroup.hpp"

#include <cmath>
#include <stdexcept>

#include "alphatime/mc.hpp"

namespace alphatime {

namespace {
double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}
}  // namespace

double PlaneWave::operator()(std::span<const double> x) const {
    return std::cos(dot(kappa, x));
}

double PlaneWave::kappa_sq() const { return dot(kappa, kappa); }

double GaussianBump::operator()(std::span<const double> x) const {
    double q = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
        const double d = x[i] - center[i];
        q += d * d;
    }
    return std::exp(-q / width);
}

ConstantPotential::ConstantPotential(double value) : c(value) {
    if (c > 0.0)
        throw std::invalid_argument("ConstantPotential: c must be <= 0");
}

double evaluate(const TestFunction& f, std::span<const double> x) {
    return std::visit([&](const auto& fn) { return fn(x); }, f);
}

double heat_semigroup_apply(const TestFunction& f, double s,
                            std::span<const double> x) {
    if (s < 0.0)
        throw std::invalid_argument("heat_semigroup_apply: s must be >= 0");
    if (const auto* pw = std::get_if<PlaneWave>(&f))
        return std::exp(-pw->kappa_sq() * s) * (*pw)(x);
    const auto& gb = std::get<GaussianBump>(f);
    if (s == 0.0) return gb(x);
    const double a = gb.width;
    const double aw = a + 4.0 * s;
    double q = 0.0;
    for (std::size_t i = 0; i < gb.center.size(); ++i) {
        const double d = x[i] - gb.center[i];
        q += d * d;
    }
    const double n = static_cast<double>(gb.center.size());
    return std::pow(a / aw, 0.5 * n) * std::exp(-q / aw);
}

double generator_power(const PlaneWave& f, int j, std::span<const double> x) {
    if (j < 0) throw std::invalid_argument("generator_power: j must be >= 0");
    return std::pow(-f.kappa_sq(), j) * f(x);
}

double fk_semigroup_apply(const PlaneWave& f, ConstantPotential c, double s,
                          std::span<const double> x) {
    if (s < 0.0)
        throw std::invalid_argument("fk_semigroup_apply: s must be >= 0");
    return std::exp(c.c * s) * std::exp(-f.kappa_sq() * s) * f(x);
}

Estimate mc_semigroup(const TestFunction& f, const PotentialSpec& pot,
                      double s, std::span<const double> x, std::uint64_t n,
                      std::uint64_t seed, int workers) {
    if (n < 100) throw std::invalid_argument("mc_semigroup: need n >= 100");
    if (!(s > 0.0)) throw std::invalid_argument("mc_semigroup: s must be > 0");
    const std::vector<double> x0(x.begin(), x.end());
    const std::size_t dim = x0.size();

    if (const auto* cp = std::get_if<ConstantPotential>(&pot)) {
        // constant potential factors out: one exact Gaussian step
        const double weight = std::exp(cp->c * s);
        const double sd = std::sqrt(2.0 * s);
        return mc::estimate(
            n, seed, 0,
            [&, weight, sd](RngStream& rng) {
                std::vector<double> y(dim);
                for (std::size_t i = 0; i < dim; ++i)
                    y[i] = x0[i] + sd * rng.normal();
                return weight * evaluate(f, y);
            },
            workers);
    }

    const auto& pp = std::get<PathPotential>(pot);
    const double h = pp.step;
    if (!(h > 0.0))
        throw std::invalid_argument("mc_semigroup: path potential needs h > 0");
    return mc::estimate(
        n, seed, 0,
        [&](RngStream& rng) {
            std::vector<double> y = x0;
            double integral = 0.0;
            double t = 0.0;
            while (t < s) {
                const double dt = std::min(h, s - t);
                integral += pp.c(y) * dt;  // left-endpoint Riemann sum
                const double sd = std::sqrt(2.0 * dt);
                for (std::size_t i = 0; i < dim; ++i) y[i] += sd * rng.normal();
                t += dt;
            }
            return evaluate(f, y) * std::exp(integral);
        },
        workers);
}

}  // namespace alphatime
