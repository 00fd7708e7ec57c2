#include "alphatime/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace alphatime {

namespace {
constexpr double kPi = std::numbers::pi;

// Standard draw (t = 1) of the symmetric CMS transform: V uniform on
// (-pi/2, pi/2), W exponential,
//   X = sin(aV)/cos(V)^{1/a} * [cos((1-a)V)/W]^{(1-a)/a},
// which has characteristic function exp(-|xi|^a).
double cms_standard(double a, RngStream& rng) {
    const double v = kPi * (rng.uniform01() - 0.5);
    const double w = rng.exponential();
    return std::sin(a * v) / std::pow(std::cos(v), 1.0 / a) *
           std::pow(std::cos((1.0 - a) * v) / w, (1.0 - a) / a);
}

// Standard Kanter draw (t = 1) of the one-sided beta-stable subordinator:
//   S = (B(theta)/W)^{(1-b)/b},
//   B(theta) = [sin(b th)^b sin((1-b) th)^{1-b} / sin th]^{1/(1-b)},
// theta uniform on (0, pi), W exponential. Evaluated in logs so the
// theta -> pi blowup of B cannot produce NaNs.
double kanter_standard(double b, RngStream& rng) {
    const double th = kPi * rng.uniform01();
    const double w = rng.exponential();
    const double log_b = (b * std::log(std::sin(b * th)) +
                          (1.0 - b) * std::log(std::sin((1.0 - b) * th)) -
                          std::log(std::sin(th))) /
                         (1.0 - b);
    return std::exp((1.0 - b) / b * (log_b - std::log(w)));
}
}  // namespace

PathSpec PathSpec::subordinator(double beta) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("PathSpec: subordinator index must be in (0,1)");
    PathSpec p;
    p.kind = Kind::subordinator;
    p.beta = beta;
    return p;
}

PathSpec PathSpec::brownian(int dim) {
    if (dim < 1) throw std::invalid_argument("PathSpec: dimension must be >= 1");
    PathSpec p;
    p.kind = Kind::brownian;
    p.dim = dim;
    return p;
}

double sample_symmetric_stable(AlphaIndex alpha, double t, RngStream& rng) {
    if (!(t > 0.0))
        throw std::invalid_argument("sample_symmetric_stable: t must be > 0");
    const double a = alpha.value();
    const double scale = std::pow(t, 1.0 / a);
    if (alpha.is_one()) return t * rng.cauchy();
    if (alpha.is_two()) return std::sqrt(2.0 * t) * rng.normal();
    return scale * cms_standard(a, rng);
}

double sample_subordinator(double beta, double t, RngStream& rng) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("sample_subordinator: beta must be in (0,1)");
    if (!(t > 0.0))
        throw std::invalid_argument("sample_subordinator: t must be > 0");
    return std::pow(t, 1.0 / beta) * kanter_standard(beta, rng);
}

PathSkeleton sample_path(const PathSpec& spec, std::span<const double> grid,
                         std::span<const double> start, RngStream& rng) {
    if (grid.empty()) throw std::invalid_argument("sample_path: empty grid");
    if (grid[0] != 0.0)
        throw std::invalid_argument("sample_path: grid must start at 0");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("sample_path: grid must be strictly increasing");

    const int dim = spec.kind == PathSpec::Kind::brownian ? spec.dim : 1;
    if (start.size() != static_cast<std::size_t>(dim))
        throw std::invalid_argument("sample_path: start point has wrong dimension");

    PathSkeleton sk;
    sk.dim = dim;
    sk.times.assign(grid.begin(), grid.end());
    sk.values.resize(grid.size() * static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) sk.values[static_cast<std::size_t>(d)] = start[static_cast<std::size_t>(d)];

    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double dt = grid[i] - grid[i - 1];
        switch (spec.kind) {
            case PathSpec::Kind::symmetric_stable:
                sk.values[i] = sk.values[i - 1] +
                               sample_symmetric_stable(spec.alpha, dt, rng);
                break;
            case PathSpec::Kind::subordinator:
                sk.values[i] = sk.values[i - 1] +
                               sample_subordinator(spec.beta, dt, rng);
                break;
            case PathSpec::Kind::brownian: {
                const double sd = std::sqrt(2.0 * dt);
                for (int d = 0; d < dim; ++d) {
                    const std::size_t k = i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d);
                    sk.values[k] = sk.values[k - static_cast<std::size_t>(dim)] + sd * rng.normal();
                }
                break;
            }
        }
    }
    return sk;
}

std::vector<double> sample_alpha_time_marginal(AlphaIndex alpha, double t,
                                               std::span<const double> x,
                                               RngStream& rng) {
    if (!(t > 0.0))
        throw std::invalid_argument("sample_alpha_time_marginal: t must be > 0");
    const double clock = std::abs(sample_symmetric_stable(alpha, t, rng));
    const double sd = std::sqrt(2.0 * clock);
    std::vector<double> z(x.begin(), x.end());
    for (auto& zi : z) zi += sd * rng.normal();
    return z;
}

}  // namespace alphatime
