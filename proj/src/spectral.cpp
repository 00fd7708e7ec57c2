#include "alphatime/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "alphatime/mc.hpp"
#include "alphatime/sampling.hpp"

namespace alphatime {

namespace {
constexpr double kPi = std::numbers::pi;

void sort_modes(std::vector<SpectralDomain::Mode>& modes) {
    std::sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) {
        if (a.lambda != b.lambda) return a.lambda < b.lambda;
        return a.idx < b.idx;
    });
}
}  // namespace

SpectralDomain SpectralDomain::interval(double a, int max_modes) {
    if (!(a > 0.0))
        throw std::invalid_argument("SpectralDomain: side must be > 0");
    if (max_modes < 1)
        throw std::invalid_argument("SpectralDomain: need at least one mode");
    SpectralDomain d;
    d.sides = {a};
    for (int l = 1; l <= max_modes; ++l) {
        const double w = l * kPi / a;
        d.modes.push_back({{l}, w * w});
    }
    return d;
}

SpectralDomain SpectralDomain::box(std::vector<double> sides,
                                   int max_index_per_dim) {
    if (sides.empty() || sides.size() > 3)
        throw std::invalid_argument("SpectralDomain: box supports 1..3 dims");
    for (double a : sides)
        if (!(a > 0.0))
            throw std::invalid_argument("SpectralDomain: sides must be > 0");
    SpectralDomain d;
    d.sides = std::move(sides);
    const int n = d.dim();
    std::vector<int> idx(static_cast<std::size_t>(n), 1);
    while (true) {
        double lambda = 0.0;
        for (int i = 0; i < n; ++i) {
            const double w = idx[static_cast<std::size_t>(i)] * kPi / d.sides[static_cast<std::size_t>(i)];
            lambda += w * w;
        }
        d.modes.push_back({idx, lambda});
        int i = 0;
        for (; i < n; ++i) {
            if (++idx[static_cast<std::size_t>(i)] <= max_index_per_dim) break;
            idx[static_cast<std::size_t>(i)] = 1;
        }
        if (i == n) break;
    }
    sort_modes(d.modes);
    return d;
}

double SpectralDomain::eigenfunction(const Mode& mode,
                                     std::span<const double> x) const {
    double v = 1.0;
    for (std::size_t i = 0; i < sides.size(); ++i)
        v *= std::sqrt(2.0 / sides[i]) *
             std::sin(mode.idx[i] * kPi * x[i] / sides[i]);
    return v;
}

double SpectralDomain::eigenfunction_laplacian(const Mode& mode,
                                               std::span<const double> x) const {
    // second derivative of each sine factor, summed over coordinates
    double total = 0.0;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        const double w = mode.idx[i] * kPi / sides[i];
        double term = -w * w;
        for (std::size_t j = 0; j < sides.size(); ++j)
            term *= std::sqrt(2.0 / sides[j]) *
                    std::sin(mode.idx[j] * kPi * x[j] / sides[j]);
        total += term;
    }
    return total;
}

bool SpectralDomain::inside(std::span<const double> x) const {
    for (std::size_t i = 0; i < sides.size(); ++i)
        if (!(x[i] > 0.0 && x[i] < sides[i])) return false;
    return true;
}

SpectralCoefficients SpectralCoefficients::sine_sum(
    const SpectralDomain& domain,
    const std::vector<std::pair<int, double>>& terms) {
    if (domain.dim() != 1)
        throw std::invalid_argument("sine_sum: interval domains only");
    SpectralCoefficients f;
    f.c.assign(domain.modes.size(), 0.0);
    const double a = domain.sides[0];
    for (const auto& [l, amp] : terms) {
        bool found = false;
        for (std::size_t p = 0; p < domain.modes.size(); ++p) {
            if (domain.modes[p].idx[0] == l) {
                // <amp sin(l pi x / a), sqrt(2/a) sin(l pi x / a)> = amp sqrt(a/2)
                f.c[p] += amp * std::sqrt(a / 2.0);
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("sine_sum: mode beyond domain truncation");
    }
    return f;
}

SpectralCoefficients SpectralCoefficients::indicator_modes(
    const SpectralDomain& domain, double lo, double hi, int n_modes) {
    if (domain.dim() != 1)
        throw std::invalid_argument("indicator_modes: interval domains only");
    const double a = domain.sides[0];
    if (!(0.0 <= lo && lo < hi && hi <= a))
        throw std::invalid_argument("indicator_modes: need 0 <= lo < hi <= a");
    SpectralCoefficients f;
    f.c.assign(domain.modes.size(), 0.0);
    for (std::size_t p = 0; p < domain.modes.size(); ++p) {
        const int l = domain.modes[p].idx[0];
        if (l > n_modes) break;
        const double w = l * kPi / a;
        f.c[p] = std::sqrt(2.0 / a) * (std::cos(w * lo) - std::cos(w * hi)) / w;
    }
    return f;
}

SpectralCoefficients SpectralCoefficients::single(const SpectralDomain& domain,
                                                  std::size_t mode_pos,
                                                  double coeff) {
    if (mode_pos >= domain.modes.size())
        throw std::invalid_argument("single: mode position out of range");
    SpectralCoefficients f;
    f.c.assign(domain.modes.size(), 0.0);
    f.c[mode_pos] = coeff;
    return f;
}

double SpectralCoefficients::evaluate(const SpectralDomain& domain,
                                      std::span<const double> x) const {
    double v = 0.0;
    for (std::size_t p = 0; p < c.size(); ++p)
        if (c[p] != 0.0) v += c[p] * domain.eigenfunction(domain.modes[p], x);
    return v;
}

namespace {
void require_domain_point(const SpectralDomain& d, std::span<const double> x) {
    for (std::size_t i = 0; i < d.sides.size(); ++i)
        if (x[i] < 0.0 || x[i] > d.sides[i])
            throw std::invalid_argument("q_apply: x outside the closed domain");
}
}  // namespace

double q_apply(const SpectralDomain& domain, const SpectralCoefficients& f,
               AlphaIndex alpha, double t, std::span<const double> x) {
    if (t < 0.0) throw std::invalid_argument("q_apply: t must be >= 0");
    require_domain_point(domain, x);
    const double half_alpha = 0.5 * alpha.value();
    double v = 0.0;
    for (std::size_t p = 0; p < f.c.size(); ++p) {
        if (f.c[p] == 0.0) continue;
        const double mu = std::pow(domain.modes[p].lambda, half_alpha);
        v += f.c[p] * std::exp(-t * mu) * domain.eigenfunction(domain.modes[p], x);
    }
    return v;
}

double q_apply_laplacian_power(const SpectralDomain& domain,
                               const SpectralCoefficients& f, AlphaIndex alpha,
                               double t, std::span<const double> x, int k) {
    if (t < 0.0) throw std::invalid_argument("q_apply: t must be >= 0");
    require_domain_point(domain, x);
    const double half_alpha = 0.5 * alpha.value();
    double v = 0.0;
    for (std::size_t p = 0; p < f.c.size(); ++p) {
        if (f.c[p] == 0.0) continue;
        const double lambda = domain.modes[p].lambda;
        const double mu = std::pow(lambda, half_alpha);
        v += std::pow(-lambda, k) * f.c[p] * std::exp(-t * mu) *
             domain.eigenfunction(domain.modes[p], x);
    }
    return v;
}

ResidualReport skbm_pde_residual(const SpectralDomain& domain,
                                 const SpectralCoefficients& f,
                                 AlphaIndex alpha,
                                 std::span<const double> t_grid,
                                 std::span<const double> x_grid,
                                 const FDStencil& fd, double tolerance) {
    const int k = alpha.l;
    const int two_m = 2 * alpha.m;
    if (fd.order != two_m)
        throw std::invalid_argument("skbm_pde_residual: stencil order must be 2m");
    if (domain.dim() != 1)
        throw std::invalid_argument("skbm_pde_residual: interval domains only");
    const double time_sign = k % 2 == 0 ? -1.0 : 1.0;  // (-1)^{k+1}
    ResidualReport rep;
    rep.theorem_tag = "skbm(alpha=" + alpha.str() + ")";
    rep.tolerance = tolerance;
    rep.pass = true;
    for (double t : t_grid) {
        for (double x : x_grid) {
            const std::vector<double> pt{x};
            const auto u_of_t = [&](double tt) {
                return q_apply(domain, f, alpha, tt, pt);
            };
            const FDResult dt = fd_time_derivative(u_of_t, two_m, t, fd);
            ResidualReport::Point p;
            p.t = t;
            p.x = x;
            p.lhs = q_apply_laplacian_power(domain, f, alpha, t, pt, k);
            p.rhs = -time_sign * dt.value;  // PDE: lhs - rhs = 0
            p.abs_residual = std::abs(p.lhs - p.rhs);
            p.rel_residual =
                p.abs_residual /
                std::max({std::abs(p.lhs), std::abs(p.rhs), rep.floor_val});
            rep.points.push_back(p);
            rep.max_rel_residual = std::max(rep.max_rel_residual, p.rel_residual);
            if (p.rel_residual > tolerance) rep.pass = false;
        }
    }
    return rep;
}

Estimate skbm_mc(const SpectralDomain& domain,
                 const std::function<double(std::span<const double>)>& f,
                 AlphaIndex alpha, double t, std::span<const double> x,
                 double h, std::uint64_t n, std::uint64_t seed, int workers) {
    if (n < 1000) throw std::invalid_argument("skbm_mc: need n >= 1000");
    if (!(h > 0.0)) throw std::invalid_argument("skbm_mc: h must be > 0");
    if (!(t > 0.0)) throw std::invalid_argument("skbm_mc: t must be > 0");
    if (!domain.inside(x))
        throw std::invalid_argument("skbm_mc: x must be interior");
    const std::vector<double> x0(x.begin(), x.end());
    const double half_alpha = 0.5 * alpha.value();
    const std::size_t dim = x0.size();

    return mc::estimate(
        n, seed, 0,
        [&, half_alpha, h, t](RngStream& rng) {
            const double clock = sample_subordinator(half_alpha, t, rng);
            std::vector<double> pos = x0;
            double s = 0.0;
            while (s < clock) {
                const double dt = std::min(h, clock - s);
                const double sd = std::sqrt(2.0 * dt);
                for (std::size_t i = 0; i < dim; ++i) {
                    pos[i] += sd * rng.normal();
                    if (pos[i] <= 0.0 || pos[i] >= domain.sides[i]) return 0.0;
                }
                s += dt;
            }
            return f(pos);
        },
        workers);
}

double semigroup_property_check(const SpectralDomain& domain,
                                const SpectralCoefficients& f,
                                AlphaIndex alpha, double t1, double t2,
                                std::span<const double> x_grid) {
    if (t1 < 0.0 || t2 < 0.0)
        throw std::invalid_argument("semigroup_property_check: t >= 0 required");
    const double half_alpha = 0.5 * alpha.value();
    SpectralCoefficients inner = f;
    for (std::size_t p = 0; p < inner.c.size(); ++p)
        inner.c[p] *= std::exp(-t2 * std::pow(domain.modes[p].lambda, half_alpha));
    double worst = 0.0;
    for (double x : x_grid) {
        const std::vector<double> pt{x};
        const double direct = q_apply(domain, f, alpha, t1 + t2, pt);
        const double nested = q_apply(domain, inner, alpha, t1, pt);
        worst = std::max(worst, std::abs(direct - nested));
    }
    return worst;
}

double per_mode_pde_defect(const SpectralDomain& domain, AlphaIndex alpha) {
    // exact rational bookkeeping: (alpha/2) * 2m = alpha.l = k, an integer;
    // what remains is pow() rounding per mode
    const int k = alpha.l;
    const int two_m = 2 * alpha.m;
    const double half_alpha = 0.5 * alpha.value();
    double worst = 0.0;
    for (const auto& mode : domain.modes) {
        const double lambda = mode.lambda;
        const double mu = std::pow(lambda, half_alpha);
        const double spatial = std::pow(-lambda, k);
        const double temporal = (k % 2 == 0 ? -1.0 : 1.0) * std::pow(mu, two_m);
        worst = std::max(worst,
                         std::abs(spatial + temporal) / std::pow(lambda, k));
    }
    return worst;
}

}  // namespace alphatime
