#include "alphatime/residuals.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "alphatime/densities.hpp"

namespace alphatime {

namespace {
constexpr double kPi = std::numbers::pi;

// All plane-wave checks share one scalar skeleton: a profile g(t), a
// time-derivative order q, and a right-hand side rhs(t, g(t)). The x
// dependence is the common factor cos(kappa x) applied per point, which
// keeps the reported relative residual x-independent up to rounding.
ResidualReport profile_check(std::string tag, double kappa, int q,
                             const std::function<double(double)>& profile,
                             const std::function<double(double, double)>& rhs,
                             std::span<const double> t_grid,
                             std::span<const double> x_grid,
                             const FDStencil& fd, double tolerance) {
    if (fd.order != q)
        throw std::invalid_argument(tag + ": stencil order must be " +
                                    std::to_string(q));
    ResidualReport rep;
    rep.theorem_tag = std::move(tag);
    rep.tolerance = tolerance;
    rep.pass = true;
    rep.low_precision_fd = q >= 6;
    for (double t : t_grid) {
        const FDResult lhs_g = fd_time_derivative(profile, q, t, fd);
        const double g_t = profile(t);
        const double rhs_g = rhs(t, g_t);
        double rel_min = 0.0, rel_max = 0.0;
        bool have_interior = false;
        for (double x : x_grid) {
            const double cx = std::cos(kappa * x);
            ResidualReport::Point p;
            p.t = t;
            p.x = x;
            p.lhs = cx * lhs_g.value;
            p.rhs = cx * rhs_g;
            p.abs_residual = std::abs(p.lhs - p.rhs);
            p.rel_residual =
                p.abs_residual /
                std::max({std::abs(p.lhs), std::abs(p.rhs), rep.floor_val});
            rep.points.push_back(p);
            rep.max_rel_residual = std::max(rep.max_rel_residual, p.rel_residual);
            if (p.rel_residual > tolerance) rep.pass = false;
            if (std::abs(cx) > 0.01) {
                if (!have_interior) {
                    rel_min = rel_max = p.rel_residual;
                    have_interior = true;
                } else {
                    rel_min = std::min(rel_min, p.rel_residual);
                    rel_max = std::max(rel_max, p.rel_residual);
                }
            }
        }
        if (have_interior)
            rep.max_x_spread = std::max(rep.max_x_spread, rel_max - rel_min);
    }
    return rep;
}
}  // namespace

ResidualReport check_thm_cauchy(double kappa, std::span<const double> t_grid,
                                std::span<const double> x_grid,
                                const FDStencil& fd, double tolerance) {
    const double beta = kappa * kappa;
    const AlphaIndex one = AlphaIndex::of(1, 1);
    return profile_check(
        "thm21", kappa, 2,
        [=](double t) { return weighted_kernel_value(one, beta, t); },
        [=](double t, double g) { return 2.0 * beta / (kPi * t) - beta * beta * g; },
        t_grid, x_grid, fd, tolerance);
}

ResidualReport check_thm_eps(double kappa, double eps,
                             std::span<const double> t_grid,
                             std::span<const double> x_grid,
                             const FDStencil& fd, double tolerance) {
    if (!(eps > 0.0))
        throw std::invalid_argument("check_thm_eps: eps must be > 0");
    const double big_beta = 1.0 / eps + eps * kappa * kappa;
    const AlphaIndex one = AlphaIndex::of(1, 1);
    return profile_check(
        "thm22", kappa, 2,
        [=](double t) { return weighted_kernel_value(one, big_beta, t); },
        [=](double t, double g) {
            return 2.0 * big_beta / (kPi * t) - big_beta * big_beta * g;
        },
        t_grid, x_grid, fd, tolerance);
}

ResidualReport check_thm_fk(double kappa, double c, FkAssembly assembly,
                            std::span<const double> t_grid,
                            std::span<const double> x_grid,
                            const FDStencil& fd, double tolerance) {
    if (c > 0.0) throw std::invalid_argument("check_thm_fk: c must be <= 0");
    const double k2 = kappa * kappa;
    const double beta = k2 - c;
    const AlphaIndex one = AlphaIndex::of(1, 1);
    // derivation-consistent x-coefficient: k^4 - 2 c k^2 + c^2 = beta^2;
    // paper-literal: k^4 - c k^2 + c^2 (one -c Delta u instead of two)
    const double coeff = assembly == FkAssembly::derivation_consistent
                             ? beta * beta
                             : k2 * k2 - c * k2 + c * c;
    ResidualReport rep = profile_check(
        assembly == FkAssembly::derivation_consistent ? "thm23-derivation"
                                                      : "thm23-literal",
        kappa, 2,
        [=](double t) { return weighted_kernel_value(one, beta, t); },
        [=](double t, double g) { return 2.0 * beta / (kPi * t) - coeff * g; },
        t_grid, x_grid, fd, tolerance);
    if (assembly == FkAssembly::paper_literal) {
        // reported, not asserted: the residual equals the analytic gap
        // |c| k^2 g(t) rather than zero
        rep.exploratory = true;
        rep.pass = true;
    }
    return rep;
}

ResidualReport check_thm_ictbap(double kappa, std::span<const double> t_grid,
                                std::span<const double> x_grid,
                                const FDStencil& fd, double tolerance) {
    const double theta = 1.0 - kappa * kappa;
    const double fourth = theta * theta;
    return profile_check(
        "thm24", kappa, 2,
        [=](double t) { return std::exp(-t * std::abs(theta)); },
        [=](double /*t*/, double g) { return fourth * g; }, t_grid, x_grid, fd,
        tolerance);
}

ResidualReport check_thm_alpha(AlphaIndex alpha, double kappa,
                               std::span<const double> t_grid,
                               std::span<const double> x_grid,
                               const FDStencil& fd, double tolerance,
                               bool allow_exploratory) {
    if (alpha.is_one()) {
        ResidualReport rep = check_thm_cauchy(kappa, t_grid, x_grid, fd, tolerance);
        rep.theorem_tag = "thm25(alpha=1)";
        return rep;
    }
    if (alpha.l >= 2 && !allow_exploratory)
        throw std::invalid_argument(
            "check_thm_alpha: indices with l >= 2 are exploratory; pass "
            "allow_exploratory to compute them without an acceptance claim");
    const double beta = kappa * kappa;
    const int l = alpha.l;
    const int two_m = 2 * alpha.m;
    const double sign = l % 2 == 0 ? -1.0 : 1.0;  // (-1)^{l+1}
    ResidualReport rep = profile_check(
        "thm25(alpha=" + alpha.str() + ")", kappa, two_m,
        [=](double t) { return weighted_kernel_value(alpha, beta, t); },
        [=](double t, double g) {
            // (-1)^{l+1} [ 2 sum_i D_{l-i}(t) beta^{2i-1} - beta^{2l} g ]
            double acc = 0.0;
            for (int i = 1; i <= l; ++i)
                acc += 2.0 * stable_density_even_deriv_at_zero(alpha, t, l - i) *
                       std::pow(beta, 2 * i - 1);
            return sign * (acc - std::pow(beta, 2 * l) * g);
        },
        t_grid, x_grid, fd, tolerance);
    rep.exploratory = l >= 2;
    if (rep.exploratory) rep.pass = true;  // reported as data only
    return rep;
}

ResidualReport check_btp(double kappa, std::span<const double> t_grid,
                         std::span<const double> x_grid, const FDStencil& fd,
                         double tolerance) {
    const double beta = kappa * kappa;
    const AlphaIndex two = AlphaIndex::of(2, 1);
    return profile_check(
        "btp", kappa, 1,
        [=](double t) { return weighted_kernel_value(two, beta, t); },
        [=](double t, double g) {
            return -beta / std::sqrt(kPi * t) + beta * beta * g;
        },
        t_grid, x_grid, fd, tolerance);
}

}  // namespace alphatime
