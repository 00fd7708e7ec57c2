#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "alphatime/fd.hpp"
#include "alphatime/rational.hpp"
#include "alphatime/residuals.hpp"
#include "alphatime/stats.hpp"

namespace alphatime {

/// Dirichlet eigenstructure of -Laplacian on an interval (0,a) or a box
/// prod (0,a_i): lambda = sum (l_i pi / a_i)^2 with product sine
/// eigenfunctions. Modes are stored sorted by eigenvalue.
struct SpectralDomain {
    struct Mode {
        std::vector<int> idx;
        double lambda = 0.0;
    };

    std::vector<double> sides;
    std::vector<Mode> modes;

    static SpectralDomain interval(double a, int max_modes);
    static SpectralDomain box(std::vector<double> sides, int max_index_per_dim);

    int dim() const { return static_cast<int>(sides.size()); }
    double eigenfunction(const Mode& mode, std::span<const double> x) const;
    /// Closed-form Laplacian of the eigenfunction (equals -lambda phi);
    /// kept separate so the eigenpair consistency check is not circular.
    double eigenfunction_laplacian(const Mode& mode,
                                   std::span<const double> x) const;
    bool inside(std::span<const double> x) const;
};

/// Coefficients of f in the domain eigenbasis, c_l = <f, phi_l>, plus an
/// explicit bound for everything beyond the stored modes (zero for the
/// exact finite expansions used here).
struct SpectralCoefficients {
    std::vector<double> c;
    double tail_bound = 0.0;

    /// f = sum_j amp_j sin(l_j pi x / a) on an interval domain.
    static SpectralCoefficients sine_sum(
        const SpectralDomain& domain,
        const std::vector<std::pair<int, double>>& terms);
    /// First `n_modes` coefficients of the indicator of (lo, hi).
    static SpectralCoefficients indicator_modes(const SpectralDomain& domain,
                                                double lo, double hi,
                                                int n_modes);
    /// Single mode of a box (or interval) domain by position in the mode list.
    static SpectralCoefficients single(const SpectralDomain& domain,
                                       std::size_t mode_pos, double coeff);
    /// Pointwise evaluation of the expansion (the exact f for our finite f).
    double evaluate(const SpectralDomain& domain,
                    std::span<const double> x) const;
};

/// Q_t f(x) = sum_l exp(-t lambda_l^{alpha/2}) c_l phi_l(x): the
/// subordinate killed semigroup in spectral form. t = 0 returns the
/// truncated expansion of f.
double q_apply(const SpectralDomain& domain, const SpectralCoefficients& f,
               AlphaIndex alpha, double t, std::span<const double> x);

/// Delta^k applied spectrally: sum (-lambda)^k exp(-t lambda^{alpha/2}) c phi.
double q_apply_laplacian_power(const SpectralDomain& domain,
                               const SpectralCoefficients& f, AlphaIndex alpha,
                               double t, std::span<const double> x, int k);

/// Residual of Delta^k u + (-1)^{k+1} d^{2m} u/dt^{2m} = 0 with the
/// Laplacian exact per mode and the time derivative by finite
/// differences; alpha = k/m.
ResidualReport skbm_pde_residual(const SpectralDomain& domain,
                                 const SpectralCoefficients& f,
                                 AlphaIndex alpha,
                                 std::span<const double> t_grid,
                                 std::span<const double> x_grid,
                                 const FDStencil& fd, double tolerance);

/// Monte Carlo route: draw the subordinator clock S, run a killed
/// Brownian skeleton with step h up to S (kill on any per-step boundary
/// violation), score f at the endpoint, 0 if killed.
Estimate skbm_mc(const SpectralDomain& domain,
                 const std::function<double(std::span<const double>)>& f,
                 AlphaIndex alpha, double t, std::span<const double> x,
                 double h, std::uint64_t n, std::uint64_t seed,
                 int workers = 1);

/// max over the x-grid of |Q_{t1+t2} f - Q_{t1} (Q_{t2} f)|.
double semigroup_property_check(const SpectralDomain& domain,
                                const SpectralCoefficients& f,
                                AlphaIndex alpha, double t1, double t2,
                                std::span<const double> x_grid);

/// Largest per-mode defect |(-lambda)^k + (-1)^{k+1} (lambda^{alpha/2})^{2m}|
/// relative to lambda^k. Exact-rational exponent bookkeeping guarantees
/// (alpha/2) * 2m == k; this measures only pow() rounding.
double per_mode_pde_defect(const SpectralDomain& domain, AlphaIndex alpha);

}  // namespace alphatime
