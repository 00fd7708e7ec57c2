#pragma once

#include "alphatime/fd.hpp"
#include "alphatime/quadrature.hpp"
#include "alphatime/rational.hpp"

namespace alphatime {

/// Scalar profile g(t; alpha, beta) = 2 * int_0^inf p_t^alpha(0,s) e^{-beta s} ds.
/// This single number carries every plane-wave PDE check: for f = cos(k.x)
/// the composition u(t,x) factors as cos(k.x) * g(t; alpha, beta).
struct WeightedKernelIntegral {
    AlphaIndex alpha;
    double beta = 0.0;
    double t = 0.0;
    double value = 0.0;
};

/// One evaluated density point. The evaluation is even in s by
/// construction, and 2 * int_0^inf value ds = 1 up to quadrature error.
struct DensityPoint {
    AlphaIndex alpha;
    double t = 0.0;
    double s = 0.0;
    double value = 0.0;
};

/// Transition density of the symmetric alpha-stable process at the
/// origin, p_t^alpha(0,s), normalized so its Fourier transform is
/// exp(-t |xi|^alpha). Closed forms for alpha in {1, 2}; otherwise
/// Fourier cosine inversion by block quadrature with series
/// acceleration, switching to the convergent power series in 1/s where
/// that is numerically safe.
double stable_density(AlphaIndex alpha, double t, double s);
DensityPoint stable_density_point(AlphaIndex alpha, double t, double s);

/// (d/ds)^{2j} p_t^alpha(0,s) at s = 0:
/// (-1)^j Gamma((2j+1)/alpha) / (pi * alpha * t^{(2j+1)/alpha}),
/// obtained by differentiating the Fourier inversion under the integral.
double stable_density_even_deriv_at_zero(AlphaIndex alpha, double t, int j);

/// Density of the one-sided beta-stable subordinator T_t with Laplace
/// transform exp(-t lambda^beta). beta = 1/2 uses the Levy closed form
/// t (4 pi s^3)^{-1/2} exp(-t^2/(4s)); other beta fall back to the
/// numeric integral branch (see subordinator_density_is_closed_form).
double subordinator_density(double beta, double t, double s);
bool subordinator_density_is_closed_form(double beta);

WeightedKernelIntegral weighted_kernel_integral(AlphaIndex alpha, double beta,
                                                double t);
/// Convenience scalar access to the Parseval-form value.
double weighted_kernel_value(AlphaIndex alpha, double beta, double t);

/// Cross-check route: direct s-quadrature of 2 * int p_t^alpha(0,s) e^{-beta s} ds
/// with an explicit exponential tail bound. Supported for the fast
/// density indices {1/2, 1, 2}.
QuadResult weighted_kernel_integral_direct(AlphaIndex alpha, double beta,
                                           double t);

/// Finite-difference residual of the kernel PDE
/// (d^2/ds^2)^l p + (-1)^{l+1} (d/dt)^{2m} p = 0 at (t,s), for the fast
/// cases alpha in {1, 1/2, 2}; alpha = 2 reduces to the heat equation
/// d_t p = d^2_s p.
double density_pde_residual(AlphaIndex alpha, double t, double s,
                            const FDStencil& fd);

/// Finite-difference residual of d_s u - d^2_t u for the beta = 1/2
/// subordinator density (closed-form branch only).
double subordinator_pde_residual(double t, double s, const FDStencil& fd);

/// Convergent large-s expansion of p_t^alpha(0,s) for alpha < 1 (also
/// valid for alpha = 1 when s > t); error output is the first neglected
/// term. Used both as the large-s density route and for analytic tail
/// mass in normalization checks.
QuadResult stable_density_series(AlphaIndex alpha, double t, double s,
                                 int max_terms = 80);

/// Analytic tail mass int_S^inf p_t^alpha(0,s) ds from the same series.
QuadResult stable_density_tail_mass(AlphaIndex alpha, double t, double S,
                                    int max_terms = 60);

namespace detail {
/// Raw Fourier cosine inversion (1/pi) int_0^inf cos(s xi) e^{-t xi^{l/m}} d xi
/// via the xi = v^m substitution and half-period blocks. Exposed so the
/// tests can cross-validate it against the alpha = 1 and alpha = 2
/// closed forms.
QuadResult fourier_inversion_density(int l, int m, double t, double s);

/// Standardized (t = 1) numeric subordinator density via the integral
/// representation of Kanter's construction.
double one_sided_stable_density_std(double beta, double s);
}  // namespace detail

}  // namespace alphatime
