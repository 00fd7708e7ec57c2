#include "alphatime/densities.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace alphatime {

namespace {
constexpr double kPi = std::numbers::pi;

double cauchy_density(double t, double s) {
    return t / (kPi * (s * s + t * t));
}

double gaussian_density(double t, double s) {
    return std::exp(-s * s / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double levy_density(double t, double s) {
    return t / (2.0 * std::sqrt(kPi) * s * std::sqrt(s)) *
           std::exp(-t * t / (4.0 * s));
}

void require_positive_t(double t, const char* who) {
    if (!(t > 0.0))
        throw std::invalid_argument(std::string(who) + ": t must be > 0");
}
}  // namespace

namespace detail {

QuadResult fourier_inversion_density(int l, int m, double t, double s) {
    // After xi = v^m the integrand (m/pi) v^{m-1} cos(s v^m) e^{-t v^l}
    // is entire; blocks run between consecutive zeros of cos(s v^m).
    const double sigma = std::abs(s);
    const double v_hi = std::pow(50.0 / t, 1.0 / l);
    const auto integrand = [&](double v) {
        return m / kPi * std::pow(v, m - 1) * std::cos(sigma * std::pow(v, m)) *
               std::exp(-t * std::pow(v, l));
    };
    const double first_zero =
        sigma > 0.0 ? std::pow(0.5 * kPi / sigma, 1.0 / m) : v_hi;
    if (first_zero >= v_hi) {
        // envelope dies before the first oscillation; plain adaptive pass
        return integrate(integrand, 0.0, v_hi, 1e-15, 1e-14);
    }
    const auto edge = [&](int k) {
        return std::pow((k + 0.5) * kPi / sigma, 1.0 / m);
    };
    const auto block = [&](int k) {
        const double a = k == 0 ? 0.0 : edge(k - 1);
        const double b = edge(k);
        return integrate(integrand, a, b, 1e-16, 1e-13, 48).value;
    };
    return sum_oscillatory_blocks(block, 1e-13, 2000);
}

double one_sided_stable_density_std(double beta, double s) {
    // Integral form of Kanter's representation: with
    // B(th) = [sin(b th)^b sin((1-b) th)^{1-b} / sin th]^{1/(1-b)},
    // u_1(s) = b/(1-b) s^{-1/(1-b)} (1/pi) int_0^pi B e^{-B s^{-b/(1-b)}} dth.
    if (!(s > 0.0)) return 0.0;
    const double b = beta;
    const double x = std::pow(s, -b / (1.0 - b));
    const auto integrand = [&](double th) {
        if (th <= 0.0 || th >= kPi) return 0.0;
        const double log_B = (b * std::log(std::sin(b * th)) +
                              (1.0 - b) * std::log(std::sin((1.0 - b) * th)) -
                              std::log(std::sin(th))) /
                             (1.0 - b);
        const double e = log_B - std::exp(log_B) * x;
        return e < -700.0 ? 0.0 : std::exp(e);
    };
    const QuadResult q = integrate(integrand, 0.0, kPi, 1e-15, 1e-13);
    return b / (1.0 - b) * std::pow(s, -1.0 / (1.0 - b)) * q.value / kPi;
}

}  // namespace detail

QuadResult stable_density_series(AlphaIndex alpha, double t, double s,
                                 int max_terms) {
    // p_t(s) = (1/pi) sum_{k>=1} (-1)^{k+1} Gamma(k a + 1)/k! sin(k pi a/2)
    //          t^k s^{-k a - 1};  convergent for a < 1 (and for a = 1 when
    //          s > t). Caller must check the returned convergence flag:
    //          cancellation is detected via the largest intermediate term.
    const double a = alpha.value();
    const double sigma = std::abs(s);
    if (!(sigma > 0.0)) return {0.0, 1.0, false};
    double sum = 0.0;
    double max_term = 0.0;
    double log_kfact = 0.0;
    double term = 0.0;
    for (int k = 1; k <= max_terms; ++k) {
        log_kfact += std::log(static_cast<double>(k));
        const double sin_f = std::sin(0.5 * k * kPi * a);
        const double log_mag = std::lgamma(k * a + 1.0) - log_kfact +
                               k * std::log(t) - (k * a + 1.0) * std::log(sigma);
        term = (k % 2 == 1 ? 1.0 : -1.0) * sin_f * std::exp(log_mag);
        sum += term;
        max_term = std::max(max_term, std::abs(term));
        if (std::exp(log_mag) < 1e-17 * std::max(std::abs(sum), 1e-300) && k > 4)
            return {sum / kPi, std::abs(term) / kPi,
                    max_term <= 1e3 * std::max(std::abs(sum), 1e-300)};
    }
    return {sum / kPi, std::abs(term) / kPi, false};
}

QuadResult stable_density_tail_mass(AlphaIndex alpha, double t, double S,
                                    int max_terms) {
    // Term-by-term integral of the series above from S to infinity.
    const double a = alpha.value();
    double sum = 0.0;
    double log_kfact = 0.0;
    double term = 0.0;
    for (int k = 1; k <= max_terms; ++k) {
        log_kfact += std::log(static_cast<double>(k));
        const double sin_f = std::sin(0.5 * k * kPi * a);
        const double log_mag = std::lgamma(k * a + 1.0) - log_kfact +
                               k * std::log(t) - k * a * std::log(S) -
                               std::log(k * a);
        term = (k % 2 == 1 ? 1.0 : -1.0) * sin_f * std::exp(log_mag);
        sum += term;
        if (std::exp(log_mag) < 1e-16 * std::max(std::abs(sum), 1e-300) && k > 4)
            return {sum / kPi, std::abs(term) / kPi, true};
    }
    return {sum / kPi, std::abs(term) / kPi, false};
}

double stable_density(AlphaIndex alpha, double t, double s) {
    require_positive_t(t, "stable_density");
    const double sigma = std::abs(s);
    if (alpha.is_one()) return cauchy_density(t, sigma);
    if (alpha.is_two()) return gaussian_density(t, sigma);
    const double a = alpha.value();
    if (a < 1.0 && sigma > 0.0 && std::pow(sigma, a) >= 0.999 * t) {
        const QuadResult series = stable_density_series(alpha, t, sigma);
        if (series.converged) return series.value;
    }
    const QuadResult q = detail::fourier_inversion_density(alpha.l, alpha.m, t, sigma);
    if (!q.converged)
        throw std::runtime_error(
            "stable_density: quadrature did not converge; achieved bound " +
            std::to_string(q.error));
    return q.value;
}

DensityPoint stable_density_point(AlphaIndex alpha, double t, double s) {
    return {alpha, t, s, stable_density(alpha, t, s)};
}

double stable_density_even_deriv_at_zero(AlphaIndex alpha, double t, int j) {
    require_positive_t(t, "stable_density_even_deriv_at_zero");
    if (j < 0)
        throw std::invalid_argument(
            "stable_density_even_deriv_at_zero: j must be >= 0");
    const double a = alpha.value();
    const double order = (2.0 * j + 1.0) / a;
    const double sign = j % 2 == 0 ? 1.0 : -1.0;
    return sign * std::tgamma(order) / (kPi * a * std::pow(t, order));
}

bool subordinator_density_is_closed_form(double beta) { return beta == 0.5; }

double subordinator_density(double beta, double t, double s) {
    if (!(beta > 0.0 && beta < 1.0))
        throw std::invalid_argument("subordinator_density: beta must be in (0,1)");
    require_positive_t(t, "subordinator_density");
    if (!(s > 0.0))
        throw std::invalid_argument("subordinator_density: s must be > 0");
    if (subordinator_density_is_closed_form(beta)) return levy_density(t, s);
    // scaling: u_t(s) = t^{-1/beta} u_1(s t^{-1/beta})
    const double scale = std::pow(t, -1.0 / beta);
    return scale * detail::one_sided_stable_density_std(beta, s * scale);
}

WeightedKernelIntegral weighted_kernel_integral(AlphaIndex alpha, double beta,
                                                double t) {
    require_positive_t(t, "weighted_kernel_integral");
    if (beta < 0.0)
        throw std::invalid_argument("weighted_kernel_integral: beta must be >= 0");
    WeightedKernelIntegral w{alpha, beta, t, 1.0};
    if (beta == 0.0) return w;
    // Parseval form against the Poisson kernel of e^{-beta |s|}:
    // (2 beta/pi) int_0^inf e^{-t xi^alpha} / (beta^2 + xi^2) d xi,
    // evaluated after xi = v^m which removes the derivative singularity
    // at 0 for alpha < 1.
    const int l = alpha.l, m = alpha.m;
    const double v_hi = std::pow(52.0 / t, 1.0 / l);
    const auto integrand = [&](double v) {
        const double vm = std::pow(v, m);
        return m * std::pow(v, m - 1) * std::exp(-t * std::pow(v, l)) /
               (beta * beta + vm * vm);
    };
    const QuadResult q = integrate(integrand, 0.0, v_hi, 1e-16, 2e-15, 6000);
    if (!q.converged)
        throw std::runtime_error(
            "weighted_kernel_integral: quadrature failure, achieved bound " +
            std::to_string(q.error));
    w.value = 2.0 * beta / kPi * q.value;
    return w;
}

double weighted_kernel_value(AlphaIndex alpha, double beta, double t) {
    return weighted_kernel_integral(alpha, beta, t).value;
}

QuadResult weighted_kernel_integral_direct(AlphaIndex alpha, double beta,
                                           double t) {
    require_positive_t(t, "weighted_kernel_integral_direct");
    if (beta == 0.0) {
        // normalization route: density mass on [0,S] plus analytic tail
        const double S = 60.0 * std::pow(t, alpha.m / static_cast<double>(alpha.l));
        const QuadResult body = integrate(
            [&](double s) { return stable_density(alpha, t, s); }, 0.0, S,
            1e-11, 1e-11);
        const QuadResult tail = stable_density_tail_mass(alpha, t, S);
        return {2.0 * (body.value + tail.value),
                2.0 * (body.error + tail.error), body.converged && tail.converged};
    }
    const double S = 50.0 / beta;
    const QuadResult body = integrate(
        [&](double s) {
            return stable_density(alpha, t, s) * std::exp(-beta * s);
        },
        0.0, S, 1e-12, 1e-12);
    // tail bound: density mass is at most 1/2 beyond any point, damped by e^{-beta S}
    const double tail_bound = std::exp(-beta * S);
    return {2.0 * body.value, 2.0 * body.error + tail_bound, body.converged};
}

double density_pde_residual(AlphaIndex alpha, double t, double s,
                            const FDStencil& fd) {
    require_positive_t(t, "density_pde_residual");
    const double h = fd.step_at(t);
    const auto in_t = [&](double tt) { return stable_density(alpha, tt, s); };
    const auto in_s = [&](double ss) { return stable_density(alpha, t, ss); };
    if (alpha.is_one()) {
        const double dss = central_derivative(in_s, 2, s, h, fd.richardson_levels).value;
        const double dtt = central_derivative(in_t, 2, t, h, fd.richardson_levels).value;
        return dss + dtt;
    }
    if (alpha.is_two()) {
        const double dt1 = central_derivative(in_t, 1, t, h, fd.richardson_levels).value;
        const double dss = central_derivative(in_s, 2, s, h, fd.richardson_levels).value;
        return dt1 - dss;
    }
    if (alpha.l == 1 && alpha.m == 2) {
        const double dss = central_derivative(in_s, 2, s, h, fd.richardson_levels).value;
        const double d4t = central_derivative(in_t, 4, t, h, fd.richardson_levels).value;
        return dss + d4t;
    }
    throw std::invalid_argument(
        "density_pde_residual: supported indices are 1, 2 and 1/2");
}

double subordinator_pde_residual(double t, double s, const FDStencil& fd) {
    require_positive_t(t, "subordinator_pde_residual");
    if (!(s > 0.0))
        throw std::invalid_argument("subordinator_pde_residual: s must be > 0");
    const double h = fd.step_at(std::min(t, s));
    const auto in_s = [&](double ss) { return subordinator_density(0.5, t, ss); };
    const auto in_t = [&](double tt) { return subordinator_density(0.5, tt, s); };
    const double ds1 = central_derivative(in_s, 1, s, h, fd.richardson_levels).value;
    const double dtt = central_derivative(in_t, 2, t, h, fd.richardson_levels).value;
    return ds1 - dtt;
}

}  // namespace alphatime
