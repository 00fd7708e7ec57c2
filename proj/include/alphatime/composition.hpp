#pragma once

#include <cstdint>
#include <span>

#include "alphatime/densities.hpp"
#include "alphatime/rational.hpp"
#include "alphatime/semigroup.hpp"
#include "alphatime/stats.hpp"

namespace alphatime {

/// Which iterated-process construction u(t,x) refers to. The inner clock
/// is |Y(t)| for a symmetric stable Y; variants differ in the index, in
/// exponential weights, and in the potential. Excursion variants that
/// cycle through independent outer copies share these expectation
/// functionals, so everything here is computed from the single-copy
/// representation.
enum class Variant {
    cauchy_time,   // alpha = 1
    eps_weighted,  // alpha = 1, weight exp(-|C(t)|/eps), clock eps|C(t)|
    feynman_kac,   // alpha = 1, constant potential weight exp(c |C(t)|)
    ictbap,        // imaginary-time kernel against the Cauchy clock
    alpha_time,    // general rational alpha
    btp,           // alpha = 2
};

const char* variant_name(Variant v);

struct CompositionSpec {
    Variant variant = Variant::cauchy_time;
    AlphaIndex alpha{1, 1};
    TestFunction f = PlaneWave{{1.0}};
    double potential_c = 0.0;  // feynman_kac only, c <= 0
    double epsilon = 1.0;      // eps_weighted only, > 0

    static CompositionSpec cauchy_time(TestFunction f);
    static CompositionSpec eps_weighted(PlaneWave f, double eps);
    static CompositionSpec feynman_kac(PlaneWave f, double c);
    static CompositionSpec alpha_time(AlphaIndex a, TestFunction f);
    static CompositionSpec btp(TestFunction f);
};

/// The plane-wave reduction exponent: u(t,x) = cos(kappa.x) * g(t; alpha, beta)
/// with beta = |kappa|^2 (plain clocks), 1/eps + eps |kappa|^2
/// (eps-weighted) or |kappa|^2 - c (Feynman-Kac).
double effective_beta(const CompositionSpec& spec);

/// Deterministic evaluation of u(t,x) through the kernel representation
/// u = 2 int_0^inf p_t^alpha(0,s) T_s f(x) ds (with the variant's weight
/// absorbed into the exponent for plane waves). The QuadResult form
/// carries the achieved error, including the s-truncation bound on the
/// generic (non-plane-wave) route.
double u_quadrature(const CompositionSpec& spec, double t,
                    std::span<const double> x);
QuadResult u_quadrature_result(const CompositionSpec& spec, double t,
                               std::span<const double> x);

/// Monte Carlo estimate of the same quantity from exact fixed-t
/// marginals: one stable draw for the clock, one Gaussian for the outer
/// process, weight factors where the variant carries them.
Estimate u_mc(const CompositionSpec& spec, double t, std::span<const double> x,
              std::uint64_t n, std::uint64_t seed, int workers = 1);

/// The imaginary-time construction for a plane wave: closed form
/// cos(kappa.x) e^{-t |1 - |kappa|^2|} together with a direct oscillatory
/// quadrature over the Cauchy kernel for cross-validation.
struct IctbapValue {
    double closed_form = 0.0;
    double quadrature = 0.0;
    double quadrature_error = 0.0;
};

IctbapValue u_ictbap(std::span<const double> kappa, double t,
                     std::span<const double> x);

}  // namespace alphatime
