#include "alphatime/composition.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "alphatime/mc.hpp"
#include "alphatime/sampling.hpp"

namespace alphatime {

namespace {
constexpr double kPi = std::numbers::pi;

void require_time(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("composition: t must be > 0");
}

const PlaneWave& require_plane_wave(const CompositionSpec& spec) {
    const auto* pw = std::get_if<PlaneWave>(&spec.f);
    if (!pw)
        throw std::invalid_argument(
            "composition: this variant requires a plane-wave test function");
    return *pw;
}
}  // namespace

const char* variant_name(Variant v) {
    switch (v) {
        case Variant::cauchy_time: return "cauchy-time";
        case Variant::eps_weighted: return "eps-weighted";
        case Variant::feynman_kac: return "feynman-kac";
        case Variant::ictbap: return "ictbap";
        case Variant::alpha_time: return "alpha-time";
        case Variant::btp: return "btp";
    }
    return "?";
}

CompositionSpec CompositionSpec::cauchy_time(TestFunction f) {
    return {Variant::cauchy_time, AlphaIndex::of(1, 1), std::move(f), 0.0, 1.0};
}

CompositionSpec CompositionSpec::eps_weighted(PlaneWave f, double eps) {
    if (!(eps > 0.0))
        throw std::invalid_argument("CompositionSpec: epsilon must be > 0");
    return {Variant::eps_weighted, AlphaIndex::of(1, 1), std::move(f), 0.0, eps};
}

CompositionSpec CompositionSpec::feynman_kac(PlaneWave f, double c) {
    if (c > 0.0)
        throw std::invalid_argument("CompositionSpec: potential must be <= 0");
    return {Variant::feynman_kac, AlphaIndex::of(1, 1), std::move(f), c, 1.0};
}

CompositionSpec CompositionSpec::alpha_time(AlphaIndex a, TestFunction f) {
    return {Variant::alpha_time, a, std::move(f), 0.0, 1.0};
}

CompositionSpec CompositionSpec::btp(TestFunction f) {
    return {Variant::btp, AlphaIndex::of(2, 1), std::move(f), 0.0, 1.0};
}

double effective_beta(const CompositionSpec& spec) {
    const PlaneWave& pw = require_plane_wave(spec);
    const double k2 = pw.kappa_sq();
    switch (spec.variant) {
        case Variant::cauchy_time:
        case Variant::alpha_time:
        case Variant::btp:
            return k2;
        case Variant::eps_weighted:
            return 1.0 / spec.epsilon + spec.epsilon * k2;
        case Variant::feynman_kac:
            return k2 - spec.potential_c;
        case Variant::ictbap:
            throw std::invalid_argument("effective_beta: not defined for ictbap");
    }
    return 0.0;
}

double u_quadrature(const CompositionSpec& spec, double t,
                    std::span<const double> x) {
    return u_quadrature_result(spec, t, x).value;
}

QuadResult u_quadrature_result(const CompositionSpec& spec, double t,
                               std::span<const double> x) {
    require_time(t);
    if (spec.variant == Variant::ictbap) {
        const PlaneWave& pw = require_plane_wave(spec);
        return {u_ictbap(pw.kappa, t, x).closed_form, 1e-14, true};
    }
    if (const auto* pw = std::get_if<PlaneWave>(&spec.f)) {
        const double g = weighted_kernel_value(spec.alpha, effective_beta(spec), t);
        return {(*pw)(x) * g, 1e-13, true};
    }
    // generic test function: s-quadrature against the closed-form
    // semigroup; the reported error carries both the quadrature bound and
    // the s-truncation remainder (bump amplitude on top of the kernel
    // tail mass beyond S)
    const auto integrand = [&](double s) {
        return stable_density(spec.alpha, t, s) * heat_semigroup_apply(spec.f, s, x);
    };
    const double scale = std::pow(t, 1.0 / spec.alpha.value());
    const double S = 5e4 * std::max(scale, 1.0);
    const QuadResult body = integrate(integrand, 0.0, S, 1e-10, 1e-10, 6000);
    const auto& bump = std::get<GaussianBump>(spec.f);
    const double amp_at_S =
        std::pow(bump.width / (bump.width + 4.0 * S),
                 0.5 * static_cast<double>(bump.center.size()));
    const QuadResult tail = stable_density_tail_mass(spec.alpha, t, S);
    const double trunc = 2.0 * amp_at_S * std::max(tail.value, 0.0);
    return {2.0 * body.value, 2.0 * body.error + trunc, body.converged};
}

Estimate u_mc(const CompositionSpec& spec, double t, std::span<const double> x,
              std::uint64_t n, std::uint64_t seed, int workers) {
    require_time(t);
    if (n < 100) throw std::invalid_argument("u_mc: need n >= 100");
    const std::vector<double> x0(x.begin(), x.end());
    const std::size_t dim = x0.size();
    const AlphaIndex alpha = spec.alpha;
    const Variant variant = spec.variant;
    const double eps = spec.epsilon;
    const double c = spec.potential_c;
    if (variant == Variant::ictbap)
        throw std::invalid_argument(
            "u_mc: ictbap has no real-valued sampler; use u_ictbap");

    return mc::estimate(
        n, seed, 0,
        [&, alpha, variant, eps, c](RngStream& rng) {
            double clock = 0.0;
            double weight = 1.0;
            switch (variant) {
                case Variant::eps_weighted: {
                    const double cauchy_abs = std::abs(t * rng.cauchy());
                    clock = eps * cauchy_abs;
                    weight = std::exp(-cauchy_abs / eps);
                    break;
                }
                case Variant::feynman_kac: {
                    clock = std::abs(t * rng.cauchy());
                    weight = std::exp(c * clock);
                    break;
                }
                default:
                    clock = std::abs(sample_symmetric_stable(alpha, t, rng));
                    break;
            }
            const double sd = std::sqrt(2.0 * clock);
            std::vector<double> z(dim);
            for (std::size_t i = 0; i < dim; ++i) z[i] = x0[i] + sd * rng.normal();
            return weight * evaluate(spec.f, z);
        },
        workers);
}

IctbapValue u_ictbap(std::span<const double> kappa, double t,
                     std::span<const double> x) {
    require_time(t);
    PlaneWave pw{std::vector<double>(kappa.begin(), kappa.end())};
    const double cosx = pw(x);
    const double theta = 1.0 - pw.kappa_sq();  // Fourier phase of v(s,.)
    IctbapValue out;
    out.closed_form = cosx * std::exp(-t * std::abs(theta));

    // direct route: 2 int_0^inf cos(s theta) p_t^1(0,s) ds, blocks between
    // the zeros of cos(s theta); polynomially decaying envelope, so the
    // accelerated tail carries the estimate.
    const auto kernel = [&](double s) { return t / (kPi * (s * s + t * t)); };
    const double th = std::abs(theta);
    QuadResult q;
    if (th < 1e-12) {
        const double S = 1e7 * t;
        const QuadResult body =
            integrate([&](double s) { return 2.0 * kernel(s); }, 0.0, S, 1e-9, 1e-9);
        q = {body.value, body.error + 2.0 * t / (kPi * S), body.converged};
    } else {
        const auto edge = [&](int k) { return (k + 0.5) * kPi / th; };
        const auto block = [&](int k) {
            const double a = k == 0 ? 0.0 : edge(k - 1);
            return 2.0 * integrate([&](double s) { return std::cos(s * th) * kernel(s); },
                                   a, edge(k), 1e-15, 1e-13, 48)
                             .value;
        };
        q = sum_oscillatory_blocks(block, 1e-10, 4000);
    }
    out.quadrature = cosx * q.value;
    // the acceleration stability proxy can run a little hot; report a
    // bound with a safety factor on top of it
    out.quadrature_error = std::abs(cosx) * (10.0 * q.error + 1e-12) + 1e-14;
    return out;
}

}  // namespace alphatime
