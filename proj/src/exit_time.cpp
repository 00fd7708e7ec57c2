#include "alphatime/exit_time.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "alphatime/mc.hpp"

namespace alphatime {

BallDomain BallDomain::make(int dim, double radius) {
    if (dim < 1) throw std::invalid_argument("BallDomain: dim must be >= 1");
    if (!(radius > 0.0))
        throw std::invalid_argument("BallDomain: radius must be > 0");
    BallDomain b;
    b.dim = dim;
    b.radius = radius;
    b.center.assign(static_cast<std::size_t>(dim), 0.0);
    return b;
}

double BallDomain::dist_sq_from_center(std::span<const double> x) const {
    double q = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
        const double d = x[i] - center[i];
        q += d * d;
    }
    return q;
}

bool BallDomain::contains(std::span<const double> x) const {
    return dist_sq_from_center(x) < radius * radius;
}

double exit_oracle(const BallDomain& ball, std::span<const double> x) {
    const double r2 = ball.dist_sq_from_center(x);
    if (r2 > ball.radius * ball.radius)
        throw std::invalid_argument("exit_oracle: x outside the closed ball");
    return (ball.radius * ball.radius - r2) / (2.0 * ball.dim);
}

double getoor_conditional_mean(double tau) {
    if (tau < 0.0)
        throw std::invalid_argument("getoor_conditional_mean: tau must be >= 0");
    return tau;
}

namespace {

// Brownian skeleton exit time from the ball, per-step boundary test,
// increments variance 2h per coordinate.
double brownian_exit_time(const BallDomain& ball, std::span<const double> x0,
                          double h, RngStream& rng) {
    const double sd = std::sqrt(2.0 * h);
    const double r2 = ball.radius * ball.radius;
    double pos[3];
    const int dim = ball.dim;
    for (int d = 0; d < dim; ++d) pos[d] = x0[static_cast<std::size_t>(d)];
    double t = 0.0;
    for (std::uint64_t step = 0; step < 400000000ULL; ++step) {
        double q = 0.0;
        for (int d = 0; d < dim; ++d) {
            pos[d] += sd * rng.normal();
            const double dd = pos[d] - ball.center[static_cast<std::size_t>(d)];
            q += dd * dd;
        }
        t += h;
        if (q >= r2) return t;
    }
    throw std::runtime_error("exit_time_mc: path did not exit (step cap hit)");
}

// Cauchy skeleton exit time from (-tau, tau) started at 0.
double cauchy_exit_time(double tau, double h, RngStream& rng) {
    double c = 0.0;
    double t = 0.0;
    for (std::uint64_t step = 0; step < 400000000ULL; ++step) {
        c += h * rng.cauchy();
        t += h;
        if (std::abs(c) >= tau) return t;
    }
    throw std::runtime_error("exit_time_mc: inner clock did not exit");
}

}  // namespace

ExitMcResult exit_time_mc(const BallDomain& ball, std::span<const double> x,
                          double h, std::uint64_t n, ExitEstimator estimator,
                          std::uint64_t seed, int workers) {
    if (n < 1000) throw std::invalid_argument("exit_time_mc: need n >= 1000");
    if (!(h > 0.0)) throw std::invalid_argument("exit_time_mc: h must be > 0");
    if (!ball.contains(x))
        throw std::invalid_argument("exit_time_mc: x must be strictly interior");
    if (ball.dim > 3)
        throw std::invalid_argument("exit_time_mc: dim <= 3 supported");
    const std::vector<double> x0(x.begin(), x.end());

    ExitMcResult out;
    out.h = h;
    out.too_coarse = exit_oracle(ball, x) / h < 10.0;
    out.estimate = mc::estimate(
        n, seed, 0,
        [&, estimator, h](RngStream& rng) {
            const double tau = brownian_exit_time(ball, x0, h, rng);
            if (estimator == ExitEstimator::collapsed) return tau;
            return cauchy_exit_time(tau, h, rng);
        },
        workers);
    return out;
}

ExitRefinement exit_time_refinement(const BallDomain& ball,
                                    std::span<const double> x, double h0,
                                    int n_levels, std::uint64_t n,
                                    ExitEstimator estimator,
                                    std::uint64_t seed, int workers) {
    if (n_levels < 2)
        throw std::invalid_argument("exit_time_refinement: need >= 2 levels");
    ExitRefinement ref;
    double h = h0;
    for (int lev = 0; lev < n_levels; ++lev, h *= 0.5) {
        // fresh substream block per level
        const ExitMcResult r = exit_time_mc(ball, x, h, n, estimator,
                                            seed + 1000003ULL * static_cast<std::uint64_t>(lev),
                                            workers);
        ref.levels.push_back({h, r.estimate, r.too_coarse});
    }
    const std::size_t last = ref.levels.size() - 1;
    const double e1 = ref.levels[last - 1].estimate.mean;
    const double e2 = ref.levels[last].estimate.mean;
    // sqrt(h) leading-order bias model: est(h) = A + c sqrt(h)
    ref.extrapolated = e2 - (e1 - e2) / (std::numbers::sqrt2 - 1.0);
    if (ref.levels.size() >= 3) {
        const double e0 = ref.levels[last - 2].estimate.mean;
        const double se = std::sqrt(
            ref.levels[last].estimate.std_error * ref.levels[last].estimate.std_error +
            ref.levels[last - 1].estimate.std_error * ref.levels[last - 1].estimate.std_error);
        ref.trend_converging =
            std::abs(e1 - e2) < std::abs(e0 - e1) + 2.0 * se;
    } else {
        ref.trend_converging = true;
    }
    return ref;
}

}  // namespace alphatime
