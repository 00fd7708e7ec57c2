#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "alphatime/stats.hpp"

namespace alphatime {

struct BallDomain {
    int dim = 1;
    double radius = 1.0;
    std::vector<double> center;  // defaults to the origin

    static BallDomain make(int dim, double radius);
    bool contains(std::span<const double> x) const;
    double dist_sq_from_center(std::span<const double> x) const;
};

/// The elliptic oracle: the unique solution of Delta u = -1 on the ball
/// with u = 0 on the boundary, under the generator-Laplacian Brownian
/// convention: (R^2 - |x - center|^2) / (2n).
double exit_oracle(const BallDomain& ball, std::span<const double> x);

/// Expected exit time of the 1-d Cauchy process from (-tau, tau) started
/// at 0; equals tau under the exp(-t|xi|) normalization.
double getoor_conditional_mean(double tau);

enum class ExitEstimator {
    /// Simulate the Brownian exit time tau of the ball, then run a
    /// Cauchy skeleton until |C| >= tau; returns that time.
    two_stage,
    /// Return tau directly, justified by E[T | tau] = tau.
    collapsed,
};

struct ExitMcResult {
    Estimate estimate;
    double h = 0.0;
    bool too_coarse = false;  // fewer than 10 expected steps before exit
};

ExitMcResult exit_time_mc(const BallDomain& ball, std::span<const double> x,
                          double h, std::uint64_t n, ExitEstimator estimator,
                          std::uint64_t seed, int workers = 1);

/// Grid-refinement ladder h, h/2, ..., with sqrt(h)-model extrapolation
/// and the convergence-trend diagnostic
/// |est(h/2)-est(h/4)| < |est(h)-est(h/2)| + 2*stderr.
struct ExitRefinement {
    struct Level {
        double h;
        Estimate estimate;
        bool too_coarse;
    };
    std::vector<Level> levels;
    double extrapolated = 0.0;
    bool trend_converging = false;
};

ExitRefinement exit_time_refinement(const BallDomain& ball,
                                    std::span<const double> x, double h0,
                                    int n_levels, std::uint64_t n,
                                    ExitEstimator estimator,
                                    std::uint64_t seed, int workers = 1);

}  // namespace alphatime
