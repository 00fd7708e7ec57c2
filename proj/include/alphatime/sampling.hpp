#pragma once

#include <span>
#include <vector>

#include "alphatime/rational.hpp"
#include "alphatime/rng.hpp"

namespace alphatime {

/// Discrete skeleton of a path: exact independent-increment marginals at
/// the grid times, no Euler error in law at grid points. Values are
/// stored flat, dim doubles per grid time.
struct PathSkeleton {
    std::vector<double> times;
    std::vector<double> values;
    int dim = 1;

    double at(std::size_t i, int d = 0) const {
        return values[i * static_cast<std::size_t>(dim) + static_cast<std::size_t>(d)];
    }
    std::size_t size() const { return times.size(); }
};

struct PathSpec {
    enum class Kind { symmetric_stable, subordinator, brownian };
    Kind kind = Kind::brownian;
    AlphaIndex alpha{1, 1};  // symmetric_stable
    double beta = 0.5;       // subordinator
    int dim = 1;             // brownian

    static PathSpec symmetric_stable(AlphaIndex a) {
        PathSpec p;
        p.kind = Kind::symmetric_stable;
        p.alpha = a;
        return p;
    }
    static PathSpec subordinator(double beta);
    static PathSpec brownian(int dim);
};

/// One draw of the symmetric alpha-stable marginal Y(t), normalized so
/// that E[exp(i xi Y(t))] = exp(-t |xi|^alpha). alpha = 1 and alpha = 2
/// use the Cauchy and Gaussian closed forms; anything else goes through
/// the Chambers-Mallows-Stuck transform.
double sample_symmetric_stable(AlphaIndex alpha, double t, RngStream& rng);

/// One draw of the one-sided stable subordinator T_t with Laplace
/// transform E[exp(-lambda T_t)] = exp(-t lambda^beta), via Kanter's
/// representation. Always strictly positive.
double sample_subordinator(double beta, double t, RngStream& rng);

/// Path skeleton on a strictly increasing grid starting at 0. Brownian
/// increments carry per-coordinate variance 2*dt (generator-Laplacian
/// normalization).
PathSkeleton sample_path(const PathSpec& spec, std::span<const double> grid,
                         std::span<const double> start, RngStream& rng);

/// Exact draw of the alpha-time marginal Z^x_Y(t) = X^x(|Y(t)|) with
/// Brownian outer process: x + sqrt(2 S) G, S = |Y(t)|, G standard
/// n-dimensional Gaussian. No path discretization is involved.
std::vector<double> sample_alpha_time_marginal(AlphaIndex alpha, double t,
                                               std::span<const double> x,
                                               RngStream& rng);

}  // namespace alphatime
