#pragma once

#include <functional>
#include <vector>

namespace alphatime {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;  // achieved error bound
    bool converged = true;
};

/// Single Gauss-Kronrod 15(7) panel on [a,b].
QuadResult gk15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive Gauss-Kronrod on [a,b]; subdivides the worst panel
/// until the summed error bound drops below max(abs_tol, rel_tol*|I|).
QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double abs_tol, double rel_tol = 1e-14,
                     int max_panels = 4000);

/// Wynn epsilon acceleration of a partial-sum sequence. Returns the
/// accelerated limit and a stability-based error proxy.
QuadResult wynn_epsilon(const std::vector<double>& partial_sums);

/// Sums an alternating block decomposition of an oscillatory integral:
/// block(k) returns the integral over the k-th half-period. Plain
/// summation while blocks still shrink fast, Wynn acceleration once the
/// alternating tail dominates.
QuadResult sum_oscillatory_blocks(const std::function<double(int)>& block,
                                  double abs_tol, int max_blocks = 400);

}  // namespace alphatime
