#pragma once

#include <functional>

namespace alphatime {

/// Central-difference stencil description. Steps are scaled relative to
/// the evaluation point: step = base_step * max(|t|, 1). Defaults per
/// derivative order balance rounding noise (grows like eps/h^q) against
/// truncation (shrinks like h^2); they were tuned in the refinement
/// study, see FDStencil::for_order.
struct FDStencil {
    int order = 2;
    double base_step = 3e-3;
    int richardson_levels = 1;

    static FDStencil for_order(int q);
    double step_at(double t) const;
};

struct FDResult {
    double value = 0.0;
    double error = 0.0;  // estimate from the Richardson ladder
};

/// Central difference of order q at x0 (no domain guard); minimal
/// symmetric stencil of accuracy O(h^2), Richardson-extrapolated.
FDResult central_derivative(const std::function<double(double)>& g, int q,
                            double x0, double step, int richardson_levels);

/// Spec-facing time derivative: rejects stencils whose widest evaluation
/// would cross t <= 0.
FDResult fd_time_derivative(const std::function<double(double)>& g, int q,
                            double t, const FDStencil& stencil);

}  // namespace alphatime
