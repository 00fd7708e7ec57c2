#include "alphatime/fd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace alphatime {

namespace {

// Minimal central stencils, accuracy O(h^2).
struct StencilDef {
    int radius;
    const double* coeff;  // coeff[0] at center, coeff[k] at +-k (symmetric), sign per side for odd q
    bool odd;
};

constexpr double kC1[2] = {0.0, 0.5};
constexpr double kC2[2] = {-2.0, 1.0};
constexpr double kC3[3] = {0.0, -1.0, 0.5};
constexpr double kC4[3] = {6.0, -4.0, 1.0};
constexpr double kC5[4] = {0.0, 2.5, -2.0, 0.5};
constexpr double kC6[4] = {-20.0, 15.0, -6.0, 1.0};

StencilDef stencil_for(int q) {
    switch (q) {
        case 1: return {1, kC1, true};
        case 2: return {1, kC2, false};
        case 3: return {2, kC3, true};
        case 4: return {2, kC4, false};
        case 5: return {3, kC5, true};
        case 6: return {3, kC6, false};
        default:
            throw std::invalid_argument("central_derivative: order must be 1..6");
    }
}

double apply_stencil(const std::function<double(double)>& g, int q, double x0,
                     double h) {
    const StencilDef st = stencil_for(q);
    double acc = st.odd ? 0.0 : st.coeff[0] * g(x0);
    for (int k = 1; k <= st.radius; ++k) {
        const double right = g(x0 + k * h);
        const double left = g(x0 - k * h);
        acc += st.coeff[k] * (st.odd ? right - left : right + left);
    }
    return acc / std::pow(h, q);
}

}  // namespace

FDStencil FDStencil::for_order(int q) {
    switch (q) {
        case 1: return {1, 2e-3, 1};
        case 2: return {2, 3e-3, 1};
        case 4: return {4, 2.5e-2, 1};
        case 6: return {6, 3e-2, 0};
        default: return {q, std::pow(2.2e-16, 1.0 / (q + 2)), 1};
    }
}

double FDStencil::step_at(double t) const {
    return base_step * std::max(std::abs(t), 1.0);
}

FDResult central_derivative(const std::function<double(double)>& g, int q,
                            double x0, double step, int richardson_levels) {
    if (!(step > 0.0))
        throw std::invalid_argument("central_derivative: step must be > 0");
    const int levels = std::max(0, richardson_levels);
    std::vector<double> d(levels + 1);
    for (int i = 0; i <= levels; ++i)
        d[i] = apply_stencil(g, q, x0, step / std::pow(2.0, i));
    // Richardson triangle in h^2 powers; the error proxy is the jump made
    // by the last extrapolation stage.
    double prev_best = d[levels];
    for (int k = 1; k <= levels; ++k) {
        const double f = std::pow(4.0, k);
        if (k == levels) prev_best = d[levels];
        for (int i = levels; i >= k; --i) d[i] = (f * d[i] - d[i - 1]) / (f - 1.0);
    }
    FDResult r;
    r.value = d[levels];
    r.error = levels > 0 ? std::abs(d[levels] - prev_best)
                         : std::abs(step * step) * std::abs(r.value);
    return r;
}

FDResult fd_time_derivative(const std::function<double(double)>& g, int q,
                            double t, const FDStencil& stencil) {
    if (stencil.order != q)
        throw std::invalid_argument("fd_time_derivative: stencil order mismatch");
    const double h = stencil.step_at(t);
    const int radius = (q + 1) / 2;
    if (!(t - radius * h > 0.0))
        throw std::invalid_argument(
            "fd_time_derivative: stencil would cross t <= 0");
    return central_derivative(g, q, t, h, stencil.richardson_levels);
}

}  // namespace alphatime
