#include "alphatime/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace alphatime {

namespace {

// QUADPACK 15-point Kronrod nodes with the embedded 7-point Gauss rule.
constexpr double kX[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWK[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWG[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15_panel(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kX[i]);
        fv[14 - i] = f(c + h * kX[i]);
    }
    fv[7] = f(c);
    double resk = kWK[7] * fv[7];
    double resg = kWG[3] * fv[7];
    double resabs = kWK[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        resk += kWK[i] * (fv[i] + fv[14 - i]);
        resabs += kWK[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
        if (i % 2 == 1) resg += kWG[i / 2] * (fv[i] + fv[14 - i]);
    }
    const double mean = 0.5 * resk;
    double resasc = kWK[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWK[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    resk *= h;
    resg *= h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);

    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps50 = 50.0 * 2.220446049250313e-16;
    if (resabs > 1e-300 / eps50) err = std::max(err, eps50 * resabs);
    return {a, b, resk, err};
}

}  // namespace

QuadResult gk15(const std::function<double(double)>& f, double a, double b) {
    const Panel p = gk15_panel(f, a, b);
    return {p.value, p.error, true};
}

QuadResult integrate(const std::function<double(double)>& f, double a,
                     double b, double abs_tol, double rel_tol,
                     int max_panels) {
    std::priority_queue<Panel> heap;
    Panel first = gk15_panel(f, a, b);
    double total = first.value;
    double total_err = first.error;
    heap.push(first);
    int panels = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
           panels < max_panels) {
        const Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            // panel no longer splittable at double precision
            heap.push({worst.a, worst.b, worst.value, 0.0});
            continue;
        }
        const Panel left = gk15_panel(f, worst.a, mid);
        const Panel right = gk15_panel(f, mid, worst.b);
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        ++panels;
    }
    const bool ok = total_err <= std::max(abs_tol, rel_tol * std::abs(total)) ||
                    total_err <= 1e-13 * std::abs(total) + abs_tol;
    return {total, total_err, ok};
}

QuadResult wynn_epsilon(const std::vector<double>& s) {
    const std::size_t n = s.size();
    if (n == 0) return {0.0, 0.0, false};
    if (n == 1) return {s[0], std::abs(s[0]), false};

    // Rolling epsilon table. e[j] holds column k at row j; odd columns
    // are auxiliary. Track the last two even-column tips for the error
    // proxy.
    std::vector<double> cur(s.begin(), s.end());
    std::vector<double> prev(n, 0.0);  // column -1 is zero
    double best = s.back();
    double best_prev = s[n - 2];
    const double huge = 1e305;
    for (std::size_t k = 1; k < n; ++k) {
        std::vector<double> next(n - k);
        bool degenerate = false;
        for (std::size_t j = 0; j + k < n; ++j) {
            const double diff = cur[j + 1] - cur[j];
            if (std::abs(diff) < 1e-305) {
                degenerate = true;
                break;
            }
            next[j] = prev[j + 1] + 1.0 / diff;
            if (std::abs(next[j]) > huge) {
                degenerate = true;
                break;
            }
        }
        if (degenerate) break;
        prev = std::move(cur);
        cur = std::move(next);
        if (k % 2 == 0) {
            best_prev = best;
            best = cur.back();
        }
    }
    return {best, std::abs(best - best_prev), true};
}

QuadResult sum_oscillatory_blocks(const std::function<double(int)>& block,
                                  double abs_tol, int max_blocks) {
    std::vector<double> partials;
    partials.reserve(64);
    double sum = 0.0;
    double prev_mag = 0.0;
    for (int k = 0; k < max_blocks; ++k) {
        const double b = block(k);
        sum += b;
        partials.push_back(sum);
        const double mag = std::abs(b);
        // direct regime: envelope died out before oscillation mattered
        if (k >= 2 && mag < abs_tol && prev_mag < abs_tol)
            return {sum, mag + prev_mag, true};
        prev_mag = mag;
        if (k >= 12 && k % 4 == 3) {
            const QuadResult acc = wynn_epsilon(partials);
            if (acc.error < abs_tol) return {acc.value, acc.error, true};
        }
    }
    const QuadResult acc = wynn_epsilon(partials);
    return {acc.value, std::max(acc.error, prev_mag), acc.error < 10 * abs_tol};
}

}  // namespace alphatime
