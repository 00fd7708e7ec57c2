#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace alphatime {

/// Monte Carlo estimate with its standard error.
struct Estimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// Deterministic pairwise summation: the result depends only on the
/// order of the input, never on how work was scheduled.
inline double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

/// One-sample Kolmogorov-Smirnov statistic; `sorted` must be ascending.
inline double ks_statistic(std::span<const double> sorted,
                           const std::function<double(double)>& cdf) {
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

/// Two-sample Kolmogorov-Smirnov statistic; both inputs are sorted here.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / na -
                                 static_cast<double>(j) / nb));
    }
    return d;
}

/// Asymptotic KS critical value at significance level `alpha_level`
/// (reject when D exceeds this). one-sample: pass n; two-sample: pass
/// the effective size nm/(n+m).
inline double ks_critical(double alpha_level, double n_effective) {
    const double c = std::sqrt(-0.5 * std::log(alpha_level / 2.0));
    return c / std::sqrt(n_effective);
}

}  // namespace alphatime
