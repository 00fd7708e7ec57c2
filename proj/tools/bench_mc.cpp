// Benchmark: serial reference vs OpenMP kernels on the Monte Carlo
// drivers. Also asserts the two paths produce bit-identical estimates.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "alphatime/exit_time.hpp"
#include "alphatime/mc.hpp"
#include "alphatime/sampling.hpp"

using namespace alphatime;

namespace {

double seconds(const std::chrono::steady_clock::time_point& a,
               const std::chrono::steady_clock::time_point& b) {
    return std::chrono::duration<double>(b - a).count();
}

template <class Fn>
double timed(Fn&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    return seconds(t0, std::chrono::steady_clock::now());
}

}  // namespace

int main() {
    int failures = 0;
    std::printf("%-34s %10s %10s %8s %6s\n", "kernel", "serial[s]",
                "parallel[s]", "speedup", "equal");

    {
        const auto kernel = [](RngStream& rng) {
            return std::cos(sample_symmetric_stable(AlphaIndex::of(1, 2), 1.0, rng));
        };
        Estimate s, p;
        const double ts = timed([&] { s = mc::estimate_serial(4000000, 7, 0, kernel); });
        const double tp = timed([&] { p = mc::estimate_parallel(4000000, 7, 0, kernel, 0); });
        const bool eq = s.mean == p.mean && s.std_error == p.std_error;
        failures += !eq;
        std::printf("%-34s %10.3f %10.3f %8.2f %6s\n",
                    "stable cf (alpha=1/2, N=4e6)", ts, tp, ts / tp,
                    eq ? "yes" : "NO");
    }

    {
        const BallDomain ball = BallDomain::make(1, 1.0);
        const std::vector<double> x0{0.0};
        ExitMcResult s, p;
        const double ts = timed([&] {
            s = exit_time_mc(ball, x0, 1e-3, 20000, ExitEstimator::collapsed, 11, 1);
        });
        const double tp = timed([&] {
            p = exit_time_mc(ball, x0, 1e-3, 20000, ExitEstimator::collapsed, 11, 0);
        });
        const bool eq = s.estimate.mean == p.estimate.mean;
        failures += !eq;
        std::printf("%-34s %10.3f %10.3f %8.2f %6s\n",
                    "ball exit (h=1e-3, N=2e4)", ts, tp, ts / tp,
                    eq ? "yes" : "NO");
    }

    if (failures) {
        std::printf("serial/parallel mismatch detected\n");
        return 1;
    }
    return 0;
}
