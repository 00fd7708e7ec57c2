// Acceptance suite: runs every gate criterion at its pinned tolerance and
// prints one PASS/FAIL line per criterion. Exit status is the number of
// failed criteria.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "alphatime/composition.hpp"
#include "alphatime/densities.hpp"
#include "alphatime/exit_time.hpp"
#include "alphatime/experiments.hpp"
#include "alphatime/mc.hpp"
#include "alphatime/residuals.hpp"
#include "alphatime/sampling.hpp"
#include "alphatime/spectral.hpp"

using namespace alphatime;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

void report(int criterion, const char* label, bool pass,
            const std::string& detail) {
    std::printf("[%s] criterion %2d: %-34s %s\n", pass ? "PASS" : "FAIL",
                criterion, label, detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

const std::vector<double> kTGrid{0.5, 1.0, 2.0};
const std::vector<double> kXGrid{0.0, 0.35, 1.1};
const FDStencil kFd1{1, 2e-3, 1};
const FDStencil kFd2{2, 3e-3, 1};
const FDStencil kFd4{4, 2.5e-2, 1};
const FDStencil kFd6{6, 3e-2, 0};

// --- criterion 1 -----------------------------------------------------------

void criterion_1_samplers() {
    const std::uint64_t n = 1000000;
    const double bound = 4.0 / std::sqrt(static_cast<double>(n));
    double worst = 0.0;
    int stream = 0;
    const std::vector<AlphaIndex> alphas{
        AlphaIndex::of(1, 3), AlphaIndex::of(1, 2), AlphaIndex::of(1, 1),
        AlphaIndex::of(3, 2), AlphaIndex::of(2, 1)};
    for (const AlphaIndex& alpha : alphas)
        for (double xi : {0.5, 1.0, 2.0}) {
            const Estimate est = mc::estimate(
                n, 1000 + 17 * (++stream), 0,
                [&](RngStream& rng) {
                    return std::cos(xi * sample_symmetric_stable(alpha, 1.0, rng));
                },
                1);
            worst = std::max(
                worst, std::abs(est.mean - std::exp(-std::pow(xi, alpha.value()))));
        }
    report(1, "sampler characteristic function", worst <= bound,
           "worst |err| = " + fmt(worst) + " <= " + fmt(bound));
}

// --- criteria 2-7: residual gates -------------------------------------------

void criterion_2_thm21() {
    double worst = 0.0;
    bool pass = true;
    for (double k : {0.5, 1.0, 2.0}) {
        const ResidualReport rep = check_thm_cauchy(k, kTGrid, kXGrid, kFd2, 1e-4);
        pass = pass && rep.pass && rep.max_x_spread < 1e-12;
        worst = std::max(worst, rep.max_rel_residual);
    }
    report(2, "fourth-order Cauchy-time profile", pass,
           "max rel residual = " + fmt(worst) + " <= 1e-4");
}

void criterion_3_thm22() {
    double worst = 0.0;
    bool pass = true;
    for (double eps : {0.5, 1.0, 2.0})
        for (double k : {0.0, 1.0}) {
            const ResidualReport rep =
                check_thm_eps(k, eps, kTGrid, kXGrid, kFd2, 1e-4);
            pass = pass && rep.pass;
            worst = std::max(worst, rep.max_rel_residual);
        }
    report(3, "eps-weighted profile", pass,
           "max rel residual = " + fmt(worst) + " <= 1e-4");
}

void criterion_4_thm23() {
    double worst = 0.0;
    bool pass = true;
    for (double c : {0.0, -1.0})
        for (double k : {1.0, 2.0}) {
            const ResidualReport rep = check_thm_fk(
                k, c, FkAssembly::derivation_consistent, kTGrid, kXGrid, kFd2, 1e-4);
            pass = pass && rep.pass;
            worst = std::max(worst, rep.max_rel_residual);
        }
    // documented discrepancy of the displayed assembly at c = -1, k = 1
    double worst_gap = 0.0;
    {
        const double c = -1.0, k = 1.0, beta = k * k - c;
        const AlphaIndex one = AlphaIndex::of(1, 1);
        for (double t : kTGrid) {
            const auto prof = [&](double tt) {
                return weighted_kernel_value(one, beta, tt);
            };
            const double g_t = prof(t);
            const double ddt = fd_time_derivative(prof, 2, t, kFd2).value;
            const double lit =
                2.0 * beta / (kPi * t) - (k * k * k * k - c * k * k + c * c) * g_t;
            const double gap = std::abs(c) * k * k * g_t;
            worst_gap = std::max(worst_gap, std::abs(std::abs(ddt - lit) - gap) / gap);
        }
        pass = pass && worst_gap < 1e-3;
    }
    report(4, "Feynman-Kac profile + literal gap", pass,
           "max rel residual = " + fmt(worst) + " <= 1e-4, gap off by " +
               fmt(worst_gap) + " <= 1e-3");
}

void criterion_5_thm24() {
    double worst = 0.0;
    bool pass = true;
    for (double k2 : {0.0, 1.0, 2.0, 4.0}) {
        const double k = std::sqrt(k2);
        const ResidualReport rep = check_thm_ictbap(k, kTGrid, kXGrid, kFd2, 1e-6);
        pass = pass && rep.pass;
        worst = std::max(worst, rep.max_rel_residual);
        for (double t : kTGrid) {
            const std::vector<double> kv{k}, x0{0.0};
            const IctbapValue v = u_ictbap(kv, t, x0);
            pass = pass &&
                   std::abs(v.quadrature - v.closed_form) <= v.quadrature_error;
        }
    }
    report(5, "imaginary-time profile + branches", pass,
           "max rel residual = " + fmt(worst) + " <= 1e-6");
}

void criterion_6_thm25() {
    const std::vector<double> ts{1.0, 2.0};
    double worst_half = 0.0, worst_third = 0.0;
    bool pass = true;
    for (double k : {0.5, 1.0}) {
        const ResidualReport rep = check_thm_alpha(AlphaIndex::of(1, 2), k, ts,
                                                   kXGrid, kFd4, 1e-3);
        pass = pass && rep.pass;
        worst_half = std::max(worst_half, rep.max_rel_residual);
    }
    for (double k : {0.5, 1.0}) {
        const ResidualReport rep = check_thm_alpha(AlphaIndex::of(1, 3), k, ts,
                                                   kXGrid, kFd6, 1e-2);
        pass = pass && rep.pass;
        worst_third = std::max(worst_third, rep.max_rel_residual);
    }
    // alpha = 1 must take the criterion-2 code path exactly
    const ResidualReport via =
        check_thm_alpha(AlphaIndex::of(1, 1), 1.0, kTGrid, kXGrid, kFd2, 1e-4);
    const ResidualReport direct =
        check_thm_cauchy(1.0, kTGrid, kXGrid, kFd2, 1e-4);
    bool bit_equal = via.points.size() == direct.points.size();
    for (std::size_t i = 0; bit_equal && i < via.points.size(); ++i)
        bit_equal = via.points[i].lhs == direct.points[i].lhs &&
                    via.points[i].rhs == direct.points[i].rhs;
    pass = pass && bit_equal;
    report(6, "rational-index profiles 1/2, 1/3", pass,
           "alpha=1/2: " + fmt(worst_half) + " <= 1e-3, alpha=1/3: " +
               fmt(worst_third) + " <= 1e-2, alpha=1 bit-equal: " +
               (bit_equal ? "yes" : "no"));
}

void criterion_7_btp() {
    double worst = 0.0;
    bool pass = true;
    for (double k : {0.5, 1.0, 2.0}) {
        const ResidualReport rep = check_btp(k, kTGrid, kXGrid, kFd1, 1e-5);
        pass = pass && rep.pass;
        worst = std::max(worst, rep.max_rel_residual);
    }
    report(7, "Brownian-time profile", pass,
           "max rel residual = " + fmt(worst) + " <= 1e-5");
}

// --- criterion 8: quadrature vs Monte Carlo ----------------------------------

void criterion_8_mc() {
    const std::uint64_t n = 1000000;
    bool pass = true;
    double worst_sigma = 0.0;
    int stream = 0;
    const std::vector<double> x0{0.0};
    const auto check = [&](const CompositionSpec& spec, double t) {
        const double uq = u_quadrature(spec, t, x0);
        const Estimate um = u_mc(spec, t, x0, n, 3000 + 31 * (++stream), 1);
        const double sigmas =
            std::abs(uq - um.mean) / std::max(um.std_error, 1e-15);
        worst_sigma = std::max(worst_sigma, sigmas);
        pass = pass && sigmas <= 4.0;
    };
    for (double k : {0.5, 1.0, 2.0})
        for (double t : kTGrid)
            check(CompositionSpec::cauchy_time(PlaneWave{{k}}), t);
    for (double eps : {0.5, 1.0, 2.0})
        for (double k : {0.0, 1.0})
            check(CompositionSpec::eps_weighted(PlaneWave{{k}}, eps), 1.0);
    for (double c : {0.0, -1.0})
        for (double k : {1.0, 2.0})
            check(CompositionSpec::feynman_kac(PlaneWave{{k}}, c), 1.0);
    for (double k : {0.5, 1.0})
        for (double t : {1.0, 2.0})
            check(CompositionSpec::alpha_time(AlphaIndex::of(1, 2), PlaneWave{{k}}),
                  t);
    for (double k : {0.5, 1.0, 2.0})
        check(CompositionSpec::btp(PlaneWave{{k}}), 1.0);
    report(8, "quadrature/MC cross-validation", pass,
           "worst deviation = " + fmt(worst_sigma) + " sigma <= 4");
}

// --- criterion 9: exit problem ----------------------------------------------

void criterion_9_exit() {
    bool pass = true;
    std::string detail;
    const std::uint64_t n = 100000;
    for (int dim : {1, 2}) {
        const BallDomain ball = BallDomain::make(dim, 1.0);
        const std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
        const double oracle = exit_oracle(ball, x0);
        const ExitRefinement collapsed = exit_time_refinement(
            ball, x0, 1e-3, 3, n, ExitEstimator::collapsed, 7100 + dim, 1);
        const double rel = std::abs(collapsed.extrapolated - oracle) / oracle;
        pass = pass && rel <= 0.05 && collapsed.trend_converging;

        const ExitMcResult two = exit_time_mc(ball, x0, 2.5e-4, n,
                                              ExitEstimator::two_stage,
                                              7200 + dim, 1);
        const Estimate& eb = collapsed.levels.back().estimate;
        const double joint = std::sqrt(two.estimate.std_error * two.estimate.std_error +
                                       eb.std_error * eb.std_error);
        pass = pass && std::abs(two.estimate.mean - eb.mean) <= 4.0 * joint;
        detail += "dim " + std::to_string(dim) + ": rel " + fmt(rel) +
                  ", est gap " + fmt(std::abs(two.estimate.mean - eb.mean)) +
                  " <= " + fmt(4.0 * joint) + "; ";
    }
    report(9, "exit-time oracle + Getoor bridge", pass, detail);
}

// --- criterion 10: subordinate killed Brownian motion -------------------------

void criterion_10_skbm() {
    bool pass = true;
    double worst_a1 = 0.0, worst_a12 = 0.0, worst_boundary = 0.0, worst_sg = 0.0;
    const SpectralDomain dom = SpectralDomain::interval(kPi, 40);
    const std::vector<double> ts{0.5, 1.0};
    const std::vector<double> xs{0.4, kPi / 2, 2.2};
    const std::vector<SpectralCoefficients> fs{
        SpectralCoefficients::sine_sum(dom, {{1, 1.0}}),
        SpectralCoefficients::sine_sum(dom, {{1, 1.0}, {2, 1.0}}),
        SpectralCoefficients::indicator_modes(dom, kPi / 4, 3 * kPi / 4, 20)};
    for (const auto& f : fs) {
        const ResidualReport r1 =
            skbm_pde_residual(dom, f, AlphaIndex::of(1, 1), ts, xs, kFd2, 1e-6);
        const ResidualReport r2 =
            skbm_pde_residual(dom, f, AlphaIndex::of(1, 2), ts, xs, kFd4, 1e-4);
        pass = pass && r1.pass && r2.pass;
        worst_a1 = std::max(worst_a1, r1.max_rel_residual);
        worst_a12 = std::max(worst_a12, r2.max_rel_residual);
        for (const AlphaIndex a : {AlphaIndex::of(1, 1), AlphaIndex::of(1, 2)}) {
            for (double t : ts)
                for (double xb : {0.0, kPi})
                    worst_boundary = std::max(
                        worst_boundary,
                        std::abs(q_apply(dom, f, a, t, std::vector<double>{xb})));
            worst_sg = std::max(worst_sg,
                                semigroup_property_check(dom, f, a, 0.5, 0.5, xs));
        }
    }
    pass = pass && worst_boundary < 1e-10 && worst_sg < 1e-12;

    // Laplace identity of the subordinator density
    const QuadResult lap = integrate(
        [](double s) { return std::exp(-s) * subordinator_density(0.5, 1.0, s); },
        1e-12, 120.0, 1e-12, 1e-12);
    const double lap_err = std::abs(lap.value - std::exp(-1.0));
    pass = pass && lap_err < 1e-8;

    // MC vs spectral at the pinned band max(4 stderr, 2% documented bias)
    std::string mc_detail;
    {
        const SpectralCoefficients f1 = SpectralCoefficients::sine_sum(dom, {{1, 1.0}});
        const std::vector<double> mid{kPi / 2};
        const auto sine = [](std::span<const double> x) { return std::sin(x[0]); };
        for (const AlphaIndex a : {AlphaIndex::of(1, 1), AlphaIndex::of(1, 2)}) {
            const double spectral = q_apply(dom, f1, a, 1.0, mid);
            const Estimate est =
                skbm_mc(dom, sine, a, 1.0, mid, 1e-4, 120000, 8800 + a.m, 1);
            const double band =
                std::max(4.0 * est.std_error, 0.02 * std::abs(spectral));
            pass = pass && std::abs(est.mean - spectral) <= band;
            mc_detail += "mc(alpha=" + a.str() + ") off " +
                         fmt(std::abs(est.mean - spectral)) + " <= " + fmt(band) +
                         "; ";
        }
    }
    report(10, "subordinate killed BM", pass,
           "residuals " + fmt(worst_a1) + " <= 1e-6 / " + fmt(worst_a12) +
               " <= 1e-4, boundary " + fmt(worst_boundary) + ", semigroup " +
               fmt(worst_sg) + ", laplace " + fmt(lap_err) + "; " + mc_detail);
}

// --- criterion 11: kernel PDE lemmas ------------------------------------------

void criterion_11_lemmas() {
    const FDStencil fd{2, 1.5e-3, 1};
    double worst_harm = 0.0;
    for (double t : {0.7, 1.0, 1.6})
        for (double s : {0.0, 0.5, 1.2})
            worst_harm =
                std::max(worst_harm, std::abs(density_pde_residual(
                                         AlphaIndex::of(1, 1), t, s, fd)));
    double worst_sub = 0.0;
    for (double t : {0.8, 1.0, 2.0})
        for (double s : {0.5, 1.0, 2.5})
            worst_sub =
                std::max(worst_sub, std::abs(subordinator_pde_residual(t, s, fd)));
    const bool pass = worst_harm < 1e-8 && worst_sub < 1e-8;
    report(11, "kernel PDE lemmas", pass,
           "harmonicity " + fmt(worst_harm) + " <= 1e-8, subordinator " +
               fmt(worst_sub) + " <= 1e-8");
}

// --- criterion 12: determinism -------------------------------------------------

void criterion_12_determinism() {
    bool pass = true;
    {
        ExperimentConfig cfg;
        cfg.set("experiment", "thm24");
        cfg.set("seed", "42");
        const ExperimentResult a = run_experiment(cfg);
        const ExperimentResult b = run_experiment(cfg);
        pass = pass && a.report.dump(2) == b.report.dump(2) && a.csv == b.csv;
    }
    {
        // Monte Carlo experiment with parallel workers: the report must not
        // depend on the worker count either
        ExperimentConfig cfg;
        cfg.set("experiment", "exit");
        cfg.set("seed", "42");
        cfg.set("n_paths", "2000");
        cfg.set("h0", "2e-3");
        cfg.set("levels", "2");
        cfg.set("dims", "1");
        cfg.set("rel_tolerance", "0.2");
        const ExperimentResult a = run_experiment(cfg);
        const ExperimentResult b = run_experiment(cfg);
        pass = pass && a.report.dump(2) == b.report.dump(2) && a.csv == b.csv;
        ExperimentConfig cfg_w = cfg;
        cfg_w.set("workers", "3");
        const ExperimentResult c = run_experiment(cfg_w);
        // identical numbers, only the echoed worker count differs
        pass = pass && a.csv == c.csv &&
               a.report["checks"].dump() == c.report["checks"].dump();
    }
    report(12, "byte-identical reruns", pass,
           pass ? "reports identical across reruns and worker counts"
                : "mismatch detected");
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    criterion_1_samplers();
    criterion_2_thm21();
    criterion_3_thm22();
    criterion_4_thm23();
    criterion_5_thm24();
    criterion_6_thm25();
    criterion_7_btp();
    criterion_8_mc();
    criterion_9_exit();
    criterion_10_skbm();
    criterion_11_lemmas();
    criterion_12_determinism();
    std::printf("%d of 12 criteria failed\n", g_failures);
    return g_failures;
}
