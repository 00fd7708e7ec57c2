#include "alphatime/experiments.hpp"

#include <cmath>
#include <filesystem>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "alphatime/composition.hpp"
#include "alphatime/densities.hpp"
#include "alphatime/exit_time.hpp"
#include "alphatime/mc.hpp"
#include "alphatime/report.hpp"
#include "alphatime/residuals.hpp"
#include "alphatime/sampling.hpp"
#include "alphatime/semigroup.hpp"
#include "alphatime/spectral.hpp"

namespace alphatime {

namespace {
constexpr double kPi = std::numbers::pi;

AlphaIndex parse_alpha(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return AlphaIndex::of(std::stoi(s), 1);
    return AlphaIndex::of(std::stoi(s.substr(0, slash)),
                          std::stoi(s.substr(slash + 1)));
}

struct CheckList {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    bool all_pass = true;

    void add(const std::string& name, double value, double bound, bool ok) {
        nlohmann::ordered_json c;
        c["name"] = name;
        c["value"] = value;
        c["bound"] = bound;
        c["pass"] = ok;
        checks.push_back(c);
        all_pass = all_pass && ok;
    }
    void add_leq(const std::string& name, double value, double bound) {
        add(name, value, bound, value <= bound);
    }
    void add_report(const ResidualReport& rep) {
        nlohmann::ordered_json c;
        c["name"] = rep.theorem_tag + " max rel residual";
        c["value"] = rep.max_rel_residual;
        c["bound"] = rep.tolerance;
        c["pass"] = rep.pass;
        c["exploratory"] = rep.exploratory;
        checks.push_back(c);
        if (!rep.exploratory) all_pass = all_pass && rep.pass;
    }
    void add_info(const std::string& name, double value) {
        nlohmann::ordered_json c;
        c["name"] = name;
        c["value"] = value;
        c["info_only"] = true;
        checks.push_back(c);
    }
};

struct Ctx {
    const ExperimentConfig& cfg;
    std::uint64_t seed;
    int workers;
    std::uint64_t next_stream = 0;
    std::uint64_t mc_seed() { return seed + 0x9E3779B9ULL * (++next_stream); }
};

std::string hex_hash(std::uint64_t h) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "0x%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

void mc_cross_check(CheckList& cl, Ctx& ctx, const CompositionSpec& spec,
                    double t, std::uint64_t n, const std::string& label) {
    const std::vector<double> x{0.0};
    const double uq = u_quadrature(spec, t, x);
    const Estimate um = u_mc(spec, t, x, n, ctx.mc_seed(), ctx.workers);
    cl.add_leq(label + " |quadrature - mc|", std::abs(uq - um.mean),
               4.0 * um.std_error + 1e-12);
}

// ---- samplers ------------------------------------------------------------

ExperimentResult run_samplers(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"alpha", "xi", "empirical", "expected", "abs_error", "bound"});
    const auto alphas = ctx.cfg.get_string_list(
        "alpha", {"1/3", "1/2", "1", "3/2", "2"});
    const auto xis = ctx.cfg.get_list("xi", {0.5, 1.0, 2.0});
    const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n", 1000000));
    const double bound = 4.0 / std::sqrt(static_cast<double>(n));
    for (const auto& as : alphas) {
        const AlphaIndex alpha = parse_alpha(as);
        for (double xi : xis) {
            const Estimate est = mc::estimate(
                n, ctx.mc_seed(), 0,
                [&](RngStream& rng) {
                    return std::cos(xi * sample_symmetric_stable(alpha, 1.0, rng));
                },
                ctx.workers);
            const double expected = std::exp(-std::pow(xi, alpha.value()));
            const double err = std::abs(est.mean - expected);
            cl.add_leq("cf alpha=" + as + " xi=" + fmt_double(xi), err, bound);
            csv.row({as, fmt_double(xi), fmt_double(est.mean),
                     fmt_double(expected), fmt_double(err), fmt_double(bound)});
        }
    }
    // subordinator Laplace functional at beta = 1/2
    {
        const auto ns = static_cast<std::uint64_t>(ctx.cfg.get_int("n_sub", 400000));
        const Estimate est = mc::estimate(
            ns, ctx.mc_seed(), 0,
            [&](RngStream& rng) {
                return std::exp(-sample_subordinator(0.5, 1.0, rng));
            },
            ctx.workers);
        cl.add_leq("subordinator E[e^-T_1] vs e^-1",
                   std::abs(est.mean - std::exp(-1.0)),
                   4.0 * est.std_error);
    }
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.csv = csv.str();
    return res;
}

// ---- densities -----------------------------------------------------------

ExperimentResult run_densities(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"check", "t", "s_or_beta", "value", "reference", "abs_error"});
    const AlphaIndex a1 = AlphaIndex::of(1, 1);
    const AlphaIndex a2 = AlphaIndex::of(2, 1);
    const AlphaIndex a12 = AlphaIndex::of(1, 2);
    const AlphaIndex a13 = AlphaIndex::of(1, 3);

    const double p10 = stable_density(a1, 1.0, 0.0);
    cl.add_leq("cauchy p_1(0,0) vs 1/pi", std::abs(p10 - 1.0 / kPi), 1e-14);
    const double p20 = stable_density(a2, 1.0, 0.0);
    cl.add_leq("gaussian p_1(0,0) vs 1/(2 sqrt pi)",
               std::abs(p20 - 0.28209479177387814), 1e-14);

    for (const AlphaIndex& a : {a1, a2, a12, a13}) {
        const double direct = stable_density(a, 1.0, 0.0);
        const double formula = stable_density_even_deriv_at_zero(a, 1.0, 0);
        cl.add_leq("deriv j=0 consistency alpha=" + a.str(),
                   std::abs(direct - formula), 1e-10);
    }

    // Parseval vs direct s-quadrature on the 3x3x3 grid
    for (const AlphaIndex& a : {a12, a1, a2})
        for (double beta : {0.5, 1.0, 2.0})
            for (double t : {0.5, 1.0, 2.0}) {
                const double par = weighted_kernel_value(a, beta, t);
                const QuadResult dir = weighted_kernel_integral_direct(a, beta, t);
                const double err = std::abs(par - dir.value);
                cl.add_leq("parseval alpha=" + a.str() + " beta=" +
                               fmt_double(beta) + " t=" + fmt_double(t),
                           err, 1e-9);
                csv.row({"parseval alpha=" + a.str(), fmt_double(t),
                         fmt_double(beta), fmt_double(par), fmt_double(dir.value),
                         fmt_double(err)});
            }

    // normalization 2 int_0^inf p = 1
    cl.add_leq("normalization alpha=1",
               std::abs(weighted_kernel_integral_direct(a1, 0.0, 1.0).value - 1.0),
               1e-8);
    cl.add_leq("normalization alpha=2",
               std::abs(weighted_kernel_integral_direct(a2, 0.0, 1.0).value - 1.0),
               1e-8);
    cl.add_leq("normalization alpha=1/2",
               std::abs(weighted_kernel_integral_direct(a12, 0.0, 1.0).value - 1.0),
               1e-5);
    cl.add_leq("normalization alpha=1/3",
               std::abs(weighted_kernel_integral_direct(a13, 0.0, 1.0).value - 1.0),
               1e-4);

    // kernel PDE residuals (harmonicity and friends)
    {
        const FDStencil fd{2, 1.5e-3, 1};
        double worst = 0.0;
        for (double t : {0.7, 1.0, 1.6})
            for (double s : {0.0, 0.5, 1.2})
                worst = std::max(worst,
                                 std::abs(density_pde_residual(a1, t, s, fd)));
        cl.add_leq("lemma kernel harmonicity alpha=1 (3x3)", worst, 1e-8);
        double worst2 = 0.0;
        for (double t : {0.8, 1.3})
            for (double s : {0.0, 0.9})
                worst2 = std::max(worst2,
                                  std::abs(density_pde_residual(a2, t, s, fd)));
        cl.add_leq("heat kernel residual alpha=2", worst2, 1e-8);
        const FDStencil fd4{4, 4e-2, 1};
        cl.add_leq("kernel residual alpha=1/2",
                   std::abs(density_pde_residual(a12, 1.0, 0.3, fd4)), 1e-3);
    }
    {
        const FDStencil fd{2, 1.5e-3, 1};
        double worst = 0.0;
        for (double t : {0.8, 1.0, 2.0})
            for (double s : {0.5, 1.0, 2.5})
                worst = std::max(worst,
                                 std::abs(subordinator_pde_residual(t, s, fd)));
        cl.add_leq("subordinator density PDE (3x3)", worst, 1e-8);
    }
    {
        // Laplace transform of the subordinator density
        const QuadResult lap = integrate(
            [](double s) {
                return std::exp(-s) * subordinator_density(0.5, 1.0, s);
            },
            1e-12, 120.0, 1e-12, 1e-12);
        cl.add_leq("laplace identity beta=1/2",
                   std::abs(lap.value - std::exp(-1.0)), 1e-8);
    }

    // monotonicity of the weighted integrals
    {
        bool mono = true;
        for (const AlphaIndex& a : {a12, a1, a2}) {
            double prev = weighted_kernel_value(a, 0.25, 1.0);
            for (double beta : {0.5, 1.0, 2.0, 4.0}) {
                const double g = weighted_kernel_value(a, beta, 1.0);
                mono = mono && g < prev;
                prev = g;
            }
            prev = weighted_kernel_value(a, 1.0, 0.25);
            for (double t : {0.5, 1.0, 2.0, 4.0}) {
                const double g = weighted_kernel_value(a, 1.0, t);
                mono = mono && g < prev;
                prev = g;
            }
        }
        cl.add("weighted integral monotone in beta and t", mono ? 1.0 : 0.0, 1.0,
               mono);
    }
    (void)ctx;
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.csv = csv.str();
    return res;
}

// ---- residual experiments -------------------------------------------------

ExperimentResult run_thm21(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"experiment", "tag", "t", "x", "lhs", "rhs", "abs_residual",
                "rel_residual"});
    const auto kappas = ctx.cfg.get_list("kappa", {0.5, 1.0, 2.0});
    const auto t_grid = ctx.cfg.get_list("t_grid", {0.5, 1.0, 2.0});
    const auto x_grid = ctx.cfg.get_list("x_grid", {0.0, 0.35, 1.1});
    const double tol = ctx.cfg.get_double("tolerance", 1e-4);
    const FDStencil fd{2, ctx.cfg.get_double("fd_base_step", 3e-3),
                       static_cast<int>(ctx.cfg.get_int("fd_levels", 1))};
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (double k : kappas) {
        const ResidualReport rep = check_thm_cauchy(k, t_grid, x_grid, fd, tol);
        cl.add_report(rep);
        cl.add_leq("thm21 kappa=" + fmt_double(k) + " x-spread",
                   rep.max_x_spread, 1e-12);
        reps.push_back(to_json(rep));
        append_points_csv(csv, "thm21", "kappa=" + fmt_double(k), rep);
    }
    const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n", 1000000));
    for (double k : kappas)
        for (double t : t_grid)
            mc_cross_check(cl, ctx,
                           CompositionSpec::cauchy_time(PlaneWave{{k}}), t, n,
                           "thm21 mc kappa=" + fmt_double(k) +
                               " t=" + fmt_double(t));
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.report["residual_reports"] = reps;
    res.csv = csv.str();
    return res;
}

ExperimentResult run_thm22(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"experiment", "tag", "t", "x", "lhs", "rhs", "abs_residual",
                "rel_residual"});
    const auto eps_list = ctx.cfg.get_list("eps", {0.5, 1.0, 2.0});
    const auto kappas = ctx.cfg.get_list("kappa", {0.0, 1.0});
    const auto t_grid = ctx.cfg.get_list("t_grid", {0.5, 1.0, 2.0});
    const auto x_grid = ctx.cfg.get_list("x_grid", {0.0, 0.35, 1.1});
    const double tol = ctx.cfg.get_double("tolerance", 1e-4);
    const FDStencil fd{2, ctx.cfg.get_double("fd_base_step", 3e-3),
                       static_cast<int>(ctx.cfg.get_int("fd_levels", 1))};
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (double eps : eps_list)
        for (double k : kappas) {
            const ResidualReport rep =
                check_thm_eps(k, eps, t_grid, x_grid, fd, tol);
            cl.add_report(rep);
            reps.push_back(to_json(rep));
            append_points_csv(csv, "thm22",
                              "eps=" + fmt_double(eps) + " kappa=" + fmt_double(k),
                              rep);
        }
    const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n", 1000000));
    for (double eps : eps_list)
        for (double k : kappas)
            mc_cross_check(cl, ctx,
                           CompositionSpec::eps_weighted(PlaneWave{{k}}, eps),
                           1.0, n,
                           "thm22 mc eps=" + fmt_double(eps) +
                               " kappa=" + fmt_double(k));
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.report["residual_reports"] = reps;
    res.csv = csv.str();
    return res;
}

ExperimentResult run_thm23(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"experiment", "tag", "t", "x", "lhs", "rhs", "abs_residual",
                "rel_residual"});
    const auto c_list = ctx.cfg.get_list("c", {0.0, -1.0});
    const auto kappas = ctx.cfg.get_list("kappa", {1.0, 2.0});
    const auto t_grid = ctx.cfg.get_list("t_grid", {0.5, 1.0, 2.0});
    const auto x_grid = ctx.cfg.get_list("x_grid", {0.0, 0.35, 1.1});
    const double tol = ctx.cfg.get_double("tolerance", 1e-4);
    const FDStencil fd{2, ctx.cfg.get_double("fd_base_step", 3e-3),
                       static_cast<int>(ctx.cfg.get_int("fd_levels", 1))};
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (double c : c_list)
        for (double k : kappas) {
            const ResidualReport rep = check_thm_fk(
                k, c, FkAssembly::derivation_consistent, t_grid, x_grid, fd, tol);
            cl.add_report(rep);
            reps.push_back(to_json(rep));
            append_points_csv(csv, "thm23",
                              "derivation c=" + fmt_double(c) +
                                  " kappa=" + fmt_double(k),
                              rep);
            const ResidualReport lit = check_thm_fk(
                k, c, FkAssembly::paper_literal, t_grid, x_grid, fd, tol);
            reps.push_back(to_json(lit));
            append_points_csv(csv, "thm23",
                              "literal c=" + fmt_double(c) +
                                  " kappa=" + fmt_double(k),
                              lit);
        }
    // documented gap of the literal assembly at c=-1, kappa=1:
    // the residual equals |c| k^2 g(t) within 1e-3 relative
    {
        const double c = -1.0, k = 1.0;
        const double beta = k * k - c;
        const AlphaIndex one = AlphaIndex::of(1, 1);
        const double gap_tol = ctx.cfg.get_double("gap_tolerance", 1e-3);
        for (double t : t_grid) {
            const auto profile = [&](double tt) {
                return weighted_kernel_value(one, beta, tt);
            };
            const double g_t = profile(t);
            const double ddt = fd_time_derivative(profile, 2, t, fd).value;
            const double lit_rhs =
                2.0 * beta / (kPi * t) - (k * k * k * k - c * k * k + c * c) * g_t;
            const double res_lit = std::abs(ddt - lit_rhs);
            const double gap = std::abs(c) * k * k * g_t;
            cl.add_leq("thm23 literal gap t=" + fmt_double(t),
                       std::abs(res_lit - gap) / gap, gap_tol);
        }
    }
    const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n", 1000000));
    for (double c : c_list)
        for (double k : kappas)
            mc_cross_check(cl, ctx, CompositionSpec::feynman_kac(PlaneWave{{k}}, c),
                           1.0, n,
                           "thm23 mc c=" + fmt_double(c) +
                               " kappa=" + fmt_double(k));
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.report["residual_reports"] = reps;
    res.csv = csv.str();
    return res;
}

ExperimentResult run_thm24(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"experiment", "tag", "t", "x", "lhs", "rhs", "abs_residual",
                "rel_residual"});
    const auto k2_list = ctx.cfg.get_list("kappa_sq", {0.0, 1.0, 2.0, 4.0});
    const auto t_grid = ctx.cfg.get_list("t_grid", {0.5, 1.0, 2.0});
    const auto x_grid = ctx.cfg.get_list("x_grid", {0.0, 0.35, 1.1});
    const double tol = ctx.cfg.get_double("tolerance", 1e-6);
    const FDStencil fd{2, ctx.cfg.get_double("fd_base_step", 3e-3),
                       static_cast<int>(ctx.cfg.get_int("fd_levels", 1))};
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (double k2 : k2_list) {
        const double k = std::sqrt(k2);
        const ResidualReport rep = check_thm_ictbap(k, t_grid, x_grid, fd, tol);
        cl.add_report(rep);
        reps.push_back(to_json(rep));
        append_points_csv(csv, "thm24", "kappa_sq=" + fmt_double(k2), rep);
        for (double t : t_grid) {
            const std::vector<double> kv{k}, x{0.0};
            const IctbapValue v = u_ictbap(kv, t, x);
            cl.add_leq("thm24 branch agreement k2=" + fmt_double(k2) +
                           " t=" + fmt_double(t),
                       std::abs(v.quadrature - v.closed_form),
                       v.quadrature_error);
        }
    }
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.report["residual_reports"] = reps;
    res.csv = csv.str();
    return res;
}

ExperimentResult run_thm25(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"experiment", "tag", "t", "x", "lhs", "rhs", "abs_residual",
                "rel_residual"});
    const auto kappas = ctx.cfg.get_list("kappa", {0.5, 1.0});
    const auto t_grid = ctx.cfg.get_list("t_grid", {1.0, 2.0});
    const auto x_grid = ctx.cfg.get_list("x_grid", {0.0, 0.35, 1.1});
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();

    for (double k : kappas) {
        const FDStencil fd4{4, ctx.cfg.get_double("fd_base_step_m2", 2.5e-2),
                            static_cast<int>(ctx.cfg.get_int("fd_levels_m2", 1))};
        const ResidualReport rep =
            check_thm_alpha(AlphaIndex::of(1, 2), k, t_grid, x_grid, fd4,
                            ctx.cfg.get_double("tolerance_m2", 1e-3));
        cl.add_report(rep);
        reps.push_back(to_json(rep));
        append_points_csv(csv, "thm25", "alpha=1/2 kappa=" + fmt_double(k), rep);
    }
    for (double k : kappas) {
        const FDStencil fd6{6, ctx.cfg.get_double("fd_base_step_m3", 3e-2),
                            static_cast<int>(ctx.cfg.get_int("fd_levels_m3", 0))};
        const ResidualReport rep =
            check_thm_alpha(AlphaIndex::of(1, 3), k, t_grid, x_grid, fd6,
                            ctx.cfg.get_double("tolerance_m3", 1e-2));
        cl.add_report(rep);
        reps.push_back(to_json(rep));
        append_points_csv(csv, "thm25", "alpha=1/3 kappa=" + fmt_double(k), rep);
    }
    // alpha = 1 must reduce to the thm21 code path bit for bit
    {
        const FDStencil fd{2, 3e-3, 1};
        const std::vector<double> ts{0.5, 1.0, 2.0};
        const ResidualReport via_alpha =
            check_thm_alpha(AlphaIndex::of(1, 1), 1.0, ts, x_grid, fd, 1e-4);
        const ResidualReport direct = check_thm_cauchy(1.0, ts, x_grid, fd, 1e-4);
        double worst = 0.0;
        for (std::size_t i = 0; i < via_alpha.points.size(); ++i)
            worst = std::max(worst, std::abs(via_alpha.points[i].rel_residual -
                                             direct.points[i].rel_residual));
        cl.add_leq("thm25 alpha=1 reduction agrees with thm21", worst, 1e-12);
    }
    // exploratory l >= 2 indices: reported as data only
    if (ctx.cfg.get_bool("exploratory", false)) {
        const FDStencil fd4{4, 2.5e-2, 1};
        const ResidualReport rep =
            check_thm_alpha(AlphaIndex::of(3, 2), 1.0, t_grid, x_grid, fd4, 1e-3,
                            /*allow_exploratory=*/true);
        reps.push_back(to_json(rep));
        cl.add_info("exploratory alpha=3/2 max rel residual",
                    rep.max_rel_residual);
    }
    const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n", 1000000));
    for (double k : kappas)
        mc_cross_check(
            cl, ctx,
            CompositionSpec::alpha_time(AlphaIndex::of(1, 2), PlaneWave{{k}}),
            1.0, n, "thm25 mc alpha=1/2 kappa=" + fmt_double(k));
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.report["residual_reports"] = reps;
    res.csv = csv.str();
    return res;
}

ExperimentResult run_btp(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"experiment", "tag", "t", "x", "lhs", "rhs", "abs_residual",
                "rel_residual"});
    const auto kappas = ctx.cfg.get_list("kappa", {0.5, 1.0, 2.0});
    const auto t_grid = ctx.cfg.get_list("t_grid", {0.5, 1.0, 2.0});
    const auto x_grid = ctx.cfg.get_list("x_grid", {0.0, 0.35, 1.1});
    const double tol = ctx.cfg.get_double("tolerance", 1e-5);
    const FDStencil fd{1, ctx.cfg.get_double("fd_base_step", 2e-3),
                       static_cast<int>(ctx.cfg.get_int("fd_levels", 1))};
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (double k : kappas) {
        const ResidualReport rep = check_btp(k, t_grid, x_grid, fd, tol);
        cl.add_report(rep);
        reps.push_back(to_json(rep));
        append_points_csv(csv, "btp", "kappa=" + fmt_double(k), rep);
    }
    const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n", 1000000));
    for (double k : kappas)
        mc_cross_check(cl, ctx, CompositionSpec::btp(PlaneWave{{k}}), 1.0, n,
                       "btp mc kappa=" + fmt_double(k));
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.report["residual_reports"] = reps;
    res.csv = csv.str();
    return res;
}

ExperimentResult run_exit(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"dim", "estimator", "h", "mean", "std_error", "n", "too_coarse"});
    const auto dims = ctx.cfg.get_list("dims", {1.0, 2.0});
    const double radius = ctx.cfg.get_double("radius", 1.0);
    const double h0 = ctx.cfg.get_double("h0", 1e-3);
    const int levels = static_cast<int>(ctx.cfg.get_int("levels", 3));
    const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n_paths", 60000));
    const double rel_tol = ctx.cfg.get_double("rel_tolerance", 0.05);

    for (double dd : dims) {
        const int dim = static_cast<int>(dd);
        const BallDomain ball = BallDomain::make(dim, radius);
        const std::vector<double> x0(static_cast<std::size_t>(dim), 0.0);
        const double oracle = exit_oracle(ball, x0);

        const ExitRefinement collapsed = exit_time_refinement(
            ball, x0, h0, levels, n, ExitEstimator::collapsed, ctx.mc_seed(),
            ctx.workers);
        for (const auto& lev : collapsed.levels)
            csv.row({std::to_string(dim), "collapsed", fmt_double(lev.h),
                     fmt_double(lev.estimate.mean),
                     fmt_double(lev.estimate.std_error),
                     std::to_string(lev.estimate.n),
                     lev.too_coarse ? "true" : "false"});
        cl.add_leq("exit dim=" + std::to_string(dim) +
                       " extrapolated vs oracle (rel)",
                   std::abs(collapsed.extrapolated - oracle) / oracle, rel_tol);
        cl.add("exit dim=" + std::to_string(dim) + " refinement trend",
               collapsed.trend_converging ? 1.0 : 0.0, 1.0,
               collapsed.trend_converging);

        const ExitRefinement two_stage = exit_time_refinement(
            ball, x0, h0, levels, n, ExitEstimator::two_stage, ctx.mc_seed(),
            ctx.workers);
        for (const auto& lev : two_stage.levels)
            csv.row({std::to_string(dim), "two_stage", fmt_double(lev.h),
                     fmt_double(lev.estimate.mean),
                     fmt_double(lev.estimate.std_error),
                     std::to_string(lev.estimate.n),
                     lev.too_coarse ? "true" : "false"});
        const Estimate& ea = two_stage.levels.back().estimate;
        const Estimate& eb = collapsed.levels.back().estimate;
        const double joint =
            std::sqrt(ea.std_error * ea.std_error + eb.std_error * eb.std_error);
        cl.add_leq("exit dim=" + std::to_string(dim) +
                       " two-stage vs collapsed",
                   std::abs(ea.mean - eb.mean), 4.0 * joint);
        cl.add_info("exit dim=" + std::to_string(dim) + " oracle", oracle);
        cl.add_info("exit dim=" + std::to_string(dim) + " extrapolated",
                    collapsed.extrapolated);
    }
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.csv = csv.str();
    return res;
}

ExperimentResult run_skbm(Ctx& ctx) {
    CheckList cl;
    CsvWriter csv;
    csv.header({"experiment", "tag", "t", "x", "lhs", "rhs", "abs_residual",
                "rel_residual"});
    const int max_modes = static_cast<int>(ctx.cfg.get_int("modes", 40));
    const SpectralDomain dom = SpectralDomain::interval(kPi, max_modes);
    const auto t_grid = ctx.cfg.get_list("t_grid", {0.5, 1.0});
    const auto x_grid = ctx.cfg.get_list("x_grid", {0.4, kPi / 2, 2.2});
    const auto f_names = ctx.cfg.get_string_list(
        "f", {"sin(x)", "sin(x)+sin(2x)", "bump20"});
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();

    const auto make_coeffs = [&](const std::string& name) {
        if (name == "sin(x)")
            return SpectralCoefficients::sine_sum(dom, {{1, 1.0}});
        if (name == "sin(2x)")
            return SpectralCoefficients::sine_sum(dom, {{2, 1.0}});
        if (name == "sin(x)+sin(2x)")
            return SpectralCoefficients::sine_sum(dom, {{1, 1.0}, {2, 1.0}});
        if (name == "bump20")
            return SpectralCoefficients::indicator_modes(dom, kPi / 4,
                                                         3 * kPi / 4, 20);
        throw std::invalid_argument("skbm: unknown f `" + name + "`");
    };

    for (const auto& fname : f_names) {
        const SpectralCoefficients f = make_coeffs(fname);
        for (const AlphaIndex alpha : {AlphaIndex::of(1, 1), AlphaIndex::of(1, 2)}) {
            const bool is_one = alpha.is_one();
            const FDStencil fd = is_one ? FDStencil{2, 3e-3, 1}
                                        : FDStencil{4, 2.5e-2, 1};
            const double tol = is_one ? ctx.cfg.get_double("tolerance_a1", 1e-6)
                                      : ctx.cfg.get_double("tolerance_a12", 1e-4);
            const ResidualReport rep =
                skbm_pde_residual(dom, f, alpha, t_grid, x_grid, fd, tol);
            cl.add_report(rep);
            reps.push_back(to_json(rep));
            append_points_csv(csv, "skbm", fname + " alpha=" + alpha.str(), rep);

            // Dirichlet boundary over the t grid
            double worst_boundary = 0.0;
            for (double t : t_grid)
                for (double xb : {0.0, kPi})
                    worst_boundary = std::max(
                        worst_boundary,
                        std::abs(q_apply(dom, f, alpha, t, std::vector<double>{xb})));
            cl.add_leq("skbm boundary " + fname + " alpha=" + alpha.str(),
                       worst_boundary, 1e-10);

            const double sg =
                semigroup_property_check(dom, f, alpha, 0.5, 0.5, x_grid);
            cl.add_leq("skbm semigroup " + fname + " alpha=" + alpha.str(), sg,
                       1e-12);
        }
    }
    cl.add_leq("per-mode exponent defect alpha=1",
               per_mode_pde_defect(dom, AlphaIndex::of(1, 1)), 1e-12);
    cl.add_leq("per-mode exponent defect alpha=1/2",
               per_mode_pde_defect(dom, AlphaIndex::of(1, 2)), 1e-12);

    // Laplace-transform bridge at a single mode (alpha = 1: closed-form
    // subordinator with index 1/2)
    {
        const double lambda = dom.modes[0].lambda;
        for (double t : t_grid) {
            const QuadResult lap = integrate(
                [&](double s) {
                    return std::exp(-s * lambda) * subordinator_density(0.5, t, s);
                },
                1e-14, 200.0, 1e-13, 1e-13);
            cl.add_leq("laplace bridge t=" + fmt_double(t),
                       std::abs(lap.value - std::exp(-t * std::sqrt(lambda))),
                       1e-8);
        }
    }

    if (ctx.cfg.get_bool("mc", true)) {
        const auto n = static_cast<std::uint64_t>(ctx.cfg.get_int("n_paths", 150000));
        const double h = ctx.cfg.get_double("h", 2e-4);
        const double band_rel = ctx.cfg.get_double("bias_band_rel", 0.02);
        const SpectralCoefficients f1 = make_coeffs("sin(x)");
        const std::vector<double> x0{kPi / 2};
        for (const AlphaIndex alpha : {AlphaIndex::of(1, 1), AlphaIndex::of(1, 2)}) {
            const double spectral = q_apply(dom, f1, alpha, 1.0, x0);
            const Estimate est = skbm_mc(
                dom, [](std::span<const double> x) { return std::sin(x[0]); },
                alpha, 1.0, x0, h, n, ctx.mc_seed(), ctx.workers);
            const double band = std::max(4.0 * est.std_error,
                                         band_rel * std::abs(spectral));
            cl.add_leq("skbm mc vs spectral alpha=" + alpha.str(),
                       std::abs(est.mean - spectral), band);
        }
    }
    ExperimentResult res;
    res.pass = cl.all_pass;
    res.report["checks"] = cl.checks;
    res.report["residual_reports"] = reps;
    res.csv = csv.str();
    return res;
}

}  // namespace

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> catalog = {
        {"thm21",
         "Cauchy-time plane-wave profile: d2g/dt2 = 2k^2/(pi t) - k^4 g, plus "
         "quadrature/MC cross-validation",
         "Theorem 2.1"},
        {"thm22",
         "eps-weighted Cauchy-time profile with B = 1/eps + eps k^2",
         "Theorem 2.2"},
        {"thm23",
         "Feynman-Kac constant-potential profile; derivation-consistent vs "
         "literal assembly with the documented gap",
         "Theorem 2.3"},
        {"thm24",
         "imaginary-time composition: d2u/dt2 = (1-k^2)^2 u and the "
         "closed-form/quadrature branch agreement",
         "Theorem 2.4"},
        {"thm25",
         "rational-index profiles alpha = 1/2, 1/3: d^{2m}g/dt^{2m} = "
         "2 k^2 p_t(0,0) - k^4 g",
         "Theorem 2.5"},
        {"btp",
         "Brownian-time profile: dg/dt = -k^2/sqrt(pi t) + k^4 g",
         "Section 1 PDE"},
        {"exit",
         "mean exit time of the Cauchy-time Brownian motion from balls vs "
         "the elliptic oracle (R^2-|x|^2)/(2n)",
         "Theorem 3.1"},
        {"skbm",
         "subordinate killed Brownian motion on (0,pi): spectral PDE "
         "residual, boundary, semigroup, Laplace bridge, MC",
         "Theorem 5.1"},
        {"samplers",
         "characteristic-function validity of the stable and subordinator "
         "samplers",
         "Section 1 Fourier normalization"},
        {"densities",
         "kernel densities: closed forms, Parseval agreement, normalization, "
         "kernel PDE lemmas",
         "Lemmas 4.2 and 5.4"},
    };
    return catalog;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const std::string id = cfg.get_string("experiment", "");
    if (id.empty())
        throw std::invalid_argument("config: missing `experiment` key");
    Ctx ctx{cfg, static_cast<std::uint64_t>(cfg.get_int("seed", 42)),
            static_cast<int>(cfg.get_int("workers", 1))};

    ExperimentResult res;
    if (id == "samplers") res = run_samplers(ctx);
    else if (id == "densities") res = run_densities(ctx);
    else if (id == "thm21") res = run_thm21(ctx);
    else if (id == "thm22") res = run_thm22(ctx);
    else if (id == "thm23") res = run_thm23(ctx);
    else if (id == "thm24") res = run_thm24(ctx);
    else if (id == "thm25") res = run_thm25(ctx);
    else if (id == "btp") res = run_btp(ctx);
    else if (id == "exit") res = run_exit(ctx);
    else if (id == "skbm") res = run_skbm(ctx);
    else {
        std::ostringstream msg;
        msg << "unknown experiment `" << id << "`; available:";
        for (const auto& e : experiment_catalog()) msg << " " << e.id;
        throw std::invalid_argument(msg.str());
    }
    res.id = id;

    nlohmann::ordered_json full;
    full["experiment"] = id;
    full["config_hash"] = hex_hash(cfg.hash());
    nlohmann::ordered_json echo;
    for (const auto& [k, v] : cfg.entries()) echo[k] = v;
    full["config"] = echo;
    full["seed"] = ctx.seed;
    full["workers"] = ctx.workers;
    full["pass"] = res.pass;
    for (auto& [key, value] : res.report.items()) full[key] = value;
    res.report = std::move(full);
    return res;
}

int run_and_write(const ExperimentConfig& cfg, const std::string& out_dir) {
    const ExperimentResult res = run_experiment(cfg);
    std::filesystem::create_directories(out_dir);
    const std::string base = out_dir + "/" + res.id;
    write_file(base + "_report.json", res.report.dump(2) + "\n");
    write_file(base + "_grid.csv", res.csv);
    return res.pass ? 0 : 1;
}

}  // namespace alphatime
