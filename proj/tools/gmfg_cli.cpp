// Command-line front end for the graphon mean-field game solver.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gmfg/analysis.hpp"
#include "gmfg/assumptions.hpp"
#include "gmfg/config.hpp"
#include "gmfg/equilibrium.hpp"
#include "gmfg/error.hpp"
#include "gmfg/report.hpp"
#include "gmfg/simulate.hpp"
#include "gmfg/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfigError = 2;

struct CommonArgs {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "JSON run configuration")->required();
    cmd->add_option("--out", args.out, "output directory (overrides config)");
    cmd->add_option("--seed", args.seed, "simulation seed override");
    cmd->add_option("--grid", args.grid, "grid size override");
}

struct Context {
    gmfg::RunConfig config;
    fs::path out_dir;
};

Context load(const CommonArgs& args) {
    Context ctx{gmfg::load_config(args.config), {}};
    if (args.grid) ctx.config.grid = *args.grid;
    if (args.seed && ctx.config.simulation) ctx.config.simulation->seed = *args.seed;
    ctx.out_dir = args.out ? fs::path(*args.out) : fs::path(ctx.config.output);
    fs::create_directories(ctx.out_dir);
    return ctx;
}

void write_json(const fs::path& path, const json& doc) {
    std::ofstream out(path, std::ios::binary);
    out << doc.dump(2) << '\n';
}

std::string flag(bool b) { return b ? "yes" : "no"; }

void print_summary(const gmfg::EquilibriumSolution& sol, const gmfg::AssumptionReport& a) {
    std::printf("pi = %.12g\n", sol.pi());
    std::printf("eigenvalues:");
    for (double l : sol.graphon().eigenvalues()) std::printf(" %.12g", l);
    std::printf("\n");
    std::printf("assumptions: A1=%s A2=%s A3=%s A4=%s A5=%s\n", flag(a.a1).c_str(), flag(a.a2).c_str(),
                flag(a.a3).c_str(), flag(a.a4).c_str(), flag(a.a5).c_str());
}

struct Problem {
    gmfg::Graphon graphon;
    gmfg::MeanField mean_field;
};

Problem build(const gmfg::RunConfig& config) {
    auto g = gmfg::build_graphon(config);
    auto m = gmfg::build_mean_field(config, g);
    return {std::move(g), std::move(m)};
}

std::vector<std::vector<double>> cost_rows(const gmfg::CostProfile& c, std::size_t M) {
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < M; ++i)
        rows.push_back({gmfg::cell_midpoint(i, M), c.J[i], c.variance[i], c.mean[i], c.noise[i], c.cross[i], c.quad[i]});
    return rows;
}

const std::vector<std::string> kCostHeader{"alpha", "J", "term_variance", "term_mean", "term_noise", "term_cross", "term_quad"};

int cmd_solve(const CommonArgs& args) {
    auto ctx = load(args);
    auto [g, m] = build(ctx.config);
    const auto sol = gmfg::EquilibriumSolution::solve(ctx.config.game, g, m);
    const auto assumptions = gmfg::check_assumptions(g, m, ctx.config.game);
    const std::size_t M = sol.grid_size();

    std::vector<double> times = ctx.config.solve.times;
    if (times.empty())
        for (int k = 0; k <= 20; ++k) times.push_back(0.5 * k);
    std::vector<std::vector<double>> traj;
    for (double t : times)
        for (std::size_t i = 0; i < M; ++i)
            traj.push_back({t, gmfg::cell_midpoint(i, M), sol.z(i, t), sol.s(i, t), sol.q(i, t), sol.mean_state(i, t)});
    gmfg::write_csv(ctx.out_dir / "trajectories.csv", {"t", "alpha", "z", "s", "q", "mean_state"}, traj);
    gmfg::write_csv(ctx.out_dir / "cost.csv", kCostHeader, cost_rows(gmfg::cost_full(sol), M));
    gmfg::write_csv(ctx.out_dir / "cost_simplified.csv", kCostHeader, cost_rows(gmfg::cost_simplified(sol), M));
    if (assumptions.a3) {
        const auto cm = gmfg::cost_constant_mean(sol);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < M; ++i)
            rows.push_back({gmfg::cell_midpoint(i, M), cm.cost.J[i], cm.degree_bar[i], cm.degree_tilde[i]});
        gmfg::write_csv(ctx.out_dir / "cost_constant_mean.csv", {"alpha", "J", "degree_bar", "degree_tilde"}, rows);
    }

    json modes = json::array();
    for (const auto& mode : sol.modes())
        modes.push_back({{"lambda", mode.lambda}, {"projection", mode.projection}, {"z0", mode.z0}, {"xi", mode.xi},
                         {"theta", mode.theta}, {"lambda_bar", mode.lambda_bar}});
    write_json(ctx.out_dir / "summary.json", {{"pi", sol.pi()}, {"theta0", sol.theta0()}, {"q_infinity", sol.q_infinity()},
                                              {"modes", modes}, {"assumptions", gmfg::to_json(assumptions)}});
    print_summary(sol, assumptions);
    return kExitOk;
}

int cmd_verify(const CommonArgs& args, double fault) {
    auto ctx = load(args);
    auto [g, m] = build(ctx.config);
    const auto sol = gmfg::EquilibriumSolution::solve(ctx.config.game, g, m);
    gmfg::VerifyOptions options;
    options.q_oracle_stride = ctx.config.analysis.q_oracle_stride;
    options.lambda_bar_fault = fault;
    const auto report = gmfg::verify(sol, options);
    write_json(ctx.out_dir / "verification.json", gmfg::to_json(report));
    for (const auto& c : report.checks)
        std::printf("%-32s %-4s %.3e (tol %.1e)\n", c.name.c_str(), c.passed ? "ok" : "FAIL", c.value, c.tolerance);
    if (const auto* f = report.first_failure()) {
        std::printf("verification failed: %s\n", f->name.c_str());
        return kExitVerifyFailed;
    }
    std::printf("verification passed\n");
    return kExitOk;
}

int cmd_critical_nodes(const CommonArgs& args) {
    auto ctx = load(args);
    auto [g, m] = build(ctx.config);
    const auto sol = gmfg::EquilibriumSolution::solve(ctx.config.game, g, m);
    const auto report = gmfg::equivalence_report(sol, {ctx.config.analysis.a5_ablation});
    write_json(ctx.out_dir / "critical_nodes.json", gmfg::to_json(report, sol.grid_size()));
    std::printf("degree maxima: %zu, cost minima: %zu, verdict: %s%s\n", report.degree_maxima.size(),
                report.cost_minima.size(), report.sets_equal ? "sets-equal" : "sets-differ",
                report.hypotheses_hold ? "" : " (hypotheses not all satisfied)");
    return kExitOk;
}

int cmd_simulate(const CommonArgs& args) {
    auto ctx = load(args);
    if (!ctx.config.simulation) throw gmfg::Error(gmfg::ErrorCode::config_error, "config has no 'simulation' block");
    const auto& sc = *ctx.config.simulation;
    auto [g, m] = build(ctx.config);
    const auto sol = gmfg::EquilibriumSolution::solve(ctx.config.game, g, m);
    const auto spec = gmfg::build_population(g, sc.nodes, sc.cluster_size, m, sc.initial_std.value_or(ctx.config.game.nu), sc.seed);
    const auto result = gmfg::run(spec, sol, {sc.dt, sc.t_final, sc.sample_every, sc.threads});
    const auto metrics = gmfg::compare(result, spec, sol);

    const std::size_t M = sol.grid_size();
    std::vector<std::vector<double>> series;
    for (std::size_t k = 0; k < result.sample_times.size(); ++k)
        for (std::size_t l = 0; l < spec.nodes; ++l)
            series.push_back({result.sample_times[k], static_cast<double>(l), result.empirical_z[k][l],
                              sol.z(gmfg::cell_index(spec.alphas[l], M), result.sample_times[k])});
    gmfg::write_csv(ctx.out_dir / "simulation_timeseries.csv", {"t", "node", "empirical_z", "analytic_z"}, series);
    std::vector<std::vector<double>> costs;
    for (std::size_t l = 0; l < spec.nodes; ++l)
        costs.push_back({static_cast<double>(l), spec.alphas[l], static_cast<double>(spec.cluster_sizes[l]),
                         metrics.node_mean_cost[l], metrics.node_cost_stderr[l], metrics.node_analytic_cost[l]});
    gmfg::write_csv(ctx.out_dir / "simulation_costs.csv",
                    {"node", "alpha", "cluster_size", "mean_cost", "std_error", "analytic_cost"}, costs);
    write_json(ctx.out_dir / "simulation_metrics.json", gmfg::to_json(metrics, result));
    std::printf("max mean-field error = %.6e (mean field within band: %s, costs within band: %s)\n",
                metrics.max_mean_field_error, flag(metrics.mean_field_within_band).c_str(),
                flag(metrics.cost_within_band).c_str());
    return kExitOk;
}

int cmd_degree(const CommonArgs& args) {
    auto ctx = load(args);
    const auto g = gmfg::build_graphon(ctx.config);
    const auto degree = g.degree_profile();
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < degree.size(); ++i) rows.push_back({gmfg::cell_midpoint(i, degree.size()), degree[i]});
    gmfg::write_csv(ctx.out_dir / "degree.csv", {"alpha", "degree"}, rows);
    std::printf("rank %zu, degree range [%.12g, %.12g]\n", g.rank(), *std::min_element(degree.begin(), degree.end()),
                *std::max_element(degree.begin(), degree.end()));
    return kExitOk;
}

int cmd_check_assumptions(const CommonArgs& args) {
    auto ctx = load(args);
    auto [g, m] = build(ctx.config);
    const auto report = gmfg::check_assumptions(g, m, ctx.config.game);
    write_json(ctx.out_dir / "assumptions.json", gmfg::to_json(report));
    std::printf("A1=%s (max eigenvalue %.12g) A2=%s (rank %zu) A3=%s A4=%s A5=%s (min residual %.6g)\n",
                flag(report.a1).c_str(), report.max_eigenvalue, flag(report.a2).c_str(), report.rank,
                flag(report.a3).c_str(), flag(report.a4).c_str(), flag(report.a5).c_str(), report.a5_min_residual);
    return kExitOk;
}

void print_error(std::string_view code, const std::string& message) {
    std::cerr << json{{"error", std::string(code)}, {"message", message}}.dump() << '\n';
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Closed-form solver and verifier for infinite-horizon LQG graphon mean field games"};
    app.require_subcommand(1);

    CommonArgs solve_args, verify_args, critical_args, simulate_args, degree_args, assumption_args;
    double fault = 1.0;
    auto* solve = app.add_subcommand("solve", "equilibrium trajectories and cost profiles");
    add_common(solve, solve_args);
    auto* verify = app.add_subcommand("verify", "residual and cross-path verification report");
    add_common(verify, verify_args);
    verify->add_option("--inject-lambda-bar-fault", fault, "scale lambda_bar in the full-cost path (test hook)")
        ->group("");
    auto* critical = app.add_subcommand("critical-nodes", "max-degree / min-cost node report");
    add_common(critical, critical_args);
    auto* simulate = app.add_subcommand("simulate", "finite-population Monte Carlo against the analytic solution");
    add_common(simulate, simulate_args);
    auto* degree = app.add_subcommand("degree", "degree profile of the graphon");
    add_common(degree, degree_args);
    auto* assumptions = app.add_subcommand("check-assumptions", "A1-A5 diagnostics");
    add_common(assumptions, assumption_args);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfigError;
    }

    try {
        if (*solve) return cmd_solve(solve_args);
        if (*verify) return cmd_verify(verify_args, fault);
        if (*critical) return cmd_critical_nodes(critical_args);
        if (*simulate) return cmd_simulate(simulate_args);
        if (*degree) return cmd_degree(degree_args);
        if (*assumptions) return cmd_check_assumptions(assumption_args);
    } catch (const gmfg::Error& e) {
        print_error(gmfg::code_name(e.code()), e.what());
        return kExitConfigError;
    } catch (const std::exception& e) {
        print_error("internal-error", e.what());
        return kExitConfigError;
    }
    return kExitConfigError;
}
