// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "gmfg/analysis.hpp"
#include "gmfg/assumptions.hpp"
#include "gmfg/equilibrium.hpp"
#include "gmfg/simulate.hpp"
#include "gmfg/verify.hpp"
#include "instances.hpp"

using namespace gmfg;
using testing::Instance;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

struct Criterion {
    int id;
    const char* title;
    double time_limit; // seconds, 0 for none
    std::function<Outcome()> body;
};

std::string fmt(const char* f, auto... args) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

std::vector<Instance> random_instances() {
    std::mt19937_64 rng(20240611);
    std::vector<Instance> out;
    for (int k = 0; k < 50; ++k) out.push_back(testing::random_instance(rng, 512));
    return out;
}

EquilibriumSolution solve(const Instance& inst) {
    return EquilibriumSolution::solve(inst.params, inst.graphon, inst.mean);
}

double large_time(const EquilibriumSolution& sol) { return 50.0 / sol.slowest_rate(); }

Outcome riccati_suite() {
    std::mt19937_64 rng(1);
    double worst_eq = 0.0, worst_inv = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const auto p = testing::random_params(rng);
        const double pi = solve_riccati(p).pi;
        const double A = p.gain_ratio();
        worst_eq = std::max(worst_eq, std::abs(A * pi * pi + p.rho * pi - 1.0));
        worst_inv = std::max(worst_inv, std::abs(A * pi + p.rho - 1.0 / pi));
    }
    return {worst_eq <= 1e-12 && worst_inv <= 1e-12,
            fmt("max residuals %.2e, %.2e over 1000 draws", worst_eq, worst_inv)};
}

Outcome ode_suite(const std::vector<Instance>& fixed) {
    const auto times = log_spaced_times(1e-3, 10.0, 20);
    double worst = 0.0;
    for (const auto& inst : fixed) worst = std::max(worst, ode_residuals(solve(inst), times).max());
    return {worst <= 1e-6, fmt("max central-difference residual %.2e", worst)};
}

Outcome consistency_suite(const std::vector<Instance>& fixed) {
    const auto times = log_spaced_times(1e-3, 10.0, 20);
    double worst = 0.0;
    for (const auto& inst : fixed) {
        const auto sol = solve(inst);
        for (double t : times) worst = std::max(worst, consistency_residual(sol, t));
    }
    return {worst <= 1e-7, fmt("max consistency residual %.2e", worst)};
}

Outcome cost_triple(const std::vector<Instance>& random) {
    double worst = 0.0;
    for (const auto& inst : random) {
        const auto sol = solve(inst);
        const auto a = cost_full(sol).J, b = cost_simplified(sol).J, c = cost_from_offsets(sol).J;
        worst = std::max({worst, max_abs_difference(a, b), max_abs_difference(a, c), max_abs_difference(b, c)});
    }
    return {worst <= 1e-10, fmt("max pairwise difference %.2e on %zu instances", worst, random.size())};
}

Outcome q_oracle(const std::vector<Instance>& random) {
    double worst_q0 = 0.0, worst_limit = 0.0;
    for (const auto& inst : random) {
        const auto sol = solve(inst);
        const double T = large_time(sol);
        for (std::size_t i = 0; i < sol.grid_size(); ++i) {
            worst_q0 = std::max(worst_q0, std::abs(sol.q(i, 0.0) - q_by_quadrature(sol, i, 0.0)));
            worst_limit = std::max(worst_limit, std::abs(sol.q(i, T) - sol.q_infinity()));
        }
    }
    return {worst_q0 <= 1e-8 && worst_limit <= 1e-10,
            fmt("max |q0 - quadrature| %.2e, max |q_T - q_inf| %.2e", worst_q0, worst_limit)};
}

Outcome steady_state(const std::vector<Instance>& all) {
    double worst = 0.0; // ratio to tolerance
    for (const auto& inst : all) {
        const auto sol = solve(inst);
        const double T = large_time(sol);
        double z0 = 0.0, s0 = 0.0, zT = 0.0, sT = 0.0;
        for (std::size_t i = 0; i < sol.grid_size(); ++i) {
            z0 = std::max(z0, std::abs(sol.z(i, 0.0)));
            s0 = std::max(s0, std::abs(sol.s(i, 0.0)));
            zT = std::max(zT, std::abs(sol.z(i, T)));
            sT = std::max(sT, std::abs(sol.s(i, T)));
        }
        auto ratio = [](double v, double scale) { return scale > 0.0 ? v / (1e-12 * scale) : (v == 0.0 ? 0.0 : INFINITY); };
        worst = std::max({worst, ratio(zT, z0), ratio(sT, s0)});
    }
    return {worst <= 1.0, fmt("worst |value| / (1e-12 * initial scale) = %.2e on %zu instances", worst, all.size())};
}

Outcome constant_mean(const std::vector<Instance>& fixed, const std::vector<Instance>& random) {
    std::vector<Instance> a3;
    for (const auto& inst : fixed)
        if (check_assumptions(inst.graphon, inst.mean, inst.params).a3) a3.push_back(inst);
    a3.push_back(testing::two_bump_instance());
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.2, 2.0);
    for (const auto& inst : random) {
        Instance c = inst;
        c.mean = MeanField::constant(c.graphon, u(rng) * (rng() % 2 ? 1.0 : -1.0));
        a3.push_back(std::move(c));
    }
    double worst_eq = 0.0, worst_terms = 0.0;
    for (const auto& inst : a3) {
        const auto sol = solve(inst);
        const auto cm = cost_constant_mean(sol);
        const auto simp = cost_simplified(sol);
        worst_eq = std::max(worst_eq, max_abs_difference(cm.cost.J, simp.J));
        const auto& p = inst.params;
        const double m = cm.mean;
        for (std::size_t i = 0; i < sol.grid_size(); ++i) {
            const double head = sol.pi() * (p.nu * p.nu + m * m + p.sigma * p.sigma / p.rho);
            const double rhs = head - 2 * m * m * cm.degree_bar[i] - m * m * cm.degree_tilde[i];
            worst_terms = std::max({worst_terms, std::abs(cm.cost.J[i] - rhs),
                                    std::abs(cm.cost.variance[i] + cm.cost.mean[i] + cm.cost.noise[i] - head),
                                    std::abs(cm.cost.cross[i] + 2 * m * m * cm.degree_bar[i]),
                                    std::abs(cm.cost.quad[i] + m * m * cm.degree_tilde[i])});
        }
    }
    return {worst_eq <= 1e-10 && worst_terms <= 1e-10,
            fmt("max |J_cm - J_simplified| %.2e, max termwise mismatch %.2e on %zu A3 instances", worst_eq,
                worst_terms, a3.size())};
}

Outcome critical_nodes() {
    const auto one = equivalence_report(solve(testing::bump_instance()));
    const auto two = equivalence_report(solve(testing::two_bump_instance()));
    const bool hyp = one.assumptions.a1 && one.assumptions.a3 && one.assumptions.a4;
    const bool ok = hyp && one.a5_ablation && one.sets_equal && !one.degree_maxima.empty() && two.sets_equal &&
                    two.degree_maxima.size() == 2 && two.cost_minima.size() == 2;
    return {ok, fmt("single bump: %zu max / %zu min; two bumps: %zu max / %zu min (A5-ablation mode)",
                    one.degree_maxima.size(), one.cost_minima.size(), two.degree_maxima.size(),
                    two.cost_minima.size())};
}

Outcome a5_diagnostic(const std::vector<Instance>& all) {
    bool ok = true;
    double worst_margin = INFINITY;
    std::size_t count = 0;
    for (const auto& inst : all) {
        const auto rep = check_assumptions(inst.graphon, inst.mean, inst.params);
        if (!rep.a1) continue;
        ++count;
        const double margin = rep.a5_min_residual - inst.params.rho / 2;
        worst_margin = std::min(worst_margin, margin);
        if (rep.a5 || margin < -1e-9) ok = false;
    }
    return {ok, fmt("a5 = false on all %zu A1-valid instances, min(residual - rho/2) = %.3e", count, worst_margin)};
}

Outcome monte_carlo() {
    auto inst = testing::constant_instance();
    inst.params = GameParams{1.0, 1.0, 1.0, 0.3, 0.5};
    const auto sol = solve(inst);
    const auto spec = build_population(inst.graphon, 4, 2000, inst.mean, inst.params.nu, 20240601);
    const SimOptions opt{1e-3, 14.0, 100, 4};
    const auto res = run(spec, sol, opt);
    const auto cmp = compare(res, spec, sol);
    bool cost_ok = true;
    double worst_cost = 0.0;
    for (std::size_t l = 0; l < spec.nodes; ++l) {
        const double ratio = cmp.node_cost_error[l] / cmp.node_cost_stderr[l];
        worst_cost = std::max(worst_cost, ratio);
        if (cmp.node_cost_error[l] > 3.0 * cmp.node_cost_stderr[l]) cost_ok = false;
    }
    const auto again = run(spec, sol, {opt.dt, opt.t_final, opt.sample_every, 1});
    const bool identical = again.states == res.states && again.costs == res.costs && again.empirical_z == res.empirical_z;
    return {cmp.mean_field_within_band && cost_ok && identical,
            fmt("max |z_emp - z| %.2e (max excess over 3 SE %.2e, allowance 5dt), worst cost error %.2f SE, "
                "rerun identical: %s",
                cmp.max_mean_field_error, cmp.max_band_excess, worst_cost, identical ? "yes" : "no")};
}

Outcome noiseless() {
    auto inst = testing::constant_instance();
    inst.params.sigma = 0.0;
    const auto sol = solve(inst);
    const auto spec = build_population(inst.graphon, 4, 10, inst.mean, 0.0, 1);
    const double dt = 1e-3;
    const auto res = run(spec, sol, {dt, 14.0, 10, 1});
    double worst = 0.0;
    for (std::size_t k = 0; k < res.sample_times.size(); ++k)
        for (std::size_t a = 0; a < spec.total_agents(); ++a) {
            const std::size_t cell = cell_index(spec.alphas[spec.agent_node[a]], sol.grid_size());
            worst = std::max(worst, std::abs(res.states[k][a] - sol.mean_state(cell, res.sample_times[k])));
        }
    return {worst <= 10 * dt, fmt("max |x - mean_state| %.2e (limit %.1e)", worst, 10 * dt)};
}

} // namespace

int main() {
    const auto fixed = testing::standard_instances();
    const auto random = random_instances();
    std::vector<Instance> all = fixed;
    all.insert(all.end(), random.begin(), random.end());

    const std::vector<Criterion> criteria{
        {1, "Riccati suite", 1.0, riccati_suite},
        {2, "ODE residual suite", 10.0, [&] { return ode_suite(fixed); }},
        {3, "consistency fixed point", 0.0, [&] { return consistency_suite(fixed); }},
        {4, "cost triple equality", 0.0, [&] { return cost_triple(random); }},
        {5, "q oracle and limit", 0.0, [&] { return q_oracle(random); }},
        {6, "steady state", 0.0, [&] { return steady_state(all); }},
        {7, "constant-mean representation", 0.0, [&] { return constant_mean(fixed, random); }},
        {8, "critical-node equivalence", 5.0, critical_nodes},
        {9, "A5 infeasibility diagnostic", 0.0, [&] { return a5_diagnostic(all); }},
        {10, "Monte Carlo convergence", 120.0, monte_carlo},
        {11, "noiseless determinism", 0.0, noiseless},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0 && secs > c.time_limit) {
            o.passed = false;
            o.detail += fmt(" [over time limit %.0f s]", c.time_limit);
        }
        if (!o.passed) ++failures;
        std::printf("%s [%2d] %-30s %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
