#include "gmfg/report.hpp"

#include <algorithm>
#include <cmath>

namespace gmfg {

using nlohmann::json;

namespace {

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json derivatives(const Derivatives& d) { return {{"first", number(d.first)}, {"second", number(d.second)}}; }

} // namespace

json to_json(const AssumptionReport& r) {
    json residuals = json::array();
    for (const auto& row : r.a5_residuals) {
        json jr = json::array();
        for (double v : row) jr.push_back(number(v));
        residuals.push_back(jr);
    }
    return {
        {"a1", {{"holds", r.a1}, {"max_eigenvalue", r.max_eigenvalue}}},
        {"a2", {{"holds", r.a2}, {"rank", r.rank}}},
        {"a3", {{"holds", r.a3}, {"mean", r.mean_value}, {"spread", r.mean_spread}}},
        {"a4", {{"holds", r.a4}, {"ones_projections", r.ones_projections}}},
        {"a5", {{"holds", r.a5}, {"residuals", residuals}, {"min_residual", number(r.a5_min_residual)}}},
    };
}

json to_json(const VerificationReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"name", c.name}, {"value", number(c.value)}, {"tolerance", c.tolerance}, {"passed", c.passed}});
    json out{{"passed", r.passed()}, {"checks", checks}};
    if (const auto* f = r.first_failure()) out["first_failure"] = f->name;
    return out;
}

json to_json(const CriticalNodeReport& r, std::size_t grid_size) {
    auto alphas = [&](const std::vector<std::size_t>& idx) {
        json a = json::array();
        for (std::size_t i : idx) a.push_back(cell_midpoint(i, grid_size));
        return a;
    };
    json conditions = json::array();
    for (const auto& c : r.conditions) {
        json fs = json::array();
        for (const auto& d : c.eigenfunctions) fs.push_back(derivatives(d));
        conditions.push_back({{"node", c.node},
                              {"alpha", c.alpha},
                              {"eigenfunctions", fs},
                              {"degree", derivatives(c.degree)},
                              {"cost", derivatives(c.cost)},
                              {"first_order_holds", c.first_order_holds},
                              {"eigenfunction_convexity", c.eigenfunction_convexity},
                              {"degree_concave", c.degree_concave},
                              {"cost_convex", c.cost_convex},
                              {"cost_gradient_identity", number(c.cost_gradient_identity)}});
    }
    json out{
        {"mode", r.a5_ablation ? "a5-ablation" : "full-cost"},
        {"degree_maxima", r.degree_maxima},
        {"degree_maxima_alpha", alphas(r.degree_maxima)},
        {"cost_minima", r.cost_minima},
        {"cost_minima_alpha", alphas(r.cost_minima)},
        {"full_cost_minima", r.full_cost_minima},
        {"derivatives", r.derivatives_applicable ? json(conditions) : json("not-applicable: step-function graphon")},
        {"assumptions", to_json(r.assumptions)},
        {"hypotheses_hold", r.hypotheses_hold},
        {"verdict", r.sets_equal ? "sets-equal" : "sets-differ"},
    };
    if (r.witness) out["witness"] = *r.witness;
    return out;
}

json to_json(const CompareMetrics& m, const SimResult& result) {
    json nodes = json::array();
    for (std::size_t l = 0; l < m.node_mean_cost.size(); ++l)
        nodes.push_back({{"node", l},
                         {"mean_cost", m.node_mean_cost[l]},
                         {"stderr", m.node_cost_stderr[l]},
                         {"analytic_cost", m.node_analytic_cost[l]},
                         {"error", m.node_cost_error[l]}});
    const auto worst = std::max_element(m.mean_field_error.begin(), m.mean_field_error.end());
    const std::size_t k = worst == m.mean_field_error.end() ? 0 : static_cast<std::size_t>(worst - m.mean_field_error.begin());
    return {
        {"dt", result.dt},
        {"t_final", result.t_final},
        {"truncation_weight", result.truncation_weight},
        {"max_mean_field_error", m.max_mean_field_error},
        {"max_error_time", m.mean_field_error.empty() ? 0.0 : result.sample_times[k]},
        {"stderr_at_max_error", m.mean_field_stderr.empty() ? 0.0 : m.mean_field_stderr[k]},
        {"max_band_excess", number(m.max_band_excess)},
        {"mean_field_within_band", m.mean_field_within_band},
        {"cost_within_band", m.cost_within_band},
        {"nodes", nodes},
    };
}

} // namespace gmfg
