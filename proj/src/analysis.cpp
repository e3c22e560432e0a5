#include "gmfg/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>

#include "gmfg/error.hpp"

namespace gmfg {

std::vector<std::size_t> find_strict_local_extrema(std::span<const double> profile, ExtremumKind kind,
                                                   double tol_strict) {
    if (profile.size() < 3) throw Error(ErrorCode::profile_too_short, "extremum search needs at least 3 samples");
    const auto [lo, hi] = std::minmax_element(profile.begin(), profile.end());
    const double margin = tol_strict * (*hi - *lo);
    const double sign = kind == ExtremumKind::max ? 1.0 : -1.0;
    std::vector<std::size_t> out;
    for (std::size_t i = 1; i + 1 < profile.size(); ++i) {
        const double left = sign * (profile[i] - profile[i - 1]);
        const double right = sign * (profile[i] - profile[i + 1]);
        if (left > margin && right > margin) out.push_back(i);
    }
    return out;
}

GridFunction critical_cost_profile(const EquilibriumSolution& sol, bool a5_ablation) {
    auto cost = cost_simplified(sol);
    if (!a5_ablation) return cost.J;
    GridFunction out(cost.J.size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = cost.variance[i] + cost.mean[i] + cost.noise[i] + cost.cross[i];
    return out;
}

namespace {

Derivatives central(std::span<const double> f, std::size_t i, double h) {
    return {(f[i + 1] - f[i - 1]) / (2.0 * h), (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h)};
}

double scale_of(std::span<const double> f) {
    double s = 0.0;
    for (double x : f) s = std::max(s, std::abs(x));
    return s;
}

bool constant_nonzero_mean(const MeanField& m, double& mean) {
    mean = integral(m.samples());
    for (double v : m.samples())
        if (std::abs(v - mean) > kTolMean) return false;
    return std::abs(mean) > kTolMean;
}

ConditionRecord conditions_at(const EquilibriumSolution& sol, std::size_t node, bool a5_ablation,
                              const GridFunction& degree, const GridFunction& cost) {
    const auto& g = sol.graphon();
    const std::size_t M = g.grid_size();
    if (g.is_step_function())
        throw Error(ErrorCode::step_function_graphon, "derivatives of block-constant eigenfunctions are not meaningful");
    if (node == 0 || node + 1 >= M) throw Error(ErrorCode::size_mismatch, "differential conditions need an interior node");

    const double h = 1.0 / static_cast<double>(M);
    ConditionRecord rec;
    rec.node = node;
    rec.alpha = cell_midpoint(node, M);
    rec.first_order_holds = true;
    rec.eigenfunction_convexity = true;
    for (std::size_t l = 0; l < g.rank(); ++l) {
        const auto f = g.eigenfunction(l);
        const auto d = central(f, node, h);
        rec.eigenfunctions.push_back(d);
        if (std::abs(d.first) > kTolGradRelative * scale_of(f)) rec.first_order_holds = false;
        if (!(d.second > 0.0)) rec.eigenfunction_convexity = false;
    }
    rec.degree = central(degree, node, h);
    rec.cost = central(cost, node, h);
    if (std::abs(rec.degree.first) > kTolGradRelative * scale_of(degree)) rec.first_order_holds = false;
    if (std::abs(rec.cost.first) > kTolGradRelative * scale_of(cost)) rec.first_order_holds = false;
    rec.degree_concave = rec.degree.second < 0.0;
    rec.cost_convex = rec.cost.second > 0.0;

    double mean = 0.0;
    if (a5_ablation && constant_nonzero_mean(sol.mean_field(), mean)) {
        double predicted = 0.0;
        for (std::size_t l = 0; l < g.rank(); ++l)
            predicted += g.ones_projections()[l] * sol.modes()[l].lambda_bar * rec.eigenfunctions[l].first;
        predicted *= -2.0 * mean * mean;
        rec.cost_gradient_identity = rec.cost.first - predicted;
    } else {
        rec.cost_gradient_identity = std::numeric_limits<double>::quiet_NaN();
    }
    return rec;
}

} // namespace

ConditionRecord differential_conditions(const EquilibriumSolution& sol, std::size_t node, bool a5_ablation) {
    return conditions_at(sol, node, a5_ablation, sol.graphon().degree_profile(),
                         critical_cost_profile(sol, a5_ablation));
}

CriticalNodeReport equivalence_report(const EquilibriumSolution& sol, const CriticalNodeOptions& options) {
    CriticalNodeReport rep;
    rep.a5_ablation = options.a5_ablation;
    const auto degree = sol.graphon().degree_profile();
    const auto cost = critical_cost_profile(sol, options.a5_ablation);
    const auto full_cost = cost_simplified(sol).J;

    rep.degree_maxima = find_strict_local_extrema(degree, ExtremumKind::max);
    rep.cost_minima = find_strict_local_extrema(cost, ExtremumKind::min);
    rep.full_cost_minima = find_strict_local_extrema(full_cost, ExtremumKind::min);

    rep.assumptions = check_assumptions(sol.graphon(), sol.mean_field(), sol.params());
    const auto& a = rep.assumptions;
    rep.hypotheses_hold = a.a1 && a.a3 && a.a4 && a.a5;

    std::vector<std::size_t> candidates;
    std::set_union(rep.degree_maxima.begin(), rep.degree_maxima.end(), rep.cost_minima.begin(),
                   rep.cost_minima.end(), std::back_inserter(candidates));
    rep.derivatives_applicable = !sol.graphon().is_step_function();
    if (rep.derivatives_applicable)
        for (std::size_t node : candidates)
            rep.conditions.push_back(conditions_at(sol, node, options.a5_ablation, degree, cost));

    std::vector<std::size_t> diff;
    std::set_symmetric_difference(rep.degree_maxima.begin(), rep.degree_maxima.end(), rep.cost_minima.begin(),
                                  rep.cost_minima.end(), std::back_inserter(diff));
    rep.sets_equal = diff.empty();
    if (!diff.empty()) rep.witness = diff.front();
    return rep;
}

} // namespace gmfg
