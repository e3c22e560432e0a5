#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gmfg/assumptions.hpp"
#include "gmfg/equilibrium.hpp"

namespace gmfg {

inline constexpr double kTolStrict = 1e-10;
inline constexpr double kTolGradRelative = 1e-6;

enum class ExtremumKind { max, min };

/// Interior indices whose value beats both neighbours by more than
/// tol_strict * (max - min). Boundary cells and plateaus never qualify.
std::vector<std::size_t> find_strict_local_extrema(std::span<const double> profile, ExtremumKind kind,
                                                   double tol_strict = kTolStrict);

/// Cost profile used for critical-node analysis. With ablation the
/// quadratic (gtilde) contribution is dropped, leaving
///   pi nu^2 + pi m^2 + sigma^2 pi/rho - 2 m sum f lambda_bar <m, f>.
GridFunction critical_cost_profile(const EquilibriumSolution& sol, bool a5_ablation);

struct Derivatives {
    double first = 0.0;
    double second = 0.0;
};

/// One-cell central differences of eigenfunctions, degree and cost at a node.
struct ConditionRecord {
    std::size_t node = 0;
    double alpha = 0.0;
    std::vector<Derivatives> eigenfunctions;
    Derivatives degree;
    Derivatives cost;
    bool first_order_holds = false;        // every |first| <= 1e-6 * scale of its profile
    bool eigenfunction_convexity = false;  // every eigenfunction has positive second difference
    bool degree_concave = false;
    bool cost_convex = false;
    // dJ - (-2 m^2 sum <1,f_l> lambda_bar_l df_l); NaN unless the mean is constant and ablation is on.
    double cost_gradient_identity = 0.0;
};

/// Throws step_function_graphon for block-constant eigenfunctions and
/// size_mismatch for boundary nodes.
ConditionRecord differential_conditions(const EquilibriumSolution& sol, std::size_t node, bool a5_ablation = true);

struct CriticalNodeOptions {
    bool a5_ablation = true;
};

struct CriticalNodeReport {
    bool a5_ablation = true;
    std::vector<std::size_t> degree_maxima;
    std::vector<std::size_t> cost_minima;      // of the analysed cost (ablated or full)
    std::vector<std::size_t> full_cost_minima; // always of the full cost
    bool derivatives_applicable = true;
    std::vector<ConditionRecord> conditions;
    AssumptionReport assumptions;
    // A1, A3, A4 and A5 all hold. Without A5 the verdict only exercises the mechanism.
    bool hypotheses_hold = false;
    bool sets_equal = false;
    std::optional<std::size_t> witness; // first index in exactly one of the two sets
};

CriticalNodeReport equivalence_report(const EquilibriumSolution& sol, const CriticalNodeOptions& options = {});

} // namespace gmfg
