#pragma once

#include <cstddef>
#include <vector>

#include "gmfg/core.hpp"
#include "gmfg/graphon.hpp"
#include "gmfg/mean_field.hpp"

namespace gmfg {

inline constexpr double kTolInner = 1e-12;
inline constexpr double kTolMean = 1e-12;
inline constexpr double kTolA5 = 1e-9;

/// Diagnostics for the standing assumptions. Every flag can be recomputed
/// from the numbers stored next to it.
struct AssumptionReport {
    // A1: every eigenvalue strictly below 1 (with kEigenMargin).
    bool a1 = false;
    double max_eigenvalue = 0.0;

    // A2: finite rank. Always true for this representation.
    bool a2 = true;
    std::size_t rank = 0;

    // A3: constant nonzero initial mean.
    bool a3 = false;
    double mean_value = 0.0;
    double mean_spread = 0.0;

    // A4: <1, f_l> < 0 for every mode.
    bool a4 = false;
    std::vector<double> ones_projections;

    // A5: theta(lambda_l) + theta(lambda_k) == rho/2 for every pair.
    // Residuals are theta(lambda_l) + theta(lambda_k) - rho/2; NaN where
    // theta is undefined.
    bool a5 = false;
    std::vector<std::vector<double>> a5_residuals;
    double a5_min_residual = 0.0;
};

/// Never throws on assumption failures; it only reports them.
AssumptionReport check_assumptions(const Graphon& g, const MeanField& m, const GameParams& params);

} // namespace gmfg
