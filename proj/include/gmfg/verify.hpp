#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "gmfg/equilibrium.hpp"

namespace gmfg {

/// q(alpha_i, t) = -e^{rho t} int_t^inf Theta(alpha_i, s) e^{-rho s} ds by
/// adaptive Gauss-Kronrod quadrature, truncated where 2 e^{-rho T} <= 1e-14.
/// Independent of the closed form used by EquilibriumSolution::q.
double q_by_quadrature(const EquilibriumSolution& sol, std::size_t i, double t);

/// n log-spaced times in [t_min, t_max].
std::vector<double> log_spaced_times(double t_min, double t_max, std::size_t n);

struct VerifyOptions {
    std::vector<double> times;          // empty: 20 log-spaced points in [1e-3, 10]
    double fd_step = 1e-5;
    std::size_t q_oracle_stride = 8;    // check every n-th grid cell against quadrature
    double lambda_bar_fault = 1.0;      // != 1 corrupts the full-cost path only
};

struct Check {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<Check> checks;

    bool passed() const;
    const Check* first_failure() const;
};

/// Runs the residual and cross-path checks on a solved equilibrium.
VerificationReport verify(const EquilibriumSolution& sol, const VerifyOptions& options = {});

double max_abs_difference(const GridFunction& a, const GridFunction& b);

} // namespace gmfg
