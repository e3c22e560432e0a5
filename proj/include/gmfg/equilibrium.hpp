#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gmfg/core.hpp"
#include "gmfg/graphon.hpp"
#include "gmfg/mean_field.hpp"

namespace gmfg {

/// Closed-form data of one eigen-mode of the equilibrium.
struct Mode {
    double lambda = 0.0;
    double projection = 0.0; // <m, f_l>
    double z0 = 0.0;         // lambda <m, f_l>
    double xi = 0.0;         // decay exponent rho/2 - theta(lambda), < 0
    double theta = 0.0;      // theta(lambda)
    double lambda_bar = 0.0; // lambda / (theta(lambda) + theta(0))
};

/// Equilibrium mean field z, offsets s and q, and mean optimal state, all in
/// closed form. Grid cells are addressed by index; times must be >= 0.
class EquilibriumSolution {
public:
    /// Throws a1_violation unless every eigenvalue is <= 1 - kEigenMargin.
    static EquilibriumSolution solve(const GameParams& params, const Graphon& g, const MeanField& m);

    double z(std::size_t i, double t) const;
    double s(std::size_t i, double t) const;
    double q(std::size_t i, double t) const;
    /// E[x_t] under the optimal feedback, started from m(alpha_i).
    double mean_state(std::size_t i, double t) const;

    GridFunction z_profile(double t) const;
    GridFunction s_profile(double t) const;
    GridFunction q_profile(double t) const;
    GridFunction mean_state_profile(double t) const;

    /// Per-mode time coefficients z^l_t and s^l_t.
    double mode_z(std::size_t l, double t) const;
    double mode_s(std::size_t l, double t) const;

    const std::vector<Mode>& modes() const noexcept { return modes_; }
    double pi() const noexcept { return pi_; }
    double theta0() const noexcept { return theta0_; }
    double q_infinity() const noexcept { return q_inf_; }
    /// Slowest decay rate min_l |xi_l|.
    double slowest_rate() const;

    const GameParams& params() const noexcept { return params_; }
    const Graphon& graphon() const noexcept { return graphon_; }
    const MeanField& mean_field() const noexcept { return mean_field_; }
    std::size_t grid_size() const noexcept { return graphon_.grid_size(); }

    /// Copy with every lambda_bar multiplied by factor. Used to inject faults
    /// into a single cost path during verification.
    EquilibriumSolution with_lambda_bar_scaled(double factor) const;

private:
    EquilibriumSolution(GameParams params, Graphon g, MeanField m);

    GameParams params_;
    Graphon graphon_;
    MeanField mean_field_;
    std::vector<Mode> modes_;
    double pi_ = 0.0;
    double theta0_ = 0.0;
    double q_inf_ = 0.0;
};

/// Cost J(alpha_i) on the grid with its additive decomposition:
///   J = variance + mean + noise + cross + quad.
struct CostProfile {
    GridFunction J;
    GridFunction variance; // pi nu^2
    GridFunction mean;     // pi m(alpha)^2
    GridFunction noise;    // sigma^2 pi / rho
    GridFunction cross;    // -2 m(alpha) sum f lambda_bar <m, f>
    GridFunction quad;     // everything quadratic in the projections
};

/// Full spectral form, obtained by integrating q by parts.
CostProfile cost_full(const EquilibriumSolution& sol);

/// Simplified spectral form with weights rho / (theta_l + theta_k).
CostProfile cost_simplified(const EquilibriumSolution& sol);

/// pi (nu^2 + m^2) + 2 s_0 m + q_0 assembled from the offset evaluators.
CostProfile cost_from_offsets(const EquilibriumSolution& sol);

/// Constant-mean representation through the derived graphons
///   gbar(e, b)        = sum_k lambda_bar_k f_k(e) f_k(b),
///   gtilde(e, b | a)  = sum_k lambda_tilde_k(a) f_k(e) f_k(b),
/// J(a) = pi (nu^2 + m^2 + sigma^2/rho) - 2 m^2 dbar(a) - m^2 dtilde(a).
struct ConstantMeanCost {
    CostProfile cost;
    double mean = 0.0;
    GridFunction degree_bar;   // int gbar(alpha, b) db
    GridFunction degree_tilde; // int gtilde(alpha, b | alpha) db
    std::vector<std::vector<double>> lambda_tilde; // [cell][mode]
};

/// Throws a3_violation unless the initial mean is constant and nonzero.
ConstantMeanCost cost_constant_mean(const EquilibriumSolution& sol);

/// max_i |z(alpha_i, t) - (g o E[x_t])(alpha_i)|.
double consistency_residual(const EquilibriumSolution& sol, double t);

struct OdeResiduals {
    double z = 0.0; // dz/dt = -(b^2/r) pi z - (b^2/r) (g o s)
    double s = 0.0; // ds/dt = (b^2 pi / r + rho) s + z
    double q = 0.0; // dq/dt = -sigma^2 pi + (b^2/r) s^2 + rho q - z^2
    double mean_state = 0.0; // dmu/dt = -(b^2/r)(pi mu + s)

    double max() const;
};

/// Finite-difference residuals of the equilibrium ODE system, maximised over
/// all grid cells and the given times. Central differences with step h; a
/// second-order one-sided stencil is used where t < h.
OdeResiduals ode_residuals(const EquilibriumSolution& sol, std::span<const double> times, double h = 1e-5);

} // namespace gmfg
