#pragma once

namespace gmfg {

// Eigenvalues closer than this to 1 are treated as violating A1: the
// corresponding eigen-mode would no longer decay.
inline constexpr double kEigenMargin = 1e-9;

/// Scalar coefficients of the driftless LQG tracking game.
///   dx = b u dt + sigma dw,  x_0 ~ N(m, nu^2),
///   J  = E int e^{-rho t} [ r u^2 + (x - z)^2 ] dt.
struct GameParams {
    double b = 1.0;
    double r = 1.0;
    double rho = 1.0;
    double sigma = 0.0;
    double nu = 1.0;

    /// Throws Error(invalid_params) unless r, rho, nu > 0, sigma >= 0, b != 0
    /// and every field is finite.
    void validate() const;

    /// b^2 / r, the control-effectiveness ratio that appears everywhere.
    double gain_ratio() const noexcept { return b * b / r; }
};

struct RiccatiGain {
    double pi = 0.0;
};

/// Positive root of (b^2/r) pi^2 + rho pi = 1.
RiccatiGain solve_riccati(const GameParams& params);

/// theta(tau) = sqrt(rho^2/4 + (1 - tau) b^2/r). Throws domain_error when the
/// radicand is negative.
double theta(double tau, const GameParams& params);

/// Decay exponent rho/2 - theta(lambda) of an eigen-mode; negative whenever
/// lambda <= 1 - kEigenMargin, otherwise throws a1_violation.
double xi(double lambda, const GameParams& params);

/// lambda / (theta(lambda) + theta(0)).
double lambda_bar(double lambda, const GameParams& params);

} // namespace gmfg
