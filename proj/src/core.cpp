#include "gmfg/core.hpp"

#include <cmath>
#include <string>

#include "gmfg/error.hpp"

namespace gmfg {

void GameParams::validate() const {
    auto fail = [](const std::string& msg) { throw Error(ErrorCode::invalid_params, msg); };
    if (!std::isfinite(b) || !std::isfinite(r) || !std::isfinite(rho) || !std::isfinite(sigma) ||
        !std::isfinite(nu))
        fail("game parameters must be finite");
    if (b == 0.0) fail("b must be nonzero");
    if (r <= 0.0) fail("r must be positive");
    if (rho <= 0.0) fail("rho must be positive");
    if (sigma < 0.0) fail("sigma must be non-negative");
    if (nu <= 0.0) fail("nu must be positive");
}

RiccatiGain solve_riccati(const GameParams& params) {
    params.validate();
    // sqrt(r^2 rho^2/(4 b^4) + r/b^2) - rho r/(2 b^2), rationalised.
    const double half_rho = 0.5 * params.rho;
    return {1.0 / (half_rho + std::sqrt(half_rho * half_rho + params.gain_ratio()))};
}

double theta(double tau, const GameParams& params) {
    const double radicand = 0.25 * params.rho * params.rho + (1.0 - tau) * params.gain_ratio();
    if (!(radicand >= 0.0))
        throw Error(ErrorCode::domain_error,
                    "theta: negative radicand at tau = " + std::to_string(tau));
    return std::sqrt(radicand);
}

namespace {

void require_a1(double lambda) {
    if (!(lambda <= 1.0 - kEigenMargin))
        throw Error(ErrorCode::a1_violation,
                    "eigenvalue " + std::to_string(lambda) + " is not below 1 - 1e-9");
}

} // namespace

double xi(double lambda, const GameParams& params) {
    require_a1(lambda);
    // rho/2 - theta(lambda) without cancellation as lambda -> 1.
    return -(1.0 - lambda) * params.gain_ratio() / (0.5 * params.rho + theta(lambda, params));
}

double lambda_bar(double lambda, const GameParams& params) {
    require_a1(lambda);
    return lambda / (theta(lambda, params) + theta(0.0, params));
}

} // namespace gmfg
