#include "gmfg/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gmfg/error.hpp"

namespace gmfg {

namespace {

double theta_or_nan(double tau, const GameParams& params) {
    try {
        return theta(tau, params);
    } catch (const Error&) {
        return std::numeric_limits<double>::quiet_NaN();
    }
}

} // namespace

AssumptionReport check_assumptions(const Graphon& g, const MeanField& m, const GameParams& params) {
    if (m.size() != g.grid_size())
        throw Error(ErrorCode::grid_mismatch, "mean field and graphon use different grids");

    AssumptionReport rep;
    const auto& lambdas = g.eigenvalues();
    rep.rank = g.rank();
    rep.max_eigenvalue = *std::max_element(lambdas.begin(), lambdas.end());
    rep.a1 = rep.max_eigenvalue <= 1.0 - kEigenMargin;

    rep.mean_value = integral(m.samples());
    for (double v : m.samples()) rep.mean_spread = std::max(rep.mean_spread, std::abs(v - rep.mean_value));
    rep.a3 = rep.mean_spread <= kTolMean && std::abs(rep.mean_value) > kTolMean;

    rep.ones_projections = g.ones_projections();
    rep.a4 = std::all_of(rep.ones_projections.begin(), rep.ones_projections.end(),
                         [](double p) { return p < -kTolInner; });

    const std::size_t L = g.rank();
    std::vector<double> th(L);
    for (std::size_t l = 0; l < L; ++l) th[l] = theta_or_nan(lambdas[l], params);
    rep.a5_residuals.assign(L, std::vector<double>(L));
    rep.a5 = true;
    rep.a5_min_residual = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < L; ++k) {
        for (std::size_t l = 0; l < L; ++l) {
            const double res = th[k] + th[l] - 0.5 * params.rho;
            rep.a5_residuals[k][l] = res;
            if (!(std::abs(res) <= kTolA5)) rep.a5 = false;
            if (std::isfinite(res)) rep.a5_min_residual = std::min(rep.a5_min_residual, res);
        }
    }
    return rep;
}

} // namespace gmfg
