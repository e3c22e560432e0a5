#include "gmfg/verify.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gmfg/assumptions.hpp"
#include "gmfg/error.hpp"

namespace gmfg {

double q_by_quadrature(const EquilibriumSolution& sol, std::size_t i, double t) {
    if (!(t >= 0.0)) throw Error(ErrorCode::negative_time, "time must be non-negative");
    const auto& prm = sol.params();
    const double ratio = prm.gain_ratio();
    const double pi = sol.pi();
    const double horizon = std::log(2e14) / prm.rho;

    // Theta from the z and s evaluators, shifted so that u = s - t.
    auto integrand = [&](double u) {
        const double z = sol.z(i, t + u);
        const double s = sol.s(i, t + u);
        const double big_theta = -prm.sigma * prm.sigma * pi - z * z + ratio * s * s;
        return big_theta * std::exp(-prm.rho * u);
    };
    using boost::math::quadrature::gauss_kronrod;
    const double value = gauss_kronrod<double, 61>::integrate(integrand, 0.0, horizon, 20, 1e-15);
    return -value;
}

std::vector<double> log_spaced_times(double t_min, double t_max, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = t_min;
        return out;
    }
    const double lo = std::log(t_min);
    const double hi = std::log(t_max);
    for (std::size_t k = 0; k < n; ++k)
        out[k] = std::exp(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    return out;
}

double max_abs_difference(const GridFunction& a, const GridFunction& b) {
    if (a.size() != b.size()) throw Error(ErrorCode::size_mismatch, "profiles differ in length");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

const Check* VerificationReport::first_failure() const {
    for (const auto& c : checks)
        if (!c.passed) return &c;
    return nullptr;
}

VerificationReport verify(const EquilibriumSolution& sol, const VerifyOptions& options) {
    VerificationReport rep;
    auto add = [&](std::string name, double value, double tol) {
        rep.checks.push_back({std::move(name), value, tol, value <= tol});
    };
    const auto& prm = sol.params();
    const std::size_t M = sol.grid_size();
    const auto times = options.times.empty() ? log_spaced_times(1e-3, 10.0, 20) : options.times;

    const double pi = sol.pi();
    add("riccati_residual", std::abs(prm.gain_ratio() * pi * pi + prm.rho * pi - 1.0), 1e-12);
    add("riccati_inverse_identity", std::abs(prm.gain_ratio() * pi + prm.rho - 1.0 / pi), 1e-12);

    const auto ode = ode_residuals(sol, times, options.fd_step);
    add("ode_residual_z", ode.z, 1e-6);
    add("ode_residual_s", ode.s, 1e-6);
    add("ode_residual_q", ode.q, 1e-6);
    add("ode_residual_mean_state", ode.mean_state, 1e-6);

    double consistency = 0.0;
    for (double t : times) consistency = std::max(consistency, consistency_residual(sol, t));
    add("consistency_residual", consistency, 1e-7);

    const auto full = cost_full(options.lambda_bar_fault == 1.0 ? sol : sol.with_lambda_bar_scaled(options.lambda_bar_fault));
    const auto simplified = cost_simplified(sol);
    const auto assembled = cost_from_offsets(sol);
    add("cost_full_vs_simplified", max_abs_difference(full.J, simplified.J), 1e-10);
    add("cost_full_vs_offsets", max_abs_difference(full.J, assembled.J), 1e-10);
    add("cost_simplified_vs_offsets", max_abs_difference(simplified.J, assembled.J), 1e-10);
    add("cost_nonnegative", -*std::min_element(simplified.J.begin(), simplified.J.end()), 1e-9);

    double q_err = 0.0;
    const std::size_t stride = std::max<std::size_t>(options.q_oracle_stride, 1);
    for (std::size_t i = 0; i < M; i += stride) q_err = std::max(q_err, std::abs(sol.q(i, 0.0) - q_by_quadrature(sol, i, 0.0)));
    add("q_closed_form_vs_quadrature", q_err, 1e-8);

    const double t_large = 50.0 / sol.slowest_rate();
    double z_scale = 0.0, s_scale = 0.0, z_late = 0.0, s_late = 0.0, q_late = 0.0;
    for (std::size_t i = 0; i < M; ++i) {
        z_scale = std::max(z_scale, std::abs(sol.z(i, 0.0)));
        s_scale = std::max(s_scale, std::abs(sol.s(i, 0.0)));
        z_late = std::max(z_late, std::abs(sol.z(i, t_large)));
        s_late = std::max(s_late, std::abs(sol.s(i, t_large)));
        q_late = std::max(q_late, std::abs(sol.q(i, t_large) - sol.q_infinity()));
    }
    add("steady_state_z", z_late, 1e-12 * z_scale);
    add("steady_state_s", s_late, 1e-12 * s_scale);
    add("steady_state_q", q_late, 1e-10);

    const auto assumptions = check_assumptions(sol.graphon(), sol.mean_field(), prm);
    if (assumptions.a3) {
        const auto cm = cost_constant_mean(sol);
        add("constant_mean_vs_simplified", max_abs_difference(cm.cost.J, simplified.J), 1e-10);
    }
    return rep;
}

} // namespace gmfg
