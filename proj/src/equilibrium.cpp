#include "gmfg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmfg/assumptions.hpp"
#include "gmfg/error.hpp"

namespace gmfg {

namespace {

void require_time(double t) {
    if (!(t >= 0.0)) throw Error(ErrorCode::negative_time, "time must be non-negative, got " + std::to_string(t));
}

// int_0^t e^{-k (t - u)} e^{x u} du
double forced_response(double k, double x, double t) {
    const double d = x + k;
    if (std::abs(d) < 1e-12) return t * std::exp(x * t);
    return std::exp(-k * t) * std::expm1(d * t) / d;
}

// Per-cell spectral coefficients a_l = f_l lambda_l <m,f_l>, c_l = f_l lambda_bar_l <m,f_l>.
struct CellCoefficients {
    std::vector<double> a;
    std::vector<double> c;
};

CellCoefficients cell_coefficients(const EquilibriumSolution& sol, std::size_t i) {
    const auto& modes = sol.modes();
    CellCoefficients out{std::vector<double>(modes.size()), std::vector<double>(modes.size())};
    for (std::size_t l = 0; l < modes.size(); ++l) {
        const double f = sol.graphon().eigenfunction(l, i);
        out.a[l] = f * modes[l].lambda * modes[l].projection;
        out.c[l] = f * modes[l].lambda_bar * modes[l].projection;
    }
    return out;
}

CostProfile empty_profile(std::size_t M) {
    return {GridFunction(M), GridFunction(M), GridFunction(M), GridFunction(M), GridFunction(M), GridFunction(M)};
}

void assemble(CostProfile& p, std::size_t i) {
    p.J[i] = p.variance[i] + p.mean[i] + p.noise[i] + p.cross[i] + p.quad[i];
}

void fill_common_terms(const EquilibriumSolution& sol, CostProfile& p, std::size_t i) {
    const auto& prm = sol.params();
    const double m = sol.mean_field()[i];
    p.variance[i] = sol.pi() * prm.nu * prm.nu;
    p.mean[i] = sol.pi() * m * m;
    p.noise[i] = sol.q_infinity();
}

} // namespace

EquilibriumSolution::EquilibriumSolution(GameParams params, Graphon g, MeanField m)
    : params_(params), graphon_(std::move(g)), mean_field_(std::move(m)) {}

EquilibriumSolution EquilibriumSolution::solve(const GameParams& params, const Graphon& g, const MeanField& m) {
    params.validate();
    if (m.size() != g.grid_size())
        throw Error(ErrorCode::grid_mismatch, "mean field and graphon use different grids");

    EquilibriumSolution sol(params, g, m);
    sol.pi_ = solve_riccati(params).pi;
    sol.theta0_ = theta(0.0, params);
    sol.q_inf_ = params.sigma * params.sigma * sol.pi_ / params.rho;
    const auto& lambdas = g.eigenvalues();
    const auto& proj = m.projections();
    for (std::size_t l = 0; l < g.rank(); ++l) {
        Mode mode;
        mode.lambda = lambdas[l];
        mode.projection = proj[l];
        mode.z0 = lambdas[l] * proj[l];
        mode.xi = xi(lambdas[l], params);
        mode.theta = theta(lambdas[l], params);
        mode.lambda_bar = lambda_bar(lambdas[l], params);
        sol.modes_.push_back(mode);
    }
    return sol;
}

EquilibriumSolution EquilibriumSolution::with_lambda_bar_scaled(double factor) const {
    EquilibriumSolution out = *this;
    for (auto& mode : out.modes_) mode.lambda_bar *= factor;
    return out;
}

double EquilibriumSolution::slowest_rate() const {
    double rate = std::numeric_limits<double>::infinity();
    for (const auto& mode : modes_) rate = std::min(rate, std::abs(mode.xi));
    return rate;
}

double EquilibriumSolution::mode_z(std::size_t l, double t) const {
    require_time(t);
    return modes_.at(l).z0 * std::exp(modes_[l].xi * t);
}

double EquilibriumSolution::mode_s(std::size_t l, double t) const {
    require_time(t);
    // s^l = -z^l / (theta_l + theta(0)) = -lambda_bar_l <m, f_l> e^{xi_l t}
    return -modes_.at(l).lambda_bar * modes_[l].projection * std::exp(modes_[l].xi * t);
}

double EquilibriumSolution::z(std::size_t i, double t) const {
    require_time(t);
    double acc = 0.0;
    for (std::size_t l = 0; l < modes_.size(); ++l)
        acc += graphon_.eigenfunction(l, i) * modes_[l].z0 * std::exp(modes_[l].xi * t);
    return acc;
}

double EquilibriumSolution::s(std::size_t i, double t) const {
    require_time(t);
    double acc = 0.0;
    for (std::size_t l = 0; l < modes_.size(); ++l)
        acc += graphon_.eigenfunction(l, i) * modes_[l].lambda_bar * modes_[l].projection * std::exp(modes_[l].xi * t);
    return -acc;
}

double EquilibriumSolution::q(std::size_t i, double t) const {
    require_time(t);
    // q = sigma^2 pi/rho + sum_{k,l} (a_k a_l - (b^2/r) c_k c_l) e^{(xi_k + xi_l) t} / (theta_k + theta_l)
    const auto cc = cell_coefficients(*this, i);
    const double ratio = params_.gain_ratio();
    double acc = 0.0;
    for (std::size_t k = 0; k < modes_.size(); ++k)
        for (std::size_t l = 0; l < modes_.size(); ++l) {
            const double w = cc.a[k] * cc.a[l] - ratio * cc.c[k] * cc.c[l];
            acc += w * std::exp((modes_[k].xi + modes_[l].xi) * t) / (modes_[k].theta + modes_[l].theta);
        }
    return q_inf_ + acc;
}

double EquilibriumSolution::mean_state(std::size_t i, double t) const {
    require_time(t);
    // dmu/dt = -k mu + (b^2/r) sum_l c_l e^{xi_l t}, k = b^2 pi / r.
    const double ratio = params_.gain_ratio();
    const double k = ratio * pi_;
    double acc = mean_field_[i] * std::exp(-k * t);
    for (std::size_t l = 0; l < modes_.size(); ++l) {
        const double c = graphon_.eigenfunction(l, i) * modes_[l].lambda_bar * modes_[l].projection;
        acc += ratio * c * forced_response(k, modes_[l].xi, t);
    }
    return acc;
}

namespace {

template <class F>
GridFunction profile(std::size_t M, F&& f) {
    GridFunction out(M);
    for (std::size_t i = 0; i < M; ++i) out[i] = f(i);
    return out;
}

} // namespace

GridFunction EquilibriumSolution::z_profile(double t) const {
    return profile(grid_size(), [&](std::size_t i) { return z(i, t); });
}
GridFunction EquilibriumSolution::s_profile(double t) const {
    return profile(grid_size(), [&](std::size_t i) { return s(i, t); });
}
GridFunction EquilibriumSolution::q_profile(double t) const {
    return profile(grid_size(), [&](std::size_t i) { return q(i, t); });
}
GridFunction EquilibriumSolution::mean_state_profile(double t) const {
    return profile(grid_size(), [&](std::size_t i) { return mean_state(i, t); });
}

CostProfile cost_full(const EquilibriumSolution& sol) {
    const std::size_t M = sol.grid_size();
    const auto& modes = sol.modes();
    const auto& prm = sol.params();
    const double ratio = prm.gain_ratio();
    const double rho = prm.rho;
    CostProfile p = empty_profile(M);
    for (std::size_t i = 0; i < M; ++i) {
        fill_common_terms(sol, p, i);
        const auto cc = cell_coefficients(sol, i);
        double sum_a = 0.0;
        double sum_c = 0.0;
        for (std::size_t l = 0; l < modes.size(); ++l) {
            sum_a += cc.a[l];
            sum_c += cc.c[l];
        }
        p.cross[i] = -2.0 * sol.mean_field()[i] * sum_c;
        // -Theta(0)/rho part, then the integrated derivative of Theta.
        double quad = sum_a * sum_a / rho - ratio * sum_c * sum_c / rho;
        for (std::size_t k = 0; k < modes.size(); ++k)
            for (std::size_t l = 0; l < modes.size(); ++l) {
                const double bracket = 2.0 / rho * cc.a[k] * cc.a[l] - 2.0 * ratio / rho * cc.c[k] * cc.c[l];
                quad += modes[k].xi / (modes[l].theta + modes[k].theta) * bracket;
            }
        p.quad[i] = quad;
        assemble(p, i);
    }
    return p;
}

CostProfile cost_simplified(const EquilibriumSolution& sol) {
    const std::size_t M = sol.grid_size();
    const auto& modes = sol.modes();
    const auto& prm = sol.params();
    const double ratio = prm.gain_ratio();
    const double rho = prm.rho;
    CostProfile p = empty_profile(M);
    for (std::size_t i = 0; i < M; ++i) {
        fill_common_terms(sol, p, i);
        double cross = 0.0;
        double quad = 0.0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
            const double fk = sol.graphon().eigenfunction(k, i);
            cross += fk * modes[k].lambda_bar * modes[k].projection;
            for (std::size_t l = 0; l < modes.size(); ++l) {
                const double fl = sol.graphon().eigenfunction(l, i);
                const double weight = rho / (modes[l].theta + modes[k].theta);
                const double bracket = modes[k].lambda * modes[l].lambda / rho -
                                       ratio / rho * modes[k].lambda_bar * modes[l].lambda_bar;
                quad += fk * fl * modes[k].projection * modes[l].projection * weight * bracket;
            }
        }
        p.cross[i] = -2.0 * sol.mean_field()[i] * cross;
        p.quad[i] = quad;
        assemble(p, i);
    }
    return p;
}

CostProfile cost_from_offsets(const EquilibriumSolution& sol) {
    const std::size_t M = sol.grid_size();
    CostProfile p = empty_profile(M);
    for (std::size_t i = 0; i < M; ++i) {
        fill_common_terms(sol, p, i);
        p.cross[i] = 2.0 * sol.s(i, 0.0) * sol.mean_field()[i];
        p.quad[i] = sol.q(i, 0.0) - sol.q_infinity();
        assemble(p, i);
    }
    return p;
}

ConstantMeanCost cost_constant_mean(const EquilibriumSolution& sol) {
    const auto& samples = sol.mean_field().samples();
    const double mean = integral(samples);
    double spread = 0.0;
    for (double v : samples) spread = std::max(spread, std::abs(v - mean));
    if (spread > kTolMean || std::abs(mean) <= kTolMean)
        throw Error(ErrorCode::a3_violation, "constant-mean cost needs a constant nonzero initial mean");

    const std::size_t M = sol.grid_size();
    const auto& g = sol.graphon();
    const auto& modes = sol.modes();
    const auto& ones = g.ones_projections();
    const std::size_t L = modes.size();
    const auto& prm = sol.params();
    const double ratio = prm.gain_ratio();
    const double rho = prm.rho;
    const double m2 = mean * mean;

    ConstantMeanCost out;
    out.mean = mean;
    out.cost = empty_profile(M);
    out.degree_bar.assign(M, 0.0);
    out.degree_tilde.assign(M, 0.0);
    out.lambda_tilde.assign(M, std::vector<double>(L, 0.0));

    for (std::size_t i = 0; i < M; ++i) {
        for (std::size_t k = 0; k < L; ++k) {
            double lt = 0.0;
            for (std::size_t l = 0; l < L; ++l) {
                const double bracket = modes[k].lambda * modes[l].lambda / rho -
                                       ratio / rho * modes[k].lambda_bar * modes[l].lambda_bar;
                lt -= g.eigenfunction(l, i) * ones[l] * rho / (modes[l].theta + modes[k].theta) * bracket;
            }
            out.lambda_tilde[i][k] = lt;
            out.degree_bar[i] += modes[k].lambda_bar * ones[k] * g.eigenfunction(k, i);
            out.degree_tilde[i] += lt * ones[k] * g.eigenfunction(k, i);
        }
        out.cost.variance[i] = sol.pi() * prm.nu * prm.nu;
        out.cost.mean[i] = sol.pi() * m2;
        out.cost.noise[i] = sol.q_infinity();
        out.cost.cross[i] = -2.0 * m2 * out.degree_bar[i];
        out.cost.quad[i] = -m2 * out.degree_tilde[i];
        assemble(out.cost, i);
    }
    return out;
}

double consistency_residual(const EquilibriumSolution& sol, double t) {
    const auto aggregated = sol.graphon().apply(sol.mean_state_profile(t));
    double worst = 0.0;
    for (std::size_t i = 0; i < sol.grid_size(); ++i) worst = std::max(worst, std::abs(sol.z(i, t) - aggregated[i]));
    return worst;
}

double OdeResiduals::max() const { return std::max({z, s, q, mean_state}); }

OdeResiduals ode_residuals(const EquilibriumSolution& sol, std::span<const double> times, double h) {
    const auto& prm = sol.params();
    const double ratio = prm.gain_ratio();
    const double pi = sol.pi();
    const std::size_t M = sol.grid_size();

    // Derivative of a profile-valued function of time at t.
    auto derivative = [h](auto&& eval, double t) {
        if (t >= h) {
            auto plus = eval(t + h);
            const auto minus = eval(t - h);
            for (std::size_t i = 0; i < plus.size(); ++i) plus[i] = (plus[i] - minus[i]) / (2.0 * h);
            return plus;
        }
        auto f0 = eval(t);
        const auto f1 = eval(t + h);
        const auto f2 = eval(t + 2.0 * h);
        for (std::size_t i = 0; i < f0.size(); ++i) f0[i] = (-3.0 * f0[i] + 4.0 * f1[i] - f2[i]) / (2.0 * h);
        return f0;
    };

    OdeResiduals out;
    for (double t : times) {
        const auto z = sol.z_profile(t);
        const auto s = sol.s_profile(t);
        const auto q = sol.q_profile(t);
        const auto mu = sol.mean_state_profile(t);
        const auto gs = sol.graphon().apply(s);
        const auto dz = derivative([&](double u) { return sol.z_profile(u); }, t);
        const auto ds = derivative([&](double u) { return sol.s_profile(u); }, t);
        const auto dq = derivative([&](double u) { return sol.q_profile(u); }, t);
        const auto dmu = derivative([&](double u) { return sol.mean_state_profile(u); }, t);
        for (std::size_t i = 0; i < M; ++i) {
            out.z = std::max(out.z, std::abs(dz[i] - (-ratio * pi * z[i] - ratio * gs[i])));
            out.s = std::max(out.s, std::abs(ds[i] - ((ratio * pi + prm.rho) * s[i] + z[i])));
            out.q = std::max(out.q, std::abs(dq[i] - (-prm.sigma * prm.sigma * pi + ratio * s[i] * s[i] +
                                                      prm.rho * q[i] - z[i] * z[i])));
            out.mean_state = std::max(out.mean_state, std::abs(dmu[i] - (-ratio * (pi * mu[i] + s[i]))));
        }
    }
    return out;
}

} // namespace gmfg
