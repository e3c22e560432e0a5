#include "gmfg/simulate.hpp"

#include <algorithm>
#include <barrier>
#include <cmath>
#include <random>
#include <string>
#include <thread>

#include "gmfg/error.hpp"

namespace gmfg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based stream: output k is splitmix64(key + k * golden gamma), keyed
// by (seed, agent, purpose). Streams never depend on scheduling.
class AgentStream {
public:
    using result_type = std::uint64_t;

    AgentStream(std::uint64_t seed, std::uint64_t agent, std::uint64_t purpose)
        : key_(splitmix64(splitmix64(seed) ^ splitmix64(agent * 4 + purpose))) {}

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return ~result_type{0}; }
    result_type operator()() { return splitmix64(key_ + 0x9E3779B97F4A7C15ULL * counter_++); }

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

constexpr std::uint64_t kInitialStream = 0;
constexpr std::uint64_t kNoiseStream = 1;

struct ClusterStats {
    std::vector<double> means;
    std::vector<double> variances;
};

ClusterStats cluster_stats(const PopulationSpec& spec, const std::vector<double>& states) {
    ClusterStats out{std::vector<double>(spec.nodes, 0.0), std::vector<double>(spec.nodes, 0.0)};
    std::size_t agent = 0;
    for (std::size_t l = 0; l < spec.nodes; ++l) {
        const std::size_t size = spec.cluster_sizes[l];
        double sum = 0.0;
        for (std::size_t j = 0; j < size; ++j) sum += states[agent + j];
        const double mean = sum / static_cast<double>(size);
        double ss = 0.0;
        for (std::size_t j = 0; j < size; ++j) ss += (states[agent + j] - mean) * (states[agent + j] - mean);
        out.means[l] = mean;
        out.variances[l] = size > 1 ? ss / static_cast<double>(size - 1) : 0.0;
        agent += size;
    }
    return out;
}

std::vector<double> mix(const PopulationSpec& spec, const std::vector<double>& cluster_means) {
    std::vector<double> z(spec.nodes, 0.0);
    const double inv_n = 1.0 / static_cast<double>(spec.nodes);
    for (std::size_t i = 0; i < spec.nodes; ++i) {
        double acc = 0.0;
        for (std::size_t l = 0; l < spec.nodes; ++l) acc += spec.weights(i, l) * cluster_means[l];
        z[i] = inv_n * acc;
    }
    return z;
}

} // namespace

PopulationSpec build_population(const Graphon& g, std::size_t nodes, std::size_t cluster_size, const MeanField& m,
                                double initial_std, std::uint64_t seed) {
    if (nodes == 0 || cluster_size == 0) throw Error(ErrorCode::invalid_sizes, "nodes and cluster size must be >= 1");
    if (m.size() != g.grid_size()) throw Error(ErrorCode::grid_mismatch, "mean field and graphon use different grids");
    if (!(initial_std >= 0.0)) throw Error(ErrorCode::invalid_sizes, "initial standard deviation must be >= 0");

    PopulationSpec spec;
    spec.nodes = nodes;
    spec.cluster_sizes.assign(nodes, cluster_size);
    spec.initial_std = initial_std;
    spec.seed = seed;
    spec.weights = SquareMatrix(nodes);
    const std::size_t M = g.grid_size();
    for (std::size_t l = 0; l < nodes; ++l) {
        const double alpha = (static_cast<double>(l) + 0.5) / static_cast<double>(nodes);
        spec.alphas.push_back(alpha);
        spec.initial_means.push_back(m[cell_index(alpha, M)]);
    }
    for (std::size_t i = 0; i < nodes; ++i)
        for (std::size_t l = 0; l < nodes; ++l) spec.weights(i, l) = g.kernel_at(spec.alphas[i], spec.alphas[l]);

    for (std::size_t l = 0; l < nodes; ++l)
        for (std::size_t j = 0; j < cluster_size; ++j) {
            const std::size_t agent = spec.agent_node.size();
            spec.agent_node.push_back(l);
            AgentStream stream(seed, agent, kInitialStream);
            std::normal_distribution<double> normal(0.0, 1.0);
            spec.initial_states.push_back(spec.initial_means[l] + initial_std * normal(stream));
        }
    return spec;
}

std::vector<double> empirical_mean_field(const PopulationSpec& spec, const std::vector<double>& states) {
    if (states.size() != spec.total_agents()) throw Error(ErrorCode::size_mismatch, "state vector has the wrong length");
    return mix(spec, cluster_stats(spec, states).means);
}

SimResult run(const PopulationSpec& spec, const EquilibriumSolution& sol, const SimOptions& options) {
    const auto& prm = sol.params();
    const double dt = options.dt;
    if (!(dt > 0.0) || !(options.t_final > 0.0)) throw Error(ErrorCode::invalid_sizes, "dt and t_final must be positive");
    const double pi = sol.pi();
    if (dt * prm.gain_ratio() * pi > 0.5)
        throw Error(ErrorCode::unstable_step, "dt * b^2 pi / r = " + std::to_string(dt * prm.gain_ratio() * pi) + " > 0.5");

    const std::size_t n_agents = spec.total_agents();
    const std::size_t M = sol.grid_size();
    std::vector<std::size_t> node_cell(spec.nodes);
    for (std::size_t l = 0; l < spec.nodes; ++l) node_cell[l] = cell_index(spec.alphas[l], M);

    SimResult res;
    res.dt = dt;
    res.steps = static_cast<std::size_t>(std::llround(options.t_final / dt));
    res.t_final = static_cast<double>(res.steps) * dt;
    res.truncation_weight = std::exp(-prm.rho * res.t_final);
    res.costs.assign(n_agents, 0.0);

    std::vector<double> x = spec.initial_states;
    std::vector<double> z_emp(spec.nodes, 0.0);
    std::vector<double> s_node(spec.nodes, 0.0);
    const std::size_t sample_every = std::max<std::size_t>(options.sample_every, 1);
    std::size_t step = 0;

    // Runs with all agents at time step*dt: cluster statistics, empirical
    // mean field, snapshots, and the offsets used by the next update.
    auto reduce = [&]() noexcept {
        const auto stats = cluster_stats(spec, x);
        z_emp = mix(spec, stats.means);
        const double t = static_cast<double>(step) * dt;
        if (step % sample_every == 0 || step == res.steps) {
            res.sample_times.push_back(t);
            res.states.push_back(x);
            res.cluster_means.push_back(stats.means);
            res.cluster_variances.push_back(stats.variances);
            res.empirical_z.push_back(z_emp);
        }
        for (std::size_t l = 0; l < spec.nodes; ++l) s_node[l] = sol.s(node_cell[l], t);
    };

    const double b_over_r = prm.b / prm.r;
    const double noise_scale = prm.sigma * std::sqrt(dt);
    auto advance = [&](std::size_t begin, std::size_t end, std::vector<AgentStream>& streams,
                       std::normal_distribution<double>& normal) {
        const double discount = std::exp(-prm.rho * static_cast<double>(step) * dt) * dt;
        for (std::size_t a = begin; a < end; ++a) {
            const std::size_t node = spec.agent_node[a];
            const double u = -b_over_r * (pi * x[a] + s_node[node]);
            const double dev = x[a] - z_emp[node];
            res.costs[a] += discount * (prm.r * u * u + dev * dev);
            double dw = 0.0;
            if (noise_scale != 0.0) {
                normal.reset();
                dw = normal(streams[a - begin]);
            }
            x[a] += prm.b * u * dt + noise_scale * dw;
        }
    };

    reduce();
    const unsigned workers = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(std::max<std::size_t>(n_agents, 1))));
    auto make_streams = [&](std::size_t begin, std::size_t end) {
        std::vector<AgentStream> streams;
        streams.reserve(end - begin);
        for (std::size_t a = begin; a < end; ++a) streams.emplace_back(spec.seed, a, kNoiseStream);
        return streams;
    };

    if (workers == 1) {
        auto streams = make_streams(0, n_agents);
        std::normal_distribution<double> normal(0.0, 1.0);
        for (; step < res.steps;) {
            advance(0, n_agents, streams, normal);
            ++step;
            reduce();
        }
    } else {
        std::barrier sync(static_cast<std::ptrdiff_t>(workers), [&]() noexcept {
            ++step;
            reduce();
        });
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            const std::size_t begin = n_agents * w / workers;
            const std::size_t end = n_agents * (w + 1) / workers;
            pool.emplace_back([&, begin, end] {
                auto streams = make_streams(begin, end);
                std::normal_distribution<double> normal(0.0, 1.0);
                for (std::size_t k = 0; k < res.steps; ++k) {
                    advance(begin, end, streams, normal);
                    sync.arrive_and_wait();
                }
            });
        }
    }

    res.node_mean_cost.assign(spec.nodes, 0.0);
    res.node_cost_stderr.assign(spec.nodes, 0.0);
    std::size_t agent = 0;
    for (std::size_t l = 0; l < spec.nodes; ++l) {
        const std::size_t size = spec.cluster_sizes[l];
        double sum = 0.0;
        for (std::size_t j = 0; j < size; ++j) sum += res.costs[agent + j];
        const double mean = sum / static_cast<double>(size);
        double ss = 0.0;
        for (std::size_t j = 0; j < size; ++j) ss += (res.costs[agent + j] - mean) * (res.costs[agent + j] - mean);
        res.node_mean_cost[l] = mean;
        res.node_cost_stderr[l] = size > 1 ? std::sqrt(ss / static_cast<double>(size - 1) / static_cast<double>(size)) : 0.0;
        agent += size;
    }
    return res;
}

CompareMetrics compare(const SimResult& result, const PopulationSpec& spec, const EquilibriumSolution& sol) {
    const std::size_t M = sol.grid_size();
    if (spec.nodes == 0 || spec.nodes > M) throw Error(ErrorCode::grid_mismatch, "more network nodes than grid cells");
    if (result.node_mean_cost.size() != spec.nodes || result.costs.size() != spec.total_agents())
        throw Error(ErrorCode::grid_mismatch, "simulation result does not belong to this population");

    std::vector<std::size_t> node_cell(spec.nodes);
    for (std::size_t l = 0; l < spec.nodes; ++l) node_cell[l] = cell_index(spec.alphas[l], M);
    const double inv_n = 1.0 / static_cast<double>(spec.nodes);

    CompareMetrics out;
    out.mean_field_within_band = true;
    for (std::size_t k = 0; k < result.sample_times.size(); ++k) {
        const double t = result.sample_times[k];
        double worst = -1.0;
        double worst_se = 0.0;
        for (std::size_t i = 0; i < spec.nodes; ++i) {
            const double err = std::abs(result.empirical_z[k][i] - sol.z(node_cell[i], t));
            double var = 0.0;
            for (std::size_t l = 0; l < spec.nodes; ++l)
                var += spec.weights(i, l) * spec.weights(i, l) * result.cluster_variances[k][l] /
                       static_cast<double>(spec.cluster_sizes[l]);
            const double se = inv_n * std::sqrt(var);
            if (err > 3.0 * se + 5.0 * result.dt) out.mean_field_within_band = false;
            out.max_band_excess = std::max(out.max_band_excess, err - 3.0 * se);
            if (err > worst) {
                worst = err;
                worst_se = se;
            }
        }
        out.mean_field_error.push_back(worst);
        out.mean_field_stderr.push_back(worst_se);
        out.max_mean_field_error = std::max(out.max_mean_field_error, worst);
    }

    const auto& prm = sol.params();
    const auto cost = cost_simplified(sol);
    // The analytic variance term is pi * Var(x_0); use the population's own spread.
    const double variance_shift = sol.pi() * (spec.initial_std * spec.initial_std - prm.nu * prm.nu);
    out.cost_within_band = true;
    for (std::size_t l = 0; l < spec.nodes; ++l) {
        const double analytic = cost.J[node_cell[l]] + variance_shift;
        const double err = std::abs(result.node_mean_cost[l] - analytic);
        out.node_mean_cost.push_back(result.node_mean_cost[l]);
        out.node_cost_stderr.push_back(result.node_cost_stderr[l]);
        out.node_analytic_cost.push_back(analytic);
        out.node_cost_error.push_back(err);
        if (err > 3.0 * result.node_cost_stderr[l] + 5.0 * result.dt + result.truncation_weight)
            out.cost_within_band = false;
    }
    return out;
}

} // namespace gmfg
