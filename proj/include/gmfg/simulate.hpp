#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <vector>

#include "gmfg/equilibrium.hpp"
#include "gmfg/graphon.hpp"
#include "gmfg/linalg.hpp"
#include "gmfg/mean_field.hpp"

namespace gmfg {

/// Finite network of n nodes, each hosting a cluster of agents. Agents are
/// stored cluster by cluster.
struct PopulationSpec {
    std::size_t nodes = 0;
    std::vector<std::size_t> cluster_sizes;
    std::vector<double> alphas;        // (l + 1/2) / n
    SquareMatrix weights;              // g(alpha_l, alpha_k)
    std::vector<double> initial_means; // m(alpha_l)
    double initial_std = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> initial_states;
    std::vector<std::size_t> agent_node;

    std::size_t total_agents() const noexcept { return agent_node.size(); }
};

/// Samples the weight matrix from the graphon at node midpoints and draws
/// x_0 ~ N(m(alpha_l), initial_std^2) for every agent of cluster l.
PopulationSpec build_population(const Graphon& g, std::size_t nodes, std::size_t cluster_size, const MeanField& m,
                                double initial_std, std::uint64_t seed);

struct SimOptions {
    double dt = 1e-3;
    double t_final = 14.0;
    std::size_t sample_every = 100; // steps between stored snapshots
    unsigned threads = 1;
};

struct SimResult {
    double dt = 0.0;
    double t_final = 0.0;
    std::size_t steps = 0;
    double truncation_weight = 0.0; // e^{-rho t_final}, the discount weight of the dropped tail

    std::vector<double> sample_times;
    std::vector<std::vector<double>> states;            // [sample][agent]
    std::vector<std::vector<double>> cluster_means;     // [sample][node]
    std::vector<std::vector<double>> cluster_variances; // [sample][node], unbiased
    std::vector<std::vector<double>> empirical_z;       // [sample][node]

    std::vector<double> costs;          // discounted cost per agent
    std::vector<double> node_mean_cost; // per node
    std::vector<double> node_cost_stderr;
};

/// Euler-Maruyama simulation of every agent under the equilibrium feedback
/// u = -(b/r)(pi x + s(alpha_l, t)). Costs use the empirical mean field of the
/// finite network. Results do not depend on options.threads.
SimResult run(const PopulationSpec& spec, const EquilibriumSolution& sol, const SimOptions& options);

/// Recomputes z^{i,n}_t = (1/n) sum_l g_{il} mean(cluster l) from stored states.
std::vector<double> empirical_mean_field(const PopulationSpec& spec, const std::vector<double>& states);

struct CompareMetrics {
    std::vector<double> mean_field_error;  // per sample: max over nodes of |z_emp - z|
    std::vector<double> mean_field_stderr; // per sample: stderr of z_emp at the worst node
    double max_mean_field_error = 0.0;
    double max_band_excess = -std::numeric_limits<double>::infinity(); // max over samples of error - 3 stderr
    bool mean_field_within_band = false; // error <= 3 stderr + 5 dt at every sample

    std::vector<double> node_mean_cost;
    std::vector<double> node_cost_stderr;
    std::vector<double> node_analytic_cost;
    std::vector<double> node_cost_error;
    bool cost_within_band = false; // |mean cost - J| <= 3 stderr + 5 dt + truncation weight at every node
};

CompareMetrics compare(const SimResult& result, const PopulationSpec& spec, const EquilibriumSolution& sol);

} // namespace gmfg
