#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gmfg/core.hpp"
#include "gmfg/graphon.hpp"
#include "gmfg/mean_field.hpp"

namespace gmfg {

/// How to sample one eigenfunction on the grid.
///   constant  f = value
///   blocks    equal-width blocks with the listed values
///   cosine    sqrt(2) cos(2 pi frequency alpha)
///   bumps     -(base + height sum_c exp(-(alpha - c)^2 / (2 width^2))), scaled
///             to unit norm; each center snaps to the nearest cell midpoint
///   samples   inline values, one per cell
///   csv       one column of a CSV file, one row per cell
struct EigenfunctionSpec {
    std::string kind = "constant";
    double value = -1.0;
    std::vector<double> values;
    int frequency = 1;
    double base = 1.0;
    double height = 1.0;
    double width = 0.05;
    std::vector<double> centers;
    std::string path;
    std::size_t column = 0;
};

struct EigenModeSpec {
    double lambda = 0.0;
    EigenfunctionSpec function;
};

struct GraphonConfig {
    std::string type = "constant"; // constant | step_matrix | eigenpairs
    double value = 0.5;
    std::vector<std::vector<double>> matrix;
    std::string matrix_csv;
    std::string kind = "smooth"; // eigenfunction kind for eigenpairs
    std::vector<EigenModeSpec> modes;
    bool canonicalize_signs = true;
};

struct MeanFieldConfig {
    std::string kind = "constant"; // constant | blocks | csv
    double value = 1.0;
    std::vector<double> values;
    std::string path;
};

struct AnalysisConfig {
    bool a5_ablation = true;
    std::size_t q_oracle_stride = 8;
};

struct SolveConfig {
    std::vector<double> times; // empty: 0, 0.5, ..., 10
};

struct SimulationConfig {
    std::size_t nodes = 4;
    std::size_t cluster_size = 2000;
    double dt = 1e-3;
    double t_final = 14.0;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t sample_every = 100;
    std::optional<double> initial_std; // defaults to game.nu
};

struct RunConfig {
    GameParams game;
    std::size_t grid = kDefaultGridSize;
    GraphonConfig graphon;
    MeanFieldConfig mean_field;
    AnalysisConfig analysis;
    SolveConfig solve;
    std::optional<SimulationConfig> simulation;
    std::string output = "out";
    std::filesystem::path base_dir; // relative paths resolve here; not serialised
};

/// Throws Error(config_error) on unknown types, missing keys or bad values.
RunConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

Graphon build_graphon(const RunConfig& config);
MeanField build_mean_field(const RunConfig& config, const Graphon& g);

/// Numeric CSV reader: one row per line, comma-separated; a first line that
/// does not parse as numbers is treated as a header.
std::vector<std::vector<double>> read_csv(const std::filesystem::path& path);

/// Writes a CSV with full round-trip precision.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

std::string format_number(double x);

} // namespace gmfg
