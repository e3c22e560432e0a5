#include "gmfg/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gmfg/error.hpp"

namespace gmfg {

using nlohmann::json;

namespace {

[[noreturn]] void config_fail(const std::string& msg) { throw Error(ErrorCode::config_error, msg); }

template <class T>
T get_or(const json& obj, const char* key, T fallback) {
    if (!obj.contains(key)) return fallback;
    try {
        return obj.at(key).get<T>();
    } catch (const json::exception& e) {
        config_fail(std::string("bad value for '") + key + "': " + e.what());
    }
}

template <class T>
T require(const json& obj, const char* key) {
    if (!obj.contains(key)) config_fail(std::string("missing key '") + key + "'");
    return get_or<T>(obj, key, T{});
}

void require_object(const json& obj, const char* what) {
    if (!obj.is_object()) config_fail(std::string(what) + " must be an object");
}

EigenfunctionSpec parse_function(const json& j) {
    require_object(j, "eigenfunction");
    EigenfunctionSpec f;
    f.kind = require<std::string>(j, "kind");
    if (f.kind == "constant") {
        f.value = require<double>(j, "value");
    } else if (f.kind == "blocks" || f.kind == "samples") {
        f.values = require<std::vector<double>>(j, "values");
    } else if (f.kind == "cosine") {
        f.frequency = require<int>(j, "frequency");
    } else if (f.kind == "bumps") {
        f.base = get_or<double>(j, "base", 1.0);
        f.height = get_or<double>(j, "height", 1.0);
        f.width = get_or<double>(j, "width", 0.05);
        f.centers = require<std::vector<double>>(j, "centers");
        if (!(f.width > 0.0)) config_fail("bump width must be positive");
    } else if (f.kind == "csv") {
        f.path = require<std::string>(j, "path");
        f.column = get_or<std::size_t>(j, "column", 0);
    } else {
        config_fail("unknown eigenfunction kind '" + f.kind + "'");
    }
    return f;
}

json function_to_json(const EigenfunctionSpec& f) {
    json j{{"kind", f.kind}};
    if (f.kind == "constant") j["value"] = f.value;
    else if (f.kind == "blocks" || f.kind == "samples") j["values"] = f.values;
    else if (f.kind == "cosine") j["frequency"] = f.frequency;
    else if (f.kind == "bumps") {
        j["base"] = f.base;
        j["height"] = f.height;
        j["width"] = f.width;
        j["centers"] = f.centers;
    } else if (f.kind == "csv") {
        j["path"] = f.path;
        j["column"] = f.column;
    }
    return j;
}

std::filesystem::path resolve(const RunConfig& config, const std::string& p) {
    std::filesystem::path path(p);
    return path.is_absolute() ? path : config.base_dir / path;
}

GridFunction sample_function(const RunConfig& config, const EigenfunctionSpec& f) {
    const std::size_t M = config.grid;
    GridFunction out(M);
    if (f.kind == "constant") {
        std::fill(out.begin(), out.end(), f.value);
    } else if (f.kind == "blocks") {
        if (f.values.empty() || M % f.values.size() != 0)
            config_fail("grid size must be a multiple of the number of eigenfunction blocks");
        const std::size_t width = M / f.values.size();
        for (std::size_t i = 0; i < M; ++i) out[i] = f.values[i / width];
    } else if (f.kind == "cosine") {
        for (std::size_t i = 0; i < M; ++i)
            out[i] = std::numbers::sqrt2 * std::cos(2.0 * std::numbers::pi * f.frequency * cell_midpoint(i, M));
    } else if (f.kind == "bumps") {
        std::vector<double> centers;
        for (double c : f.centers) centers.push_back(cell_midpoint(cell_index(c, M), M));
        for (std::size_t i = 0; i < M; ++i) {
            const double a = cell_midpoint(i, M);
            double v = f.base;
            for (double c : centers) v += f.height * std::exp(-(a - c) * (a - c) / (2.0 * f.width * f.width));
            out[i] = -v;
        }
        const double norm = std::sqrt(inner(out, out));
        if (!(norm > 0.0)) config_fail("bump eigenfunction has zero norm");
        for (double& v : out) v /= norm;
    } else if (f.kind == "samples") {
        if (f.values.size() != M) config_fail("inline eigenfunction samples must have one value per grid cell");
        out = f.values;
    } else if (f.kind == "csv") {
        const auto rows = read_csv(resolve(config, f.path));
        if (rows.size() != M) config_fail("eigenfunction CSV must have one row per grid cell");
        for (std::size_t i = 0; i < M; ++i) {
            if (f.column >= rows[i].size()) config_fail("eigenfunction CSV column out of range");
            out[i] = rows[i][f.column];
        }
    }
    return out;
}

} // namespace

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
    require_object(doc, "config");
    RunConfig c;
    c.base_dir = base_dir;

    if (!doc.contains("game")) config_fail("missing 'game' block");
    const json& g = doc.at("game");
    require_object(g, "game");
    c.game.b = require<double>(g, "b");
    c.game.r = require<double>(g, "r");
    c.game.rho = require<double>(g, "rho");
    c.game.sigma = require<double>(g, "sigma");
    c.game.nu = require<double>(g, "nu");

    c.grid = get_or<std::size_t>(doc, "grid", kDefaultGridSize);
    if (c.grid < 3) config_fail("grid must have at least 3 cells");

    if (!doc.contains("graphon")) config_fail("missing 'graphon' block");
    const json& gj = doc.at("graphon");
    require_object(gj, "graphon");
    c.graphon.type = require<std::string>(gj, "type");
    c.graphon.canonicalize_signs = get_or<bool>(gj, "canonicalize_signs", true);
    if (c.graphon.type == "constant") {
        c.graphon.value = require<double>(gj, "value");
    } else if (c.graphon.type == "step_matrix") {
        if (gj.contains("matrix")) c.graphon.matrix = require<std::vector<std::vector<double>>>(gj, "matrix");
        else c.graphon.matrix_csv = require<std::string>(gj, "csv");
    } else if (c.graphon.type == "eigenpairs") {
        c.graphon.kind = get_or<std::string>(gj, "kind", "smooth");
        if (c.graphon.kind != "smooth" && c.graphon.kind != "step") config_fail("graphon kind must be smooth or step");
        if (!gj.contains("modes") || !gj.at("modes").is_array()) config_fail("eigenpairs graphon needs a 'modes' array");
        for (const auto& mj : gj.at("modes")) {
            require_object(mj, "mode");
            EigenModeSpec mode;
            mode.lambda = require<double>(mj, "lambda");
            if (!mj.contains("function")) config_fail("mode needs a 'function'");
            mode.function = parse_function(mj.at("function"));
            c.graphon.modes.push_back(std::move(mode));
        }
    } else {
        config_fail("unknown graphon type '" + c.graphon.type + "'");
    }

    if (doc.contains("mean_field")) {
        const json& mj = doc.at("mean_field");
        require_object(mj, "mean_field");
        if (mj.contains("constant")) {
            c.mean_field.kind = "constant";
            c.mean_field.value = require<double>(mj, "constant");
        } else if (mj.contains("blocks")) {
            c.mean_field.kind = "blocks";
            c.mean_field.values = require<std::vector<double>>(mj, "blocks");
        } else if (mj.contains("csv")) {
            c.mean_field.kind = "csv";
            c.mean_field.path = require<std::string>(mj, "csv");
        } else {
            config_fail("mean_field needs one of 'constant', 'blocks', 'csv'");
        }
    }

    if (doc.contains("analysis")) {
        const json& aj = doc.at("analysis");
        require_object(aj, "analysis");
        c.analysis.a5_ablation = get_or<bool>(aj, "a5_ablation", true);
        c.analysis.q_oracle_stride = get_or<std::size_t>(aj, "q_oracle_stride", 8);
        if (c.analysis.q_oracle_stride == 0) config_fail("q_oracle_stride must be positive");
    }

    if (doc.contains("solve")) {
        const json& sj = doc.at("solve");
        require_object(sj, "solve");
        c.solve.times = get_or<std::vector<double>>(sj, "times", {});
        for (double t : c.solve.times)
            if (!(t >= 0.0)) config_fail("solve times must be non-negative");
    }

    if (doc.contains("simulation")) {
        const json& sj = doc.at("simulation");
        require_object(sj, "simulation");
        SimulationConfig s;
        s.nodes = get_or<std::size_t>(sj, "nodes", s.nodes);
        s.cluster_size = get_or<std::size_t>(sj, "cluster_size", s.cluster_size);
        s.dt = get_or<double>(sj, "dt", s.dt);
        s.t_final = get_or<double>(sj, "t_final", s.t_final);
        s.seed = get_or<std::uint64_t>(sj, "seed", s.seed);
        s.threads = get_or<unsigned>(sj, "threads", s.threads);
        s.sample_every = get_or<std::size_t>(sj, "sample_every", s.sample_every);
        if (sj.contains("initial_std") && !sj.at("initial_std").is_null())
            s.initial_std = require<double>(sj, "initial_std");
        if (!(s.dt > 0.0) || !(s.t_final > 0.0)) config_fail("simulation dt and t_final must be positive");
        if (s.nodes == 0 || s.cluster_size == 0) config_fail("simulation nodes and cluster_size must be >= 1");
        if (s.initial_std && !(*s.initial_std >= 0.0)) config_fail("initial_std must be >= 0");
        c.simulation = s;
    }

    c.output = get_or<std::string>(doc, "output", "out");
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) config_fail("cannot open config file " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::exception& e) {
        config_fail("config is not valid JSON: " + std::string(e.what()));
    }
    return parse_config(doc, path.parent_path());
}

json to_json(const RunConfig& c) {
    json doc;
    doc["game"] = {{"b", c.game.b}, {"r", c.game.r}, {"rho", c.game.rho}, {"sigma", c.game.sigma}, {"nu", c.game.nu}};
    doc["grid"] = c.grid;

    json g{{"type", c.graphon.type}, {"canonicalize_signs", c.graphon.canonicalize_signs}};
    if (c.graphon.type == "constant") {
        g["value"] = c.graphon.value;
    } else if (c.graphon.type == "step_matrix") {
        if (!c.graphon.matrix.empty()) g["matrix"] = c.graphon.matrix;
        else g["csv"] = c.graphon.matrix_csv;
    } else {
        g["kind"] = c.graphon.kind;
        json modes = json::array();
        for (const auto& m : c.graphon.modes) modes.push_back({{"lambda", m.lambda}, {"function", function_to_json(m.function)}});
        g["modes"] = modes;
    }
    doc["graphon"] = g;

    if (c.mean_field.kind == "constant") doc["mean_field"] = {{"constant", c.mean_field.value}};
    else if (c.mean_field.kind == "blocks") doc["mean_field"] = {{"blocks", c.mean_field.values}};
    else doc["mean_field"] = {{"csv", c.mean_field.path}};

    doc["analysis"] = {{"a5_ablation", c.analysis.a5_ablation}, {"q_oracle_stride", c.analysis.q_oracle_stride}};
    doc["solve"] = {{"times", c.solve.times}};
    if (c.simulation) {
        const auto& s = *c.simulation;
        json sj{{"nodes", s.nodes},   {"cluster_size", s.cluster_size}, {"dt", s.dt},
                {"t_final", s.t_final}, {"seed", s.seed},               {"threads", s.threads},
                {"sample_every", s.sample_every}};
        sj["initial_std"] = s.initial_std ? json(*s.initial_std) : json(nullptr);
        doc["simulation"] = sj;
    }
    doc["output"] = c.output;
    return doc;
}

Graphon build_graphon(const RunConfig& c) {
    Graphon g = [&] {
        if (c.graphon.type == "constant") {
            return Graphon::from_step_matrix(SquareMatrix(1, c.graphon.value), c.grid);
        }
        if (c.graphon.type == "step_matrix") {
            const auto rows = c.graphon.matrix.empty() ? read_csv(resolve(c, c.graphon.matrix_csv)) : c.graphon.matrix;
            return Graphon::from_step_matrix(SquareMatrix::from_rows(rows), c.grid);
        }
        std::vector<double> lambdas;
        std::vector<GridFunction> fs;
        for (const auto& m : c.graphon.modes) {
            lambdas.push_back(m.lambda);
            fs.push_back(sample_function(c, m.function));
        }
        return Graphon::from_eigenpairs(std::move(lambdas), std::move(fs),
                                        c.graphon.kind == "step" ? EigenfunctionKind::step : EigenfunctionKind::smooth);
    }();
    return c.graphon.canonicalize_signs ? g.canonicalize_signs() : g;
}

MeanField build_mean_field(const RunConfig& c, const Graphon& g) {
    if (c.mean_field.kind == "constant") return MeanField::constant(g, c.mean_field.value);
    if (c.mean_field.kind == "blocks") {
        if (c.mean_field.values.empty() || c.grid % c.mean_field.values.size() != 0)
            config_fail("grid size must be a multiple of the number of mean blocks");
        return MeanField::blocks(g, c.mean_field.values);
    }
    const auto rows = read_csv(resolve(c, c.mean_field.path));
    if (rows.size() != c.grid) config_fail("mean field CSV must have one row per grid cell");
    GridFunction m;
    for (const auto& row : rows) {
        if (row.empty()) config_fail("empty row in mean field CSV");
        m.push_back(row.back());
    }
    return MeanField(g, std::move(m));
}

std::vector<std::vector<double>> read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) config_fail("cannot open CSV file " + path.string());
    std::vector<std::vector<double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        bool numeric = true;
        while (std::getline(ss, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) numeric = false;
            } catch (const std::exception&) {
                numeric = false;
            }
        }
        if (!numeric) {
            if (first) {
                first = false;
                continue;
            }
            config_fail("non-numeric CSV row in " + path.string() + ": " + line);
        }
        first = false;
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string format_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::config_error, "cannot write " + path.string());
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_number(row[k]);
        out << '\n';
    }
}

} // namespace gmfg
