#include "gmfg/mean_field.hpp"

#include "gmfg/error.hpp"

namespace gmfg {

MeanField::MeanField(const Graphon& g, GridFunction samples)
    : samples_(std::move(samples)), projections_(g.project(samples_)) {}

MeanField MeanField::constant(const Graphon& g, double value) {
    return MeanField(g, GridFunction(g.grid_size(), value));
}

MeanField MeanField::blocks(const Graphon& g, const std::vector<double>& values) {
    const std::size_t M = g.grid_size();
    if (values.empty() || M % values.size() != 0)
        throw Error(ErrorCode::size_mismatch, "grid size must be a multiple of the number of mean blocks");
    const std::size_t width = M / values.size();
    GridFunction s(M);
    for (std::size_t i = 0; i < M; ++i) s[i] = values[i / width];
    return MeanField(g, std::move(s));
}

} // namespace gmfg
