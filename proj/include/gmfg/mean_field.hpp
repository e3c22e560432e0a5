#pragma once

#include <vector>

#include "gmfg/graphon.hpp"
#include "gmfg/grid.hpp"

namespace gmfg {

/// Initial means m(alpha_i) together with their projections <m, f_l> onto
/// the eigenfunctions of the graphon they were built against.
class MeanField {
public:
    MeanField(const Graphon& g, GridFunction samples);

    static MeanField constant(const Graphon& g, double value);

    /// Block-constant means: values.size() equal blocks over [0,1]; the grid
    /// size must be a multiple of the block count.
    static MeanField blocks(const Graphon& g, const std::vector<double>& values);

    const GridFunction& samples() const noexcept { return samples_; }
    double operator[](std::size_t i) const { return samples_[i]; }
    std::size_t size() const noexcept { return samples_.size(); }
    const std::vector<double>& projections() const noexcept { return projections_; }

private:
    GridFunction samples_;
    std::vector<double> projections_;
};

} // namespace gmfg
