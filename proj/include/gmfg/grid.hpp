#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gmfg {

// Functions on [0,1] are sampled at the M cell midpoints (i + 1/2)/M.
using GridFunction = std::vector<double>;

inline constexpr std::size_t kDefaultGridSize = 512;

/// Midpoint of cell i on an M-cell grid.
inline double cell_midpoint(std::size_t i, std::size_t M) {
    return (static_cast<double>(i) + 0.5) / static_cast<double>(M);
}

/// Cell containing alpha (nearest-cell lookup, alpha clamped to [0,1]).
std::size_t cell_index(double alpha, std::size_t M);

GridFunction midpoints(std::size_t M);

/// Midpoint-rule inner product (1/M) sum u_i v_i.
double inner(std::span<const double> u, std::span<const double> v);

/// Midpoint-rule integral (1/M) sum v_i.
double integral(std::span<const double> v);

} // namespace gmfg
