#include "gmfg/grid.hpp"

#include <algorithm>
#include <cmath>

#include "gmfg/error.hpp"

namespace gmfg {

std::size_t cell_index(double alpha, std::size_t M) {
    const double clamped = std::clamp(alpha, 0.0, 1.0);
    const auto i = static_cast<std::size_t>(std::floor(clamped * static_cast<double>(M)));
    return std::min(i, M - 1);
}

GridFunction midpoints(std::size_t M) {
    GridFunction out(M);
    for (std::size_t i = 0; i < M; ++i) out[i] = cell_midpoint(i, M);
    return out;
}

double inner(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size() || u.empty())
        throw Error(ErrorCode::size_mismatch, "inner product of grid functions of different size");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) acc += u[i] * v[i];
    return acc / static_cast<double>(u.size());
}

double integral(std::span<const double> v) {
    if (v.empty()) throw Error(ErrorCode::size_mismatch, "integral of empty grid function");
    double acc = 0.0;
    for (double x : v) acc += x;
    return acc / static_cast<double>(v.size());
}

} // namespace gmfg
