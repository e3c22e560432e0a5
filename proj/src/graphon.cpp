#include "gmfg/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmfg/error.hpp"

namespace gmfg {

Graphon::Graphon(std::vector<double> lambdas, std::vector<GridFunction> fs, EigenfunctionKind kind)
    : kind_(kind), lambdas_(std::move(lambdas)), eigenfunctions_(std::move(fs)) {
    if (lambdas_.empty()) throw Error(ErrorCode::rank_zero, "graphon has no nonzero eigenvalue");
    if (eigenfunctions_.size() != lambdas_.size())
        throw Error(ErrorCode::size_mismatch, "one eigenfunction is required per eigenvalue");
    grid_size_ = eigenfunctions_.front().size();
    if (grid_size_ == 0) throw Error(ErrorCode::size_mismatch, "eigenfunctions have no samples");
    for (const auto& f : eigenfunctions_)
        if (f.size() != grid_size_)
            throw Error(ErrorCode::size_mismatch, "eigenfunctions sampled on different grids");
    const GridFunction ones(grid_size_, 1.0);
    ones_projections_ = project(ones);
}

Graphon Graphon::from_step_matrix(const SquareMatrix& p, std::size_t M) {
    const std::size_t n = p.size();
    if (n == 0 || M == 0 || M % n != 0)
        throw Error(ErrorCode::size_mismatch, "grid size must be a positive multiple of the block count");
    if (p.max_asymmetry() > 1e-12) throw Error(ErrorCode::asymmetric_matrix, "step matrix is not symmetric");
    for (double x : p.data())
        if (!(x >= 0.0 && x <= 1.0))
            throw Error(ErrorCode::entry_out_of_range, "step matrix entries must lie in [0,1]");

    const auto eig = jacobi_eigen(p);
    const double n_d = static_cast<double>(n);
    const std::size_t cells_per_block = M / n;

    std::vector<double> lambdas;
    std::vector<GridFunction> fs;
    for (std::size_t k = 0; k < n; ++k) {
        const double lambda = eig.values[k] / n_d;
        if (std::abs(lambda) <= kRankThreshold) continue;
        GridFunction f(M);
        for (std::size_t i = 0; i < M; ++i) f[i] = std::sqrt(n_d) * eig.vectors[k][i / cells_per_block];
        lambdas.push_back(lambda);
        fs.push_back(std::move(f));
    }
    if (lambdas.empty()) throw Error(ErrorCode::rank_zero, "step matrix has rank zero");
    Graphon g(std::move(lambdas), std::move(fs), EigenfunctionKind::step);
    g.validate();
    return g;
}

Graphon Graphon::from_eigenpairs(std::vector<double> lambdas, std::vector<GridFunction> eigenfunctions,
                                 EigenfunctionKind kind) {
    for (double l : lambdas)
        if (!std::isfinite(l) || l == 0.0)
            throw Error(ErrorCode::range_violation, "eigenvalues must be finite and nonzero");
    Graphon g(std::move(lambdas), std::move(eigenfunctions), kind);
    g.validate();
    return g;
}

void Graphon::validate() const {
    const std::size_t L = rank();
    for (std::size_t k = 0; k < L; ++k) {
        for (std::size_t l = k; l < L; ++l) {
            const double expected = k == l ? 1.0 : 0.0;
            const double got = inner(eigenfunctions_[k], eigenfunctions_[l]);
            if (std::abs(got - expected) > kTolOrthonormal)
                throw Error(ErrorCode::orthonormality_violation,
                            "<f_" + std::to_string(k) + ", f_" + std::to_string(l) + "> = " + std::to_string(got));
        }
    }
    for (double l : lambdas_)
        if (std::abs(l) > 1.0 + kTolRange)
            throw Error(ErrorCode::range_violation, "eigenvalue magnitude exceeds 1: " + std::to_string(l));
    for (std::size_t i = 0; i < grid_size_; ++i) {
        for (std::size_t j = i; j < grid_size_; ++j) {
            const double v = kernel(i, j);
            if (v < -kTolRange || v > 1.0 + kTolRange)
                throw Error(ErrorCode::range_violation,
                            "reconstructed kernel leaves [0,1]: g = " + std::to_string(v));
        }
    }
}

std::vector<double> Graphon::project(std::span<const double> v) const {
    if (v.size() != grid_size_) throw Error(ErrorCode::size_mismatch, "grid function has the wrong length");
    std::vector<double> out(rank());
    for (std::size_t l = 0; l < rank(); ++l) out[l] = inner(v, eigenfunctions_[l]);
    return out;
}

double Graphon::kernel(std::size_t i, std::size_t j) const {
    double acc = 0.0;
    for (std::size_t l = 0; l < rank(); ++l) acc += lambdas_[l] * eigenfunctions_[l][i] * eigenfunctions_[l][j];
    return acc;
}

double Graphon::kernel_at(double alpha, double beta) const {
    return kernel(cell_index(alpha, grid_size_), cell_index(beta, grid_size_));
}

GridFunction Graphon::apply(std::span<const double> v) const {
    const auto coeffs = project(v);
    GridFunction out(grid_size_, 0.0);
    for (std::size_t l = 0; l < rank(); ++l) {
        const double w = lambdas_[l] * coeffs[l];
        for (std::size_t i = 0; i < grid_size_; ++i) out[i] += w * eigenfunctions_[l][i];
    }
    return out;
}

GridFunction Graphon::degree_profile() const {
    GridFunction out(grid_size_, 0.0);
    for (std::size_t l = 0; l < rank(); ++l) {
        const double w = lambdas_[l] * ones_projections_[l];
        for (std::size_t i = 0; i < grid_size_; ++i) out[i] += w * eigenfunctions_[l][i];
    }
    return out;
}

Graphon Graphon::canonicalize_signs() const {
    Graphon out = *this;
    for (std::size_t l = 0; l < rank(); ++l) {
        if (out.ones_projections_[l] >= 0.0) {
            for (double& x : out.eigenfunctions_[l]) x = -x;
            out.ones_projections_[l] = -out.ones_projections_[l];
        }
    }
    return out;
}

double Graphon::hilbert_schmidt_norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid_size_; ++i)
        for (std::size_t j = 0; j < grid_size_; ++j) {
            const double v = kernel(i, j);
            acc += v * v;
        }
    return std::sqrt(acc) / static_cast<double>(grid_size_);
}

} // namespace gmfg
