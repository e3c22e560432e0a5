#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gmfg/grid.hpp"
#include "gmfg/linalg.hpp"

namespace gmfg {

inline constexpr double kTolOrthonormal = 1e-8;
inline constexpr double kTolRange = 1e-8;
inline constexpr double kRankThreshold = 1e-12;

enum class EigenfunctionKind {
    smooth, // samples of twice-differentiable functions
    step,   // block-constant functions; derivatives are not meaningful
};

/// Finite-rank graphon g(a, b) = sum_l lambda_l f_l(a) f_l(b), with each f_l
/// stored as M midpoint samples. Immutable after construction.
class Graphon {
public:
    /// Step-function graphon of an n x n symmetric matrix with entries in [0,1].
    /// M must be a multiple of n.
    static Graphon from_step_matrix(const SquareMatrix& p, std::size_t M);

    /// Validates orthonormality (under midpoint quadrature) and that the
    /// reconstructed kernel stays inside [-tol, 1 + tol]. Eigenvalues at or
    /// above 1 are accepted here; A1 is enforced when solving.
    static Graphon from_eigenpairs(std::vector<double> lambdas,
                                   std::vector<GridFunction> eigenfunctions,
                                   EigenfunctionKind kind = EigenfunctionKind::smooth);

    std::size_t rank() const noexcept { return lambdas_.size(); }
    std::size_t grid_size() const noexcept { return grid_size_; }
    EigenfunctionKind kind() const noexcept { return kind_; }
    bool is_step_function() const noexcept { return kind_ == EigenfunctionKind::step; }

    const std::vector<double>& eigenvalues() const noexcept { return lambdas_; }
    std::span<const double> eigenfunction(std::size_t l) const { return eigenfunctions_.at(l); }
    double eigenfunction(std::size_t l, std::size_t i) const { return eigenfunctions_[l][i]; }

    /// <1, f_l> for every mode.
    const std::vector<double>& ones_projections() const noexcept { return ones_projections_; }

    /// <v, f_l> for every mode.
    std::vector<double> project(std::span<const double> v) const;

    /// Reconstructed kernel at grid cells (i, j).
    double kernel(std::size_t i, std::size_t j) const;
    /// Kernel at arbitrary points, step semantics (nearest cell).
    double kernel_at(double alpha, double beta) const;

    /// (g o v)(alpha_i) = sum_l lambda_l <v, f_l> f_l(alpha_i).
    GridFunction apply(std::span<const double> v) const;

    /// delta(alpha_i) = int g(alpha_i, beta) d beta.
    GridFunction degree_profile() const;

    /// Flips every f_l with <1, f_l> >= 0 so that all projections are <= 0.
    Graphon canonicalize_signs() const;

    /// sqrt(int int g^2), by quadrature on the reconstruction.
    double hilbert_schmidt_norm() const;

private:
    Graphon(std::vector<double> lambdas, std::vector<GridFunction> fs, EigenfunctionKind kind);

    void validate() const;

    std::size_t grid_size_ = 0;
    EigenfunctionKind kind_ = EigenfunctionKind::smooth;
    std::vector<double> lambdas_;
    std::vector<GridFunction> eigenfunctions_;
    std::vector<double> ones_projections_;
};

} // namespace gmfg
