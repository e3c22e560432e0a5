#pragma once

#include <cstddef>
#include <vector>

namespace gmfg {

/// Dense row-major square matrix.
class SquareMatrix {
public:
    SquareMatrix() = default;
    explicit SquareMatrix(std::size_t n, double fill = 0.0) : n_(n), data_(n * n, fill) {}
    SquareMatrix(std::size_t n, std::vector<double> row_major);

    static SquareMatrix identity(std::size_t n);
    static SquareMatrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t size() const noexcept { return n_; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const std::vector<double>& data() const noexcept { return data_; }

    double max_asymmetry() const;

private:
    std::size_t n_ = 0;
    std::vector<double> data_;
};

struct SymmetricEigen {
    std::vector<double> values;               // descending
    std::vector<std::vector<double>> vectors; // unit vectors, vectors[k] pairs with values[k]
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix. Output is sorted
/// by descending eigenvalue and each eigenvector's first component with
/// magnitude above 1e-12 is made positive, so results are reproducible.
SymmetricEigen jacobi_eigen(const SquareMatrix& a, double tol = 1e-15, int max_sweeps = 100);

} // namespace gmfg
