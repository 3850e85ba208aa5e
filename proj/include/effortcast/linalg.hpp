#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace effortcast {

/// Dense row-major matrix, just enough for normal equations and design
/// matrices.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

    const std::vector<double>& data() const { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Solves A x = b by Gaussian elimination with partial pivoting. Throws
/// SingularSystemError on a vanishing pivot. A and b are consumed.
std::vector<double> solve_linear(Matrix a, std::vector<double> b);

/// Gram matrix XᵀX (cols × cols).
Matrix gram(const Matrix& x);

/// Xᵀ y.
std::vector<double> mul_transpose(const Matrix& x, std::span<const double> y);

/// X w.
std::vector<double> mul(const Matrix& x, std::span<const double> w);

double dot(std::span<const double> a, std::span<const double> b);

}  // namespace effortcast
