#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "hosm/errors.hpp"

namespace hosm {

/// Dense real matrix, row-major storage. Sized for small state dimensions
/// (n <= ~20); every operation is a plain O(n^3)-or-better loop.
///
/// Entries must be finite; constructors taking external data reject NaN/Inf.
class Matrix {
public:
    Matrix() = default;

    /// rows x cols matrix of zeros.
    Matrix(std::size_t rows, std::size_t cols);

    /// From row-major entries; entries.size() must equal rows*cols.
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

    /// From nested initializer list, e.g. Matrix{{0, 1}, {-1, 0}}.
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix zeros(std::size_t rows, std::size_t cols);
    /// n x 1 column from a flat list.
    static Matrix column(std::span<const double> values);
    /// 1 x n row from a flat list.
    static Matrix row(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const double> entries() const noexcept { return entries_; }
    std::span<double> entries() noexcept { return entries_; }
    /// Row-major pointer to row i.
    const double* row_data(std::size_t i) const { return entries_.data() + i * cols_; }

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double scalar);

    Matrix transpose() const;

    /// Frobenius norm.
    double frobenius_norm() const;
    /// Maximum absolute column sum.
    double norm1() const;
    double max_abs() const;

    bool all_finite() const noexcept;

    Matrix extract_row(std::size_t i) const;
    Matrix extract_col(std::size_t j) const;
    /// Copy of the block with row range [r0, r0+nr) and column range [c0, c0+nc).
    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& value);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> entries_;
};

Matrix operator+(Matrix lhs, const Matrix& rhs);
Matrix operator-(Matrix lhs, const Matrix& rhs);
Matrix operator*(const Matrix& lhs, const Matrix& rhs);
Matrix operator*(double scalar, Matrix m);
Matrix operator*(Matrix m, double scalar);
Matrix operator-(Matrix m);

/// Throws DimensionError naming the offending dimensions unless the condition holds.
void require_dims(bool ok, const std::string& context, const Matrix& a, const Matrix& b);

/// LU factorization with partial pivoting of a square matrix.
///
/// Throws SingularMatrixError (carrying the pivot column index) when a pivot
/// falls below 1e-12 * max|M|.
class LuFactorization {
public:
    explicit LuFactorization(const Matrix& m);

    std::size_t size() const noexcept { return lu_.rows(); }

    /// Solves M X = rhs (rhs may have several columns).
    Matrix solve(const Matrix& rhs) const;
    /// Solves M^T X = rhs.
    Matrix solve_transposed(const Matrix& rhs) const;

    /// 1-norm condition estimate ||M||_1 * est(||M^-1||_1), Hager's method.
    double condition_estimate() const;

private:
    Matrix lu_;                   // packed unit-lower L and upper U
    std::vector<std::size_t> perm_;
    double norm1_ = 0.0;

    void solve_in_place(std::span<double> x) const;
    void solve_transposed_in_place(std::span<double> x) const;
};

struct LinearSolveResult {
    Matrix x;
    double condition; // 1-norm condition estimate of the coefficient matrix
};

/// Solves M X = rhs by LU with partial pivoting; no explicit inverse is formed.
LinearSolveResult solve_linear(const Matrix& m, const Matrix& rhs);

/// Orthonormal basis of the null space of `m` (rows of the result span
/// {v : m v = 0}), computed by Householder QR of m^T. Requires m to have
/// full row rank.
Matrix null_space_basis(const Matrix& m);

} // namespace hosm
