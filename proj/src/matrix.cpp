#include "hosm/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace hosm {

namespace {

std::string dim_string(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void check_finite(const Matrix& m, const char* context) {
    if (!m.all_finite()) {
        throw Error(std::string(context) + ": non-finite entry");
    }
}

} // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, 0.0) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("Matrix: " + std::to_string(entries_.size()) +
                             " entries for a " + std::to_string(rows_) + "x" +
                             std::to_string(cols_) + " matrix");
    }
    check_finite(*this, "Matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("Matrix: ragged initializer (row of length " +
                                 std::to_string(r.size()) + ", expected " +
                                 std::to_string(cols_) + ")");
        }
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    check_finite(*this, "Matrix");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }

Matrix Matrix::column(std::span<const double> values) {
    return Matrix(values.size(), 1, std::vector<double>(values.begin(), values.end()));
}

Matrix Matrix::row(std::span<const double> values) {
    return Matrix(1, values.size(), std::vector<double>(values.begin(), values.end()));
}

Matrix& Matrix::operator+=(const Matrix& other) {
    require_dims(rows_ == other.rows_ && cols_ == other.cols_, "operator+", *this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    require_dims(rows_ == other.rows_ && cols_ == other.cols_, "operator-", *this, other);
    for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
    return *this;
}

Matrix& Matrix::operator*=(double scalar) {
    for (double& e : entries_) e *= scalar;
    return *this;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

double Matrix::frobenius_norm() const {
    double s = 0.0;
    for (double e : entries_) s += e * e;
    return std::sqrt(s);
}

double Matrix::norm1() const {
    double best = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) {
        double col_sum = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) col_sum += std::abs((*this)(i, j));
        best = std::max(best, col_sum);
    }
    return best;
}

double Matrix::max_abs() const {
    double best = 0.0;
    for (double e : entries_) best = std::max(best, std::abs(e));
    return best;
}

bool Matrix::all_finite() const noexcept {
    for (double e : entries_)
        if (!std::isfinite(e)) return false;
    return true;
}

Matrix Matrix::extract_row(std::size_t i) const {
    Matrix r(1, cols_);
    for (std::size_t j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
    return r;
}

Matrix Matrix::extract_col(std::size_t j) const {
    Matrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) {
        throw DimensionError("block: range [" + std::to_string(r0) + "+" + std::to_string(nr) +
                             ", " + std::to_string(c0) + "+" + std::to_string(nc) +
                             ") outside " + dim_string(*this));
    }
    Matrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& value) {
    if (r0 + value.rows() > rows_ || c0 + value.cols() > cols_) {
        throw DimensionError("set_block: " + dim_string(value) + " at (" + std::to_string(r0) +
                             ", " + std::to_string(c0) + ") outside " + dim_string(*this));
    }
    for (std::size_t i = 0; i < value.rows(); ++i)
        for (std::size_t j = 0; j < value.cols(); ++j) (*this)(r0 + i, c0 + j) = value(i, j);
}

Matrix operator+(Matrix lhs, const Matrix& rhs) {
    lhs += rhs;
    return lhs;
}

Matrix operator-(Matrix lhs, const Matrix& rhs) {
    lhs -= rhs;
    return lhs;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
    require_dims(lhs.cols() == rhs.rows(), "operator*", lhs, rhs);
    Matrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const double a = lhs(i, k);
            if (a == 0.0) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    }
    return out;
}

Matrix operator*(double scalar, Matrix m) {
    m *= scalar;
    return m;
}

Matrix operator*(Matrix m, double scalar) {
    m *= scalar;
    return m;
}

Matrix operator-(Matrix m) {
    m *= -1.0;
    return m;
}

void require_dims(bool ok, const std::string& context, const Matrix& a, const Matrix& b) {
    if (!ok) {
        throw DimensionError(context + ": incompatible dimensions " + dim_string(a) + " and " +
                             dim_string(b));
    }
}

// ---------------------------------------------------------------------------
// LU factorization
// ---------------------------------------------------------------------------

LuFactorization::LuFactorization(const Matrix& m) : lu_(m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("LuFactorization: matrix is " + dim_string(m) + ", expected square");
    }
    check_finite(m, "LuFactorization");
    norm1_ = m.norm1();

    const std::size_t n = lu_.rows();
    const double pivot_floor = 1e-12 * m.max_abs();
    perm_.resize(n);
    for (std::size_t i = 0; i < n; ++i) perm_[i] = i;

    for (std::size_t k = 0; k < n; ++k) {
        // Partial pivoting: largest |entry| in column k at or below the diagonal.
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        if (best <= pivot_floor) {
            throw SingularMatrixError(
                "solve_linear: numerically singular matrix (pivot " + std::to_string(best) +
                    " at column " + std::to_string(k) + ")",
                k);
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
        }
        const double inv_pivot = 1.0 / lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = lu_(i, k) * inv_pivot;
            lu_(i, k) = f;
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
        }
    }
}

void LuFactorization::solve_in_place(std::span<double> x) const {
    const std::size_t n = size();
    // Forward substitution with unit-lower L.
    for (std::size_t i = 1; i < n; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
        x[i] = s;
    }
    // Back substitution with U.
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
        x[ii] = s / lu_(ii, ii);
    }
}

void LuFactorization::solve_transposed_in_place(std::span<double> x) const {
    const std::size_t n = size();
    // M^T = (P^T L U)^T = U^T L^T P, so solve U^T y = x, L^T z = y, then undo P.
    for (std::size_t i = 0; i < n; ++i) {
        double s = x[i];
        for (std::size_t j = 0; j < i; ++j) s -= lu_(j, i) * x[j];
        x[i] = s / lu_(i, i);
    }
    for (std::size_t ii = n; ii-- > 0;) {
        double s = x[ii];
        for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(j, ii) * x[j];
        x[ii] = s;
    }
}

Matrix LuFactorization::solve(const Matrix& rhs) const {
    const std::size_t n = size();
    require_dims(rhs.rows() == n, "solve", lu_, rhs);
    check_finite(rhs, "solve");
    Matrix x(n, rhs.cols());
    std::vector<double> col(n);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(perm_[i], j);
        solve_in_place(col);
        for (std::size_t i = 0; i < n; ++i) x(i, j) = col[i];
    }
    return x;
}

Matrix LuFactorization::solve_transposed(const Matrix& rhs) const {
    const std::size_t n = size();
    require_dims(rhs.rows() == n, "solve_transposed", lu_, rhs);
    check_finite(rhs, "solve_transposed");
    Matrix x(n, rhs.cols());
    std::vector<double> col(n);
    for (std::size_t j = 0; j < rhs.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) col[i] = rhs(i, j);
        solve_transposed_in_place(col);
        for (std::size_t i = 0; i < n; ++i) x(perm_[i], j) = col[i];
    }
    return x;
}

double LuFactorization::condition_estimate() const {
    const std::size_t n = size();
    if (n == 0) return 1.0;

    // Hager's 1-norm estimator for ||M^-1||_1.
    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> z(n), q(n);
    double est = 0.0;
    for (int iter = 0; iter < 5; ++iter) {
        for (std::size_t i = 0; i < n; ++i) z[i] = x[perm_[i]];
        solve_in_place(z);
        double z1 = 0.0;
        for (double v : z) z1 += std::abs(v);
        est = std::max(est, z1);

        for (std::size_t i = 0; i < n; ++i) q[i] = (z[i] >= 0.0) ? 1.0 : -1.0;
        std::vector<double> qt = q;
        solve_transposed_in_place(qt);
        for (std::size_t i = 0; i < n; ++i) q[perm_[i]] = qt[i];

        std::size_t jmax = 0;
        double qmax = 0.0, qx = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(q[i]) > qmax) {
                qmax = std::abs(q[i]);
                jmax = i;
            }
            qx += q[i] * x[i];
        }
        if (qmax <= qx + 1e-15) break;
        std::fill(x.begin(), x.end(), 0.0);
        x[jmax] = 1.0;
    }
    return norm1_ * est;
}

LinearSolveResult solve_linear(const Matrix& m, const Matrix& rhs) {
    LuFactorization lu(m);
    return LinearSolveResult{lu.solve(rhs), lu.condition_estimate()};
}

// ---------------------------------------------------------------------------
// Null space by Householder QR
// ---------------------------------------------------------------------------

Matrix null_space_basis(const Matrix& m) {
    const std::size_t r = m.rows();
    const std::size_t n = m.cols();
    if (r > n) {
        throw DimensionError("null_space_basis: " + dim_string(m) + " has more rows than columns");
    }

    // QR of m^T (n x r): Q's last n-r columns span null(m).
    Matrix a = m.transpose();
    Matrix q = Matrix::identity(n);
    std::vector<double> v(n);

    for (std::size_t k = 0; k < r; ++k) {
        double norm = 0.0;
        for (std::size_t i = k; i < n; ++i) norm += a(i, k) * a(i, k);
        norm = std::sqrt(norm);
        if (norm <= 1e-13 * std::max(1.0, m.max_abs())) {
            throw NumericalError("null_space_basis: input rows are numerically rank-deficient");
        }
        const double alpha = (a(k, k) >= 0.0) ? -norm : norm;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            v[i] = a(i, k);
            if (i == k) v[i] -= alpha;
            vnorm2 += v[i] * v[i];
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        for (std::size_t j = k; j < r; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * a(i, j);
            dot *= beta;
            for (std::size_t i = k; i < n; ++i) a(i, j) -= dot * v[i];
        }
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t i = k; i < n; ++i) dot += v[i] * q(i, j);
            dot *= beta;
            for (std::size_t i = k; i < n; ++i) q(i, j) -= dot * v[i];
        }
    }

    // q accumulated the reflectors applied to I, i.e. Q^T; its last n-r rows
    // span the orthogonal complement of range(m^T) = null(m).
    Matrix basis(n - r, n);
    for (std::size_t i = 0; i < n - r; ++i)
        for (std::size_t j = 0; j < n; ++j) basis(i, j) = q(r + i, j);
    return basis;
}

} // namespace hosm
