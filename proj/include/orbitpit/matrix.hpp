#pragma once

#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitpit/errors.hpp"
#include "orbitpit/rational.hpp"

namespace orbitpit {

// Dense row-major matrix over any ring-like element type (Rational, affine
// forms, polynomials).  Element type must be default-constructible to its
// additive identity.
template <typename T>
class BasicMatrix {
public:
    BasicMatrix() : rows_(0), cols_(0) {}

    BasicMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    BasicMatrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (entries_.size() != rows_ * cols_) {
            throw dimension_error("matrix entry count " + std::to_string(entries_.size()) +
                                  " does not match " + std::to_string(rows_) + "x" +
                                  std::to_string(cols_));
        }
    }

    static BasicMatrix identity(std::size_t n)
        requires std::constructible_from<T, int>
    {
        BasicMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m.at(i, i) = T(1);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const T& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<T>& entries() const { return entries_; }

    BasicMatrix row(std::size_t i) const {
        BasicMatrix r(1, cols_);
        for (std::size_t j = 0; j < cols_; ++j) {
            r.at(0, j) = at(i, j);
        }
        return r;
    }

    BasicMatrix column(std::size_t j) const {
        BasicMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) {
            c.at(i, 0) = at(i, j);
        }
        return c;
    }

    T trace() const {
        if (rows_ != cols_) {
            throw dimension_error("trace of a non-square matrix");
        }
        if (rows_ == 0) {
            return T{};
        }
        T sum = at(0, 0);
        for (std::size_t i = 1; i < rows_; ++i) {
            sum = sum + at(i, i);
        }
        return sum;
    }

    friend BasicMatrix operator*(const BasicMatrix& a, const BasicMatrix& b) {
        if (a.cols_ != b.rows_) {
            throw dimension_error("matrix product shape mismatch: " + std::to_string(a.cols_) +
                                  " vs " + std::to_string(b.rows_));
        }
        if (a.cols_ == 0) {
            throw dimension_error("matrix product with empty inner dimension");
        }
        BasicMatrix result(a.rows_, b.cols_);
        // Seed each entry from the k = 0 term so element types with strict
        // arity checks never mix with default-constructed zeros.
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < b.cols_; ++j) {
                T acc = a.at(i, 0) * b.at(0, j);
                for (std::size_t k = 1; k < a.cols_; ++k) {
                    acc = acc + a.at(i, k) * b.at(k, j);
                }
                result.at(i, j) = std::move(acc);
            }
        }
        return result;
    }

    friend BasicMatrix operator+(const BasicMatrix& a, const BasicMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw dimension_error("matrix sum shape mismatch");
        }
        BasicMatrix result(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) {
            result.entries_[i] = a.entries_[i] + b.entries_[i];
        }
        return result;
    }

    friend BasicMatrix operator-(const BasicMatrix& a, const BasicMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) {
            throw dimension_error("matrix difference shape mismatch");
        }
        BasicMatrix result(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.entries_.size(); ++i) {
            result.entries_[i] = a.entries_[i] - b.entries_[i];
        }
        return result;
    }

    template <typename S>
    BasicMatrix scaled(const S& factor) const {
        BasicMatrix result(rows_, cols_);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            result.entries_[i] = entries_[i] * factor;
        }
        return result;
    }

    BasicMatrix power(std::size_t exponent) const {
        if (rows_ != cols_) {
            throw dimension_error("power of a non-square matrix");
        }
        if (exponent == 0) {
            throw parameter_error("matrix power with zero exponent is unsupported");
        }
        BasicMatrix result = *this;
        for (std::size_t i = 1; i < exponent; ++i) {
            result = result * *this;
        }
        return result;
    }

    bool operator==(const BasicMatrix& other) const = default;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<T> entries_;
};

using Matrix = BasicMatrix<Rational>;

// ---------------------------------------------------------------------------
// Exact linear algebra over Q.
// ---------------------------------------------------------------------------

// Fraction-free forward elimination (Bareiss two-term updates, first-nonzero-
// column pivoting with earliest-row tie break).  Returns the pivot
// (row, column) pairs; the matrix is left in row echelon form.
inline std::vector<std::pair<std::size_t, std::size_t>> echelon_in_place(Matrix& m) {
    std::vector<std::pair<std::size_t, std::size_t>> pivots;
    Rational previous_pivot = 1;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
        std::size_t found = pivot_row;
        while (found < m.rows() && m.at(found, col) == 0) {
            ++found;
        }
        if (found == m.rows()) {
            continue;
        }
        if (found != pivot_row) {
            for (std::size_t j = 0; j < m.cols(); ++j) {
                std::swap(m.at(pivot_row, j), m.at(found, j));
            }
        }
        const Rational pivot = m.at(pivot_row, col);
        for (std::size_t i = pivot_row + 1; i < m.rows(); ++i) {
            const Rational factor = m.at(i, col);
            for (std::size_t j = col; j < m.cols(); ++j) {
                m.at(i, j) = (m.at(i, j) * pivot - factor * m.at(pivot_row, j)) / previous_pivot;
            }
        }
        previous_pivot = pivot;
        pivots.emplace_back(pivot_row, col);
        ++pivot_row;
    }
    return pivots;
}

// Reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref_in_place(Matrix& m) {
    const auto pivots = echelon_in_place(m);
    for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
        const auto [row, col] = *it;
        const Rational pivot = m.at(row, col);
        for (std::size_t j = col; j < m.cols(); ++j) {
            m.at(row, j) /= pivot;
        }
        for (std::size_t i = 0; i < row; ++i) {
            const Rational factor = m.at(i, col);
            if (factor == 0) {
                continue;
            }
            for (std::size_t j = col; j < m.cols(); ++j) {
                m.at(i, j) -= factor * m.at(row, j);
            }
        }
    }
    std::vector<std::size_t> pivot_cols;
    pivot_cols.reserve(pivots.size());
    for (const auto& [row, col] : pivots) {
        pivot_cols.push_back(col);
    }
    return pivot_cols;
}

inline std::size_t rank(Matrix m) { return echelon_in_place(m).size(); }

// Basis of the right nullspace {v : Mv = 0}, derived from the reduced
// echelon form: one vector per free column, in column order.  Empty iff the
// nullspace is trivial.
inline std::vector<std::vector<Rational>> nullspace_basis(Matrix m) {
    const std::vector<std::size_t> pivot_cols = rref_in_place(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (std::size_t col : pivot_cols) {
        is_pivot[col] = true;
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
        if (is_pivot[free_col]) {
            continue;
        }
        std::vector<Rational> v(m.cols());
        v[free_col] = 1;
        for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
            v[pivot_cols[k]] = -m.at(k, free_col);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// Coefficients [1, c_1, ..., c_n] of det(tI - A) = t^n + c_1 t^(n-1) + ... + c_n,
// by the Berkowitz recurrence: only ring operations, no divisions.
inline std::vector<Rational> charpoly_berkowitz(const Matrix& a) {
    if (a.rows() != a.cols()) {
        throw dimension_error("characteristic polynomial of a non-square matrix");
    }
    const std::size_t n = a.rows();
    std::vector<Rational> coeffs{Rational(1)};
    for (std::size_t size = 1; size <= n; ++size) {
        // Principal submatrix of order `size`, split off its first row/column.
        const std::size_t base = n - size;
        // Toeplitz column: [1, -a_00, -(R C), -(R M C), ...] for the split
        // A_size = [[a_00, R], [C, M]].
        std::vector<Rational> toeplitz(size + 1);
        toeplitz[0] = 1;
        toeplitz[1] = -a.at(base, base);
        std::vector<Rational> w(size - 1);
        for (std::size_t i = 0; i < size - 1; ++i) {
            w[i] = a.at(base + 1 + i, base);
        }
        for (std::size_t k = 2; k <= size; ++k) {
            Rational dot = 0;
            for (std::size_t i = 0; i < size - 1; ++i) {
                dot += a.at(base, base + 1 + i) * w[i];
            }
            toeplitz[k] = -dot;
            if (k < size) {
                std::vector<Rational> next(size - 1);
                for (std::size_t i = 0; i < size - 1; ++i) {
                    Rational sum = 0;
                    for (std::size_t j = 0; j < size - 1; ++j) {
                        sum += a.at(base + 1 + i, base + 1 + j) * w[j];
                    }
                    next[i] = sum;
                }
                w = std::move(next);
            }
        }
        std::vector<Rational> next_coeffs(size + 1);
        for (std::size_t i = 0; i <= size; ++i) {
            Rational sum = 0;
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                if (i >= j && i - j <= size) {
                    sum += toeplitz[i - j] * coeffs[j];
                }
            }
            next_coeffs[i] = sum;
        }
        coeffs = std::move(next_coeffs);
    }
    return coeffs;
}

inline Rational det_division_free(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw dimension_error("determinant of a non-square matrix");
    }
    if (m.rows() == 0) {
        return 1;
    }
    const std::vector<Rational> coeffs = charpoly_berkowitz(m);
    const Rational constant_term = coeffs.back();
    return m.rows() % 2 == 0 ? constant_term : -constant_term;
}

// adj(A) via Cayley-Hamilton: (-1)^(n-1) (A^(n-1) + c_1 A^(n-2) + ... + c_(n-1) I).
inline Matrix adjugate(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw dimension_error("adjugate of a non-square matrix");
    }
    const std::size_t n = m.rows();
    if (n == 0) {
        throw dimension_error("adjugate of an empty matrix");
    }
    const std::vector<Rational> coeffs = charpoly_berkowitz(m);
    Matrix sum(n, n);
    Matrix power = Matrix::identity(n);
    // Horner-free accumulation: coefficient c_(n-1-k) multiplies A^k.
    for (std::size_t k = 0; k < n; ++k) {
        sum = sum + power.scaled(coeffs[n - 1 - k]);
        if (k + 1 < n) {
            power = power * m;
        }
    }
    return n % 2 == 1 ? sum : sum.scaled(Rational(-1));
}

inline std::optional<Matrix> inverse(const Matrix& m) {
    const Rational det = det_division_free(m);
    if (det == 0) {
        return std::nullopt;
    }
    return adjugate(m).scaled(Rational(1) / det);
}

}  // namespace orbitpit
