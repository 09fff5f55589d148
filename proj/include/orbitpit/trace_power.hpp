#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitpit/affine.hpp"
#include "orbitpit/branching.hpp"
#include "orbitpit/errors.hpp"
#include "orbitpit/interpolate.hpp"
#include "orbitpit/matrix.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

// Tr(A(x)^d) for a square matrix A of affine forms.
class TracePower {
public:
    TracePower(std::size_t nvars, std::size_t exponent, AffineMatrix matrix)
        : nvars_(nvars), exponent_(exponent), matrix_(std::move(matrix)) {
        if (matrix_.rows() != matrix_.cols()) {
            throw shape_error("trace-of-power matrix must be square");
        }
        if (matrix_.rows() == 0) {
            throw shape_error("trace-of-power matrix must be nonempty");
        }
        if (exponent_ == 0) {
            throw parameter_error("trace-of-power exponent must be positive");
        }
        for (const AffineForm& entry : matrix_.entries()) {
            if (!entry.linear().empty() && entry.max_variable_index() >= nvars_) {
                throw dimension_error("matrix entry uses a variable beyond the declared arity");
            }
        }
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t exponent() const { return exponent_; }
    std::size_t width() const { return matrix_.rows(); }
    const AffineMatrix& matrix() const { return matrix_; }

    std::size_t size_accounting() const { return nvars_ * width() * exponent_; }

    Rational eval(std::span<const Rational> point) const {
        if (point.size() != nvars_) {
            throw dimension_error("evaluation point has arity " + std::to_string(point.size()) +
                                  ", trace power has " + std::to_string(nvars_));
        }
        Matrix values(width(), width());
        for (std::size_t i = 0; i < width(); ++i) {
            for (std::size_t j = 0; j < width(); ++j) {
                values.at(i, j) = matrix_.at(i, j).eval(point);
            }
        }
        return values.power(exponent_).trace();
    }

    SparsePoly expand() const {
        PolyMatrix symbolic = detail::affine_to_poly_matrix(matrix_, nvars_);
        return symbolic.power(exponent_).trace();
    }

private:
    std::size_t nvars_;
    std::size_t exponent_;
    AffineMatrix matrix_;
};

// Block matrix with block (i, i+1 mod d) = blocks[i]: its d-th power has
// trace d * Tr(M_1 ... M_d).
template <typename T>
BasicMatrix<T> cyclic_block_embed(const std::vector<BasicMatrix<T>>& blocks) {
    if (blocks.empty()) {
        throw shape_error("cyclic embedding needs at least one block");
    }
    const std::size_t n = blocks.front().rows();
    for (const BasicMatrix<T>& block : blocks) {
        if (block.rows() != n || block.cols() != n) {
            throw shape_error("cyclic embedding needs equal square blocks");
        }
    }
    const std::size_t d = blocks.size();
    BasicMatrix<T> result(n * d, n * d);
    for (std::size_t b = 0; b < d; ++b) {
        const std::size_t target = (b + 1) % d;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                result.at(b * n + i, target * n + j) = blocks[b].at(i, j);
            }
        }
    }
    return result;
}

// ABP -> trace of matrix power: square-pad the layers, divide the first by
// d', extend with identity layers, and place everything on the cyclic block
// superdiagonal.  Width grows to w*d'.
inline TracePower abp_to_trace_power(const Abp& p, std::size_t d_prime) {
    if (d_prime < p.depth()) {
        throw parameter_error("trace-power exponent " + std::to_string(d_prime) +
                              " is below the ABP depth " + std::to_string(p.depth()));
    }
    std::vector<AffineMatrix> blocks = pad_to_square(p);
    const std::size_t w = blocks.front().rows();
    blocks.front() = blocks.front().scaled(Rational(1) / Rational(d_prime));
    for (std::size_t i = p.depth(); i < d_prime; ++i) {
        blocks.push_back(AffineMatrix::identity(w));
    }
    return TracePower(p.nvars(), d_prime, cyclic_block_embed(blocks));
}

inline TracePower abp_to_trace_power(const Abp& p) { return abp_to_trace_power(p, p.depth()); }

// Trace of matrix power -> ABP: each diagonal entry of A^d is a width-w
// depth-d program; the trace is their merged sum, width <= w^2.
inline Abp trace_power_to_abp(const TracePower& t) {
    const AffineMatrix& a = t.matrix();
    const std::size_t w = t.width();
    const std::size_t d = t.exponent();
    std::vector<Abp> diagonal_programs;
    diagonal_programs.reserve(w);
    for (std::size_t i = 0; i < w; ++i) {
        std::vector<AffineMatrix> layers;
        if (d == 1) {
            AffineMatrix only(1, 1);
            only.at(0, 0) = a.at(i, i);
            layers.push_back(std::move(only));
        } else {
            layers.push_back(a.row(i));
            for (std::size_t k = 2; k < d; ++k) {
                layers.push_back(a);
            }
            layers.push_back(a.column(i));
        }
        diagonal_programs.emplace_back(t.nvars(), std::move(layers));
    }
    Abp sum = diagonal_programs.front();
    for (std::size_t i = 1; i < diagonal_programs.size(); ++i) {
        sum = abp_add(sum, diagonal_programs[i]);
    }
    return sum;
}

// Value of the homogenized trace Tr((A_0 z + sum_i A_i x_i)^d) at (alpha,
// beta), computed only through evaluations of the affine trace:
// beta != 0 scales a single query; beta = 0 interpolates the top coefficient
// of Tr(A(y alpha)^d) from d+1 queries.
inline Rational homogenized_trace_query(const TracePower& t, std::span<const Rational> alpha,
                                        const Rational& beta) {
    if (alpha.size() != t.nvars()) {
        throw dimension_error("query point has arity " + std::to_string(alpha.size()) +
                              ", trace power has " + std::to_string(t.nvars()));
    }
    const std::size_t d = t.exponent();
    if (beta != 0) {
        std::vector<Rational> scaled(alpha.begin(), alpha.end());
        for (Rational& coordinate : scaled) {
            coordinate /= beta;
        }
        return pow_rational(beta, d) * t.eval(scaled);
    }
    std::vector<std::pair<Rational, Rational>> evals;
    evals.reserve(d + 1);
    for (std::size_t k = 0; k <= d; ++k) {
        const Rational y(k);
        std::vector<Rational> point(alpha.begin(), alpha.end());
        for (Rational& coordinate : point) {
            coordinate *= y;
        }
        evals.emplace_back(y, t.eval(point));
    }
    return interpolate_coefficient(evals, d);
}

}  // namespace orbitpit
