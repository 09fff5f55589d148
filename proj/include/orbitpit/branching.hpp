#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitpit/affine.hpp"
#include "orbitpit/errors.hpp"
#include "orbitpit/matrix.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

using AffineMatrix = BasicMatrix<AffineForm>;
using PolyMatrix = BasicMatrix<SparsePoly>;

namespace detail {

inline void check_layer_chain(std::size_t depth, std::size_t first_rows, std::size_t last_cols) {
    if (depth == 0) {
        throw shape_error("branching program needs at least one layer");
    }
    if (first_rows != 1) {
        throw shape_error("first layer must have a single source row");
    }
    if (last_cols != 1) {
        throw shape_error("last layer must have a single sink column");
    }
}

template <typename MatrixType>
void check_adjacent(const std::vector<MatrixType>& layers) {
    for (std::size_t i = 1; i < layers.size(); ++i) {
        if (layers[i].rows() != layers[i - 1].cols()) {
            throw shape_error("layer " + std::to_string(i) + " has " +
                              std::to_string(layers[i].rows()) + " rows, previous layer has " +
                              std::to_string(layers[i - 1].cols()) + " columns");
        }
    }
}

template <typename MatrixType>
std::size_t chain_width(const std::vector<MatrixType>& layers) {
    std::size_t width = 1;
    for (const MatrixType& layer : layers) {
        width = std::max(width, layer.rows());
        width = std::max(width, layer.cols());
    }
    return width;
}

}  // namespace detail

// Algebraic branching program in source/sink matrix form: layer i is the
// adjacency matrix between vertex layers V_(i-1) and V_i, entries affine.
// The computed polynomial is the 1x1 product of the layers.
class Abp {
public:
    Abp(std::size_t nvars, std::vector<AffineMatrix> layers)
        : nvars_(nvars), layers_(std::move(layers)) {
        detail::check_layer_chain(layers_.size(), layers_.front().rows(), layers_.back().cols());
        detail::check_adjacent(layers_);
        for (const AffineMatrix& layer : layers_) {
            for (const AffineForm& entry : layer.entries()) {
                if (!entry.linear().empty() && entry.max_variable_index() >= nvars_) {
                    throw dimension_error("layer entry uses a variable beyond the declared arity");
                }
            }
        }
    }

    std::size_t nvars() const { return nvars_; }
    std::size_t depth() const { return layers_.size(); }
    const std::vector<AffineMatrix>& layers() const { return layers_; }
    const AffineMatrix& layer(std::size_t i) const { return layers_[i]; }

    std::size_t width() const { return detail::chain_width(layers_); }

    // n*w*d size accounting.
    std::size_t size_accounting() const { return nvars_ * width() * depth(); }

    Rational eval(std::span<const Rational> point) const {
        if (point.size() != nvars_) {
            throw dimension_error("evaluation point has arity " + std::to_string(point.size()) +
                                  ", program has " + std::to_string(nvars_));
        }
        Matrix running(1, 1);
        bool first = true;
        for (const AffineMatrix& layer : layers_) {
            Matrix values(layer.rows(), layer.cols());
            for (std::size_t i = 0; i < layer.rows(); ++i) {
                for (std::size_t j = 0; j < layer.cols(); ++j) {
                    values.at(i, j) = layer.at(i, j).eval(point);
                }
            }
            running = first ? values : running * values;
            first = false;
        }
        return running.at(0, 0);
    }

private:
    std::size_t nvars_;
    std::vector<AffineMatrix> layers_;
};

// Read-once oblivious ABP: depth equals the variable count, and the entries
// of layer i are univariate in x_i with degree < r.
class Roabp {
public:
    Roabp(std::size_t degree_bound, std::vector<PolyMatrix> layers)
        : degree_bound_(degree_bound), layers_(std::move(layers)) {
        detail::check_layer_chain(layers_.size(), layers_.front().rows(), layers_.back().cols());
        detail::check_adjacent(layers_);
        if (degree_bound_ == 0) {
            throw parameter_error("ROABP degree bound must be positive");
        }
        const std::size_t d = layers_.size();
        for (std::size_t i = 0; i < d; ++i) {
            for (const SparsePoly& entry : layers_[i].entries()) {
                if (entry.nvars() != d) {
                    throw dimension_error("ROABP entries must have arity equal to the depth");
                }
                for (const auto& [monomial, coefficient] : entry.terms()) {
                    for (const auto& [index, exp] : monomial.exponents()) {
                        if (index != i) {
                            throw shape_error("layer " + std::to_string(i) +
                                              " entry reads variable " + std::to_string(index));
                        }
                        if (exp >= degree_bound_) {
                            throw shape_error("layer " + std::to_string(i) +
                                              " entry exceeds degree bound");
                        }
                    }
                }
            }
        }
    }

    std::size_t nvars() const { return layers_.size(); }
    std::size_t depth() const { return layers_.size(); }
    std::size_t degree_bound() const { return degree_bound_; }
    const std::vector<PolyMatrix>& layers() const { return layers_; }
    const PolyMatrix& layer(std::size_t i) const { return layers_[i]; }

    std::size_t width() const { return detail::chain_width(layers_); }

    std::size_t size_accounting() const { return depth() * width() * degree_bound_; }

    // Scalar matrix of x_i^j coefficients of layer i.
    Matrix coeff_matrix(std::size_t layer_index, std::size_t j) const {
        const PolyMatrix& layer = layers_[layer_index];
        Matrix coeffs(layer.rows(), layer.cols());
        const Monomial power = Monomial::variable(layer_index, j);
        for (std::size_t a = 0; a < layer.rows(); ++a) {
            for (std::size_t b = 0; b < layer.cols(); ++b) {
                coeffs.at(a, b) = layer.at(a, b).coeff(power);
            }
        }
        return coeffs;
    }

    Rational eval(std::span<const Rational> point) const {
        if (point.size() != nvars()) {
            throw dimension_error("evaluation point has arity " + std::to_string(point.size()) +
                                  ", program has " + std::to_string(nvars()));
        }
        Matrix running(1, 1);
        bool first = true;
        for (const PolyMatrix& layer : layers_) {
            Matrix values(layer.rows(), layer.cols());
            for (std::size_t i = 0; i < layer.rows(); ++i) {
                for (std::size_t j = 0; j < layer.cols(); ++j) {
                    values.at(i, j) = layer.at(i, j).eval(point);
                }
            }
            running = first ? values : running * values;
            first = false;
        }
        return running.at(0, 0);
    }

private:
    std::size_t degree_bound_;
    std::vector<PolyMatrix> layers_;
};

inline Rational eval_abp(const Abp& p, std::span<const Rational> point) { return p.eval(point); }
inline Rational eval_roabp(const Roabp& p, std::span<const Rational> point) {
    return p.eval(point);
}

namespace detail {

inline PolyMatrix affine_to_poly_matrix(const AffineMatrix& layer, std::size_t nvars) {
    PolyMatrix result(layer.rows(), layer.cols());
    for (std::size_t i = 0; i < layer.rows(); ++i) {
        for (std::size_t j = 0; j < layer.cols(); ++j) {
            result.at(i, j) = layer.at(i, j).to_poly(nvars);
        }
    }
    return result;
}

template <typename MatrixType>
MatrixType chain_product(const std::vector<MatrixType>& layers) {
    MatrixType running = layers.front();
    for (std::size_t i = 1; i < layers.size(); ++i) {
        running = running * layers[i];
    }
    return running;
}

}  // namespace detail

// Symbolic product of the layer matrices: the exact computed polynomial.
inline SparsePoly expand_abp(const Abp& p) {
    std::vector<PolyMatrix> layers;
    layers.reserve(p.depth());
    for (const AffineMatrix& layer : p.layers()) {
        layers.push_back(detail::affine_to_poly_matrix(layer, p.nvars()));
    }
    return detail::chain_product(layers).at(0, 0);
}

inline SparsePoly expand_roabp(const Roabp& p) {
    return detail::chain_product(p.layers()).at(0, 0);
}

// Square w x w padding of the layer list: the product of the result has the
// computed polynomial at entry (0,0) and zeros elsewhere.
template <typename MatrixType>
std::vector<MatrixType> pad_layers_to_square(const std::vector<MatrixType>& layers) {
    const std::size_t w = detail::chain_width(layers);
    std::vector<MatrixType> padded;
    padded.reserve(layers.size());
    for (const MatrixType& layer : layers) {
        MatrixType square(w, w);
        for (std::size_t i = 0; i < layer.rows(); ++i) {
            for (std::size_t j = 0; j < layer.cols(); ++j) {
                square.at(i, j) = layer.at(i, j);
            }
        }
        padded.push_back(std::move(square));
    }
    return padded;
}

inline std::vector<AffineMatrix> pad_to_square(const Abp& p) {
    return pad_layers_to_square(p.layers());
}

namespace detail {

inline void normalize_entry_arity(PolyMatrix& m, std::size_t nvars) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            m.at(i, j) = m.at(i, j).with_arity(nvars);
        }
    }
}

}  // namespace detail

inline std::vector<PolyMatrix> pad_to_square(const Roabp& p) {
    std::vector<PolyMatrix> padded = pad_layers_to_square(p.layers());
    for (PolyMatrix& layer : padded) {
        detail::normalize_entry_arity(layer, p.nvars());
    }
    return padded;
}

// Converse of the square padding: from square matrices whose product carries
// f at (0,0), build the ABP computing f (row 0 of the first layer, column 0
// of the last).
inline Abp abp_from_square_matrices(std::size_t nvars, const std::vector<AffineMatrix>& mats) {
    if (mats.empty()) {
        throw shape_error("need at least one matrix");
    }
    std::vector<AffineMatrix> layers;
    layers.reserve(mats.size());
    if (mats.size() == 1) {
        AffineMatrix only(1, 1);
        only.at(0, 0) = mats.front().at(0, 0);
        layers.push_back(std::move(only));
    } else {
        layers.push_back(mats.front().row(0));
        for (std::size_t i = 1; i + 1 < mats.size(); ++i) {
            layers.push_back(mats[i]);
        }
        layers.push_back(mats.back().column(0));
    }
    return Abp(nvars, std::move(layers));
}

namespace detail {

// Merged-source/merged-sink sum construction, shared by ABPs and ROABPs.
template <typename MatrixType>
std::vector<MatrixType> add_layer_lists(const std::vector<MatrixType>& a,
                                        const std::vector<MatrixType>& b) {
    const std::size_t d = a.size();
    std::vector<MatrixType> layers;
    layers.reserve(d);
    if (d == 1) {
        MatrixType merged(1, 1);
        merged.at(0, 0) = a[0].at(0, 0) + b[0].at(0, 0);
        layers.push_back(std::move(merged));
        return layers;
    }
    for (std::size_t i = 0; i < d; ++i) {
        const MatrixType& left = a[i];
        const MatrixType& right = b[i];
        const std::size_t rows = i == 0 ? 1 : left.rows() + right.rows();
        const std::size_t cols = i == d - 1 ? 1 : left.cols() + right.cols();
        MatrixType merged(rows, cols);
        const std::size_t row_offset = i == 0 ? 0 : left.rows();
        const std::size_t col_offset = i == d - 1 ? 0 : left.cols();
        for (std::size_t r = 0; r < left.rows(); ++r) {
            for (std::size_t c = 0; c < left.cols(); ++c) {
                merged.at(r, c) = left.at(r, c);
            }
        }
        for (std::size_t r = 0; r < right.rows(); ++r) {
            for (std::size_t c = 0; c < right.cols(); ++c) {
                merged.at(r + row_offset, c + col_offset) = right.at(r, c);
            }
        }
        layers.push_back(std::move(merged));
    }
    return layers;
}

}  // namespace detail

inline Abp abp_add(const Abp& p, const Abp& q) {
    if (p.depth() != q.depth()) {
        throw shape_error("ABP sum needs equal depths (" + std::to_string(p.depth()) + " vs " +
                          std::to_string(q.depth()) + "); pad with identity layers first");
    }
    if (p.nvars() != q.nvars()) {
        throw dimension_error("ABP sum needs equal variable counts");
    }
    return Abp(p.nvars(), detail::add_layer_lists(p.layers(), q.layers()));
}

// Negation flips the sign of the edges leaving the source.
inline Abp abp_negate(const Abp& p) {
    std::vector<AffineMatrix> layers = p.layers();
    layers.front() = layers.front().scaled(Rational(-1));
    return Abp(p.nvars(), std::move(layers));
}

inline Abp abp_sub(const Abp& p, const Abp& q) { return abp_add(p, abp_negate(q)); }

inline Roabp roabp_add(const Roabp& p, const Roabp& q) {
    if (p.depth() != q.depth()) {
        throw shape_error("ROABP sum needs equal depths (" + std::to_string(p.depth()) + " vs " +
                          std::to_string(q.depth()) + ")");
    }
    if (p.degree_bound() != q.degree_bound()) {
        throw shape_error("ROABP sum needs equal degree bounds");
    }
    std::vector<PolyMatrix> layers = detail::add_layer_lists(p.layers(), q.layers());
    for (PolyMatrix& layer : layers) {
        detail::normalize_entry_arity(layer, layers.size());
    }
    return Roabp(p.degree_bound(), std::move(layers));
}

inline Roabp roabp_negate(const Roabp& p) {
    std::vector<PolyMatrix> layers = p.layers();
    layers.front() = layers.front().scaled(SparsePoly::constant(p.nvars(), -1));
    return Roabp(p.degree_bound(), std::move(layers));
}

inline Roabp roabp_sub(const Roabp& p, const Roabp& q) { return roabp_add(p, roabp_negate(q)); }

// Appends constant 1x1 identity layers reading fresh trailing variables, so
// a depth-l program can be treated as depth `new_depth`.
inline Roabp roabp_pad_dummy_variables(const Roabp& p, std::size_t new_depth) {
    if (new_depth < p.depth()) {
        throw parameter_error("dummy-variable padding cannot shrink the depth");
    }
    std::vector<PolyMatrix> layers;
    layers.reserve(new_depth);
    for (const PolyMatrix& layer : p.layers()) {
        PolyMatrix widened(layer.rows(), layer.cols());
        for (std::size_t i = 0; i < layer.rows(); ++i) {
            for (std::size_t j = 0; j < layer.cols(); ++j) {
                widened.at(i, j) = layer.at(i, j).with_arity(new_depth);
            }
        }
        layers.push_back(std::move(widened));
    }
    for (std::size_t i = p.depth(); i < new_depth; ++i) {
        PolyMatrix one(1, 1);
        one.at(0, 0) = SparsePoly::constant(new_depth, 1);
        layers.push_back(std::move(one));
    }
    return Roabp(p.degree_bound(), std::move(layers));
}

}  // namespace orbitpit
