#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitpit/affine.hpp"
#include "orbitpit/branching.hpp"
#include "orbitpit/errors.hpp"
#include "orbitpit/matrix.hpp"
#include "orbitpit/pit.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

// A point of the orbit problems: r square matrices of size n x n over Q.
class MatrixTuple {
public:
    MatrixTuple(std::vector<Matrix> matrices) : matrices_(std::move(matrices)) {
        if (matrices_.empty()) {
            throw dimension_error("matrix tuple needs at least one matrix");
        }
        n_ = matrices_.front().rows();
        for (const Matrix& m : matrices_) {
            if (m.rows() != n_ || m.cols() != n_) {
                throw dimension_error("matrix tuple entries must be square of equal size");
            }
        }
    }

    std::size_t n() const { return n_; }
    std::size_t r() const { return matrices_.size(); }
    const Matrix& matrix(std::size_t i) const { return matrices_[i]; }
    const std::vector<Matrix>& matrices() const { return matrices_; }

    bool same_shape(const MatrixTuple& other) const {
        return n_ == other.n_ && r() == other.r();
    }

    // (P M_0 P^-1, ..., P M_(r-1) P^-1); P must be invertible.
    MatrixTuple conjugated(const Matrix& p) const {
        const std::optional<Matrix> p_inverse = inverse(p);
        if (!p_inverse.has_value()) {
            throw parameter_error("conjugation by a singular matrix");
        }
        std::vector<Matrix> conjugates;
        conjugates.reserve(matrices_.size());
        for (const Matrix& m : matrices_) {
            conjugates.push_back(p * m * *p_inverse);
        }
        return MatrixTuple(std::move(conjugates));
    }

    // Entries in the variable order of the invariant programs: matrix index
    // major, then row-major within each matrix.
    std::vector<Rational> flatten_entries() const {
        std::vector<Rational> flat;
        flat.reserve(r() * n_ * n_);
        for (const Matrix& m : matrices_) {
            for (std::size_t a = 0; a < n_; ++a) {
                for (std::size_t b = 0; b < n_; ++b) {
                    flat.push_back(m.at(a, b));
                }
            }
        }
        return flat;
    }

private:
    std::size_t n_;
    std::vector<Matrix> matrices_;
};

namespace detail {

// Trace of a matrix product as a merged sum of diagonal-entry programs:
// entry (i,i) of M(x_1)...M(x_l) is a width-n depth-l program (row i, full
// layers, column i); the trace merges n of them, width <= n^2.
template <typename MatrixType, typename Program, typename MakeProgram, typename AddPrograms>
Program trace_of_layer_product(const std::vector<MatrixType>& layer_matrices,
                               const MakeProgram& make_program, const AddPrograms& add_programs) {
    const std::size_t n = layer_matrices.front().rows();
    const std::size_t depth = layer_matrices.size();
    std::optional<Program> sum;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<MatrixType> layers;
        layers.reserve(depth);
        if (depth == 1) {
            MatrixType only(1, 1);
            only.at(0, 0) = layer_matrices[0].at(i, i);
            layers.push_back(std::move(only));
        } else {
            layers.push_back(layer_matrices.front().row(i));
            for (std::size_t k = 1; k + 1 < depth; ++k) {
                layers.push_back(layer_matrices[k]);
            }
            layers.push_back(layer_matrices.back().column(i));
        }
        Program program = make_program(std::move(layers));
        sum = sum.has_value() ? add_programs(*sum, program) : std::move(program);
    }
    return *sum;
}

}  // namespace detail

// ROABP for f_l(A, x) = tr(A(x_1) ... A(x_l)) with A(x) = sum_i A_i x^i:
// variables x_1..x_l, width <= n^2, depth l, individual degree < r.
inline Roabp build_f_ell_roabp(const MatrixTuple& a, std::size_t ell) {
    if (ell == 0) {
        throw parameter_error("word length must be at least 1");
    }
    const std::size_t n = a.n();
    const std::size_t r = a.r();
    std::vector<PolyMatrix> layer_matrices;
    layer_matrices.reserve(ell);
    for (std::size_t j = 0; j < ell; ++j) {
        PolyMatrix m(n, n);
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t col = 0; col < n; ++col) {
                SparsePoly entry(ell);
                for (std::size_t i = 0; i < r; ++i) {
                    entry.add_term(Monomial::variable(j, i), a.matrix(i).at(row, col));
                }
                m.at(row, col) = std::move(entry);
            }
        }
        layer_matrices.push_back(std::move(m));
    }
    return detail::trace_of_layer_product<PolyMatrix, Roabp>(
        layer_matrices,
        [&](std::vector<PolyMatrix> layers) { return Roabp(r, std::move(layers)); },
        [](const Roabp& x, const Roabp& y) { return roabp_add(x, y); });
}

// ROABP of width <= 2n^2 for f_l(A, x) - f_l(B, x).
inline Roabp diff_roabp(const MatrixTuple& a, const MatrixTuple& b, std::size_t ell) {
    if (!a.same_shape(b)) {
        throw dimension_error("tuples have mismatched shapes: (" + std::to_string(a.n()) + "," +
                              std::to_string(a.r()) + ") vs (" + std::to_string(b.n()) + "," +
                              std::to_string(b.r()) + ")");
    }
    return roabp_sub(build_f_ell_roabp(a, ell), build_f_ell_roabp(b, ell));
}

// ABP over the n^2 r entry variables computing f_l(M, alpha): layer j is
// M(alpha_j), whose entries are linear forms in the entry variables.
// Variable order matches MatrixTuple::flatten_entries.
inline Abp invariant_abp(std::span<const Rational> alpha, std::size_t ell, std::size_t n,
                         std::size_t r) {
    if (ell == 0) {
        throw parameter_error("word length must be at least 1");
    }
    if (alpha.size() < ell) {
        throw parameter_error("alpha has " + std::to_string(alpha.size()) +
                              " coordinates, need at least " + std::to_string(ell));
    }
    const std::size_t nvars = n * n * r;
    std::vector<AffineMatrix> layer_matrices;
    layer_matrices.reserve(ell);
    for (std::size_t j = 0; j < ell; ++j) {
        AffineMatrix m(n, n);
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t col = 0; col < n; ++col) {
                AffineForm entry;
                Rational power = 1;
                for (std::size_t i = 0; i < r; ++i) {
                    entry.set_linear(i * n * n + row * n + col, power);
                    power *= alpha[j];
                }
                m.at(row, col) = std::move(entry);
            }
        }
        layer_matrices.push_back(std::move(m));
    }
    return detail::trace_of_layer_product<AffineMatrix, Abp>(
        layer_matrices,
        [&](std::vector<AffineMatrix> layers) { return Abp(nvars, std::move(layers)); },
        [](const Abp& x, const Abp& y) { return abp_add(x, y); });
}

// Brute-force ground truth: tr(A_(i_1)...A_(i_l)) = tr(B_(i_1)...B_(i_l))
// for every word of length l <= max_ell.  With max_ell = n^2 this decides
// closure intersection exactly.
inline bool trace_word_oracle(const MatrixTuple& a, const MatrixTuple& b, std::size_t max_ell,
                              std::size_t cap = 4'000'000) {
    if (!a.same_shape(b)) {
        throw dimension_error("tuples have mismatched shapes");
    }
    const std::size_t r = a.r();
    std::size_t words = 0;
    std::size_t layer_count = 1;
    for (std::size_t ell = 1; ell <= max_ell; ++ell) {
        if (layer_count > cap / r) {
            throw size_error("word enumeration exceeds the cap of " + std::to_string(cap));
        }
        layer_count *= r;
        words += layer_count;
    }

    // Depth-first over words, keeping prefix products.
    std::vector<Matrix> products_a{Matrix::identity(a.n())};
    std::vector<Matrix> products_b{Matrix::identity(b.n())};
    std::vector<std::size_t> word;
    while (true) {
        if (word.size() < max_ell) {
            word.push_back(0);
            products_a.push_back(products_a.back() * a.matrix(0));
            products_b.push_back(products_b.back() * b.matrix(0));
        } else {
            while (!word.empty() && word.back() == r - 1) {
                word.pop_back();
                products_a.pop_back();
                products_b.pop_back();
            }
            if (word.empty()) {
                break;
            }
            const std::size_t next = ++word.back();
            products_a.back() = products_a[word.size() - 1] * a.matrix(next);
            products_b.back() = products_b[word.size() - 1] * b.matrix(next);
        }
        if (products_a.back().trace() != products_b.back().trace()) {
            return false;
        }
    }
    return true;
}

enum class ClosureDecision { Intersecting, Disjoint };
enum class MembershipDecision { Member, NonMember };
enum class VerdictMethod { Whitebox, Randomized };

struct ClosureWitness {
    std::size_t ell;
    std::vector<Rational> point;  // f_ell values differ here
};

struct OrbitClosureVerdict {
    ClosureDecision decision;
    VerdictMethod method = VerdictMethod::Whitebox;
    std::optional<ClosureWitness> witness;
};

struct OrbitMembershipVerdict {
    MembershipDecision decision;
    VerdictMethod method = VerdictMethod::Randomized;
    std::optional<Matrix> witness;  // conjugating P for members
    std::optional<Rational> confidence;
};

namespace detail {

// A point with g(point) != 0, derived from a monomial with a nonzero
// coefficient: variables outside its support are fixed to 0, which keeps
// that coefficient alive, and the surviving variables sweep {0..r-1}, a
// grid that hits any nonzero polynomial of individual degree < r.
inline std::optional<std::vector<Rational>> point_from_witness_monomial(
    const Roabp& g, const Monomial& witness, std::size_t grid_cap = 1'000'000) {
    std::vector<std::size_t> support;
    for (const auto& [index, exp] : witness.exponents()) {
        support.push_back(index);
    }
    const std::size_t r = g.degree_bound();
    std::size_t total = 1;
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (total > grid_cap / r) {
            return std::nullopt;
        }
        total *= r;
    }
    std::vector<Rational> point(g.nvars(), Rational(0));
    std::vector<std::size_t> odometer(support.size(), 0);
    for (std::size_t index = 0; index < total; ++index) {
        for (std::size_t i = 0; i < support.size(); ++i) {
            point[support[i]] = Rational(odometer[i]);
        }
        if (g.eval(point) != 0) {
            return point;
        }
        for (std::size_t pos = support.size(); pos-- > 0;) {
            if (++odometer[pos] < r) {
                break;
            }
            odometer[pos] = 0;
        }
    }
    return std::nullopt;
}

}  // namespace detail

// Deterministic white-box decision: the closures intersect iff the
// difference ROABP of f_l is identically zero for every l in [max_ell],
// with max_ell = n^2 by default (the generating-set bound).
inline OrbitClosureVerdict orbit_closure_intersects(const MatrixTuple& a, const MatrixTuple& b,
                                                    std::size_t max_ell = 0,
                                                    WhiteboxStats* stats = nullptr) {
    if (!a.same_shape(b)) {
        throw dimension_error("tuples have mismatched shapes: (" + std::to_string(a.n()) + "," +
                              std::to_string(a.r()) + ") vs (" + std::to_string(b.n()) + "," +
                              std::to_string(b.r()) + ")");
    }
    if (max_ell == 0) {
        max_ell = a.n() * a.n();
    }
    for (std::size_t ell = 1; ell <= max_ell; ++ell) {
        const Roabp difference = diff_roabp(a, b, ell);
        const PitVerdict verdict = whitebox_roabp_zero_test(difference, stats);
        if (!verdict.is_zero) {
            OrbitClosureVerdict result{ClosureDecision::Disjoint, VerdictMethod::Whitebox,
                                       std::nullopt};
            const auto point =
                detail::point_from_witness_monomial(difference, *verdict.witness_monomial);
            if (point.has_value()) {
                result.witness = ClosureWitness{ell, *point};
            }
            return result;
        }
    }
    return OrbitClosureVerdict{ClosureDecision::Intersecting, VerdictMethod::Whitebox,
                               std::nullopt};
}

// One member of the separating family T_H: the invariant f_l(M, alpha) with
// its explicit ABP realization over the entry variables.
struct InvariantDescriptor {
    std::size_t ell;
    std::vector<Rational> alpha;
    Abp realization;
};

// T_H = {f_l(M, alpha) : alpha in H, l in [n^2]}: exactly n^2 |H|
// descriptors.  Points shorter than n^2 coordinates are zero-padded.
inline std::vector<InvariantDescriptor> separating_family(std::size_t n, std::size_t r,
                                                          const HittingSet& h) {
    std::vector<InvariantDescriptor> family;
    family.reserve(n * n * h.points.size());
    for (std::size_t ell = 1; ell <= n * n; ++ell) {
        for (const std::vector<Rational>& point : h.points) {
            std::vector<Rational> alpha = point;
            if (alpha.size() < n * n) {
                alpha.resize(n * n, Rational(0));
            }
            Abp realization = invariant_abp(alpha, ell, n, r);
            family.push_back(InvariantDescriptor{ell, std::move(alpha), std::move(realization)});
        }
    }
    return family;
}

// First family member whose values on A and B differ; black-box in the
// sense that only evaluations of the realizations are compared.
inline std::optional<InvariantDescriptor> separates(
    const MatrixTuple& a, const MatrixTuple& b, const std::vector<InvariantDescriptor>& family) {
    if (!a.same_shape(b)) {
        throw dimension_error("tuples have mismatched shapes");
    }
    const std::vector<Rational> entries_a = a.flatten_entries();
    const std::vector<Rational> entries_b = b.flatten_entries();
    for (const InvariantDescriptor& descriptor : family) {
        if (descriptor.realization.nvars() != entries_a.size()) {
            throw dimension_error("family was built for a different tuple shape");
        }
        if (descriptor.realization.eval(entries_a) != descriptor.realization.eval(entries_b)) {
            return descriptor;
        }
    }
    return std::nullopt;
}

// Randomized orbit membership: B = P A P^-1 for invertible P iff the
// nullspace pencil of the linear system B_j P = P A_j contains an
// invertible matrix, i.e. iff det(sum_i P_i x_i) is not identically zero.
inline OrbitMembershipVerdict orbit_member(const MatrixTuple& a, const MatrixTuple& b,
                                           std::uint64_t seed, std::size_t trials = 10) {
    if (!a.same_shape(b)) {
        throw dimension_error("tuples have mismatched shapes: (" + std::to_string(a.n()) + "," +
                              std::to_string(a.r()) + ") vs (" + std::to_string(b.n()) + "," +
                              std::to_string(b.r()) + ")");
    }
    const std::size_t n = a.n();
    const std::size_t r = a.r();

    // Unknowns: P(c, d) flattened row-major.  Equation rows: for each j and
    // each position (row, col), (B_j P - P A_j)(row, col) = 0.
    Matrix system(r * n * n, n * n);
    for (std::size_t j = 0; j < r; ++j) {
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t col = 0; col < n; ++col) {
                const std::size_t equation = j * n * n + row * n + col;
                for (std::size_t k = 0; k < n; ++k) {
                    // + B_j(row, k) P(k, col)
                    system.at(equation, k * n + col) += b.matrix(j).at(row, k);
                    // - P(row, k) A_j(k, col)
                    system.at(equation, row * n + k) -= a.matrix(j).at(k, col);
                }
            }
        }
    }

    const std::vector<std::vector<Rational>> basis = nullspace_basis(std::move(system));
    if (basis.empty()) {
        return OrbitMembershipVerdict{MembershipDecision::NonMember, VerdictMethod::Whitebox,
                                      std::nullopt, std::nullopt};
    }

    std::vector<Matrix> pencil;
    pencil.reserve(basis.size());
    for (const std::vector<Rational>& v : basis) {
        Matrix p(n, n);
        for (std::size_t row = 0; row < n; ++row) {
            for (std::size_t col = 0; col < n; ++col) {
                p.at(row, col) = v[row * n + col];
            }
        }
        pencil.push_back(std::move(p));
    }

    const auto evaluate_pencil = [&](std::span<const Rational> x) {
        Matrix combined(n, n);
        for (std::size_t i = 0; i < pencil.size(); ++i) {
            combined = combined + pencil[i].scaled(x[i]);
        }
        return combined;
    };
    const BlackboxEvaluator det_evaluator = [&](std::span<const Rational> x) {
        return det_division_free(evaluate_pencil(x));
    };

    const PitVerdict verdict =
        schwartz_zippel_zero_test(det_evaluator, pencil.size(), n, trials, seed);
    if (verdict.is_zero) {
        return OrbitMembershipVerdict{MembershipDecision::NonMember, VerdictMethod::Randomized,
                                      std::nullopt, verdict.confidence};
    }

    Matrix witness = evaluate_pencil(verdict.witness_point->first);
    // The witness point has nonzero determinant, so this is exact.
    for (std::size_t j = 0; j < r; ++j) {
        if (!(b.matrix(j) * witness == witness * a.matrix(j))) {
            throw std::logic_error("pencil member violates the intertwining system");
        }
    }
    return OrbitMembershipVerdict{MembershipDecision::Member, VerdictMethod::Randomized,
                                  std::move(witness), Rational(1)};
}

}  // namespace orbitpit
