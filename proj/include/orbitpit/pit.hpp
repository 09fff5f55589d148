#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitpit/branching.hpp"
#include "orbitpit/errors.hpp"
#include "orbitpit/matrix.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/rng.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

enum class HittingSetProvenance { Grid, Random, File };

struct HittingSet {
    std::vector<std::vector<Rational>> points;  // all of equal arity
    HittingSetProvenance provenance = HittingSetProvenance::File;
    std::uint64_t seed = 0;       // random provenance only
    std::size_t count = 0;        // random provenance only

    std::size_t arity() const { return points.empty() ? 0 : points.front().size(); }
};

enum class CertificateKind { Whitebox, BlackboxDeterministic, Randomized };

struct PitVerdict {
    bool is_zero = true;
    CertificateKind certificate = CertificateKind::Whitebox;
    // For nonzero verdicts: a point where the polynomial is nonzero, with
    // its value, and/or a monomial with a nonzero coefficient.
    std::optional<std::pair<std::vector<Rational>, Rational>> witness_point;
    std::optional<Monomial> witness_monomial;
    // Zero verdicts from the randomized engine carry 1 - (d/|S|)^trials.
    std::optional<Rational> confidence;
};

// The test oracle: a SparsePoly is zero iff it has no stored terms.
inline PitVerdict bruteforce_zero_test(const SparsePoly& f) {
    PitVerdict verdict;
    verdict.certificate = CertificateKind::Whitebox;
    verdict.is_zero = f.is_zero();
    if (!verdict.is_zero) {
        verdict.witness_monomial = f.terms().begin()->first;
    }
    return verdict;
}

struct WhiteboxStats {
    std::size_t elimination_steps = 0;   // candidate-vs-pivot reductions
    std::size_t max_coefficient_bits = 0;
};

namespace detail {

// Incremental basis of row vectors with exact fraction-free reduction
// (cross-multiplication, no divisions).  Stored alongside each pivot row is
// the original unscaled candidate and its monomial label, so survivors are
// genuine coefficient vectors of the partial product.
class LabeledRowBasis {
public:
    explicit LabeledRowBasis(WhiteboxStats* stats) : stats_(stats) {}

    struct Member {
        std::vector<Rational> vector;  // as inserted
        Monomial label;
    };

    const std::vector<Member>& members() const { return members_; }

    // Inserts if independent of the current span; returns true when kept.
    bool insert(std::vector<Rational> candidate, Monomial label) {
        std::vector<Rational> reduced = candidate;
        for (std::size_t k = 0; k < reduced_rows_.size(); ++k) {
            const std::size_t col = pivot_cols_[k];
            if (reduced[col] == 0) {
                continue;
            }
            const Rational pivot = reduced_rows_[k][col];
            const Rational factor = reduced[col];
            for (std::size_t j = 0; j < reduced.size(); ++j) {
                reduced[j] = reduced[j] * pivot - factor * reduced_rows_[k][j];
            }
            if (stats_ != nullptr) {
                ++stats_->elimination_steps;
            }
        }
        std::size_t pivot_col = reduced.size();
        for (std::size_t j = 0; j < reduced.size(); ++j) {
            if (reduced[j] != 0) {
                pivot_col = j;
                break;
            }
        }
        if (pivot_col == reduced.size()) {
            return false;
        }
        if (stats_ != nullptr) {
            for (const Rational& value : reduced) {
                stats_->max_coefficient_bits =
                    std::max(stats_->max_coefficient_bits, bit_length(value));
            }
        }
        pivot_cols_.push_back(pivot_col);
        reduced_rows_.push_back(std::move(reduced));
        members_.push_back(Member{std::move(candidate), std::move(label)});
        return true;
    }

private:
    WhiteboxStats* stats_;
    std::vector<std::vector<Rational>> reduced_rows_;
    std::vector<std::size_t> pivot_cols_;
    std::vector<Member> members_;
};

}  // namespace detail

// Deterministic white-box zero test for ROABPs by coefficient-span
// propagation: a basis of at most w labeled coefficient vectors of the
// partial product M_1 ... M_i is pushed through the layers; after the final
// single-column layer the surviving scalars decide, and the first survivor's
// label is a monomial with a nonzero coefficient.  Never expands the
// polynomial; poly(w, d, r) exact operations.
inline PitVerdict whitebox_roabp_zero_test(const Roabp& p, WhiteboxStats* stats = nullptr) {
    const std::size_t d = p.depth();
    const std::size_t r = p.degree_bound();

    detail::LabeledRowBasis basis(stats);
    for (std::size_t j = 0; j < r; ++j) {
        const Matrix coeffs = p.coeff_matrix(0, j);
        std::vector<Rational> row(coeffs.cols());
        for (std::size_t c = 0; c < coeffs.cols(); ++c) {
            row[c] = coeffs.at(0, c);
        }
        basis.insert(std::move(row), Monomial::variable(0, j));
    }

    for (std::size_t layer = 1; layer < d; ++layer) {
        std::vector<Matrix> coeff_matrices;
        coeff_matrices.reserve(r);
        for (std::size_t j = 0; j < r; ++j) {
            coeff_matrices.push_back(p.coeff_matrix(layer, j));
        }
        detail::LabeledRowBasis next(stats);
        for (const auto& member : basis.members()) {
            for (std::size_t j = 0; j < r; ++j) {
                const Matrix& c = coeff_matrices[j];
                std::vector<Rational> product(c.cols(), Rational(0));
                for (std::size_t k = 0; k < c.rows(); ++k) {
                    if (member.vector[k] == 0) {
                        continue;
                    }
                    for (std::size_t col = 0; col < c.cols(); ++col) {
                        product[col] += member.vector[k] * c.at(k, col);
                    }
                }
                next.insert(std::move(product), member.label.times(Monomial::variable(layer, j)));
            }
        }
        basis = std::move(next);
    }

    PitVerdict verdict;
    verdict.certificate = CertificateKind::Whitebox;
    verdict.is_zero = basis.members().empty();
    if (!verdict.is_zero) {
        verdict.witness_monomial = basis.members().front().label;
    }
    return verdict;
}

using BlackboxEvaluator = std::function<Rational(std::span<const Rational>)>;

// Schwartz-Zippel randomized zero test: `trials` evaluations at points with
// coordinates uniform in {0, ..., range-1}, range = max(2*degree*trials, 101).
inline PitVerdict schwartz_zippel_zero_test(const BlackboxEvaluator& evaluator, std::size_t nvars,
                                            std::size_t total_degree_bound, std::size_t trials,
                                            std::uint64_t seed) {
    if (trials == 0) {
        throw parameter_error("randomized zero test needs at least one trial");
    }
    const std::uint64_t range =
        std::max<std::uint64_t>(2 * static_cast<std::uint64_t>(total_degree_bound) * trials, 101);
    Rng rng(seed);
    PitVerdict verdict;
    verdict.certificate = CertificateKind::Randomized;
    for (std::size_t t = 0; t < trials; ++t) {
        std::vector<Rational> point = rng.point_below(nvars, range);
        const Rational value = evaluator(point);
        if (value != 0) {
            verdict.is_zero = false;
            verdict.witness_point = std::make_pair(std::move(point), value);
            verdict.confidence = Rational(1);
            return verdict;
        }
    }
    verdict.is_zero = true;
    const Rational miss = Rational(total_degree_bound) / Rational(range);
    verdict.confidence = Rational(1) - pow_rational(miss, trials);
    return verdict;
}

// Full tensor grid {0, ..., bound}^nvars: a hitting set for individual
// degree <= bound, usable only at tiny arity.
inline HittingSet grid_hitting_set(std::size_t nvars, std::size_t individual_degree_bound,
                                   std::size_t cap = 1'000'000) {
    const std::size_t side = individual_degree_bound + 1;
    std::size_t total = 1;
    for (std::size_t i = 0; i < nvars; ++i) {
        if (total > cap / side) {
            throw size_error("grid hitting set exceeds the cap of " + std::to_string(cap) +
                             " points");
        }
        total *= side;
    }
    HittingSet set;
    set.provenance = HittingSetProvenance::Grid;
    set.points.reserve(total);
    std::vector<std::size_t> odometer(nvars, 0);
    for (std::size_t index = 0; index < total; ++index) {
        std::vector<Rational> point(nvars);
        for (std::size_t i = 0; i < nvars; ++i) {
            point[i] = Rational(odometer[i]);
        }
        set.points.push_back(std::move(point));
        for (std::size_t pos = nvars; pos-- > 0;) {
            if (++odometer[pos] < side) {
                break;
            }
            odometer[pos] = 0;
        }
    }
    return set;
}

// Monte Carlo stand-in for an explicit ROABP hitting-set generator:
// `count` points with coordinates uniform in {0, ..., range-1},
// deterministic for a fixed seed.
inline HittingSet random_hitting_set(std::size_t nvars, std::size_t count, std::uint64_t seed,
                                     std::uint64_t range) {
    if (range == 0) {
        throw parameter_error("random hitting set needs a positive range");
    }
    HittingSet set;
    set.provenance = HittingSetProvenance::Random;
    set.seed = seed;
    set.count = count;
    Rng rng(seed);
    set.points.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        set.points.push_back(rng.point_below(nvars, range));
    }
    return set;
}

}  // namespace orbitpit
