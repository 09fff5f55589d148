#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitpit/affine.hpp"
#include "orbitpit/errors.hpp"
#include "orbitpit/pit.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

// One summand L_1^(e_1) ... L_k^(e_k) of a depth-3 diagonal circuit.
struct DiagonalTerm {
    std::vector<AffineForm> forms;
    std::vector<std::size_t> exponents;

    // |e|_x = prod (e_j + 1).
    std::size_t extent() const {
        std::size_t product = 1;
        for (std::size_t e : exponents) {
            product *= e + 1;
        }
        return product;
    }

    std::size_t total_degree() const {
        std::size_t degree = 0;
        for (std::size_t e : exponents) {
            degree += e;
        }
        return degree;
    }
};

// Depth-3 diagonal circuit: sum of powers of vectors of affine forms.
class DiagonalCircuit {
public:
    DiagonalCircuit(std::size_t nvars, std::vector<DiagonalTerm> terms)
        : nvars_(nvars), terms_(std::move(terms)) {
        if (nvars_ == 0) {
            throw parameter_error("diagonal circuit needs at least one variable");
        }
        for (const DiagonalTerm& term : terms_) {
            if (term.forms.size() != term.exponents.size()) {
                throw shape_error("diagonal term has " + std::to_string(term.forms.size()) +
                                  " affine forms but " + std::to_string(term.exponents.size()) +
                                  " exponents");
            }
            for (const AffineForm& form : term.forms) {
                if (!form.linear().empty() && form.max_variable_index() >= nvars_) {
                    throw dimension_error("affine form uses a variable beyond the arity");
                }
            }
        }
    }

    std::size_t nvars() const { return nvars_; }
    const std::vector<DiagonalTerm>& terms() const { return terms_; }

    // n * sum |e_l|_x.
    std::size_t size_accounting() const {
        std::size_t sum = 0;
        for (const DiagonalTerm& term : terms_) {
            sum += term.extent();
        }
        return nvars_ * sum;
    }

    std::size_t max_term_degree() const {
        std::size_t degree = 0;
        for (const DiagonalTerm& term : terms_) {
            degree = std::max(degree, term.total_degree());
        }
        return degree;
    }

    Rational eval(std::span<const Rational> point) const {
        if (point.size() != nvars_) {
            throw dimension_error("evaluation point has arity " + std::to_string(point.size()) +
                                  ", circuit has " + std::to_string(nvars_));
        }
        Rational sum = 0;
        for (const DiagonalTerm& term : terms_) {
            Rational product = 1;
            for (std::size_t j = 0; j < term.forms.size(); ++j) {
                product *= pow_rational(term.forms[j].eval(point), term.exponents[j]);
            }
            sum += product;
        }
        return sum;
    }

    SparsePoly expand() const {
        SparsePoly sum(nvars_);
        for (const DiagonalTerm& term : terms_) {
            SparsePoly product = SparsePoly::constant(nvars_, 1);
            for (std::size_t j = 0; j < term.forms.size(); ++j) {
                const SparsePoly base = term.forms[j].to_poly(nvars_);
                for (std::size_t e = 0; e < term.exponents[j]; ++e) {
                    product = product * base;
                }
            }
            sum = sum + product;
        }
        return sum;
    }

private:
    std::size_t nvars_;
    std::vector<DiagonalTerm> terms_;
};

inline Rational eval_diagonal(const DiagonalCircuit& c, std::span<const Rational> point) {
    return c.eval(point);
}

inline SparsePoly expand_diagonal(const DiagonalCircuit& c) { return c.expand(); }

// Certificate upper bound sum_l |e_l|_x on the Hasse-derivative dimension
// of the computed polynomial (not the exact dimension).
inline std::size_t derivative_dim_bound(const DiagonalCircuit& c) {
    std::size_t bound = 0;
    for (const DiagonalTerm& term : c.terms()) {
        bound += term.extent();
    }
    return bound;
}

// All points of S^n with at most m nonzero coordinates, S = {0, ..., d}.
// Size sum_(k <= min(m,n)) C(n,k) d^k; enumerated by ascending support
// size, so the set for m is a prefix of the set for m+1.
inline HittingSet hitting_set_diagonal(std::size_t n, std::size_t d, std::size_t m) {
    if (n == 0 || d == 0) {
        throw parameter_error("hitting set needs n >= 1 and d >= 1");
    }
    HittingSet set;
    set.provenance = HittingSetProvenance::Grid;
    const std::size_t max_support = std::min(m, n);

    std::vector<std::size_t> support;
    // Nonzero values come from {1, ..., d}; chosen support positions sweep
    // them odometer-style.
    const auto emit_for_support = [&]() {
        std::vector<std::size_t> values(support.size(), 1);
        while (true) {
            std::vector<Rational> point(n, Rational(0));
            for (std::size_t i = 0; i < support.size(); ++i) {
                point[support[i]] = Rational(values[i]);
            }
            set.points.push_back(std::move(point));
            std::size_t pos = support.size();
            while (pos-- > 0) {
                if (++values[pos] <= d) {
                    break;
                }
                values[pos] = 1;
            }
            if (pos == static_cast<std::size_t>(-1)) {
                break;
            }
        }
    };

    // Supports of size k in lexicographic order.
    const auto enumerate_supports = [&](auto&& self, std::size_t start, std::size_t k) -> void {
        if (k == 0) {
            emit_for_support();
            return;
        }
        for (std::size_t i = start; i + k <= n; ++i) {
            support.push_back(i);
            self(self, i + 1, k - 1);
            support.pop_back();
        }
    };

    for (std::size_t k = 0; k <= max_support; ++k) {
        enumerate_supports(enumerate_supports, 0, k);
    }
    return set;
}

inline std::size_t ceil_log2(std::size_t value) {
    std::size_t bits = 0;
    while ((static_cast<std::size_t>(1) << bits) < value) {
        ++bits;
    }
    return bits;
}

// Black-box zero test: with m = ceil(log2(derivative bound)) and d the
// largest term degree, the small-support set hits every nonzero circuit, so
// the circuit is zero iff all evaluations vanish.
inline PitVerdict blackbox_zero_test_diagonal(const DiagonalCircuit& c) {
    PitVerdict verdict;
    verdict.certificate = CertificateKind::BlackboxDeterministic;
    if (c.terms().empty()) {
        verdict.is_zero = true;
        return verdict;
    }
    const std::size_t bound = derivative_dim_bound(c);
    const std::size_t m = ceil_log2(bound);
    const std::size_t d = std::max<std::size_t>(1, c.max_term_degree());
    const HittingSet h = hitting_set_diagonal(c.nvars(), d, m);
    for (const std::vector<Rational>& point : h.points) {
        const Rational value = c.eval(point);
        if (value != 0) {
            verdict.is_zero = false;
            verdict.witness_point = std::make_pair(point, value);
            return verdict;
        }
    }
    verdict.is_zero = true;
    return verdict;
}

}  // namespace orbitpit
