#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "orbitpit/errors.hpp"
#include "orbitpit/rational.hpp"

namespace orbitpit {

// Coefficient of y^j in the unique degree-<=d interpolant through d+1
// (point, value) pairs with distinct points.  Lagrange form: the numerator
// polynomials prod_(k!=i) (y - x_k) are expanded exactly.
inline Rational interpolate_coefficient(const std::vector<std::pair<Rational, Rational>>& evals,
                                        std::size_t j) {
    if (evals.empty()) {
        throw interpolation_error("interpolation needs at least one evaluation");
    }
    const std::size_t d = evals.size() - 1;
    if (j > d) {
        throw interpolation_error("coefficient index exceeds interpolant degree");
    }
    for (std::size_t a = 0; a < evals.size(); ++a) {
        for (std::size_t b = a + 1; b < evals.size(); ++b) {
            if (evals[a].first == evals[b].first) {
                throw interpolation_error("duplicate interpolation point " +
                                          format_rational(evals[a].first));
            }
        }
    }
    Rational coefficient = 0;
    for (std::size_t i = 0; i <= d; ++i) {
        // Expand prod_(k != i) (y - x_k) into coefficients.
        std::vector<Rational> numerator{Rational(1)};
        Rational denominator = 1;
        for (std::size_t k = 0; k <= d; ++k) {
            if (k == i) {
                continue;
            }
            std::vector<Rational> next(numerator.size() + 1);
            for (std::size_t t = 0; t < numerator.size(); ++t) {
                next[t] -= numerator[t] * evals[k].first;
                next[t + 1] += numerator[t];
            }
            numerator = std::move(next);
            denominator *= evals[i].first - evals[k].first;
        }
        if (j < numerator.size()) {
            coefficient += evals[i].second * numerator[j] / denominator;
        }
    }
    return coefficient;
}

}  // namespace orbitpit
