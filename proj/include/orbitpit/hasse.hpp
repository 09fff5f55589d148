#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "orbitpit/errors.hpp"
#include "orbitpit/matrix.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

// k-th Hasse derivative of f in direction u: the coefficient of y^k in
// f(x + u y), computed exactly that way -- substitute, expand, extract.
inline SparsePoly hasse_directional(const SparsePoly& f, std::span<const Rational> direction,
                                    std::size_t k) {
    const std::size_t n = f.nvars();
    if (direction.size() != n) {
        throw dimension_error("direction has arity " + std::to_string(direction.size()) +
                              ", polynomial has " + std::to_string(n));
    }
    // Fresh variable y gets index n.
    std::vector<SparsePoly> images;
    images.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        SparsePoly image = SparsePoly::variable(n + 1, i);
        image.add_term(Monomial::variable(n), direction[i]);
        images.push_back(std::move(image));
    }
    const SparsePoly shifted = f.compose(images);
    return shifted.coeff_of(n, k).with_arity(n);
}

// Iterated per-variable Hasse derivative, one exponent per variable.  Acts
// termwise: each variable contributes a binomial factor and an exponent
// drop, which is the monomial rule iterated across the variables.
inline SparsePoly hasse_variable(const SparsePoly& f, std::span<const std::size_t> orders) {
    if (orders.size() != f.nvars()) {
        throw dimension_error("derivative order vector has arity " +
                              std::to_string(orders.size()) + ", polynomial has " +
                              std::to_string(f.nvars()));
    }
    SparsePoly result(f.nvars());
    for (const auto& [monomial, coefficient] : f.terms()) {
        Rational factor = coefficient;
        Monomial reduced = monomial;
        bool vanished = false;
        for (std::size_t i = 0; i < orders.size() && !vanished; ++i) {
            if (orders[i] == 0) {
                continue;
            }
            const std::size_t exp = monomial.exponent(i);
            if (exp < orders[i]) {
                vanished = true;
                break;
            }
            factor *= Rational(binomial(exp, orders[i]));
            reduced.set_exponent(i, exp - orders[i]);
        }
        if (!vanished) {
            result.add_term(reduced, factor);
        }
    }
    return result;
}

// Dimension of span{d_(x^i)(f) : i in N^n}.  Only i with i <= deg(f)
// coordinatewise and |i| <= totaldeg(f) can give a nonzero derivative, so
// the enumeration stops there; rank is exact over Q.
inline std::size_t derivative_space_dimension(const SparsePoly& f) {
    if (f.is_zero()) {
        return 0;
    }
    const std::size_t n = f.nvars();
    const std::vector<std::size_t> box = f.max_degrees();
    const std::size_t total = f.total_degree();

    std::vector<SparsePoly> derivatives;
    std::vector<std::size_t> orders(n, 0);
    while (true) {
        std::size_t sum = 0;
        for (std::size_t o : orders) {
            sum += o;
        }
        if (sum <= total) {
            SparsePoly derivative = hasse_variable(f, orders);
            if (!derivative.is_zero()) {
                derivatives.push_back(std::move(derivative));
            }
        }
        // Odometer over the coordinatewise degree box.
        std::size_t pos = 0;
        while (pos < n && orders[pos] == box[pos]) {
            orders[pos] = 0;
            ++pos;
        }
        if (pos == n) {
            break;
        }
        ++orders[pos];
    }
    if (n == 0) {
        return f.is_zero() ? 0 : 1;
    }

    // Rank of the derivatives over the union of their monomials.
    std::map<Monomial, std::size_t> columns;
    for (const SparsePoly& d : derivatives) {
        for (const auto& [monomial, coefficient] : d.terms()) {
            columns.emplace(monomial, 0);
        }
    }
    std::size_t next = 0;
    for (auto& [monomial, column] : columns) {
        column = next++;
    }
    Matrix rows(derivatives.size(), columns.size());
    for (std::size_t i = 0; i < derivatives.size(); ++i) {
        for (const auto& [monomial, coefficient] : derivatives[i].terms()) {
            rows.at(i, columns.at(monomial)) = coefficient;
        }
    }
    return rank(std::move(rows));
}

// Right-hand side of the Hasse chain rule (Faa di Bruno form): the expansion
// of d_(u^k)(f(g_0, ..., g_(n-1))) as a sum over ways to split k into
// weighted derivative multi-orders of the inner functions.  The direct
// substitute-and-extract route above is the independent check.
inline SparsePoly hasse_chain_rule_sum(const SparsePoly& f, const std::vector<SparsePoly>& inner,
                                       std::span<const Rational> direction, std::size_t k) {
    const std::size_t n = f.nvars();
    if (inner.size() != n) {
        throw dimension_error("chain rule needs one inner polynomial per variable of f");
    }
    std::size_t inner_arity = 0;
    for (const SparsePoly& g : inner) {
        inner_arity = std::max(inner_arity, g.nvars());
    }
    if (k == 0) {
        return f.compose(inner);
    }

    // d_(u^j)(g_i) for j = 1..k.
    std::vector<std::vector<SparsePoly>> inner_derivatives(k + 1);
    for (std::size_t j = 1; j <= k; ++j) {
        inner_derivatives[j].reserve(n);
        for (const SparsePoly& g : inner) {
            inner_derivatives[j].push_back(hasse_directional(g, direction, j));
        }
    }

    SparsePoly sum(inner_arity);
    // Multi-orders l_1, ..., l_k in N^n with sum_j j*|l_j| = k, enumerated as
    // a flat odometer over k*n slots, each bounded by k.
    std::vector<std::size_t> slots(k * n, 0);
    while (true) {
        std::size_t weighted = 0;
        for (std::size_t j = 1; j <= k && weighted <= k; ++j) {
            for (std::size_t i = 0; i < n; ++i) {
                weighted += j * slots[(j - 1) * n + i];
            }
        }
        if (weighted == k) {
            // prod_j [d_(u^j)(g)]^(l_j)
            SparsePoly product = SparsePoly::constant(inner_arity, 1);
            for (std::size_t j = 1; j <= k; ++j) {
                for (std::size_t i = 0; i < n; ++i) {
                    const std::size_t e = slots[(j - 1) * n + i];
                    for (std::size_t t = 0; t < e; ++t) {
                        product = product * inner_derivatives[j][i];
                    }
                }
            }
            // Vector multinomial over the coordinatewise parts, and the
            // outer derivative order sum_j l_j.
            Rational multi = 1;
            std::vector<std::size_t> outer_orders(n, 0);
            for (std::size_t i = 0; i < n; ++i) {
                std::vector<std::size_t> parts;
                parts.reserve(k);
                for (std::size_t j = 1; j <= k; ++j) {
                    parts.push_back(slots[(j - 1) * n + i]);
                    outer_orders[i] += slots[(j - 1) * n + i];
                }
                multi *= Rational(multinomial(parts));
            }
            const SparsePoly outer = hasse_variable(f, outer_orders);
            sum = sum + (product * outer.compose(inner)).scaled(multi);
        }
        std::size_t pos = 0;
        while (pos < slots.size() && slots[pos] == k) {
            slots[pos] = 0;
            ++pos;
        }
        if (pos == slots.size()) {
            break;
        }
        ++slots[pos];
    }
    return sum;
}

}  // namespace orbitpit
