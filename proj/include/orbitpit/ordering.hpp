#pragma once

#include <cstddef>

#include "orbitpit/errors.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

enum class OrderingKind {
    GradedLex,  // total degree first, ties by x_0 > x_1 > ...
};

// Monomial ordering: a total order on monomials with 1 minimal and
// x^i < x^j implying x^(i+k) < x^(j+k).
class MonomialOrdering {
public:
    explicit MonomialOrdering(OrderingKind kind = OrderingKind::GradedLex) : kind_(kind) {}

    static MonomialOrdering grlex() { return MonomialOrdering(OrderingKind::GradedLex); }

    OrderingKind kind() const { return kind_; }

    // a strictly precedes b.
    bool less(const Monomial& a, const Monomial& b) const {
        const std::size_t da = a.total_degree();
        const std::size_t db = b.total_degree();
        if (da != db) {
            return da < db;
        }
        // Lexicographic tie break: the first variable (lowest index) where
        // the exponents differ decides; larger exponent there wins.
        auto ia = a.exponents().begin();
        auto ib = b.exponents().begin();
        while (ia != a.exponents().end() && ib != b.exponents().end()) {
            if (ia->first != ib->first) {
                // The monomial owning the lower-indexed variable is larger.
                return ia->first > ib->first;
            }
            if (ia->second != ib->second) {
                return ia->second < ib->second;
            }
            ++ia;
            ++ib;
        }
        return ia == a.exponents().end() && ib != b.exponents().end();
    }

private:
    OrderingKind kind_;
};

inline Monomial leading_monomial(const SparsePoly& f, const MonomialOrdering& ord) {
    if (f.is_zero()) {
        throw empty_input_error("leading monomial of the zero polynomial");
    }
    const Monomial* best = nullptr;
    for (const auto& [monomial, coefficient] : f.terms()) {
        if (best == nullptr || ord.less(*best, monomial)) {
            best = &monomial;
        }
    }
    return *best;
}

}  // namespace orbitpit
