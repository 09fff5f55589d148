#pragma once

#include <cstddef>
#include <map>

#include "orbitpit/errors.hpp"

namespace orbitpit {

// A power product of variables x_0, x_1, ...  Zero exponents are never
// stored, so map equality is monomial equality.
class Monomial {
public:
    Monomial() = default;

    static Monomial one() { return Monomial(); }

    static Monomial variable(std::size_t index, std::size_t exponent = 1) {
        Monomial m;
        if (exponent > 0) {
            m.exponents_[index] = exponent;
        }
        return m;
    }

    std::size_t exponent(std::size_t index) const {
        const auto it = exponents_.find(index);
        return it == exponents_.end() ? 0 : it->second;
    }

    void set_exponent(std::size_t index, std::size_t exponent) {
        if (exponent == 0) {
            exponents_.erase(index);
        } else {
            exponents_[index] = exponent;
        }
    }

    Monomial times(const Monomial& other) const {
        Monomial result = *this;
        for (const auto& [index, exp] : other.exponents_) {
            result.exponents_[index] += exp;
        }
        return result;
    }

    std::size_t total_degree() const {
        std::size_t degree = 0;
        for (const auto& [index, exp] : exponents_) {
            degree += exp;
        }
        return degree;
    }

    // |.|_0: number of variables appearing.
    std::size_t support_size() const { return exponents_.size(); }

    // |.|_x: product of (exponent + 1) over the support.
    std::size_t extent() const {
        std::size_t product = 1;
        for (const auto& [index, exp] : exponents_) {
            product *= exp + 1;
        }
        return product;
    }

    bool is_one() const { return exponents_.empty(); }

    std::size_t max_variable_index() const {
        return exponents_.empty() ? 0 : exponents_.rbegin()->first;
    }

    const std::map<std::size_t, std::size_t>& exponents() const { return exponents_; }

    bool operator==(const Monomial& other) const = default;

    // Container order only; mathematical orderings live in ordering.hpp.
    bool operator<(const Monomial& other) const { return exponents_ < other.exponents_; }

private:
    std::map<std::size_t, std::size_t> exponents_;
};

}  // namespace orbitpit
