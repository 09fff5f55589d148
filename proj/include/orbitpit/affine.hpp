#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>

#include "orbitpit/errors.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/rational.hpp"
#include "orbitpit/sparse_poly.hpp"

namespace orbitpit {

// Affine function c + sum_i a_i x_i.  Zero linear coefficients are never
// stored.  Arity is implicit: evaluation and conversion check indices
// against the supplied arity.
class AffineForm {
public:
    AffineForm() : constant_(0) {}
    AffineForm(Rational constant) : constant_(std::move(constant)) {}
    AffineForm(int constant) : constant_(constant) {}

    static AffineForm variable(std::size_t index, Rational coefficient = Rational(1)) {
        AffineForm form;
        form.set_linear(index, std::move(coefficient));
        return form;
    }

    const Rational& constant() const { return constant_; }
    void set_constant(Rational value) { constant_ = std::move(value); }

    const std::map<std::size_t, Rational>& linear() const { return linear_; }

    Rational linear_coeff(std::size_t index) const {
        const auto it = linear_.find(index);
        return it == linear_.end() ? Rational(0) : it->second;
    }

    void set_linear(std::size_t index, Rational coefficient) {
        if (coefficient == 0) {
            linear_.erase(index);
        } else {
            linear_[index] = std::move(coefficient);
        }
    }

    bool is_zero() const { return constant_ == 0 && linear_.empty(); }
    bool is_constant() const { return linear_.empty(); }

    std::size_t max_variable_index() const {
        return linear_.empty() ? 0 : linear_.rbegin()->first;
    }

    Rational eval(std::span<const Rational> point) const {
        Rational value = constant_;
        for (const auto& [index, coefficient] : linear_) {
            if (index >= point.size()) {
                throw dimension_error("affine form uses variable " + std::to_string(index) +
                                      " beyond point arity " + std::to_string(point.size()));
            }
            value += coefficient * point[index];
        }
        return value;
    }

    SparsePoly to_poly(std::size_t nvars) const {
        SparsePoly p(nvars);
        p.add_term(Monomial::one(), constant_);
        for (const auto& [index, coefficient] : linear_) {
            p.add_term(Monomial::variable(index), coefficient);
        }
        return p;
    }

    AffineForm operator+(const AffineForm& other) const {
        AffineForm result = *this;
        result.constant_ += other.constant_;
        for (const auto& [index, coefficient] : other.linear_) {
            result.set_linear(index, result.linear_coeff(index) + coefficient);
        }
        return result;
    }

    AffineForm operator-(const AffineForm& other) const {
        return *this + other.scaled(Rational(-1));
    }

    AffineForm scaled(const Rational& factor) const {
        AffineForm result;
        if (factor == 0) {
            return result;
        }
        result.constant_ = constant_ * factor;
        for (const auto& [index, coefficient] : linear_) {
            result.linear_[index] = coefficient * factor;
        }
        return result;
    }

    AffineForm operator*(const Rational& factor) const { return scaled(factor); }

    bool operator==(const AffineForm& other) const = default;

private:
    Rational constant_;
    std::map<std::size_t, Rational> linear_;
};

}  // namespace orbitpit
