#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "orbitpit/errors.hpp"
#include "orbitpit/monomial.hpp"
#include "orbitpit/rational.hpp"

namespace orbitpit {

// Multivariate polynomial over Q as a map monomial -> nonzero coefficient.
// The zero polynomial is the empty map; arity is explicit and all binary
// operations require matching arity.
class SparsePoly {
public:
    explicit SparsePoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static SparsePoly constant(std::size_t nvars, Rational value) {
        SparsePoly p(nvars);
        p.add_term(Monomial::one(), std::move(value));
        return p;
    }

    static SparsePoly variable(std::size_t nvars, std::size_t index) {
        SparsePoly p(nvars);
        p.add_term(Monomial::variable(index), 1);
        return p;
    }

    std::size_t nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Monomial, Rational>& terms() const { return terms_; }

    void add_term(const Monomial& monomial, const Rational& coefficient) {
        if (coefficient == 0) {
            return;
        }
        if (!monomial.exponents().empty() && monomial.max_variable_index() >= nvars_) {
            throw dimension_error("monomial uses variable " +
                                  std::to_string(monomial.max_variable_index()) +
                                  " but polynomial has " + std::to_string(nvars_) + " variables");
        }
        auto [it, inserted] = terms_.emplace(monomial, coefficient);
        if (!inserted) {
            it->second += coefficient;
            if (it->second == 0) {
                terms_.erase(it);
            }
        }
    }

    Rational coeff(const Monomial& monomial) const {
        const auto it = terms_.find(monomial);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    SparsePoly operator+(const SparsePoly& other) const {
        require_same_arity(other, "sum");
        SparsePoly result = *this;
        for (const auto& [monomial, coefficient] : other.terms_) {
            result.add_term(monomial, coefficient);
        }
        return result;
    }

    SparsePoly operator-() const {
        SparsePoly result(nvars_);
        for (const auto& [monomial, coefficient] : terms_) {
            result.terms_.emplace(monomial, -coefficient);
        }
        return result;
    }

    SparsePoly operator-(const SparsePoly& other) const { return *this + (-other); }

    SparsePoly operator*(const SparsePoly& other) const {
        require_same_arity(other, "product");
        SparsePoly result(nvars_);
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : other.terms_) {
                result.add_term(ma.times(mb), ca * cb);
            }
        }
        return result;
    }

    SparsePoly scaled(const Rational& factor) const {
        SparsePoly result(nvars_);
        if (factor == 0) {
            return result;
        }
        for (const auto& [monomial, coefficient] : terms_) {
            result.terms_.emplace(monomial, coefficient * factor);
        }
        return result;
    }

    bool operator==(const SparsePoly& other) const {
        return nvars_ == other.nvars_ && terms_ == other.terms_;
    }

    Rational eval(std::span<const Rational> point) const {
        if (point.size() != nvars_) {
            throw dimension_error("evaluation point has arity " + std::to_string(point.size()) +
                                  ", polynomial has " + std::to_string(nvars_));
        }
        Rational sum = 0;
        for (const auto& [monomial, coefficient] : terms_) {
            Rational term = coefficient;
            for (const auto& [index, exp] : monomial.exponents()) {
                term *= pow_rational(point[index], exp);
            }
            sum += term;
        }
        return sum;
    }

    // Largest exponent of one variable across all terms.
    std::size_t max_degree(std::size_t index) const {
        std::size_t degree = 0;
        for (const auto& [monomial, coefficient] : terms_) {
            degree = std::max(degree, monomial.exponent(index));
        }
        return degree;
    }

    std::vector<std::size_t> max_degrees() const {
        std::vector<std::size_t> degrees(nvars_, 0);
        for (const auto& [monomial, coefficient] : terms_) {
            for (const auto& [index, exp] : monomial.exponents()) {
                degrees[index] = std::max(degrees[index], exp);
            }
        }
        return degrees;
    }

    std::size_t total_degree() const {
        std::size_t degree = 0;
        for (const auto& [monomial, coefficient] : terms_) {
            degree = std::max(degree, monomial.total_degree());
        }
        return degree;
    }

    // f(g_0, ..., g_(n-1)); all images share an arity, which becomes the
    // arity of the result.
    SparsePoly compose(const std::vector<SparsePoly>& images) const {
        if (images.size() != nvars_) {
            throw dimension_error("composition needs " + std::to_string(nvars_) +
                                  " images, got " + std::to_string(images.size()));
        }
        std::size_t result_nvars = 0;
        for (const SparsePoly& g : images) {
            result_nvars = std::max(result_nvars, g.nvars());
        }
        for (const SparsePoly& g : images) {
            if (g.nvars() != result_nvars) {
                throw dimension_error("composition images have mixed arities");
            }
        }
        SparsePoly result(result_nvars);
        std::map<std::pair<std::size_t, std::size_t>, SparsePoly> power_cache;
        for (const auto& [monomial, coefficient] : terms_) {
            SparsePoly term = SparsePoly::constant(result_nvars, coefficient);
            for (const auto& [index, exp] : monomial.exponents()) {
                const auto key = std::make_pair(index, exp);
                auto it = power_cache.find(key);
                if (it == power_cache.end()) {
                    SparsePoly power = images[index];
                    for (std::size_t k = 1; k < exp; ++k) {
                        power = power * images[index];
                    }
                    it = power_cache.emplace(key, std::move(power)).first;
                }
                term = term * it->second;
            }
            result = result + term;
        }
        return result;
    }

    // Coefficient of variable^k, as a polynomial with the same arity in
    // which that variable no longer appears.
    SparsePoly coeff_of(std::size_t index, std::size_t k) const {
        SparsePoly result(nvars_);
        for (const auto& [monomial, coefficient] : terms_) {
            if (monomial.exponent(index) != k) {
                continue;
            }
            Monomial reduced = monomial;
            reduced.set_exponent(index, 0);
            result.terms_.emplace(reduced, coefficient);
        }
        return result;
    }

    // Reinterprets with a different arity; shrinking requires the dropped
    // variables to be unused.
    SparsePoly with_arity(std::size_t nvars) const {
        SparsePoly result(nvars);
        for (const auto& [monomial, coefficient] : terms_) {
            result.add_term(monomial, coefficient);
        }
        return result;
    }

private:
    void require_same_arity(const SparsePoly& other, const std::string& op) const {
        if (nvars_ != other.nvars_) {
            throw dimension_error("polynomial " + op + " with mixed arities " +
                                  std::to_string(nvars_) + " vs " + std::to_string(other.nvars_));
        }
    }

    std::size_t nvars_;
    std::map<Monomial, Rational> terms_;
};

inline Rational poly_eval(const SparsePoly& f, std::span<const Rational> point) {
    return f.eval(point);
}

inline Rational poly_coeff(const SparsePoly& f, const Monomial& m) { return f.coeff(m); }

}  // namespace orbitpit
