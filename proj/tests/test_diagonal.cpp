#include <catch2/catch_amalgamated.hpp>

#include <orbitpit/orbitpit.hpp>

#include "generators.hpp"

using namespace orbitpit;

namespace {

AffineForm x_plus_y() { return AffineForm::variable(0) + AffineForm::variable(1); }

DiagonalCircuit odd_power_cancellation() {
    // (x1 + x2)^3 + (-x1 - x2)^3
    DiagonalTerm plus{{x_plus_y()}, {3}};
    DiagonalTerm minus{{x_plus_y().scaled(Rational(-1))}, {3}};
    return DiagonalCircuit(2, {plus, minus});
}

std::size_t choose(std::size_t n, std::size_t k) {
    return static_cast<std::size_t>(binomial(n, k).convert_to<unsigned long>());
}

std::size_t expected_hitting_set_size(std::size_t n, std::size_t d, std::size_t m) {
    std::size_t total = 0;
    for (std::size_t k = 0; k <= std::min(m, n); ++k) {
        std::size_t power = 1;
        for (std::size_t i = 0; i < k; ++i) {
            power *= d;
        }
        total += choose(n, k) * power;
    }
    return total;
}

}  // namespace

TEST_CASE("eval and expand", "[diagonal]") {
    SECTION("(x1+x2)^2 at (1,1)") {
        const DiagonalCircuit c(2, {DiagonalTerm{{x_plus_y()}, {2}}});
        const std::vector<Rational> point{Rational(1), Rational(1)};
        REQUIRE(eval_diagonal(c, point) == Rational(4));
    }
    SECTION("odd power cancellation expands to zero") {
        REQUIRE(expand_diagonal(odd_power_cancellation()).is_zero());
    }
    SECTION("arity mismatch") {
        const DiagonalCircuit c(2, {});
        const std::vector<Rational> point{Rational(1)};
        REQUIRE_THROWS_AS(eval_diagonal(c, point), dimension_error);
    }
    SECTION("eval agrees with expand on random circuits") {
        Rng rng(91);
        for (int trial = 0; trial < 10; ++trial) {
            const DiagonalCircuit c = testgen::random_diagonal(rng, 3, 3, 3);
            const SparsePoly expanded = expand_diagonal(c);
            for (int q = 0; q < 20; ++q) {
                const std::vector<Rational> point = rng.point_below(3, 7);
                REQUIRE(eval_diagonal(c, point) == expanded.eval(point));
            }
        }
    }
}

TEST_CASE("derivative_dim_bound", "[diagonal]") {
    SECTION("single cube: extent 4") {
        const DiagonalCircuit c(2, {DiagonalTerm{{x_plus_y()}, {3}}});
        REQUIRE(derivative_dim_bound(c) == 4);
    }
    SECTION("two terms: 3 + 4") {
        DiagonalTerm first{{x_plus_y()}, {2}};
        DiagonalTerm second{{AffineForm::variable(0), AffineForm::variable(1)}, {1, 1}};
        const DiagonalCircuit c(2, {first, second});
        REQUIRE(derivative_dim_bound(c) == 7);
    }
    SECTION("bounds the exact dimension of the expansion") {
        Rng rng(92);
        for (int trial = 0; trial < 15; ++trial) {
            const DiagonalCircuit c = testgen::random_diagonal(rng, 3, 3, 2);
            REQUIRE(derivative_dim_bound(c) >=
                    derivative_space_dimension(expand_diagonal(c)));
        }
    }
}

TEST_CASE("hitting_set_diagonal", "[diagonal]") {
    SECTION("n=2 d=1 m=1") {
        const HittingSet h = hitting_set_diagonal(2, 1, 1);
        REQUIRE(h.points.size() == 3);
        REQUIRE(h.points[0] == std::vector<Rational>{Rational(0), Rational(0)});
        REQUIRE(h.points[1] == std::vector<Rational>{Rational(1), Rational(0)});
        REQUIRE(h.points[2] == std::vector<Rational>{Rational(0), Rational(1)});
    }
    SECTION("m=0 keeps only the origin") {
        const HittingSet h = hitting_set_diagonal(3, 2, 0);
        REQUIRE(h.points.size() == 1);
        REQUIRE(h.points[0] == std::vector<Rational>(3, Rational(0)));
    }
    SECTION("m=n degenerates to the full grid") {
        const HittingSet h = hitting_set_diagonal(3, 2, 3);
        REQUIRE(h.points.size() == 27);
    }
    SECTION("size formula and the asymptotic envelope") {
        for (std::size_t n = 1; n <= 4; ++n) {
            for (std::size_t d = 1; d <= 3; ++d) {
                for (std::size_t m = 0; m <= n + 1; ++m) {
                    const HittingSet h = hitting_set_diagonal(n, d, m);
                    REQUIRE(h.points.size() == expected_hitting_set_size(n, d, m));
                    if (n >= 2 && d >= 2 && m >= 2) {
                        std::size_t envelope = 1;
                        for (std::size_t i = 0; i < m; ++i) {
                            envelope *= n * d;
                        }
                        REQUIRE(h.points.size() <= envelope);
                    }
                }
            }
        }
    }
    SECTION("monotone in m: each set prefixes the next") {
        for (std::size_t m = 0; m < 3; ++m) {
            const HittingSet smaller = hitting_set_diagonal(3, 2, m);
            const HittingSet larger = hitting_set_diagonal(3, 2, m + 1);
            REQUIRE(smaller.points.size() <= larger.points.size());
            for (std::size_t i = 0; i < smaller.points.size(); ++i) {
                REQUIRE(smaller.points[i] == larger.points[i]);
            }
        }
    }
}

TEST_CASE("blackbox_zero_test_diagonal", "[diagonal]") {
    SECTION("identically zero circuit") {
        REQUIRE(blackbox_zero_test_diagonal(odd_power_cancellation()).is_zero);
    }
    SECTION("(x1+x2)^2 is witnessed at (1,0)") {
        const DiagonalCircuit c(2, {DiagonalTerm{{x_plus_y()}, {2}}});
        const PitVerdict verdict = blackbox_zero_test_diagonal(c);
        REQUIRE(!verdict.is_zero);
        REQUIRE(verdict.witness_point.has_value());
        REQUIRE(verdict.witness_point->first ==
                std::vector<Rational>{Rational(1), Rational(0)});
        REQUIRE(verdict.witness_point->second == Rational(1));
    }
    SECTION("matches the expansion oracle on random circuits") {
        Rng rng(93);
        for (int trial = 0; trial < 100; ++trial) {
            DiagonalCircuit c = testgen::random_diagonal(rng, 1 + rng.below(4), 3, 3);
            const PitVerdict verdict = blackbox_zero_test_diagonal(c);
            REQUIRE(verdict.is_zero == expand_diagonal(c).is_zero());
            if (!verdict.is_zero) {
                REQUIRE(c.eval(verdict.witness_point->first) ==
                        verdict.witness_point->second);
            }
        }
    }
    SECTION("zero-by-construction circuits stay zero") {
        Rng rng(94);
        for (int trial = 0; trial < 10; ++trial) {
            // t + (-1)^deg mirrored copy cancels for odd total degree.
            const std::size_t e = 1 + 2 * rng.below(2);  // odd exponent
            const AffineForm form = testgen::random_affine(rng, 3, -2, 2);
            DiagonalTerm plus{{form}, {e}};
            DiagonalTerm minus{{form.scaled(Rational(-1))}, {e}};
            const DiagonalCircuit c(3, {plus, minus});
            REQUIRE(blackbox_zero_test_diagonal(c).is_zero);
        }
    }
    SECTION("small-support bound holds on the leading monomial") {
        Rng rng(95);
        const MonomialOrdering ord = MonomialOrdering::grlex();
        for (int trial = 0; trial < 25; ++trial) {
            const DiagonalCircuit c = testgen::random_diagonal(rng, 3, 3, 3);
            const SparsePoly expanded = expand_diagonal(c);
            if (expanded.is_zero()) {
                continue;
            }
            const std::size_t dim = derivative_space_dimension(expanded);
            const Monomial lead = leading_monomial(expanded, ord);
            REQUIRE((static_cast<std::size_t>(1) << lead.support_size()) <= dim);
        }
    }
}
