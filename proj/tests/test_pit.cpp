#include <catch2/catch_amalgamated.hpp>

#include <orbitpit/orbitpit.hpp>

#include "generators.hpp"

using namespace orbitpit;

TEST_CASE("bruteforce_zero_test", "[pit]") {
    REQUIRE(bruteforce_zero_test(SparsePoly(2)).is_zero);

    SparsePoly cancel(1);
    cancel.add_term(Monomial::variable(0), 1);
    cancel.add_term(Monomial::variable(0), -1);
    REQUIRE(bruteforce_zero_test(cancel).is_zero);

    // (x+1)^2 - x^2 - 2x - 1 built symbolically.
    SparsePoly x_plus_1(1);
    x_plus_1.add_term(Monomial::variable(0), 1);
    x_plus_1.add_term(Monomial::one(), 1);
    SparsePoly expanded = x_plus_1 * x_plus_1;
    expanded.add_term(Monomial::variable(0, 2), -1);
    expanded.add_term(Monomial::variable(0), -2);
    expanded.add_term(Monomial::one(), -1);
    REQUIRE(bruteforce_zero_test(expanded).is_zero);
}

TEST_CASE("whitebox_roabp_zero_test", "[pit]") {
    Rng rng(61);

    SECTION("difference of a program with itself is zero") {
        const Roabp p = testgen::random_roabp(rng, 3, 3, 2);
        REQUIRE(whitebox_roabp_zero_test(roabp_sub(p, p)).is_zero);
    }
    SECTION("single path yields the witness monomial x1 x2") {
        std::vector<PolyMatrix> layers(2, PolyMatrix(1, 1));
        SparsePoly x1(2);
        x1.add_term(Monomial::variable(0), 1);
        SparsePoly x2(2);
        x2.add_term(Monomial::variable(1), 1);
        layers[0].at(0, 0) = x1;
        layers[1].at(0, 0) = x2;
        const Roabp p(2, std::move(layers));
        const PitVerdict verdict = whitebox_roabp_zero_test(p);
        REQUIRE(!verdict.is_zero);
        REQUIRE(verdict.witness_monomial ==
                Monomial::variable(0).times(Monomial::variable(1)));
    }
    SECTION("matches the expansion oracle on 200 random programs") {
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t width = 1 + rng.below(4);
            const std::size_t depth = 1 + rng.below(4);
            const std::size_t degree = 1 + rng.below(3);
            Roabp p = testgen::random_roabp(rng, width, depth, degree);
            if (trial % 2 == 1) {
                p = roabp_sub(p, p);
            }
            const PitVerdict fast = whitebox_roabp_zero_test(p);
            const SparsePoly expanded = expand_roabp(p);
            REQUIRE(fast.is_zero == expanded.is_zero());
            if (!fast.is_zero) {
                // The witness monomial rechecks nonzero.
                REQUIRE(expanded.coeff(*fast.witness_monomial) != 0);
            }
        }
    }
    SECTION("elimination steps stay within the cubic envelope when w doubles") {
        WhiteboxStats small_stats;
        WhiteboxStats big_stats;
        Rng rng_small(62);
        Rng rng_big(62);
        std::size_t small_steps = 0;
        std::size_t big_steps = 0;
        for (int trial = 0; trial < 5; ++trial) {
            whitebox_roabp_zero_test(testgen::random_roabp(rng_small, 2, 4, 3), &small_stats);
            whitebox_roabp_zero_test(testgen::random_roabp(rng_big, 4, 4, 3), &big_stats);
        }
        small_steps = small_stats.elimination_steps;
        big_steps = big_stats.elimination_steps;
        REQUIRE(big_steps <= 8 * small_steps);
    }
}

TEST_CASE("schwartz_zippel_zero_test", "[pit]") {
    SECTION("constant zero evaluator") {
        const BlackboxEvaluator zero = [](std::span<const Rational>) { return Rational(0); };
        for (std::uint64_t seed : {1, 7, 42}) {
            const PitVerdict verdict = schwartz_zippel_zero_test(zero, 2, 3, 5, seed);
            REQUIRE(verdict.is_zero);
            REQUIRE(verdict.confidence.has_value());
        }
    }
    SECTION("x1 x2 with the documented failure bound") {
        const BlackboxEvaluator product = [](std::span<const Rational> point) {
            return point[0] * point[1];
        };
        const PitVerdict verdict = schwartz_zippel_zero_test(product, 2, 2, 5, 3);
        REQUIRE(!verdict.is_zero);
        REQUIRE(verdict.witness_point.has_value());
        REQUIRE(verdict.witness_point->second ==
                verdict.witness_point->first[0] * verdict.witness_point->first[1]);
        // Bound arithmetic: with |S| = 20 and 5 trials the zero verdict would
        // have confidence 1 - (2/20)^5 = 1 - 1e-5.
        const Rational miss = Rational(2, 20);
        REQUIRE(Rational(1) - pow_rational(miss, 5) == Rational(99999, 100000));
    }
    SECTION("rank-deficient symbolic pencil matches the symbolic determinant") {
        // P1 = P2 singular: det(P1 x1 + P1 x2) = det(P1) (x1+x2)^2 = 0.
        Matrix p1(2, 2);
        p1.at(0, 0) = 1;
        p1.at(0, 1) = 1;
        p1.at(1, 0) = 1;
        p1.at(1, 1) = 1;
        const BlackboxEvaluator pencil_det = [&](std::span<const Rational> x) {
            return det_division_free(p1.scaled(x[0]) + p1.scaled(x[1]));
        };
        const PitVerdict verdict = schwartz_zippel_zero_test(pencil_det, 2, 2, 8, 5);
        REQUIRE(verdict.is_zero);

        // Symbolic oracle for the 2x2 case: det as a polynomial identity.
        SparsePoly x1(2);
        x1.add_term(Monomial::variable(0), 1);
        SparsePoly x2(2);
        x2.add_term(Monomial::variable(1), 1);
        const SparsePoly sum = x1 + x2;
        const SparsePoly symbolic_det =
            (sum.scaled(p1.at(0, 0)) * sum.scaled(p1.at(1, 1))) -
            (sum.scaled(p1.at(0, 1)) * sum.scaled(p1.at(1, 0)));
        REQUIRE(symbolic_det.is_zero() == verdict.is_zero);
    }
    SECTION("fixed seeds give identical points") {
        std::vector<std::vector<Rational>> first;
        std::vector<std::vector<Rational>> second;
        const BlackboxEvaluator recorder_a = [&](std::span<const Rational> point) {
            first.emplace_back(point.begin(), point.end());
            return Rational(0);
        };
        const BlackboxEvaluator recorder_b = [&](std::span<const Rational> point) {
            second.emplace_back(point.begin(), point.end());
            return Rational(0);
        };
        schwartz_zippel_zero_test(recorder_a, 3, 4, 6, 99);
        schwartz_zippel_zero_test(recorder_b, 3, 4, 6, 99);
        REQUIRE(first == second);
    }
}

TEST_CASE("grid_hitting_set", "[pit]") {
    SECTION("univariate grid") {
        const HittingSet h = grid_hitting_set(1, 2);
        REQUIRE(h.points.size() == 3);
        for (std::size_t i = 0; i < 3; ++i) {
            REQUIRE(h.points[i] == std::vector<Rational>{Rational(i)});
        }
    }
    SECTION("bivariate grid of size 4") {
        const HittingSet h = grid_hitting_set(2, 1);
        REQUIRE(h.points.size() == 4);
    }
    SECTION("cap is enforced") {
        REQUIRE_THROWS_AS(grid_hitting_set(10, 100), size_error);
    }
    SECTION("every nonzero bidegree-2 polynomial is hit on the 3x3 grid") {
        Rng rng(63);
        const HittingSet h = grid_hitting_set(2, 2);
        for (int trial = 0; trial < 40; ++trial) {
            const SparsePoly f = testgen::random_poly(rng, 2, 2, 4);
            if (f.is_zero()) {
                continue;
            }
            bool hit = false;
            for (const auto& point : h.points) {
                if (f.eval(point) != 0) {
                    hit = true;
                    break;
                }
            }
            REQUIRE(hit);
        }
    }
}

TEST_CASE("random_hitting_set", "[pit]") {
    SECTION("empty set") {
        REQUIRE(random_hitting_set(3, 0, 1, 10).points.empty());
    }
    SECTION("deterministic per seed") {
        const HittingSet a = random_hitting_set(3, 5, 17, 100);
        const HittingSet b = random_hitting_set(3, 5, 17, 100);
        REQUIRE(a.points == b.points);
        REQUIRE(a.provenance == HittingSetProvenance::Random);
    }
    SECTION("hits fixed nonzero degree-4 polynomials empirically") {
        Rng rng(64);
        for (int trial = 0; trial < 100; ++trial) {
            SparsePoly f = testgen::random_poly(rng, 2, 2, 3);
            if (f.is_zero()) {
                f.add_term(Monomial::variable(0, 4), 1);
            }
            const HittingSet h = random_hitting_set(2, 5, 1000 + trial, 100);
            bool hit = false;
            for (const auto& point : h.points) {
                if (f.eval(point) != 0) {
                    hit = true;
                    break;
                }
            }
            REQUIRE(hit);
        }
    }
}
