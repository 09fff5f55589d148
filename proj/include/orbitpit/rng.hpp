#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orbitpit/rational.hpp"

namespace orbitpit {

// Deterministic random source.  All randomized engines are reproducible for
// a fixed seed; uniformity below a bound uses rejection sampling rather than
// std::uniform_int_distribution so the stream does not depend on the
// standard-library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    // Uniform in {0, ..., bound-1}; bound >= 1.
    std::uint64_t below(std::uint64_t bound) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t value = engine_();
        while (value >= limit) {
            value = engine_();
        }
        return value % bound;
    }

    // Uniform integer in {lo, ..., hi} as a Rational.
    Rational integer_between(std::int64_t lo, std::int64_t hi) {
        const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
        return Rational(lo + static_cast<std::int64_t>(below(span)));
    }

    std::vector<Rational> point_below(std::size_t arity, std::uint64_t bound) {
        std::vector<Rational> point;
        point.reserve(arity);
        for (std::size_t i = 0; i < arity; ++i) {
            point.push_back(Rational(below(bound)));
        }
        return point;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace orbitpit
