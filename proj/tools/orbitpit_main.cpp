// Command-line surface: decision procedures, generators, converters, and
// self-check oracles over the JSON file formats documented in the README.
//
// Exit codes: 0 success, 1 selfcheck mismatch, 2 malformed input.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include <orbitpit/orbitpit.hpp>

namespace {

using namespace orbitpit;

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw parse_error("cannot open \"" + path + "\"");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
}

void emit(const Json& document) { std::cout << document.dump(2) << "\n"; }

// --hitting-set grid | random:<seed>:<count> | file:<path>
HittingSet hitting_set_from_spec(const std::string& spec, std::size_t n, std::size_t r) {
    const std::size_t arity = n * n;
    if (spec == "grid") {
        return grid_hitting_set(arity, r == 0 ? 0 : r - 1);
    }
    if (spec.rfind("random:", 0) == 0) {
        const std::string rest = spec.substr(7);
        const auto colon = rest.find(':');
        if (colon == std::string::npos) {
            throw parse_error("random hitting-set spec needs random:<seed>:<count>");
        }
        try {
            const std::uint64_t seed = std::stoull(rest.substr(0, colon));
            const std::size_t count = std::stoull(rest.substr(colon + 1));
            const std::size_t total_degree = arity * (r == 0 ? 0 : r - 1);
            const std::uint64_t range =
                std::max<std::uint64_t>(2 * static_cast<std::uint64_t>(total_degree) * count, 101);
            return random_hitting_set(arity, count, seed, range);
        } catch (const std::invalid_argument&) {
            throw parse_error("bad numbers in hitting-set spec \"" + spec + "\"");
        }
    }
    if (spec.rfind("file:", 0) == 0) {
        return hitting_set_from_json(load_json(spec.substr(5)));
    }
    throw parse_error("unknown hitting-set provider \"" + spec + "\"");
}

int run_orbit_closure(const std::string& a_path, const std::string& b_path,
                      const std::string& method, const std::string& hitting_set_spec,
                      std::size_t max_ell, bool verbose) {
    const MatrixTuple a = matrix_tuple_from_json(load_json(a_path));
    const MatrixTuple b = matrix_tuple_from_json(load_json(b_path));
    if (!a.same_shape(b)) {
        throw dimension_error("tuple shapes differ: expected (n=" + std::to_string(a.n()) +
                              ", r=" + std::to_string(a.r()) + "), got (n=" +
                              std::to_string(b.n()) + ", r=" + std::to_string(b.r()) + ")");
    }
    if (method == "whitebox") {
        WhiteboxStats stats;
        const OrbitClosureVerdict verdict =
            orbit_closure_intersects(a, b, max_ell, verbose ? &stats : nullptr);
        Json out = orbit_closure_verdict_to_json(verdict);
        if (verbose) {
            out["stats"] = Json{{"elimination_steps", stats.elimination_steps},
                                {"max_coefficient_bits", stats.max_coefficient_bits}};
        }
        emit(out);
        return 0;
    }
    if (method != "blackbox") {
        throw parse_error("unknown method \"" + method + "\"; use whitebox or blackbox");
    }
    const HittingSet h = hitting_set_from_spec(hitting_set_spec, a.n(), a.r());
    const std::vector<InvariantDescriptor> family = separating_family(a.n(), a.r(), h);
    const std::optional<InvariantDescriptor> separator = separates(a, b, family);
    const bool randomized = h.provenance == HittingSetProvenance::Random;
    Json out;
    out["method"] = randomized ? "randomized" : "whitebox";
    out["family_size"] = family.size();
    if (separator.has_value()) {
        out["decision"] = "disjoint";
        std::vector<Rational> point(separator->alpha.begin(),
                                    separator->alpha.begin() + separator->ell);
        out["witness"] = Json{{"ell", separator->ell}, {"point", point_to_json(point)}};
    } else {
        out["decision"] = "intersecting";
    }
    emit(out);
    return 0;
}

int run_orbit_member(const std::string& a_path, const std::string& b_path, std::uint64_t seed,
                     std::size_t trials) {
    const MatrixTuple a = matrix_tuple_from_json(load_json(a_path));
    const MatrixTuple b = matrix_tuple_from_json(load_json(b_path));
    const OrbitMembershipVerdict verdict = orbit_member(a, b, seed, trials);
    emit(orbit_membership_verdict_to_json(verdict));
    return 0;
}

int run_pit_roabp(const std::string& circuit_path, bool verbose) {
    const Json j = load_json(circuit_path);
    const Circuit circuit = circuit_from_json(j);
    const Roabp* roabp = std::get_if<Roabp>(&circuit);
    if (roabp == nullptr) {
        throw parse_error("pit-roabp needs a circuit of kind \"roabp\"");
    }
    WhiteboxStats stats;
    const PitVerdict verdict = whitebox_roabp_zero_test(*roabp, verbose ? &stats : nullptr);
    Json out = pit_verdict_to_json(verdict);
    if (verbose) {
        out["stats"] = Json{{"elimination_steps", stats.elimination_steps},
                            {"max_coefficient_bits", stats.max_coefficient_bits}};
    }
    emit(out);
    return 0;
}

int run_pit_diagonal(const std::string& circuit_path) {
    const DiagonalCircuit circuit = diagonal_from_json(load_json(circuit_path));
    emit(pit_verdict_to_json(blackbox_zero_test_diagonal(circuit)));
    return 0;
}

int run_hitgen_diagonal(std::size_t n, std::size_t d, std::size_t m) {
    emit(hitting_set_to_json(hitting_set_diagonal(n, d, m)));
    return 0;
}

int run_convert(const std::string& circuit_path, const std::string& target,
                std::size_t d_prime) {
    const Circuit circuit = circuit_from_json(load_json(circuit_path));
    if (target == "trace-power") {
        const Abp* abp = std::get_if<Abp>(&circuit);
        if (abp == nullptr) {
            throw parse_error("conversion to trace-power needs an \"abp\" circuit");
        }
        const TracePower result =
            d_prime == 0 ? abp_to_trace_power(*abp) : abp_to_trace_power(*abp, d_prime);
        emit(trace_power_to_json(result));
        return 0;
    }
    if (target == "abp") {
        const TracePower* trace = std::get_if<TracePower>(&circuit);
        if (trace == nullptr) {
            throw parse_error("conversion to abp needs a \"trace_power\" circuit");
        }
        emit(abp_to_json(trace_power_to_abp(*trace)));
        return 0;
    }
    throw parse_error("unknown conversion target \"" + target + "\"");
}

int run_expand(const std::string& circuit_path) {
    const Json j = load_json(circuit_path);
    if (j.is_object() && j.contains("kind")) {
        const Circuit circuit = circuit_from_json(j);
        if (const Abp* abp = std::get_if<Abp>(&circuit)) {
            emit(sparse_poly_to_json(expand_abp(*abp)));
        } else if (const Roabp* roabp = std::get_if<Roabp>(&circuit)) {
            emit(sparse_poly_to_json(expand_roabp(*roabp)));
        } else {
            emit(sparse_poly_to_json(std::get<TracePower>(circuit).expand()));
        }
        return 0;
    }
    if (j.is_object() && j.contains("terms")) {
        emit(sparse_poly_to_json(expand_diagonal(diagonal_from_json(j))));
        return 0;
    }
    throw parse_error("expand needs a circuit (with \"kind\") or a diagonal circuit "
                      "(with \"terms\")");
}

// ---------------------------------------------------------------------------
// selfcheck: seeded oracle suites; any mismatch is a nonzero exit.
// ---------------------------------------------------------------------------

SparsePoly random_poly(Rng& rng, std::size_t nvars, std::size_t max_degree, std::size_t terms) {
    SparsePoly f(nvars);
    for (std::size_t t = 0; t < terms; ++t) {
        Monomial m;
        for (std::size_t i = 0; i < nvars; ++i) {
            m.set_exponent(i, rng.below(max_degree + 1));
        }
        f.add_term(m, rng.integer_between(-4, 4));
    }
    return f;
}

Roabp random_roabp(Rng& rng, std::size_t width, std::size_t depth, std::size_t degree) {
    std::vector<PolyMatrix> layers;
    for (std::size_t i = 0; i < depth; ++i) {
        const std::size_t rows = i == 0 ? 1 : width;
        const std::size_t cols = i == depth - 1 ? 1 : width;
        PolyMatrix layer(rows, cols);
        for (std::size_t a = 0; a < rows; ++a) {
            for (std::size_t b = 0; b < cols; ++b) {
                SparsePoly entry(depth);
                for (std::size_t k = 0; k < degree; ++k) {
                    entry.add_term(Monomial::variable(i, k), rng.integer_between(-5, 5));
                }
                layer.at(a, b) = std::move(entry);
            }
        }
        layers.push_back(std::move(layer));
    }
    return Roabp(degree, std::move(layers));
}

MatrixTuple random_tuple(Rng& rng, std::size_t n, std::size_t r) {
    std::vector<Matrix> matrices;
    for (std::size_t i = 0; i < r; ++i) {
        Matrix m(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                m.at(a, b) = rng.integer_between(-3, 3);
            }
        }
        matrices.push_back(std::move(m));
    }
    return MatrixTuple(std::move(matrices));
}

Matrix random_invertible(Rng& rng, std::size_t n) {
    while (true) {
        Matrix p(n, n);
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                p.at(a, b) = rng.integer_between(-3, 3);
            }
        }
        if (det_division_free(p) != 0) {
            return p;
        }
    }
}

struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
};

SuiteResult selfcheck_expansion_agreement(Rng& rng) {
    SuiteResult result{"expansion-agreement"};
    for (std::size_t i = 0; i < 60; ++i) {
        const std::size_t width = 1 + rng.below(4);
        const std::size_t depth = 1 + rng.below(4);
        const std::size_t degree = 1 + rng.below(3);
        Roabp p = random_roabp(rng, width, depth, degree);
        if (i % 2 == 1) {
            p = roabp_sub(p, p);
        }
        const SparsePoly expanded = expand_roabp(p);
        const PitVerdict fast = whitebox_roabp_zero_test(p);
        const PitVerdict oracle = bruteforce_zero_test(expanded);
        ++result.cases;
        if (fast.is_zero != oracle.is_zero) {
            ++result.failures;
            continue;
        }
        for (std::size_t q = 0; q < 3; ++q) {
            const std::vector<Rational> point = rng.point_below(depth, 7);
            if (expanded.eval(point) != p.eval(point)) {
                ++result.failures;
                break;
            }
        }
    }
    return result;
}

SuiteResult selfcheck_word_trace_agreement(Rng& rng) {
    SuiteResult result{"word-trace-agreement"};
    for (std::size_t i = 0; i < 30; ++i) {
        const MatrixTuple a = random_tuple(rng, 2, 2);
        MatrixTuple b = a;
        if (i % 3 == 0) {
            b = a.conjugated(random_invertible(rng, 2));
        } else if (i % 3 == 1) {
            b = random_tuple(rng, 2, 2);
        }
        const bool oracle = trace_word_oracle(a, b, 4);
        const OrbitClosureVerdict verdict = orbit_closure_intersects(a, b);
        ++result.cases;
        if ((verdict.decision == ClosureDecision::Intersecting) != oracle) {
            ++result.failures;
        }
    }
    return result;
}

SuiteResult selfcheck_chain_rule(Rng& rng) {
    SuiteResult result{"chain-rule"};
    for (std::size_t i = 0; i < 25; ++i) {
        const SparsePoly f = random_poly(rng, 2, 3, 3);
        const std::vector<SparsePoly> inner{random_poly(rng, 2, 2, 3), random_poly(rng, 2, 2, 3)};
        const std::vector<Rational> u{rng.integer_between(-3, 3), rng.integer_between(-3, 3)};
        const std::size_t k = 1 + rng.below(3);
        const SparsePoly direct = hasse_directional(f.compose(inner), u, k);
        const SparsePoly formula = hasse_chain_rule_sum(f, inner, u, k);
        ++result.cases;
        if (!(direct == formula)) {
            ++result.failures;
        }
    }
    return result;
}

int run_selfcheck(std::uint64_t seed, bool verbose) {
    Rng rng(seed);
    std::vector<SuiteResult> suites{selfcheck_expansion_agreement(rng),
                                    selfcheck_word_trace_agreement(rng),
                                    selfcheck_chain_rule(rng)};
    bool ok = true;
    Json out;
    out["seed"] = seed;
    out["suites"] = Json::array();
    for (const SuiteResult& suite : suites) {
        out["suites"].push_back(Json{{"name", suite.name},
                                     {"cases", suite.cases},
                                     {"mismatches", suite.failures}});
        ok = ok && suite.failures == 0;
    }
    out["ok"] = ok;
    if (verbose) {
        WhiteboxStats stats;
        const MatrixTuple probe = random_tuple(rng, 2, 2);
        orbit_closure_intersects(probe, probe, 0, &stats);
        out["stats"] = Json{{"max_coefficient_bits", stats.max_coefficient_bits}};
    }
    emit(out);
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic identity testing and matrix-tuple orbit decisions"};
    app.require_subcommand(1);

    bool verbose = false;
    app.add_flag("--verbose", verbose, "report coefficient bit lengths where applicable");

    std::string a_path;
    std::string b_path;
    std::string circuit_path;
    std::string method = "whitebox";
    std::string hitting_set_spec = "grid";
    std::string convert_target;
    std::size_t max_ell = 0;
    std::size_t trials = 10;
    std::size_t d_prime = 0;
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t m = 0;
    std::uint64_t seed = 0;

    CLI::App* orbit_closure = app.add_subcommand(
        "orbit-closure", "decide whether two tuples have intersecting orbit closures");
    orbit_closure->add_option("--a", a_path, "first tuple JSON file")->required();
    orbit_closure->add_option("--b", b_path, "second tuple JSON file")->required();
    orbit_closure->add_option("--method", method, "whitebox (default) or blackbox");
    orbit_closure->add_option("--hitting-set", hitting_set_spec,
                              "grid | random:<seed>:<count> | file:<path> (blackbox method)");
    orbit_closure->add_option("--max-ell", max_ell,
                              "override the word-length bound (default n^2)");

    CLI::App* orbit_member_cmd =
        app.add_subcommand("orbit-member", "decide conjugacy of two tuples");
    orbit_member_cmd->add_option("--a", a_path, "first tuple JSON file")->required();
    orbit_member_cmd->add_option("--b", b_path, "second tuple JSON file")->required();
    orbit_member_cmd->add_option("--seed", seed, "randomness seed")->required();
    orbit_member_cmd->add_option("--trials", trials, "determinant evaluation attempts");

    CLI::App* pit_roabp = app.add_subcommand("pit-roabp", "white-box ROABP zero test");
    pit_roabp->add_option("--circuit", circuit_path, "ROABP JSON file")->required();

    CLI::App* pit_diagonal =
        app.add_subcommand("pit-diagonal", "black-box diagonal-circuit zero test");
    pit_diagonal->add_option("--circuit", circuit_path, "diagonal circuit JSON file")->required();

    CLI::App* hitgen =
        app.add_subcommand("hitgen-diagonal", "emit the small-support hitting set");
    hitgen->add_option("--n", n, "variable count")->required();
    hitgen->add_option("--d", d, "degree bound")->required();
    hitgen->add_option("--m", m, "support bound")->required();

    CLI::App* convert = app.add_subcommand("convert", "convert between abp and trace-power");
    convert->add_option("--circuit", circuit_path, "circuit JSON file")->required();
    convert->add_option("--to", convert_target, "abp or trace-power")->required();
    convert->add_option("--dprime", d_prime, "trace-power exponent (default: ABP depth)");

    CLI::App* expand = app.add_subcommand("expand", "expand a circuit to a sparse polynomial");
    expand->add_option("--circuit", circuit_path, "circuit JSON file")->required();

    CLI::App* selfcheck = app.add_subcommand("selfcheck", "run the built-in oracle suites");
    selfcheck->add_option("--seed", seed, "randomness seed")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (orbit_closure->parsed()) {
            return run_orbit_closure(a_path, b_path, method, hitting_set_spec, max_ell, verbose);
        }
        if (orbit_member_cmd->parsed()) {
            return run_orbit_member(a_path, b_path, seed, trials);
        }
        if (pit_roabp->parsed()) {
            return run_pit_roabp(circuit_path, verbose);
        }
        if (pit_diagonal->parsed()) {
            return run_pit_diagonal(circuit_path);
        }
        if (hitgen->parsed()) {
            return run_hitgen_diagonal(n, d, m);
        }
        if (convert->parsed()) {
            return run_convert(circuit_path, convert_target, d_prime);
        }
        if (expand->parsed()) {
            return run_expand(circuit_path);
        }
        if (selfcheck->parsed()) {
            return run_selfcheck(seed, verbose);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
