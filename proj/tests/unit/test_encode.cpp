#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "kcsat/encode.hpp"
#include "kcsat/error.hpp"
#include "kcsat/rng.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace kcsat;

// Booleans of the mixed-domain fixture: u -> 1,2   v -> 3,4   w -> 5,6,7.

TEST_CASE("direct encoding emits exactly the expected clauses in order", "[encode]") {
    const CspInstance inst = testing::mixed_domain_instance();
    const Encoding enc = direct_encode(inst);

    const std::vector<Clause> expected = {
        // one value per variable
        Clause({1, 2}), Clause({3, 4}), Clause({5, 6, 7}),
        // at most one value per variable, pairs in domain order
        Clause({-1, -2}), Clause({-3, -4}),
        Clause({-5, -6}), Clause({-5, -7}), Clause({-6, -7}),
        // forbidden tuples of the ternary constraint, lexicographic
        Clause({-1, -3, -5}), Clause({-1, -4, -5}), Clause({-1, -4, -6}),
        Clause({-2, -3, -5}), Clause({-2, -3, -6}), Clause({-2, -3, -7}),
        Clause({-2, -4, -5}), Clause({-2, -4, -6}),
    };
    REQUIRE(enc.cnf.num_vars() == 7);
    REQUIRE(enc.cnf.clauses() == expected);

    // Dropping the at-most-one block keeps everything else untouched.
    const Encoding loose = direct_encode(inst, false);
    REQUIRE(loose.cnf.size() == 11);
    REQUIRE(loose.cnf.clauses()[3] == Clause({-1, -3, -5}));
}

TEST_CASE("support encoding lists supports per direction and value", "[encode]") {
    const CspInstance inst = testing::mixed_domain_instance_binary();
    const Encoding enc = support_encode(inst);

    const std::vector<Clause> expected = {
        Clause({1, 2}), Clause({3, 4}), Clause({5, 6, 7}),
        Clause({-1, -2}), Clause({-3, -4}),
        Clause({-5, -6}), Clause({-5, -7}), Clause({-6, -7}),
        // u <= v: u's supports in v, then v's supports in u
        Clause({-1, 3, 4}), Clause({-2, 4}),
        Clause({1, -3}), Clause({1, 2, -4}),
        // v < w: v's supports in w, then w's supports in v; w=0 has none,
        // which degenerates to a unit clause.
        Clause({-3, 6, 7}), Clause({-4, 7}),
        Clause({-5}), Clause({3, -6}), Clause({3, 4, -7}),
    };
    REQUIRE(enc.cnf.clauses() == expected);

    // Only binary constraints have a support shape.
    REQUIRE_THROWS_AS(support_encode(testing::mixed_domain_instance()), Error);
}

TEST_CASE("caller-supplied negative clauses ride on the generated skeleton", "[encode]") {
    const CspInstance inst = testing::mixed_domain_instance();
    const Encoding direct_loose = direct_encode(inst, false);

    // Re-supplying the direct no-goods must reproduce the loose direct encoding.
    std::vector<Clause> negatives(direct_loose.cnf.clauses().begin() + 3,
                                  direct_loose.cnf.clauses().end());
    const Encoding rebuilt = negative_sparse_encode(inst, negatives);
    REQUIRE(rebuilt.cnf == direct_loose.cnf);

    REQUIRE_THROWS_AS(negative_sparse_encode(inst, std::vector<Clause>{Clause({1, -3})}),
                      Error);
    REQUIRE_THROWS_AS(negative_sparse_encode(inst, std::vector<Clause>{Clause({-99})}),
                      Error);
}

TEST_CASE("direct and support encodings preserve the solution count", "[encode]") {
    Rng rng(0xfeedface);
    int checked = 0;
    for (int round = 0; round < 60; ++round) {
        const CspInstance inst = testing::random_instance(rng);
        const Encoding enc = direct_encode(inst);
        if (enc.cnf.num_vars() > 18) continue;
        const auto solutions = enumerate_solutions(inst, 1u << 20);
        REQUIRE(testing::truth_table_count(enc.cnf) == solutions.size());
        ++checked;
    }
    REQUIRE(checked >= 30);

    for (int round = 0; round < 40; ++round) {
        const CspInstance inst = testing::random_binary_instance(rng);
        const Encoding enc = support_encode(inst);
        if (enc.cnf.num_vars() > 18) continue;
        REQUIRE(testing::truth_table_count(enc.cnf) ==
                enumerate_solutions(inst, 1u << 20).size());
    }
}

TEST_CASE("models decode back to the solutions they encode", "[encode]") {
    const CspInstance inst = testing::mixed_domain_instance();
    const Encoding enc = direct_encode(inst);
    const auto oracle = testing::truth_table_solve(enc.cnf);
    REQUIRE(oracle.sat);

    const PartialAssignment decoded = decode_model(enc.map, oracle.model);
    REQUIRE(decoded.size() == 3);
    REQUIRE(is_partial_solution(inst, decoded));

    // A model with every boolean false has no value to read off.
    const std::vector<bool> broken(7, false);
    REQUIRE_THROWS_AS(decode_model(enc.map, broken), Error);
}
