#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "kcsat/bench.hpp"
#include "kcsat/encode.hpp"
#include "kcsat/error.hpp"
#include "kcsat/hyperres.hpp"
#include "kcsat/rng.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace kcsat;

TEST_CASE("one hyper-resolution step clears every positive literal", "[hyperres]") {
    const Clause nucleus({1, 2, -3});
    const std::vector<Clause> sides = {Clause({-1, -4}), Clause({-2, -5})};
    REQUIRE(negative_hyper_resolve(nucleus, sides) == Clause({-3, -4, -5}));

    // A side may mention another pivot's negation; only its own pivot is removed.
    const std::vector<Clause> overlapping = {Clause({-1, -2}), Clause({-2, -5})};
    REQUIRE(negative_hyper_resolve(nucleus, overlapping) == Clause({-2, -3, -5}));
}

TEST_CASE("malformed hyper-resolution steps are rejected", "[hyperres]") {
    const Clause nucleus({1, 2, -3});
    // No positive literal to pivot on.
    REQUIRE_THROWS_AS(
        negative_hyper_resolve(Clause({-1, -2}), std::vector<Clause>{Clause({-1})}), Error);
    // Side count must match the positive literal count.
    REQUIRE_THROWS_AS(negative_hyper_resolve(nucleus, std::vector<Clause>{Clause({-1})}),
                      Error);
    // Sides must be purely negative.
    REQUIRE_THROWS_AS(
        negative_hyper_resolve(nucleus,
                               std::vector<Clause>{Clause({-1, 6}), Clause({-2})}),
        Error);
    // Each side must negate its own pivot.
    REQUIRE_THROWS_AS(
        negative_hyper_resolve(nucleus,
                               std::vector<Clause>{Clause({-1}), Clause({-5})}),
        Error);
}

TEST_CASE("width-bounded saturation refutes an unsatisfiable chain", "[hyperres]") {
    const Encoding enc = direct_encode(generate_chain({1, 2}));
    const RefuteResult result = refute_width_k(enc.cnf, 1);
    REQUIRE(result.refuted);
    REQUIRE(result.trace.refutation());
    REQUIRE(result.trace.width() <= 1);
    REQUIRE(result.trace.steps.back().resolvent.empty());

    // Each recorded step must actually resolve to its recorded resolvent, the
    // ids must be consistent, and derived clauses respect the width bound.
    const int inputs = static_cast<int>(enc.cnf.size());
    int next_id = inputs;
    for (const NhrStep& step : result.trace.steps) {
        REQUIRE(negative_hyper_resolve(step.nucleus, step.sides) == step.resolvent);
        REQUIRE(step.resolvent_id == next_id++);
        REQUIRE(step.resolvent.size() <= 1);
        REQUIRE(step.nucleus_id >= 0);
        for (int side_id : step.side_ids) REQUIRE(side_id < step.resolvent_id);
    }
}

TEST_CASE("saturation verdicts are sound and eventually complete", "[hyperres]") {
    Rng rng(0xabcde);
    int refuted_seen = 0, satisfiable_seen = 0;
    for (int round = 0; round < 80; ++round) {
        const int n = 3 + static_cast<int>(rng.below(4)); // 3..6 variables
        const int m = 2 + static_cast<int>(rng.below(3 * n));
        const CnfFormula cnf = testing::random_cnf(rng, n, m, 3);
        const bool sat = testing::truth_table_solve(cnf).sat;

        // At full width the procedure decides the formula exactly.
        const RefuteResult full = refute_width_k(cnf, n);
        REQUIRE(full.refuted == !sat);
        (sat ? satisfiable_seen : refuted_seen) += 1;

        // At reduced width it may saturate, but must never refute a
        // satisfiable formula.
        const RefuteResult narrow = refute_width_k(cnf, std::max(1, n - 2));
        if (sat) REQUIRE_FALSE(narrow.refuted);
        if (narrow.refuted) REQUIRE_FALSE(sat);
    }
    REQUIRE(refuted_seen >= 5);
    REQUIRE(satisfiable_seen >= 5);
}

TEST_CASE("seeding order changes traces but never verdicts", "[hyperres]") {
    Rng rng(77);
    for (int round = 0; round < 20; ++round) {
        const CnfFormula cnf = testing::random_cnf(rng, 5, 14, 3);
        const RefuteResult base = refute_width_k(cnf, 2);
        for (std::uint64_t seed : {3ull, 99ull}) {
            const RefuteResult shuffled = refute_width_k(cnf, 2, {seed});
            REQUIRE(shuffled.refuted == base.refuted);
            if (!base.refuted)
                REQUIRE(shuffled.saturated_clause_count == base.saturated_clause_count);
        }
    }
}

TEST_CASE("degenerate widths and inputs are handled explicitly", "[hyperres]") {
    CnfFormula with_empty(2);
    with_empty.add(Clause({1, 2}));
    with_empty.add(Clause());
    const RefuteResult res = refute_width_k(with_empty, 1);
    REQUIRE(res.refuted);
    REQUIRE(res.trace.steps.empty());

    CnfFormula tiny(2);
    tiny.add(Clause({1, 2}));
    REQUIRE_THROWS_AS(refute_width_k(tiny, 0), Error);
    REQUIRE_THROWS_AS(refute_width_k(tiny, 3), Error);
}

TEST_CASE("hyper-resolution steps unroll into binary resolution chains", "[hyperres]") {
    SECTION("overlapping sides force a resolution order") {
        NhrStep step;
        step.nucleus = Clause({1, 2, -6});
        step.sides = {Clause({-1, -2, -7}), Clause({-2, -8})};
        step.side_ids = {10, 11};
        step.nucleus_id = 9;
        step.resolvent = negative_hyper_resolve(step.nucleus, step.sides);
        REQUIRE(step.resolvent == Clause({-2, -6, -7, -8}));

        const auto chain = expand_to_resolution(step);
        REQUIRE(chain.size() == 2);
        // Pivot 2's side re-introduces nothing, so it must resolve first;
        // resolving pivot 1 first would manufacture a tautology on 2.
        REQUIRE(chain[0].pivot_var == 2);
        REQUIRE(chain[1].pivot_var == 1);
        REQUIRE(chain.back().result == step.resolvent);
    }

    SECTION("cyclic overlap admits no unrolling") {
        NhrStep step;
        step.nucleus = Clause({1, 2, -5});
        step.sides = {Clause({-1, -2}), Clause({-1, -2})};
        step.resolvent = negative_hyper_resolve(step.nucleus, step.sides);
        REQUIRE_THROWS_AS(expand_to_resolution(step), Error);
    }

    SECTION("a corrupted resolvent is caught before unrolling") {
        NhrStep step;
        step.nucleus = Clause({1, -3});
        step.sides = {Clause({-1, -4})};
        step.resolvent = Clause({-3}); // missing -4
        REQUIRE_THROWS_AS(expand_to_resolution(step), Error);
    }

    SECTION("random disjoint steps stay within the width slack") {
        Rng rng(52);
        for (int round = 0; round < 200; ++round) {
            const testing::RandomHyperStep random_step = testing::random_disjoint_hyper_step(rng);
            REQUIRE_FALSE(random_step.resolvent.empty());
            REQUIRE(random_step.resolvent.purely_negative());

            NhrStep step;
            step.nucleus = random_step.nucleus;
            step.sides = random_step.sides;
            step.resolvent = random_step.resolvent;
            const auto chain = expand_to_resolution(step);
            REQUIRE(chain.size() == step.sides.size());
            REQUIRE(chain.back().result == step.resolvent);
            const int slack = static_cast<int>(step.sides.size()) - 1;
            for (const ResolutionStep& bin : chain)
                REQUIRE(bin.result.size() <= step.resolvent.size() + slack);
        }
    }
}
