#include <catch2/catch_amalgamated.hpp>

#include "kcsat/absorb.hpp"
#include "kcsat/error.hpp"
#include "kcsat/rng.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace kcsat;

TEST_CASE("a database absorbs its own clauses", "[absorb]") {
    const CnfFormula db = testing::three_group_exclusion_formula();
    for (const Clause& c : db.clauses()) {
        const AbsorptionReport report = is_absorbed(db, c);
        INFO("clause " << c.str());
        REQUIRE(report.absorbed);
        REQUIRE(report.per_literal.size() == static_cast<std::size_t>(c.size()));
    }
}

TEST_CASE("absorption is strictly stronger than entailment", "[absorb]") {
    const CnfFormula db = testing::three_group_exclusion_formula();

    // Entailed and reachable by unit propagation from every side: absorbed.
    const Clause reachable({-3, -5});
    REQUIRE(testing::truth_table_implies(db, reachable));
    REQUIRE(is_absorbed(db, reachable).absorbed);

    // Entailed, but propagation gets stuck without the clause: not absorbed.
    const Clause hidden({-2, -4});
    REQUIRE(testing::truth_table_implies(db, hidden));
    const AbsorptionReport report = is_absorbed(db, hidden);
    REQUIRE_FALSE(report.absorbed);
    bool saw_stuck = false;
    for (const LiteralAbsorption& entry : report.per_literal)
        if (!entry.absorbed) {
            REQUIRE(entry.status == AbsorptionStatus::NotAbsorbed);
            saw_stuck = true;
        }
    REQUIRE(saw_stuck);
}

TEST_CASE("per-literal probes report how each literal passed", "[absorb]") {
    SECTION("root units shortcut the probe") {
        CnfFormula db(2);
        db.add(Clause({1}));
        const AbsorptionReport report = is_absorbed(db, Clause({1, 2}));
        REQUIRE(report.absorbed);
        REQUIRE(report.per_literal[0].literal == 1);
        REQUIRE(report.per_literal[0].status == AbsorptionStatus::ImpliedLiteral);
        // Probing literal 2 sees literal 1 already true: the clause can no
        // longer be falsified down this branch.
        REQUIRE(report.per_literal[1].literal == 2);
        REQUIRE(report.per_literal[1].status == AbsorptionStatus::PrefixSatisfied);
    }
    SECTION("a contradictory database absorbs everything") {
        CnfFormula db(1);
        db.add(Clause({1}));
        db.add(Clause({-1}));
        const AbsorptionReport report = is_absorbed(db, Clause({5}));
        REQUIRE(report.absorbed);
        REQUIRE(report.per_literal[0].status == AbsorptionStatus::Conflict);
    }
    SECTION("conflicts under assumptions count as absorption") {
        // Negating one literal of (1 2) propagates the other via the database
        // pair below and then trips the exclusion clause.
        CnfFormula db(2);
        db.add(Clause({1, 2}));
        db.add(Clause({-1, 2}));
        db.add(Clause({1, -2}));
        const AbsorptionReport report = is_absorbed(db, Clause({1, 2}));
        REQUIRE(report.absorbed);
    }
    SECTION("the empty clause has no probe") {
        CnfFormula db(1);
        db.add(Clause({1}));
        REQUIRE_THROWS_AS(is_absorbed(db, Clause()), Error);
    }
}

TEST_CASE("absorbed clauses are always entailed", "[absorb]") {
    Rng rng(0xab50);
    int absorbed_seen = 0;
    for (int round = 0; round < 120; ++round) {
        const CnfFormula db = testing::random_cnf(rng, 6, 10, 3);
        const CnfFormula probe_src = testing::random_cnf(rng, 6, 1, 3);
        const Clause probe = probe_src.clauses().front();
        const AbsorptionReport report = is_absorbed(db, probe);
        if (report.absorbed) {
            REQUIRE(testing::truth_table_implies(db, probe));
            ++absorbed_seen;
        }
    }
    REQUIRE(absorbed_seen >= 10); // the property must actually fire
}
