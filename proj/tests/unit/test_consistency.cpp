#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "kcsat/bench.hpp"
#include "kcsat/consistency.hpp"
#include "kcsat/error.hpp"
#include "kcsat/rng.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

using namespace kcsat;

TEST_CASE("closure of a satisfiable instance is a winning family", "[consistency]") {
    const CspInstance inst = testing::mixed_domain_instance();
    for (int k = 1; k <= 3; ++k) {
        const ClosureResult result = k_consistency_closure(inst, k);
        REQUIRE_FALSE(result.empty);
        REQUIRE_FALSE(result.surviving.empty());
        REQUIRE(std::is_sorted(result.surviving.begin(), result.surviving.end()));
        const StrategyCheckReport strat = is_strategy(inst, result.surviving, k);
        INFO("k=" << k);
        REQUIRE(strat.ok);
        REQUIRE(strat.violated == StrategyViolation::None);
    }
}

TEST_CASE("closure empties on an unsatisfiable chain and certifies it", "[consistency]") {
    const CspInstance chain = generate_chain({1, 2}); // three 2-valued variables, no solution
    REQUIRE(enumerate_solutions(chain, 1).empty());

    const ClosureResult result = k_consistency_closure(chain, 1);
    REQUIRE(result.empty);
    REQUIRE(result.surviving.empty());
    REQUIRE(result.iterations >= 1);
    REQUIRE_FALSE(result.removal_trace.empty());

    // Every removal names a cause variable, and nothing is removed twice.
    for (const RemovalRecord& rec : result.removal_trace) {
        REQUIRE(rec.blocked_on >= 0);
        REQUIRE(rec.blocked_on < chain.num_variables());
    }
    auto removed = result.removal_trace;
    std::sort(removed.begin(), removed.end(),
              [](const RemovalRecord& a, const RemovalRecord& b) { return a.removed < b.removed; });
    REQUIRE(std::adjacent_find(removed.begin(), removed.end(),
                               [](const RemovalRecord& a, const RemovalRecord& b) {
                                   return a.removed == b.removed;
                               }) == removed.end());
}

TEST_CASE("closure fixpoint does not depend on removal order", "[consistency]") {
    Rng rng(31337);
    int nonempty_seen = 0, empty_seen = 0;
    for (int round = 0; round < 60; ++round) {
        const CspInstance inst = testing::random_instance(rng);
        const int k = 1 + static_cast<int>(rng.below(3));
        const ClosureResult base = k_consistency_closure(inst, k);
        (base.empty ? empty_seen : nonempty_seen) += 1;
        for (std::uint64_t seed : {1ull, 42ull, 31337ull}) {
            ClosureOptions options;
            options.shuffle_seed = seed;
            const ClosureResult shuffled = k_consistency_closure(inst, k, options);
            REQUIRE(shuffled.empty == base.empty);
            REQUIRE(shuffled.surviving == base.surviving);
        }
    }
    // The sample must exercise both outcomes to mean anything.
    REQUIRE(nonempty_seen > 0);
    REQUIRE(empty_seen > 0);
}

TEST_CASE("raising the level only ever shrinks the closure", "[consistency]") {
    Rng rng(9);
    for (int round = 0; round < 40; ++round) {
        const CspInstance inst = testing::random_instance(rng);
        bool was_empty = false;
        for (int k = 1; k <= 3; ++k) {
            const ClosureResult result = k_consistency_closure(inst, k);
            if (was_empty) REQUIRE(result.empty); // emptiness is monotone in k
            was_empty = result.empty;
            // A solvable instance can never be emptied out.
            if (result.empty) REQUIRE(enumerate_solutions(inst, 1).empty());
        }
    }
}

TEST_CASE("strategy check pinpoints the violated condition", "[consistency]") {
    const CspInstance inst = testing::mixed_domain_instance();
    const auto closure = k_consistency_closure(inst, 1);
    REQUIRE(is_strategy(inst, closure.surviving, 1).ok);

    SECTION("empty family") {
        const StrategyCheckReport r = is_strategy(inst, {}, 1);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.violated == StrategyViolation::NonEmpty);
    }
    SECTION("oversized member") {
        // k = 1 allows at most two bindings; a full solution has three.
        std::vector<PartialAssignment> family = closure.surviving;
        family.push_back(PartialAssignment::from_bindings({{0, 0}, {1, 0}, {2, 1}}));
        const StrategyCheckReport r = is_strategy(inst, family, 1);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.violated == StrategyViolation::SizeBound);
        REQUIRE(r.witness_assignment == family.back());
    }
    SECTION("hole below a surviving member") {
        std::vector<PartialAssignment> family = closure.surviving;
        std::erase(family, PartialAssignment{});
        const StrategyCheckReport r = is_strategy(inst, family, 1);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.violated == StrategyViolation::DownwardClosure);
    }
    SECTION("member nobody can extend") {
        // u=1, v=0 is a partial solution (the ternary constraint is not fully
        // bound) but no value of w completes it. Members up to size k must be
        // extendable, so probe it at k = 2.
        std::vector<PartialAssignment> family = k_consistency_closure(inst, 2).surviving;
        const auto dead_end = PartialAssignment::from_bindings({{0, 1}, {1, 0}});
        REQUIRE(std::find(family.begin(), family.end(), dead_end) == family.end());
        family.push_back(dead_end);
        const StrategyCheckReport r = is_strategy(inst, family, 2);
        REQUIRE_FALSE(r.ok);
        REQUIRE(r.violated == StrategyViolation::Extension);
        REQUIRE(r.witness_assignment == dead_end);
        REQUIRE(r.witness_variable == 2);
    }
}

TEST_CASE("closure-guided solving finds real solutions when the level decides", "[consistency]") {
    const CspInstance inst = testing::mixed_domain_instance();
    const ClosureSolveOutcome outcome = solve_via_closure(inst, 2);
    REQUIRE(outcome.kind == ClosureSolveOutcome::Kind::Solution);
    REQUIRE(outcome.assignment.size() == inst.num_variables());
    REQUIRE(is_partial_solution(inst, outcome.assignment));

    const CspInstance chain = generate_chain({1, 2});
    REQUIRE(solve_via_closure(chain, 1).kind == ClosureSolveOutcome::Kind::ClosureEmpty);
}

TEST_CASE("closure rejects a level below one", "[consistency]") {
    REQUIRE_THROWS_AS(k_consistency_closure(testing::mixed_domain_instance(), 0), Error);
}
