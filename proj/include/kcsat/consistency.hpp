#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kcsat/csp.hpp"

namespace kcsat {

struct RemovalRecord {
    PartialAssignment removed;
    int blocked_on; // variable index with no surviving extension
};

struct ClosureResult {
    std::vector<PartialAssignment> surviving; // sorted lexicographically
    bool empty = false;
    std::vector<RemovalRecord> removal_trace;
    int iterations = 0; // removal rounds until the fixpoint
};

struct ClosureOptions {
    /// When set, removal candidates are processed in a shuffled order. The
    /// fixpoint must not depend on it; tests exercise exactly that.
    std::optional<std::uint64_t> shuffle_seed;
};

/// Establishes the level-k consistency closure: start from every partial
/// solution binding at most k+1 variables, then repeatedly remove each
/// assignment of size at most k that some unbound variable cannot extend,
/// together with all of its extensions, until nothing changes. An empty
/// result certifies unsatisfiability; a nonempty one passes is_strategy.
/// Requires a valid instance and k >= 1.
ClosureResult k_consistency_closure(const CspInstance&, int k,
                                    const ClosureOptions& = {});

enum class StrategyViolation { None, NonEmpty, SizeBound, DownwardClosure, Extension };

struct StrategyCheckReport {
    bool ok = false;
    StrategyViolation violated = StrategyViolation::None;
    std::optional<PartialAssignment> witness_assignment;
    std::optional<int> witness_variable;
};

/// Checks the four winning-family conditions in order: nonempty; every member
/// a partial solution binding at most k+1 variables; closed under dropping a
/// binding; every member of size at most k extendable to each missing
/// variable within the family. First violation wins and carries a witness.
StrategyCheckReport is_strategy(const CspInstance&, std::span<const PartialAssignment> family,
                                int k);

struct ClosureSolveOutcome {
    enum class Kind { Solution, ClosureEmpty, Inconclusive };
    Kind kind;
    PartialAssignment assignment; // full solution, or the fixed prefix so far
};

/// Fixes variables one by one (variable order, domain order), keeping a value
/// whenever the closure of the instance plus the pinned values stays
/// nonempty. Sound for solution finding only when the consistency level
/// decides the instance family; otherwise may come back Inconclusive.
ClosureSolveOutcome solve_via_closure(const CspInstance&, int k);

} // namespace kcsat
