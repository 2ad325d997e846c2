#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kcsat/cnf.hpp"
#include "kcsat/rng.hpp"

namespace kcsat {

struct BoolAssignment {
    int var; // 1-based boolean variable
    bool value;
};

struct RestrictResult {
    bool satisfied = false; // some literal is true under the assignments
    Clause clause;          // false literals removed; meaningful when !satisfied
};

/// Remove falsified literals; report satisfaction if any literal holds.
RestrictResult restrict_clause(const Clause&, std::span<const BoolAssignment>);

enum class LearningScheme { OneUip, Decision };
enum class BranchingHeuristic { RandomTrue, Activity };

struct RestartPolicy {
    enum class Kind { EveryConflict, Geometric, Never };
    Kind kind = Kind::EveryConflict;
    double base = 100.0;  // geometric only
    double factor = 1.5;  // geometric only

    static RestartPolicy every_conflict() { return {Kind::EveryConflict, 0, 0}; }
    static RestartPolicy never() { return {Kind::Never, 0, 0}; }
    static RestartPolicy geometric(double base, double factor) {
        return {Kind::Geometric, base, factor};
    }
};

struct SolverConfig {
    LearningScheme learning = LearningScheme::OneUip;
    bool minimize_learned = false; // conflict-clause minimization off by default
    BranchingHeuristic branching = BranchingHeuristic::RandomTrue;
    RestartPolicy restart = {};
    std::uint64_t seed = 1;
    /// Nonzero: load clauses and pick initial watches in a seeded shuffled
    /// order. Propagation fixpoints must not depend on it (tested).
    std::uint64_t propagation_order_seed = 0;
};

struct SolverStats {
    std::uint64_t restarts = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;
    std::uint64_t propagations = 0; // implied assignments enqueued
    std::uint64_t learned_clause_count = 0;
    std::uint64_t learned_literal_total = 0;
};

struct SolveResult {
    bool sat = false;
    std::vector<bool> model; // model[v-1] for boolean v; filled when sat
};

/// Conflict-driven clause-learning solver in the traditional mold: trail with
/// decision levels and reasons, two-watched-literal propagation, asserting
/// clause learning (first-unique-implication-point or all-decision variants),
/// restarts, no clause deletion. Branching assigns true to a uniformly random
/// unassigned variable by default; all randomness flows from config.seed.
///
/// The incremental surface (assume/propagate/cancel_to) exists for probing
/// and tests; solve() runs the full loop and may be called once per instance.
class CdclSolver {
public:
    explicit CdclSolver(const CnfFormula&, SolverConfig config = {});

    SolveResult solve();

    // Probing interface. Clause ids index the internal database; input
    // clauses occupy ids 0..size-1 in formula order (loading order does not
    // change ids), learned clauses follow.
    int decision_level() const { return static_cast<int>(trail_lim_.size()); }
    void assume(int lit); // opens a decision level; lit must be unassigned
    std::optional<int> propagate();
    void cancel_to(int level);
    int value_of(int lit) const; // +1 true, -1 false, 0 unassigned

    struct Analysis {
        Clause learned;     // canonical form
        int backjump_level; // assertion level
    };
    /// Derive the learned clause for a conflict without changing the trail.
    Analysis analyze_conflict(int conflict_id);

    const SolverStats& stats() const { return stats_; }
    int num_vars() const { return static_cast<int>(assign_.size()); }
    std::vector<Clause> learned_clauses() const;

private:
    struct ClauseRef {
        std::uint32_t offset;
        std::uint32_t size;
        bool learned;
    };
    struct Watcher {
        std::uint32_t cref;
        int blocker;
    };

    static constexpr std::uint32_t kNoReason = 0xffffffffu;

    // Internal literals: variable v in 0..n-1, literal 2v (true) / 2v+1 (false).
    static int internal(int ext) { return ext > 0 ? 2 * (ext - 1) : 2 * (-ext - 1) + 1; }
    static int external(int lit) { return (lit & 1) ? -(lit / 2 + 1) : lit / 2 + 1; }

    int lit_value(int lit) const {
        const int a = assign_[lit >> 1];
        return (lit & 1) ? -a : a;
    }

    void enqueue(int lit, std::uint32_t reason);
    std::uint32_t push_clause(std::span<const int> internal_lits, bool learned, bool watch);
    int pick_branch_variable();
    std::vector<int> analyze_internal(std::uint32_t confl, int& out_backjump);
    std::vector<int> analyze_one_uip(std::uint32_t confl);
    std::vector<int> analyze_all_decisions(std::uint32_t confl);
    void minimize(std::vector<int>& learned);
    bool literal_redundant(int lit, std::uint32_t abstract_levels);
    void place_asserting_literals(std::vector<int>& learned, int& out_backjump);
    void verify_learned(std::span<const int> learned) const;
    void verify_model() const;
    std::span<const int> clause_lits(std::uint32_t cref) const {
        return {arena_.data() + db_[cref].offset, db_[cref].size};
    }

    SolverConfig config_;
    SolverStats stats_;
    Rng rng_;

    std::vector<int> arena_;
    std::vector<ClauseRef> db_;
    std::size_t input_clause_count_ = 0;
    std::vector<std::vector<Watcher>> watches_; // indexed by internal literal

    std::vector<std::int8_t> assign_; // per var: +1 true, -1 false, 0 unset
    std::vector<int> level_;
    std::vector<std::uint32_t> reason_;
    std::vector<int> trail_;
    std::vector<int> trail_lim_;
    std::size_t qhead_ = 0;

    // Unassigned variables as a sparse set for O(1) uniform sampling.
    std::vector<int> free_vars_;
    std::vector<int> free_pos_;

    std::vector<double> activity_;
    double activity_inc_ = 1.0;

    std::optional<int> root_conflict_;
    std::vector<char> seen_;
    std::vector<int> to_clear_;
    std::vector<int> redundant_stack_;
    bool solve_ran_ = false;
};

} // namespace kcsat
