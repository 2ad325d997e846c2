#include "kcsat/cdcl.hpp"

#include <algorithm>

#include "kcsat/error.hpp"

namespace kcsat {

RestrictResult restrict_clause(const Clause& clause,
                               std::span<const BoolAssignment> assignments) {
    RestrictResult result;
    std::vector<int> kept;
    for (int lit : clause.lits()) {
        bool falsified = false;
        for (const BoolAssignment& a : assignments) {
            if (a.var != lit_var(lit)) continue;
            if (a.value == lit_positive(lit)) {
                result.satisfied = true;
                return result;
            }
            falsified = true;
            break;
        }
        if (!falsified) kept.push_back(lit);
    }
    result.clause = Clause(std::move(kept));
    return result;
}

CdclSolver::CdclSolver(const CnfFormula& cnf, SolverConfig config)
    : config_(config), rng_(config.seed) {
    const int n = cnf.num_vars();
    assign_.assign(n, 0);
    level_.assign(n, 0);
    reason_.assign(n, kNoReason);
    watches_.resize(2 * static_cast<std::size_t>(n));
    seen_.assign(n, 0);
    activity_.assign(n, 0.0);
    free_vars_.resize(n);
    free_pos_.resize(n);
    for (int v = 0; v < n; ++v) {
        free_vars_[v] = v;
        free_pos_[v] = v;
    }
    trail_.reserve(n);

    input_clause_count_ = cnf.size();

    // The database keeps formula order so clause ids line up with the input;
    // an optional shuffled loading order only affects watch initialization.
    std::vector<std::uint32_t> load_order(cnf.size());
    for (std::size_t i = 0; i < cnf.size(); ++i) load_order[i] = static_cast<std::uint32_t>(i);
    std::optional<Rng> order_rng;
    if (config_.propagation_order_seed != 0) {
        order_rng.emplace(config_.propagation_order_seed);
        order_rng->shuffle(load_order);
    }

    db_.resize(cnf.size());
    std::vector<int> lits;
    for (std::uint32_t id : load_order) {
        const Clause& c = cnf.clauses()[id];
        lits.clear();
        for (int ext : c.lits()) lits.push_back(internal(ext));
        if (order_rng) order_rng->shuffle(lits);
        const std::uint32_t offset = static_cast<std::uint32_t>(arena_.size());
        arena_.insert(arena_.end(), lits.begin(), lits.end());
        db_[id] = {offset, static_cast<std::uint32_t>(lits.size()), false};
        if (lits.size() >= 2) {
            watches_[lits[0]].push_back({id, lits[1]});
            watches_[lits[1]].push_back({id, lits[0]});
        } else if (lits.size() == 1) {
            if (lit_value(lits[0]) < 0) {
                if (!root_conflict_) root_conflict_ = static_cast<int>(id);
            } else if (lit_value(lits[0]) == 0) {
                enqueue(lits[0], id);
            }
        } else {
            if (!root_conflict_) root_conflict_ = static_cast<int>(id);
        }
    }
}

void CdclSolver::enqueue(int lit, std::uint32_t reason) {
    const int v = lit >> 1;
    assign_[v] = (lit & 1) ? -1 : 1;
    level_[v] = decision_level();
    reason_[v] = reason;
    trail_.push_back(lit);
    if (reason != kNoReason) stats_.propagations += 1;
    // drop from the unassigned sparse set
    const int pos = free_pos_[v];
    const int last = free_vars_.back();
    free_vars_[pos] = last;
    free_pos_[last] = pos;
    free_vars_.pop_back();
    free_pos_[v] = -1;
}

void CdclSolver::assume(int lit) {
    const int internal_lit = internal(lit);
    if (lit == 0 || lit_var(lit) > num_vars())
        throw Error("literal " + std::to_string(lit) + " out of range");
    if (assign_[internal_lit >> 1] != 0)
        throw Error("cannot assume literal " + std::to_string(lit) +
                    ": variable already assigned");
    trail_lim_.push_back(static_cast<int>(trail_.size()));
    stats_.decisions += 1;
    enqueue(internal_lit, kNoReason);
}

void CdclSolver::cancel_to(int level) {
    if (level >= decision_level()) return;
    const int bound = trail_lim_[level];
    for (int i = static_cast<int>(trail_.size()) - 1; i >= bound; --i) {
        const int v = trail_[i] >> 1;
        assign_[v] = 0;
        reason_[v] = kNoReason;
        free_pos_[v] = static_cast<int>(free_vars_.size());
        free_vars_.push_back(v);
    }
    trail_.resize(bound);
    trail_lim_.resize(level);
    qhead_ = trail_.size();
}

std::optional<int> CdclSolver::propagate() {
    if (root_conflict_) return root_conflict_;
    while (qhead_ < trail_.size()) {
        const int p = trail_[qhead_++];
        const int falsified = p ^ 1;
        auto& ws = watches_[falsified];
        std::size_t i = 0, keep = 0;
        while (i < ws.size()) {
            const Watcher w = ws[i];
            if (lit_value(w.blocker) > 0) {
                ws[keep++] = ws[i++];
                continue;
            }
            const ClauseRef& c = db_[w.cref];
            int* lits = arena_.data() + c.offset;
            if (lits[0] == falsified) std::swap(lits[0], lits[1]);
            const int first = lits[0];
            if (first != w.blocker && lit_value(first) > 0) {
                ws[keep++] = {w.cref, first};
                ++i;
                continue;
            }
            bool moved = false;
            for (std::uint32_t t = 2; t < c.size; ++t) {
                if (lit_value(lits[t]) >= 0) {
                    std::swap(lits[1], lits[t]);
                    watches_[lits[1]].push_back({w.cref, first});
                    moved = true;
                    break;
                }
            }
            if (moved) {
                ++i; // watcher migrated to the new literal
                continue;
            }
            ws[keep++] = {w.cref, first};
            ++i;
            if (lit_value(first) < 0) {
                while (i < ws.size()) ws[keep++] = ws[i++];
                ws.resize(keep);
                qhead_ = trail_.size();
                return static_cast<int>(w.cref);
            }
            enqueue(first, w.cref);
        }
        ws.resize(keep);
    }
    return std::nullopt;
}

int CdclSolver::pick_branch_variable() {
    if (config_.branching == BranchingHeuristic::RandomTrue)
        return free_vars_[rng_.below(free_vars_.size())];
    // Activity: highest score, lowest index on ties.
    int best = free_vars_[0];
    for (int v : free_vars_)
        if (activity_[v] > activity_[best] || (activity_[v] == activity_[best] && v < best))
            best = v;
    return best;
}

std::vector<int> CdclSolver::analyze_one_uip(std::uint32_t confl) {
    std::vector<int> learned(1, 0); // slot 0 for the asserting literal
    const int conflict_level = decision_level();
    int counter = 0;
    int p = -1;
    int index = static_cast<int>(trail_.size()) - 1;
    std::uint32_t reason = confl;
    to_clear_.clear();

    for (;;) {
        const auto lits = clause_lits(reason);
        for (std::size_t j = (p == -1) ? 0 : 1; j < lits.size(); ++j) {
            const int q = lits[j];
            const int v = q >> 1;
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            to_clear_.push_back(v);
            activity_[v] += activity_inc_;
            if (level_[v] >= conflict_level)
                ++counter;
            else
                learned.push_back(q);
        }
        if (p == -1 && counter == 0)
            throw Error("conflict does not depend on any decision");
        while (!seen_[trail_[index] >> 1]) --index;
        p = trail_[index--];
        seen_[p >> 1] = 0;
        --counter;
        if (counter <= 0) break;
        reason = reason_[p >> 1];
    }
    learned[0] = p ^ 1;

    if (config_.minimize_learned) minimize(learned);
    for (int v : to_clear_) seen_[v] = 0;
    to_clear_.clear();

    // Periodic activity rescale keeps the scores usable for the optional
    // activity-driven branching without affecting random branching.
    activity_inc_ /= 0.95;
    if (activity_inc_ > 1e100) {
        for (double& a : activity_) a *= 1e-100;
        activity_inc_ *= 1e-100;
    }
    return learned;
}

std::vector<int> CdclSolver::analyze_all_decisions(std::uint32_t confl) {
    // Resolve away every implied literal; what remains are negated decisions.
    std::vector<int> learned;
    int pending = 0;
    int p = -1;
    int index = static_cast<int>(trail_.size()) - 1;
    std::uint32_t reason = confl;
    to_clear_.clear();

    for (;;) {
        const auto lits = clause_lits(reason);
        for (std::size_t j = (p == -1) ? 0 : 1; j < lits.size(); ++j) {
            const int q = lits[j];
            const int v = q >> 1;
            if (seen_[v] || level_[v] == 0) continue;
            seen_[v] = 1;
            to_clear_.push_back(v);
            activity_[v] += activity_inc_;
            if (reason_[v] != kNoReason)
                ++pending;
            else
                learned.push_back(q); // q is the negation of the decision
        }
        if (pending == 0) break;
        while (!(seen_[trail_[index] >> 1] && reason_[trail_[index] >> 1] != kNoReason))
            --index;
        p = trail_[index--];
        --pending;
        reason = reason_[p >> 1];
    }
    if (learned.empty()) throw Error("conflict does not depend on any decision");
    if (config_.minimize_learned) minimize(learned);
    for (int v : to_clear_) seen_[v] = 0;
    to_clear_.clear();
    return learned;
}

void CdclSolver::minimize(std::vector<int>& learned) {
    // Deep reason-graph minimization: a literal is dropped when its negation
    // is implied by the rest of the clause together with level-0 facts.
    std::uint32_t abstract_levels = 0;
    for (std::size_t i = 1; i < learned.size(); ++i)
        abstract_levels |= 1u << (level_[learned[i] >> 1] & 31);
    std::size_t keep = 1;
    for (std::size_t i = 1; i < learned.size(); ++i) {
        const int v = learned[i] >> 1;
        if (reason_[v] == kNoReason || !literal_redundant(learned[i], abstract_levels))
            learned[keep++] = learned[i];
    }
    learned.resize(keep);
}

bool CdclSolver::literal_redundant(int lit, std::uint32_t abstract_levels) {
    redundant_stack_.assign(1, lit);
    const std::size_t top = to_clear_.size();
    while (!redundant_stack_.empty()) {
        const int v = redundant_stack_.back() >> 1;
        redundant_stack_.pop_back();
        const auto lits = clause_lits(reason_[v]);
        for (std::size_t j = 1; j < lits.size(); ++j) {
            const int q = lits[j];
            const int qv = q >> 1;
            if (seen_[qv] || level_[qv] == 0) continue;
            if (reason_[qv] != kNoReason && ((1u << (level_[qv] & 31)) & abstract_levels)) {
                seen_[qv] = 1;
                to_clear_.push_back(qv);
                redundant_stack_.push_back(q);
            } else {
                for (std::size_t t = top; t < to_clear_.size(); ++t) seen_[to_clear_[t]] = 0;
                to_clear_.resize(top);
                return false;
            }
        }
    }
    return true;
}

void CdclSolver::place_asserting_literals(std::vector<int>& learned, int& out_backjump) {
    // Position 0 carries the unique deepest literal; position 1 the next
    // deepest so the clause wakes up exactly when it becomes asserting again.
    std::size_t deepest = 0;
    for (std::size_t i = 1; i < learned.size(); ++i)
        if (level_[learned[i] >> 1] > level_[learned[deepest] >> 1]) deepest = i;
    std::swap(learned[0], learned[deepest]);
    if (learned.size() == 1) {
        out_backjump = 0;
        return;
    }
    std::size_t second = 1;
    for (std::size_t i = 2; i < learned.size(); ++i)
        if (level_[learned[i] >> 1] > level_[learned[second] >> 1]) second = i;
    std::swap(learned[1], learned[second]);
    out_backjump = level_[learned[1] >> 1];
}

void CdclSolver::verify_learned(std::span<const int> learned) const {
    // Structural guarantees: the clause is asserting (exactly one literal at
    // the conflict level, all falsified) and, under the all-decision scheme,
    // mentions decision variables only.
    const int conflict_level = decision_level();
    int at_conflict_level = 0;
    for (const int lit : learned) {
        if (lit_value(lit) >= 0)
            throw InternalError("learned clause contains a non-falsified literal");
        if (level_[lit >> 1] == conflict_level) ++at_conflict_level;
    }
    if (at_conflict_level != 1)
        throw InternalError("learned clause is not asserting: " +
                            std::to_string(at_conflict_level) +
                            " literals at the conflict level");
    if (config_.learning == LearningScheme::Decision)
        for (const int lit : learned)
            if (reason_[lit >> 1] != kNoReason)
                throw InternalError("all-decision learned clause contains an implied literal");
}

std::uint32_t CdclSolver::push_clause(std::span<const int> internal_lits, bool learned,
                                      bool watch) {
    const std::uint32_t offset = static_cast<std::uint32_t>(arena_.size());
    arena_.insert(arena_.end(), internal_lits.begin(), internal_lits.end());
    const std::uint32_t cref = static_cast<std::uint32_t>(db_.size());
    db_.push_back({offset, static_cast<std::uint32_t>(internal_lits.size()), learned});
    if (watch && internal_lits.size() >= 2) {
        watches_[arena_[offset]].push_back({cref, arena_[offset + 1]});
        watches_[arena_[offset + 1]].push_back({cref, arena_[offset]});
    }
    return cref;
}

std::vector<int> CdclSolver::analyze_internal(std::uint32_t confl, int& out_backjump) {
    std::vector<int> learned = config_.learning == LearningScheme::OneUip
                                   ? analyze_one_uip(confl)
                                   : analyze_all_decisions(confl);
    place_asserting_literals(learned, out_backjump);
    verify_learned(learned);
    return learned;
}

CdclSolver::Analysis CdclSolver::analyze_conflict(int conflict_id) {
    if (conflict_id < 0 || static_cast<std::size_t>(conflict_id) >= db_.size())
        throw Error("conflict clause id out of range");
    if (decision_level() == 0)
        throw Error("conflict analysis requires at least one decision");
    int backjump = 0;
    std::vector<int> learned = analyze_internal(static_cast<std::uint32_t>(conflict_id),
                                                backjump);
    std::vector<int> ext;
    ext.reserve(learned.size());
    for (int lit : learned) ext.push_back(external(lit));
    return {Clause(std::move(ext)), backjump};
}

void CdclSolver::verify_model() const {
    for (std::size_t id = 0; id < db_.size(); ++id) {
        bool satisfied = false;
        for (int lit : clause_lits(static_cast<std::uint32_t>(id)))
            if (lit_value(lit) > 0) {
                satisfied = true;
                break;
            }
        if (!satisfied)
            throw InternalError("complete assignment misses clause " + std::to_string(id));
    }
}

SolveResult CdclSolver::solve() {
    if (solve_ran_) throw Error("solve() may only run once per solver instance");
    solve_ran_ = true;

    std::uint64_t conflicts_since_restart = 0;
    double restart_limit = config_.restart.base;

    for (;;) {
        const std::optional<int> confl = propagate();
        if (confl) {
            stats_.conflicts += 1;
            if (decision_level() == 0) return {false, {}};

            int backjump = 0;
            std::vector<int> learned =
                analyze_internal(static_cast<std::uint32_t>(*confl), backjump);
            stats_.learned_clause_count += 1;
            stats_.learned_literal_total += learned.size();

            // Backjump to the assertion level; the learned clause then
            // implies its deepest literal there, reversing the decisions made
            // above that level. A restart afterwards drops back to level 0,
            // keeping the asserting literal only when its level is 0.
            const std::uint32_t cref = push_clause(learned, true, true);
            cancel_to(backjump);
            enqueue(learned[0], cref);

            bool restart_now = false;
            switch (config_.restart.kind) {
                case RestartPolicy::Kind::EveryConflict:
                    restart_now = true;
                    break;
                case RestartPolicy::Kind::Geometric:
                    conflicts_since_restart += 1;
                    if (static_cast<double>(conflicts_since_restart) >= restart_limit) {
                        restart_now = true;
                        conflicts_since_restart = 0;
                        restart_limit *= config_.restart.factor;
                    }
                    break;
                case RestartPolicy::Kind::Never:
                    break;
            }
            if (restart_now) {
                stats_.restarts += 1;
                cancel_to(0);
            }
        } else {
            if (trail_.size() == assign_.size()) {
                verify_model();
                SolveResult result;
                result.sat = true;
                result.model.resize(assign_.size());
                for (std::size_t v = 0; v < assign_.size(); ++v)
                    result.model[v] = assign_[v] > 0;
                return result;
            }
            const int v = pick_branch_variable();
            trail_lim_.push_back(static_cast<int>(trail_.size()));
            stats_.decisions += 1;
            enqueue(2 * v, kNoReason); // branch true
        }
    }
}

int CdclSolver::value_of(int lit) const {
    if (lit == 0 || lit_var(lit) > num_vars())
        throw Error("literal " + std::to_string(lit) + " out of range");
    return lit_value(internal(lit));
}

std::vector<Clause> CdclSolver::learned_clauses() const {
    std::vector<Clause> out;
    for (std::size_t id = input_clause_count_; id < db_.size(); ++id) {
        std::vector<int> ext;
        for (int lit : clause_lits(static_cast<std::uint32_t>(id)))
            ext.push_back(external(lit));
        out.push_back(Clause(std::move(ext)));
    }
    return out;
}

} // namespace kcsat
