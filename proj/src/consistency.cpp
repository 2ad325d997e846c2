#include "kcsat/consistency.hpp"

#include <algorithm>
#include <unordered_map>

#include "kcsat/error.hpp"
#include "kcsat/rng.hpp"

namespace kcsat {

namespace {

// One node per live assignment. Extension bookkeeping: ext_count[v] is the
// number of live direct extensions binding v; -1 marks v as bound by the
// assignment itself. children holds the ids of direct one-variable
// extensions for the removal cascade.
struct Node {
    PartialAssignment pa;
    bool alive = true;
    std::vector<int> ext_count;
    std::vector<int> children;
};

using IdMap = std::unordered_map<PartialAssignment, int, PartialAssignmentHash>;

// All partial solutions binding the variables of `subset` exactly, appended
// to nodes/ids.
void enumerate_subset(const CspInstance& inst,
                      const std::vector<PreparedConstraint>& prepared,
                      const std::vector<int>& subset, std::vector<Node>& nodes,
                      IdMap& ids) {
    // Constraints fully contained in the subset are the only ones a partial
    // solution over it must satisfy.
    std::vector<const PreparedConstraint*> checks;
    for (const PreparedConstraint& con : prepared) {
        bool inside = true;
        for (int var : con.scope)
            if (!std::binary_search(subset.begin(), subset.end(), var)) {
                inside = false;
                break;
            }
        if (inside) checks.push_back(&con);
    }

    const int m = static_cast<int>(subset.size());
    std::vector<int> current(m, 0);
    std::vector<int> tuple;
    for (;;) {
        bool ok = true;
        for (const PreparedConstraint* con : checks) {
            tuple.clear();
            for (int var : con->scope) {
                const auto pos = std::lower_bound(subset.begin(), subset.end(), var);
                tuple.push_back(current[pos - subset.begin()]);
            }
            if (!con->allows(tuple)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            std::vector<std::pair<int, int>> bindings;
            bindings.reserve(m);
            for (int i = 0; i < m; ++i) bindings.emplace_back(subset[i], current[i]);
            Node node;
            node.pa = PartialAssignment::from_bindings(std::move(bindings));
            ids.emplace(node.pa, static_cast<int>(nodes.size()));
            nodes.push_back(std::move(node));
        }
        if (m == 0) break;
        int p = m - 1;
        while (p >= 0 && ++current[p] == inst.domain_size(subset[p])) {
            current[p] = 0;
            --p;
        }
        if (p < 0) break;
    }
}

void enumerate_subsets(const CspInstance& inst,
                       const std::vector<PreparedConstraint>& prepared, int max_size,
                       std::vector<Node>& nodes, IdMap& ids) {
    const int n = inst.num_variables();
    std::vector<int> subset;
    // Depth-first over variable subsets in ascending order, capped at max_size.
    auto rec = [&](auto&& self, int next) -> void {
        enumerate_subset(inst, prepared, subset, nodes, ids);
        if (static_cast<int>(subset.size()) == max_size) return;
        for (int v = next; v < n; ++v) {
            subset.push_back(v);
            self(self, v + 1);
            subset.pop_back();
        }
    };
    rec(rec, 0);
}

} // namespace

ClosureResult k_consistency_closure(const CspInstance& inst, int k,
                                    const ClosureOptions& options) {
    if (k < 1) throw Error("consistency level must be at least 1");
    const auto prepared = prepare_constraints(inst); // validates
    const int n = inst.num_variables();
    const int max_size = std::min(k + 1, n);

    std::vector<Node> nodes;
    IdMap ids;
    enumerate_subsets(inst, prepared, max_size, nodes, ids);

    // Wire up the extension index: each assignment of size s >= 1 is a direct
    // extension of the s restrictions obtained by dropping one binding. Those
    // restrictions are partial solutions too, hence always present.
    for (auto& node : nodes) node.ext_count.assign(n, 0);
    for (auto& node : nodes)
        for (auto [var, val] : node.pa.bindings()) node.ext_count[var] = -1;
    for (std::size_t id = 0; id < nodes.size(); ++id) {
        if (nodes[id].pa.size() == 0) continue;
        for (auto [var, val] : nodes[id].pa.bindings()) {
            const auto parent = ids.find(nodes[id].pa.without(var));
            if (parent == ids.end())
                throw InternalError("closure seed set is not downward closed");
            nodes[parent->second].ext_count[var] += 1;
            nodes[parent->second].children.push_back(static_cast<int>(id));
        }
    }

    ClosureResult result;
    std::optional<Rng> rng;
    if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

    auto blocked_on = [&](int id) -> int {
        const Node& node = nodes[id];
        if (node.pa.size() > k) return -1;
        for (int v = 0; v < n; ++v)
            if (node.ext_count[v] == 0) return v;
        return -1;
    };

    // Removal cascade: kill the assignment and every (transitive) extension,
    // updating the extension counters of live restrictions. Newly starved
    // assignments are picked up by the next round's scan.
    std::vector<int> stack;
    auto remove_cascade = [&](int id, int cause_var) {
        stack.assign(1, id);
        nodes[id].alive = false;
        while (!stack.empty()) {
            const int cur = stack.back();
            stack.pop_back();
            result.removal_trace.push_back({nodes[cur].pa, cause_var});
            for (auto [var, val] : nodes[cur].pa.bindings()) {
                const int parent = ids.at(nodes[cur].pa.without(var));
                if (nodes[parent].alive) nodes[parent].ext_count[var] -= 1;
            }
            for (int child : nodes[cur].children)
                if (nodes[child].alive) {
                    nodes[child].alive = false;
                    stack.push_back(child);
                }
        }
    };

    std::vector<int> order(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) order[i] = static_cast<int>(i);

    for (;;) {
        // Snapshot of currently starved assignments; removing them (plus
        // extensions) is one round.
        std::vector<std::pair<int, int>> round;
        for (int id : order) {
            if (!nodes[id].alive) continue;
            const int v = blocked_on(id);
            if (v >= 0) round.emplace_back(id, v);
        }
        if (round.empty()) break;
        if (rng) rng->shuffle(round);
        result.iterations += 1;
        for (auto [id, v] : round)
            if (nodes[id].alive) remove_cascade(id, v);
    }

    for (const Node& node : nodes)
        if (node.alive) result.surviving.push_back(node.pa);
    std::sort(result.surviving.begin(), result.surviving.end());
    result.empty = result.surviving.empty();
    return result;
}

StrategyCheckReport is_strategy(const CspInstance& inst,
                                std::span<const PartialAssignment> family, int k) {
    if (k < 1) throw Error("consistency level must be at least 1");
    require_valid(inst);
    const int n = inst.num_variables();
    for (const PartialAssignment& f : family)
        for (auto [var, val] : f.bindings())
            if (var < 0 || var >= n || val < 0 || val >= inst.domain_size(var))
                throw Error("family member binds unknown variable or value: index " +
                            std::to_string(var));

    StrategyCheckReport report;
    auto fail = [&](StrategyViolation v, std::optional<PartialAssignment> w,
                    std::optional<int> var) {
        report.ok = false;
        report.violated = v;
        report.witness_assignment = std::move(w);
        report.witness_variable = var;
        return report;
    };

    if (family.empty())
        return fail(StrategyViolation::NonEmpty, std::nullopt, std::nullopt);

    const auto prepared = prepare_constraints(inst);
    for (const PartialAssignment& f : family) {
        if (f.size() > k + 1)
            return fail(StrategyViolation::SizeBound, f, std::nullopt);
        if (!satisfies_covered_constraints(prepared, f))
            return fail(StrategyViolation::SizeBound, f, std::nullopt);
    }

    std::unordered_map<PartialAssignment, bool, PartialAssignmentHash> present;
    for (const PartialAssignment& f : family) present.emplace(f, true);
    for (const PartialAssignment& f : family)
        for (auto [var, val] : f.bindings())
            if (!present.count(f.without(var)))
                return fail(StrategyViolation::DownwardClosure, f, var);

    for (const PartialAssignment& f : family) {
        if (f.size() > k) continue;
        for (int v = 0; v < n; ++v) {
            if (f.binds(v)) continue;
            bool covered = false;
            for (const PartialAssignment& g : family)
                if (g.binds(v) && extends(g, f)) {
                    covered = true;
                    break;
                }
            if (!covered) return fail(StrategyViolation::Extension, f, v);
        }
    }

    report.ok = true;
    report.violated = StrategyViolation::None;
    return report;
}

ClosureSolveOutcome solve_via_closure(const CspInstance& inst, int k) {
    if (k_consistency_closure(inst, k).empty)
        return {ClosureSolveOutcome::Kind::ClosureEmpty, PartialAssignment()};

    CspInstance work = inst;
    PartialAssignment fixed;
    for (int v = 0; v < inst.num_variables(); ++v) {
        bool found = false;
        for (int val = 0; val < inst.domain_size(v); ++val) {
            CspInstance candidate = work;
            Constraint pin;
            pin.scope.push_back(inst.variables[v]);
            pin.allowed.push_back({inst.domains[v][val]});
            candidate.constraints.push_back(std::move(pin));
            if (!k_consistency_closure(candidate, k).empty) {
                work = std::move(candidate);
                fixed = fixed.with(v, val);
                found = true;
                break;
            }
        }
        if (!found) return {ClosureSolveOutcome::Kind::Inconclusive, fixed};
    }
    if (!is_partial_solution(inst, fixed))
        throw InternalError("closure-guided assignment violates a constraint");
    return {ClosureSolveOutcome::Kind::Solution, fixed};
}

} // namespace kcsat
