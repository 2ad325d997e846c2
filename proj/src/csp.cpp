#include "kcsat/csp.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "kcsat/error.hpp"

namespace kcsat {

std::optional<int> CspInstance::variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i] == name) return static_cast<int>(i);
    return std::nullopt;
}

std::optional<int> CspInstance::value_index(int var, Value v) const {
    const auto& dom = domains[var];
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (dom[i] == v) return static_cast<int>(i);
    return std::nullopt;
}

PartialAssignment PartialAssignment::from_bindings(std::vector<std::pair<int, int>> bindings) {
    std::sort(bindings.begin(), bindings.end());
    for (std::size_t i = 1; i < bindings.size(); ++i)
        if (bindings[i].first == bindings[i - 1].first)
            throw Error("duplicate binding for variable index " +
                        std::to_string(bindings[i].first));
    PartialAssignment a;
    a.bindings_ = std::move(bindings);
    return a;
}

bool PartialAssignment::binds(int var) const {
    return value_index(var).has_value();
}

std::optional<int> PartialAssignment::value_index(int var) const {
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(),
                               std::make_pair(var, -1));
    if (it != bindings_.end() && it->first == var) return it->second;
    return std::nullopt;
}

PartialAssignment PartialAssignment::with(int var, int val_idx) const {
    if (binds(var))
        throw Error("variable index " + std::to_string(var) + " already bound");
    PartialAssignment a;
    a.bindings_.reserve(bindings_.size() + 1);
    auto it = std::lower_bound(bindings_.begin(), bindings_.end(),
                               std::make_pair(var, -1));
    a.bindings_.insert(a.bindings_.end(), bindings_.begin(), it);
    a.bindings_.emplace_back(var, val_idx);
    a.bindings_.insert(a.bindings_.end(), it, bindings_.end());
    return a;
}

PartialAssignment PartialAssignment::without(int var) const {
    if (!binds(var))
        throw Error("variable index " + std::to_string(var) + " not bound");
    PartialAssignment a;
    a.bindings_.reserve(bindings_.size() - 1);
    for (auto& b : bindings_)
        if (b.first != var) a.bindings_.push_back(b);
    return a;
}

ValidationReport validate_instance(const CspInstance& inst) {
    ValidationReport report;
    auto add = [&](std::string msg) { report.violations.push_back(std::move(msg)); };

    {
        std::set<std::string> seen;
        for (const auto& name : inst.variables)
            if (!seen.insert(name).second)
                add("duplicate variable name \"" + name + "\"");
    }
    if (inst.domains.size() != inst.variables.size())
        add("domain list length " + std::to_string(inst.domains.size()) +
            " does not match variable count " + std::to_string(inst.variables.size()));

    const std::size_t nvars = std::min(inst.domains.size(), inst.variables.size());
    for (std::size_t v = 0; v < nvars; ++v) {
        if (inst.domains[v].empty())
            add("variable \"" + inst.variables[v] + "\" has an empty domain");
        std::set<Value> seen(inst.domains[v].begin(), inst.domains[v].end());
        if (seen.size() != inst.domains[v].size())
            add("variable \"" + inst.variables[v] + "\" has duplicate domain values");
    }

    for (std::size_t c = 0; c < inst.constraints.size(); ++c) {
        const Constraint& con = inst.constraints[c];
        const std::string where = "constraint " + std::to_string(c);
        bool scope_ok = true;
        std::set<std::string> scope_seen;
        for (const auto& name : con.scope) {
            if (!inst.variable_index(name)) {
                add(where + ": scope names unknown variable \"" + name + "\"");
                scope_ok = false;
            }
            if (!scope_seen.insert(name).second) {
                add(where + ": scope repeats variable \"" + name + "\"");
                scope_ok = false;
            }
        }
        for (std::size_t t = 0; t < con.allowed.size(); ++t) {
            if (con.allowed[t].size() != con.scope.size()) {
                add(where + ": tuple " + std::to_string(t) + " has arity " +
                    std::to_string(con.allowed[t].size()) + ", expected " +
                    std::to_string(con.scope.size()));
                continue;
            }
            if (!scope_ok) continue;
            for (std::size_t p = 0; p < con.scope.size(); ++p) {
                const int var = *inst.variable_index(con.scope[p]);
                if (static_cast<std::size_t>(var) >= nvars) continue;
                if (!inst.value_index(var, con.allowed[t][p]))
                    add(where + ": tuple " + std::to_string(t) + " value " +
                        std::to_string(con.allowed[t][p]) +
                        " is outside the domain of \"" + con.scope[p] + "\"");
            }
        }
    }
    return report;
}

void require_valid(const CspInstance& inst) {
    ValidationReport report = validate_instance(inst);
    if (report.ok()) return;
    std::ostringstream msg;
    msg << "invalid instance:";
    for (const auto& v : report.violations) msg << "\n  " << v;
    throw Error(msg.str());
}

bool PreparedConstraint::allows(std::span<const int> tuple) const {
    auto less = [](const auto& a, const auto& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };
    auto it = std::lower_bound(tuples.begin(), tuples.end(), tuple, less);
    return it != tuples.end() &&
           std::equal(it->begin(), it->end(), tuple.begin(), tuple.end());
}

std::vector<PreparedConstraint> prepare_constraints(const CspInstance& inst) {
    require_valid(inst);
    std::vector<PreparedConstraint> prepared;
    prepared.reserve(inst.constraints.size());
    for (const Constraint& con : inst.constraints) {
        PreparedConstraint p;
        for (const auto& name : con.scope)
            p.scope.push_back(*inst.variable_index(name));
        p.tuples.reserve(con.allowed.size());
        for (const auto& tuple : con.allowed) {
            std::vector<int> idx(tuple.size());
            for (std::size_t i = 0; i < tuple.size(); ++i)
                idx[i] = *inst.value_index(p.scope[i], tuple[i]);
            p.tuples.push_back(std::move(idx));
        }
        std::sort(p.tuples.begin(), p.tuples.end());
        p.tuples.erase(std::unique(p.tuples.begin(), p.tuples.end()), p.tuples.end());
        prepared.push_back(std::move(p));
    }
    return prepared;
}

bool satisfies_covered_constraints(std::span<const PreparedConstraint> prepared,
                                   const PartialAssignment& f) {
    std::vector<int> tuple;
    for (const PreparedConstraint& con : prepared) {
        tuple.clear();
        bool covered = true;
        for (int var : con.scope) {
            auto val = f.value_index(var);
            if (!val) { covered = false; break; }
            tuple.push_back(*val);
        }
        if (covered && !con.allows(tuple)) return false;
    }
    return true;
}

bool is_partial_solution(const CspInstance& inst, const PartialAssignment& f) {
    return satisfies_covered_constraints(prepare_constraints(inst), f);
}

bool extends(const PartialAssignment& g, const PartialAssignment& f) {
    for (auto [var, val] : f.bindings()) {
        auto gv = g.value_index(var);
        if (!gv || *gv != val) return false;
    }
    return true;
}

std::vector<PartialAssignment> enumerate_solutions(const CspInstance& inst, std::size_t limit) {
    const auto prepared = prepare_constraints(inst);
    std::vector<PartialAssignment> out;
    const int n = inst.num_variables();
    if (limit == 0) return out;
    std::vector<int> current(n, 0);

    // Constraints become checkable as soon as the last scope variable (in
    // enumeration order) is assigned; checking there prunes whole subtrees.
    std::vector<std::vector<int>> checks_at(n);
    for (std::size_t c = 0; c < prepared.size(); ++c) {
        int last = -1;
        for (int var : prepared[c].scope) last = std::max(last, var);
        if (last >= 0) checks_at[last].push_back(static_cast<int>(c));
    }
    if (n == 0) {
        // No variables: the empty assignment is the unique candidate.
        bool ok = true;
        for (const auto& con : prepared)
            if (con.scope.empty() && !con.allows(std::span<const int>{})) ok = false;
        if (ok) out.push_back(PartialAssignment());
        return out;
    }
    // Scope-free constraints either admit the empty tuple or forbid everything.
    for (const auto& con : prepared)
        if (con.scope.empty() && !con.allows(std::span<const int>{})) return out;

    std::vector<int> tuple;
    int depth = 0;
    while (depth >= 0) {
        if (current[depth] >= inst.domain_size(depth)) {
            current[depth] = 0;
            --depth;
            if (depth >= 0) ++current[depth];
            continue;
        }
        bool ok = true;
        for (int c : checks_at[depth]) {
            tuple.clear();
            for (int var : prepared[c].scope) tuple.push_back(current[var]);
            if (!prepared[c].allows(tuple)) { ok = false; break; }
        }
        if (!ok) {
            ++current[depth];
            continue;
        }
        if (depth == n - 1) {
            std::vector<std::pair<int, int>> bindings;
            bindings.reserve(n);
            for (int v = 0; v < n; ++v) bindings.emplace_back(v, current[v]);
            out.push_back(PartialAssignment::from_bindings(std::move(bindings)));
            if (out.size() >= limit) return out;
            ++current[depth];
        } else {
            ++depth;
        }
    }
    return out;
}

PartialAssignment assignment_from_values(
    const CspInstance& inst, std::span<const std::pair<std::string, Value>> named) {
    std::vector<std::pair<int, int>> bindings;
    bindings.reserve(named.size());
    for (const auto& [name, value] : named) {
        auto var = inst.variable_index(name);
        if (!var) throw Error("unknown variable \"" + name + "\"");
        auto val = inst.value_index(*var, value);
        if (!val)
            throw Error("value " + std::to_string(value) +
                        " is outside the domain of \"" + name + "\"");
        bindings.emplace_back(*var, *val);
    }
    return PartialAssignment::from_bindings(std::move(bindings));
}

std::string format_assignment(const CspInstance& inst, const PartialAssignment& a) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    for (auto [var, val] : a.bindings()) {
        if (!first) out << ',';
        first = false;
        out << inst.variables[var] << '=' << inst.domains[var][val];
    }
    out << '}';
    return out.str();
}

} // namespace kcsat
