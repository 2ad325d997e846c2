#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kcsat {

using Value = long long;

/// Extensional constraint: an ordered scope of variable names plus the list
/// of allowed value tuples (one entry per scope variable, in scope order).
struct Constraint {
    std::vector<std::string> scope;
    std::vector<std::vector<Value>> allowed;
};

/// A CSP instance. Plain data so that invalid instances can be represented
/// and reported by validate_instance rather than rejected at construction.
/// Variable order and per-variable domain order are fixed and meaningful:
/// every enumeration, encoding and tie-break in the library follows them.
struct CspInstance {
    std::vector<std::string> variables;
    std::vector<std::vector<Value>> domains; // parallel to variables
    std::vector<Constraint> constraints;

    int num_variables() const { return static_cast<int>(variables.size()); }
    int domain_size(int var) const { return static_cast<int>(domains[var].size()); }

    std::optional<int> variable_index(std::string_view name) const;
    std::optional<int> value_index(int var, Value v) const;
};

/// Partial assignment, stored as (variable index, domain value index) pairs
/// sorted by variable index. Value indices refer to positions in the
/// variable's domain list.
class PartialAssignment {
public:
    PartialAssignment() = default;

    /// Sorts the bindings; throws Error on duplicate variables.
    static PartialAssignment from_bindings(std::vector<std::pair<int, int>> bindings);

    std::span<const std::pair<int, int>> bindings() const { return bindings_; }
    int size() const { return static_cast<int>(bindings_.size()); }
    bool empty() const { return bindings_.empty(); }

    bool binds(int var) const;
    std::optional<int> value_index(int var) const;

    /// Copy with one extra binding (var must be unbound).
    PartialAssignment with(int var, int val_idx) const;
    /// Copy with one binding dropped (var must be bound).
    PartialAssignment without(int var) const;

    bool operator==(const PartialAssignment&) const = default;
    auto operator<=>(const PartialAssignment&) const = default;

private:
    std::vector<std::pair<int, int>> bindings_;
};

struct PartialAssignmentHash {
    std::size_t operator()(const PartialAssignment& a) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (auto [var, val] : a.bindings()) {
            h = (h ^ static_cast<std::uint64_t>(var)) * 0x100000001b3ULL;
            h = (h ^ static_cast<std::uint64_t>(val)) * 0x100000001b3ULL;
        }
        return static_cast<std::size_t>(h);
    }
};

struct ValidationReport {
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

/// Structural checks: nonempty domains, duplicate-free scopes over known
/// variables, allowed tuples of the right arity with in-domain values,
/// duplicate variable names. Returns all violations, never throws.
ValidationReport validate_instance(const CspInstance&);

/// Throws Error listing every violation if the instance is invalid.
void require_valid(const CspInstance&);

/// True iff every constraint whose scope is fully bound by f is satisfied.
/// Constraints with unbound scope variables are ignored.
bool is_partial_solution(const CspInstance&, const PartialAssignment& f);

/// True iff g agrees with f on all of f's bindings (g extends f).
bool extends(const PartialAssignment& g, const PartialAssignment& f);

/// All total solutions in lexicographic order (variable order, domain order),
/// truncated at limit.
std::vector<PartialAssignment> enumerate_solutions(const CspInstance&, std::size_t limit);

/// Convenience: build an assignment from (name, value) pairs, resolving them
/// against the instance. Throws Error on unknown names or out-of-domain values.
PartialAssignment assignment_from_values(const CspInstance&,
                                         std::span<const std::pair<std::string, Value>> named);

/// Render as "{u=0,w=2}" using instance names and domain values, in variable
/// order. Used by traces and diagnostics.
std::string format_assignment(const CspInstance&, const PartialAssignment&);

// Internal prepared form shared by the encoders, the closure and the
// enumerator: scopes resolved to variable indices and relations converted to
// sorted tuples of domain value indices for binary-search membership.
struct PreparedConstraint {
    std::vector<int> scope;                // variable indices
    std::vector<std::vector<int>> tuples;  // sorted value-index tuples
    bool allows(std::span<const int> tuple) const;
};

/// Requires a valid instance (throws Error otherwise).
std::vector<PreparedConstraint> prepare_constraints(const CspInstance&);

/// is_partial_solution against an already prepared constraint list.
bool satisfies_covered_constraints(std::span<const PreparedConstraint>,
                                   const PartialAssignment&);

} // namespace kcsat
