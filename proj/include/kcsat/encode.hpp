#pragma once

#include <span>
#include <vector>

#include "kcsat/cnf.hpp"
#include "kcsat/csp.hpp"

namespace kcsat {

struct Encoding {
    CnfFormula cnf;
    VarMap map;
};

/// One boolean per (variable, value). Emits, in this order: an at-least-one
/// clause per variable, at-most-one clauses per variable (pairs in domain
/// order, unless disabled), then one all-negative clause per forbidden full
/// assignment of each constraint scope (constraint order, tuples
/// lexicographic by value index).
Encoding direct_encode(const CspInstance&, bool include_at_most_one = true);

/// Binary instances only (throws Error otherwise). Emits at-least-one and
/// (unless disabled) at-most-one clauses, then for each constraint and both
/// scope directions, per source value i the clause
///   not x(v,i) or OR_j x(w,j)  over the values j compatible with i;
/// an empty compatible set yields the unit clause not x(v,i).
Encoding support_encode(const CspInstance&, bool include_at_most_one = true);

/// Generic sparse shape: generated at-least-one clauses plus caller-supplied
/// purely negative clauses over the same variable map. Throws Error if any
/// supplied clause has a positive literal or references an unknown boolean.
Encoding negative_sparse_encode(const CspInstance&, std::span<const Clause> negative_clauses);

/// Read a CSP assignment back off a total model (indexed model[b-1] for
/// boolean b). Among multiple true values for one variable the smallest in
/// domain order wins; a variable with no true value raises Error.
PartialAssignment decode_model(const VarMap&, const std::vector<bool>& model);

} // namespace kcsat
