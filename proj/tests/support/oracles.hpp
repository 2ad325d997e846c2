#pragma once

#include <cstdint>
#include <vector>

#include "kcsat/cnf.hpp"

namespace kcsat::testing {

struct OracleResult {
    bool sat = false;
    std::vector<bool> model; // model[v-1]; filled when sat
};

/// Exhaustive scan over all assignments; requires at most 20 variables.
OracleResult truth_table_solve(const CnfFormula&);

/// Number of total models; requires at most 20 variables.
std::uint64_t truth_table_count(const CnfFormula&);

/// Does every model of the formula satisfy the clause?
bool truth_table_implies(const CnfFormula&, const Clause&);

/// Plain recursive backtracking with unit propagation and fixed variable
/// order; shares no machinery with the clause-learning solver.
OracleResult dpll_solve(const CnfFormula&);

} // namespace kcsat::testing
