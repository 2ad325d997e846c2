#pragma once

#include <vector>

#include "kcsat/cnf.hpp"
#include "kcsat/csp.hpp"
#include "kcsat/rng.hpp"

namespace kcsat::testing {

/// Random valid instance: 1..max_vars variables, domain sizes 1..max_domain,
/// up to max_vars constraints of arity 1..max_arity with random tuple sets.
CspInstance random_instance(Rng&, int max_vars = 5, int max_domain = 3,
                            int max_arity = 3);

/// As random_instance but all constraints have arity exactly 2.
CspInstance random_binary_instance(Rng&, int max_vars = 5, int max_domain = 3);

/// Random formula over exactly num_vars variables; clause lengths are
/// 1..max_len over distinct variables (so no tautologies arise).
CnfFormula random_cnf(Rng&, int num_vars, int num_clauses, int max_len);

struct RandomHyperStep {
    Clause nucleus;
    std::vector<Clause> sides;
    Clause resolvent;
};

/// Hyper-resolution step whose clauses pairwise share nothing but the pivot
/// matching each side to the nucleus; the resolvent is never empty.
RandomHyperStep random_disjoint_hyper_step(Rng&);

} // namespace kcsat::testing
