#pragma once

#include "kcsat/cnf.hpp"
#include "kcsat/csp.hpp"

namespace kcsat::testing {

/// Three variables u, v, w with domains {0,1}, {0,1}, {0,1,2} and a single
/// ternary constraint allowing exactly (0,0,1), (0,0,2), (0,1,2), (1,1,2).
CspInstance mixed_domain_instance();

/// The same solution set expressed with two binary constraints:
/// u <= v and v < w (on value indices). Suitable for the support encoding.
CspInstance mixed_domain_instance_binary();

/// Six booleans forming three two-valued groups (1,2), (3,4), (5,6) with
/// exactly-one clauses per group and the exclusions (-1 -3), (-2 -5),
/// (-2 -4 -6). Small enough to reason about by hand, rich enough to make
/// propagation chains interesting.
CnfFormula three_group_exclusion_formula();

} // namespace kcsat::testing
