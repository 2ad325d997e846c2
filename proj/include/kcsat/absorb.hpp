#pragma once

#include <vector>

#include "kcsat/cnf.hpp"

namespace kcsat {

/// Why a single literal of the probed clause passed (or failed) the test.
enum class AbsorptionStatus {
    ImpliedLiteral,  // propagation made the distinguished literal true
    Conflict,        // propagation ran into a falsified clause
    PrefixSatisfied, // some other literal of the clause came out true
    NotAbsorbed,     // all negations stuck without implying the literal
};

struct LiteralAbsorption {
    int literal = 0;
    bool absorbed = false;
    AbsorptionStatus status = AbsorptionStatus::NotAbsorbed;
};

struct AbsorptionReport {
    bool absorbed = false; // true iff every literal passed
    std::vector<LiteralAbsorption> per_literal;
};

/// A clause database absorbs a clause when, for every literal l of the
/// clause, assuming the negations of the remaining literals and closing
/// under unit propagation either implies l or produces a conflict. Absorbed
/// clauses are redundant for propagation: attaching them can never trigger
/// a unit propagation or conflict the database would miss.
///
/// Probes with a fresh solver over `db`; throws Error when `clause` is empty.
AbsorptionReport is_absorbed(const CnfFormula& db, const Clause& clause);

} // namespace kcsat
