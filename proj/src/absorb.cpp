#include "kcsat/absorb.hpp"

#include <algorithm>

#include "kcsat/cdcl.hpp"
#include "kcsat/error.hpp"

namespace kcsat {

AbsorptionReport is_absorbed(const CnfFormula& db, const Clause& clause) {
    if (clause.empty()) throw Error("cannot test absorption of the empty clause");

    CnfFormula probe_formula = db;
    int max_var = probe_formula.num_vars();
    for (int lit : clause.lits()) max_var = std::max(max_var, lit_var(lit));
    probe_formula.ensure_num_vars(max_var);

    CdclSolver probe(probe_formula);

    AbsorptionReport report;
    report.absorbed = true;
    for (int distinguished : clause.lits()) {
        LiteralAbsorption entry;
        entry.literal = distinguished;

        probe.cancel_to(0);
        if (probe.propagate()) {
            // The database is contradictory on its own; it absorbs anything.
            entry.absorbed = true;
            entry.status = AbsorptionStatus::Conflict;
        } else if (probe.value_of(distinguished) > 0) {
            entry.absorbed = true;
            entry.status = AbsorptionStatus::ImpliedLiteral;
        } else {
            entry.absorbed = false;
            entry.status = AbsorptionStatus::NotAbsorbed;
            for (int other : clause.lits()) {
                if (other == distinguished) continue;
                const int value = probe.value_of(other);
                if (value > 0) {
                    // The assumed negations already forced another clause
                    // literal true, so they cannot all hold together.
                    entry.absorbed = true;
                    entry.status = AbsorptionStatus::PrefixSatisfied;
                    break;
                }
                if (value < 0) continue; // its negation already holds
                probe.assume(-other);
                if (probe.propagate()) {
                    entry.absorbed = true;
                    entry.status = AbsorptionStatus::Conflict;
                    break;
                }
                if (probe.value_of(distinguished) > 0) {
                    entry.absorbed = true;
                    entry.status = AbsorptionStatus::ImpliedLiteral;
                    break;
                }
            }
        }

        report.absorbed = report.absorbed && entry.absorbed;
        report.per_literal.push_back(entry);
    }
    return report;
}

} // namespace kcsat
