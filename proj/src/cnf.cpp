#include "kcsat/cnf.hpp"

#include <algorithm>
#include <sstream>

#include "kcsat/error.hpp"

namespace kcsat {

Clause::Clause(std::vector<int> lits) : lits_(std::move(lits)) {
    for (int lit : lits_)
        if (lit == 0) throw Error("literal 0 is not allowed in a clause");
    std::sort(lits_.begin(), lits_.end(),
              [](int a, int b) { return lit_var(a) != lit_var(b) ? lit_var(a) < lit_var(b)
                                                                 : a < b; });
    lits_.erase(std::unique(lits_.begin(), lits_.end()), lits_.end());
    for (std::size_t i = 1; i < lits_.size(); ++i)
        if (lit_var(lits_[i]) == lit_var(lits_[i - 1]))
            throw Error("tautological clause: variable " +
                        std::to_string(lit_var(lits_[i])) +
                        " occurs with both polarities");
}

bool Clause::contains(int lit) const {
    auto it = std::lower_bound(lits_.begin(), lits_.end(), lit,
                               [](int a, int b) {
                                   return lit_var(a) != lit_var(b)
                                              ? lit_var(a) < lit_var(b)
                                              : a < b;
                               });
    return it != lits_.end() && *it == lit;
}

bool Clause::purely_negative() const {
    for (int lit : lits_)
        if (lit > 0) return false;
    return true;
}

bool Clause::has_positive_literal() const {
    for (int lit : lits_)
        if (lit > 0) return true;
    return false;
}

std::string Clause::str() const {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < lits_.size(); ++i) {
        if (i) out << " v ";
        out << lits_[i];
    }
    out << ')';
    return out.str();
}

void CnfFormula::ensure_num_vars(int n) {
    if (n < 0) throw Error("negative variable count");
    num_vars_ = std::max(num_vars_, n);
}

bool CnfFormula::add(Clause c, std::optional<ClauseOrigin> origin) {
    if (!seen_.insert(c).second) return false;
    for (int lit : c.lits()) ensure_num_vars(lit_var(lit));
    clauses_.push_back(std::move(c));
    origins_.push_back(origin);
    return true;
}

VarMap VarMap::row_major(const CspInstance& inst) {
    require_valid(inst);
    VarMap map;
    map.offsets_.resize(inst.num_variables() + 1, 0);
    for (int v = 0; v < inst.num_variables(); ++v)
        map.offsets_[v + 1] = map.offsets_[v] + inst.domain_size(v);
    return map;
}

int VarMap::boolean(int var, int val_idx) const {
    if (var < 0 || var + 1 >= static_cast<int>(offsets_.size()))
        throw Error("variable index " + std::to_string(var) + " out of range");
    if (val_idx < 0 || offsets_[var] + val_idx >= offsets_[var + 1])
        throw Error("value index " + std::to_string(val_idx) +
                    " out of range for variable index " + std::to_string(var));
    return offsets_[var] + val_idx + 1;
}

std::pair<int, int> VarMap::csp(int boolean_var) const {
    if (boolean_var < 1 || boolean_var > booleans())
        throw Error("boolean variable " + std::to_string(boolean_var) + " out of range");
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), boolean_var - 1);
    const int var = static_cast<int>(it - offsets_.begin()) - 1;
    return {var, boolean_var - 1 - offsets_[var]};
}

} // namespace kcsat
