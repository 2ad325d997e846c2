#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "kcsat/csp.hpp"

namespace kcsat {

/// Literals use the DIMACS convention: a nonzero int whose absolute value is
/// the 1-based boolean variable index and whose sign is the polarity.
inline int lit_var(int lit) { return lit < 0 ? -lit : lit; }
inline bool lit_positive(int lit) { return lit > 0; }

/// Duplicate-free clause, canonically ordered by variable index. The same
/// variable never appears with both polarities: tautologies are rejected at
/// construction, duplicate literals are merged.
class Clause {
public:
    Clause() = default; // the empty clause
    explicit Clause(std::vector<int> lits);

    std::span<const int> lits() const { return lits_; }
    int size() const { return static_cast<int>(lits_.size()); }
    bool empty() const { return lits_.empty(); }
    bool contains(int lit) const;
    bool purely_negative() const;
    bool has_positive_literal() const;

    /// "(-1 v 3 v -7)" for diagnostics and traces; "()" when empty.
    std::string str() const;

    bool operator==(const Clause&) const = default;
    auto operator<=>(const Clause&) const = default;

private:
    std::vector<int> lits_;
};

struct ClauseHash {
    std::size_t operator()(const Clause& c) const {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (int lit : c.lits())
            h = (h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(lit))) *
                0x100000001b3ULL;
        return static_cast<std::size_t>(h);
    }
};

enum class ClauseOrigin { AtLeastOne, AtMostOne, NoGood, Support, Learned, Derived };

/// Clause sequence plus variable count. Exact duplicate clauses are dropped
/// on insertion so the input set stays duplicate-free; clause order is
/// otherwise insertion order and is significant for equality.
class CnfFormula {
public:
    CnfFormula() = default;
    explicit CnfFormula(int num_vars) : num_vars_(num_vars) {}

    int num_vars() const { return num_vars_; }
    void ensure_num_vars(int n);

    /// Returns false (and keeps the formula unchanged) on an exact duplicate.
    /// Grows the variable count to cover the clause.
    bool add(Clause c, std::optional<ClauseOrigin> origin = std::nullopt);

    const std::vector<Clause>& clauses() const { return clauses_; }
    std::optional<ClauseOrigin> origin(std::size_t i) const { return origins_[i]; }
    std::size_t size() const { return clauses_.size(); }

    bool operator==(const CnfFormula& other) const {
        return num_vars_ == other.num_vars_ && clauses_ == other.clauses_;
    }

private:
    int num_vars_ = 0;
    std::vector<Clause> clauses_;
    std::vector<std::optional<ClauseOrigin>> origins_;
    std::unordered_set<Clause, ClauseHash> seen_;
};

/// Bijection between boolean variables and (CSP variable, domain value index)
/// pairs. Numbering is row-major in variable order then domain order and
/// starts at 1, so the same instance always maps to the same booleans.
class VarMap {
public:
    VarMap() = default;
    static VarMap row_major(const CspInstance&);

    int booleans() const { return offsets_.empty() ? 0 : offsets_.back(); }
    int csp_variables() const {
        return offsets_.empty() ? 0 : static_cast<int>(offsets_.size()) - 1;
    }
    int domain_size(int var) const { return offsets_[var + 1] - offsets_[var]; }

    int boolean(int var, int val_idx) const;
    std::pair<int, int> csp(int boolean_var) const; // (variable, value index)

private:
    std::vector<int> offsets_; // offsets_[v] = booleans preceding variable v
};

} // namespace kcsat
