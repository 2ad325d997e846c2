#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "kcsat/cnf.hpp"

namespace kcsat {

/// One hyper-resolution step: a nucleus clause whose positive literals are
/// all resolved away at once against purely negative side clauses, one side
/// per positive literal. The resolvent collects the nucleus's negative
/// literals and every side literal except the matched pivot negation; it is
/// purely negative by construction.
///
/// Ids refer to a clause universe: input clauses keep their formula ids
/// (0..size-1); clauses derived during a refutation search are numbered
/// upwards from the input count in derivation order.
struct NhrStep {
    Clause nucleus;
    int nucleus_id = -1;
    std::vector<Clause> sides; // sides[j] resolves the j-th positive literal
    std::vector<int> side_ids;
    Clause resolvent;
    int resolvent_id = -1;
};

/// Resolve all positive literals of `nucleus` (in ascending variable order)
/// against `sides`, one side clause per positive literal in the same order.
/// Throws Error when the nucleus has no positive literal, the side count is
/// wrong, a side is not purely negative, or side j lacks the negation of the
/// j-th pivot.
Clause negative_hyper_resolve(const Clause& nucleus, std::span<const Clause> sides);

struct DerivationTrace {
    std::vector<NhrStep> steps;

    /// Largest derived clause size over the trace (0 when empty). Input
    /// clauses do not count toward the width, only resolvents do.
    std::size_t width() const;
    /// True when some step derived the empty clause.
    bool refutation() const;
};

struct RefuteOptions {
    /// Nonzero: seed the initial side-clause pool in a shuffled order. The
    /// verdict and, on saturation, the derived-clause count do not depend on
    /// it; the trace layout may.
    std::uint64_t shuffle_seed = 0;
};

struct RefuteResult {
    bool refuted = false;
    DerivationTrace trace; // ends with the empty clause when refuted
    std::size_t saturated_clause_count = 0; // distinct derived clauses
};

/// Exhaustively derive negative clauses of at most `width` literals by
/// hyper-resolution from `cnf`, stopping as soon as the empty clause appears.
/// Side clauses may be arbitrarily large input clauses; the bound constrains
/// derived clauses only. A formula that already contains the empty clause is
/// reported refuted with an empty trace. Throws Error when width < 1 or
/// width exceeds the variable count of a nonempty formula.
RefuteResult refute_width_k(const CnfFormula& cnf, int width, RefuteOptions = {});

/// One binary resolution step used when unrolling a hyper-resolution step.
struct ResolutionStep {
    Clause left;
    Clause right;
    int pivot_var = 0;
    Clause result;
};

/// Unroll a hyper-resolution step into a chain of binary resolutions ending
/// in the step's resolvent. Sides are ordered so that a side contributing
/// the negation of another pivot resolves after that pivot's own side; every
/// intermediate clause carries at most (number of sides - 1) literals beyond
/// the resolvent. Throws Error when the step's resolvent is inconsistent
/// with its nucleus and sides, or when the sides overlap cyclically on pivot
/// variables (then no binary unrolling exists).
std::vector<ResolutionStep> expand_to_resolution(const NhrStep& step);

} // namespace kcsat
