#include "kcsat/encode.hpp"

#include <algorithm>

#include "kcsat/error.hpp"

namespace kcsat {

namespace {

void emit_at_least_one(const CspInstance& inst, const VarMap& map, CnfFormula& cnf) {
    for (int v = 0; v < inst.num_variables(); ++v) {
        std::vector<int> lits;
        lits.reserve(inst.domain_size(v));
        for (int i = 0; i < inst.domain_size(v); ++i)
            lits.push_back(map.boolean(v, i));
        cnf.add(Clause(std::move(lits)), ClauseOrigin::AtLeastOne);
    }
}

void emit_at_most_one(const CspInstance& inst, const VarMap& map, CnfFormula& cnf) {
    for (int v = 0; v < inst.num_variables(); ++v)
        for (int i = 0; i < inst.domain_size(v); ++i)
            for (int j = i + 1; j < inst.domain_size(v); ++j)
                cnf.add(Clause({-map.boolean(v, i), -map.boolean(v, j)}),
                        ClauseOrigin::AtMostOne);
}

} // namespace

Encoding direct_encode(const CspInstance& inst, bool include_at_most_one) {
    const auto prepared = prepare_constraints(inst); // validates
    VarMap map = VarMap::row_major(inst);
    CnfFormula cnf(map.booleans());

    emit_at_least_one(inst, map, cnf);
    if (include_at_most_one) emit_at_most_one(inst, map, cnf);

    // Forbidden full assignments of each scope, walked as an odometer over
    // value indices so the emitted order is lexicographic.
    std::vector<int> tuple;
    for (const PreparedConstraint& con : prepared) {
        const int arity = static_cast<int>(con.scope.size());
        tuple.assign(arity, 0);
        if (arity == 0) continue; // no full assignment to forbid
        for (;;) {
            if (!con.allows(tuple)) {
                std::vector<int> lits;
                lits.reserve(arity);
                for (int p = 0; p < arity; ++p)
                    lits.push_back(-map.boolean(con.scope[p], tuple[p]));
                cnf.add(Clause(std::move(lits)), ClauseOrigin::NoGood);
            }
            int p = arity - 1;
            while (p >= 0 && ++tuple[p] == inst.domain_size(con.scope[p])) {
                tuple[p] = 0;
                --p;
            }
            if (p < 0) break;
        }
    }
    return {std::move(cnf), std::move(map)};
}

Encoding support_encode(const CspInstance& inst, bool include_at_most_one) {
    const auto prepared = prepare_constraints(inst);
    for (std::size_t c = 0; c < prepared.size(); ++c)
        if (prepared[c].scope.size() != 2)
            throw Error("support encoding is defined for binary constraints; "
                        "constraint " + std::to_string(c) + " has arity " +
                        std::to_string(prepared[c].scope.size()));

    VarMap map = VarMap::row_major(inst);
    CnfFormula cnf(map.booleans());

    emit_at_least_one(inst, map, cnf);
    if (include_at_most_one) emit_at_most_one(inst, map, cnf);

    // For direction (v -> w): per source value i, the values j of w that the
    // relation pairs with i form the support set; the clause says "v takes i
    // implies w takes one of them".
    auto emit_direction = [&](const PreparedConstraint& con, int src_pos) {
        const int dst_pos = 1 - src_pos;
        const int v = con.scope[src_pos];
        const int w = con.scope[dst_pos];
        for (int i = 0; i < inst.domain_size(v); ++i) {
            std::vector<int> lits{-map.boolean(v, i)};
            for (int j = 0; j < inst.domain_size(w); ++j) {
                std::vector<int> pair(2);
                pair[src_pos] = i;
                pair[dst_pos] = j;
                if (con.allows(pair)) lits.push_back(map.boolean(w, j));
            }
            cnf.add(Clause(std::move(lits)), ClauseOrigin::Support);
        }
    };
    for (const PreparedConstraint& con : prepared) {
        emit_direction(con, 0);
        emit_direction(con, 1);
    }
    return {std::move(cnf), std::move(map)};
}

Encoding negative_sparse_encode(const CspInstance& inst,
                                std::span<const Clause> negative_clauses) {
    require_valid(inst);
    VarMap map = VarMap::row_major(inst);
    CnfFormula cnf(map.booleans());
    emit_at_least_one(inst, map, cnf);
    for (std::size_t i = 0; i < negative_clauses.size(); ++i) {
        const Clause& c = negative_clauses[i];
        if (!c.purely_negative())
            throw Error("supplied clause " + std::to_string(i) + " " + c.str() +
                        " is not purely negative");
        for (int lit : c.lits())
            if (lit_var(lit) > map.booleans())
                throw Error("supplied clause " + std::to_string(i) + " " + c.str() +
                            " references boolean " + std::to_string(lit_var(lit)) +
                            " beyond the variable map");
        cnf.add(c, ClauseOrigin::NoGood);
    }
    return {std::move(cnf), std::move(map)};
}

PartialAssignment decode_model(const VarMap& map, const std::vector<bool>& model) {
    if (static_cast<int>(model.size()) < map.booleans())
        throw Error("model covers " + std::to_string(model.size()) +
                    " booleans, need " + std::to_string(map.booleans()));
    std::vector<std::pair<int, int>> bindings;
    for (int v = 0; v < map.csp_variables(); ++v) {
        int chosen = -1;
        for (int i = 0; i < map.domain_size(v); ++i) {
            if (model[map.boolean(v, i) - 1]) {
                chosen = i;
                break; // smallest true value in domain order
            }
        }
        if (chosen < 0)
            throw Error("no value is true for variable index " + std::to_string(v));
        bindings.emplace_back(v, chosen);
    }
    return PartialAssignment::from_bindings(std::move(bindings));
}

} // namespace kcsat
