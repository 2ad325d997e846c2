#include "kcsat/hyperres.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_set>

#include "kcsat/error.hpp"
#include "kcsat/rng.hpp"

namespace kcsat {

namespace {

std::string ordinal(std::size_t index) { return std::to_string(index + 1); }

} // namespace

Clause negative_hyper_resolve(const Clause& nucleus, std::span<const Clause> sides) {
    std::vector<int> pivots; // positive literals in ascending variable order
    std::vector<int> lits;
    for (int lit : nucleus.lits()) {
        if (lit_positive(lit))
            pivots.push_back(lit);
        else
            lits.push_back(lit);
    }
    if (pivots.empty()) throw Error("nucleus " + nucleus.str() + " has no positive literal");
    if (sides.size() != pivots.size())
        throw Error("nucleus " + nucleus.str() + " has " + std::to_string(pivots.size()) +
                    " positive literals but " + std::to_string(sides.size()) +
                    " side clauses were given");
    for (std::size_t j = 0; j < sides.size(); ++j) {
        if (!sides[j].purely_negative())
            throw Error("side clause " + ordinal(j) + " " + sides[j].str() +
                        " is not purely negative");
        if (!sides[j].contains(-pivots[j]))
            throw Error("side clause " + ordinal(j) + " " + sides[j].str() +
                        " does not contain the negation of pivot " +
                        std::to_string(pivots[j]));
        for (int lit : sides[j].lits())
            if (lit != -pivots[j]) lits.push_back(lit);
    }
    return Clause(std::move(lits));
}

std::size_t DerivationTrace::width() const {
    std::size_t widest = 0;
    for (const NhrStep& step : steps)
        widest = std::max(widest, static_cast<std::size_t>(step.resolvent.size()));
    return widest;
}

bool DerivationTrace::refutation() const {
    for (const NhrStep& step : steps)
        if (step.resolvent.empty()) return true;
    return false;
}

namespace {

// Negative clauses are var-index bitsets over a fixed number of words; the
// saturation works on these and converts back to clauses only for the trace.
struct MaskHash {
    std::size_t operator()(const std::vector<std::uint64_t>& mask) const {
        std::size_t h = 0xcbf29ce484222325ull;
        for (std::uint64_t word : mask) {
            h ^= word;
            h *= 0x100000001b3ull;
        }
        return h;
    }
};

std::size_t popcount(std::span<const std::uint64_t> mask) {
    std::size_t total = 0;
    for (std::uint64_t word : mask) total += static_cast<std::size_t>(std::popcount(word));
    return total;
}

Clause mask_to_clause(std::span<const std::uint64_t> mask) {
    std::vector<int> lits;
    for (std::size_t w = 0; w < mask.size(); ++w) {
        std::uint64_t word = mask[w];
        while (word) {
            const int bit = std::countr_zero(word);
            lits.push_back(-static_cast<int>(64 * w + bit + 1));
            word &= word - 1;
        }
    }
    return Clause(std::move(lits));
}

struct Saturation {
    const CnfFormula& cnf;
    const std::size_t width;
    const std::size_t words;

    struct Nucleus {
        int id;
        std::vector<int> pivot_vars; // 0-based, ascending
        std::vector<std::uint64_t> negative_mask;
    };
    std::vector<Nucleus> nuclei;

    std::vector<std::uint64_t> mask_arena; // pool entry i at offset i*words
    std::vector<int> pool_ids;             // formula id or input-count + step
    std::vector<std::vector<int>> by_pivot; // pool indices, ascending
    std::unordered_set<std::vector<std::uint64_t>, MaskHash> known;

    RefuteResult result;
    std::vector<int> chosen;               // pool index per slot during search
    std::vector<std::uint64_t> level_masks; // accumulated mask per search depth

    Saturation(const CnfFormula& formula, std::size_t max_width)
        : cnf(formula),
          width(max_width),
          words((static_cast<std::size_t>(formula.num_vars()) + 63) / 64) {}

    std::span<const std::uint64_t> pool_mask(int index) const {
        return {mask_arena.data() + static_cast<std::size_t>(index) * words, words};
    }
    std::span<std::uint64_t> level_mask(std::size_t depth) {
        return {level_masks.data() + depth * words, words};
    }

    void add_pool_entry(std::span<const std::uint64_t> mask, int id) {
        const int index = static_cast<int>(pool_ids.size());
        mask_arena.insert(mask_arena.end(), mask.begin(), mask.end());
        pool_ids.push_back(id);
        for (std::size_t w = 0; w < words; ++w) {
            std::uint64_t word = mask[w];
            while (word) {
                const int bit = std::countr_zero(word);
                by_pivot[64 * w + bit].push_back(index);
                word &= word - 1;
            }
        }
    }

    // Masks for clause lits; purely negative clauses only.
    std::vector<std::uint64_t> clause_mask(const Clause& clause) const {
        std::vector<std::uint64_t> mask(words, 0);
        for (int lit : clause.lits()) {
            const int v = lit_var(lit) - 1;
            mask[v / 64] |= std::uint64_t{1} << (v % 64);
        }
        return mask;
    }

    // Record one derived clause; returns false when the search must stop.
    bool emit(const Nucleus& nucleus, int fixed_slot_entry, std::size_t fixed_slot,
              std::span<const std::uint64_t> resolvent_mask) {
        std::vector<std::uint64_t> key(resolvent_mask.begin(), resolvent_mask.end());
        if (!known.insert(key).second) return true;

        const int input_count = static_cast<int>(cnf.size());
        NhrStep step;
        step.nucleus = cnf.clauses()[nucleus.id];
        step.nucleus_id = nucleus.id;
        for (std::size_t j = 0; j < nucleus.pivot_vars.size(); ++j) {
            const int entry = (j == fixed_slot) ? fixed_slot_entry : chosen[j];
            step.sides.push_back(mask_to_clause(pool_mask(entry)));
            step.side_ids.push_back(pool_ids[entry]);
        }
        step.resolvent = mask_to_clause(resolvent_mask);
        step.resolvent_id = input_count + static_cast<int>(result.trace.steps.size());
        const bool empty = step.resolvent.empty();
        const int resolvent_id = step.resolvent_id;
        result.trace.steps.push_back(std::move(step));
        result.saturated_clause_count += 1;
        if (empty) {
            result.refuted = true;
            return false;
        }
        add_pool_entry(resolvent_mask, resolvent_id);
        return true;
    }

    // Assign pool entries to the remaining side slots. Slot `fixed_slot`
    // already holds `fixed_entry` (the frontier clause); slots before it may
    // only use strictly older entries so each combination is enumerated once,
    // when its newest participant is the frontier clause.
    bool search(const Nucleus& nucleus, std::size_t fixed_slot, int fixed_entry,
                std::size_t slot) {
        const std::size_t r = nucleus.pivot_vars.size();
        if (slot == r)
            return emit(nucleus, fixed_entry, fixed_slot, level_mask(r));

        const auto accumulated = level_mask(slot);
        const auto next = level_mask(slot + 1);
        const int pivot = nucleus.pivot_vars[slot];

        auto try_entry = [&](int entry) -> bool {
            const auto side = pool_mask(entry);
            for (std::size_t w = 0; w < words; ++w) next[w] = accumulated[w] | side[w];
            // This slot's pivot negation is resolved away; it survives only
            // when an earlier side contributed its own occurrence of it.
            const std::uint64_t pivot_bit = std::uint64_t{1} << (pivot % 64);
            next[pivot / 64] = accumulated[pivot / 64] | (side[pivot / 64] & ~pivot_bit);
            if (popcount(next) > width) return true; // too wide; try other entries
            chosen[slot] = entry;
            return search(nucleus, fixed_slot, fixed_entry, slot + 1);
        };

        if (slot == fixed_slot) return try_entry(fixed_entry);
        // Index-based loop: emitting a resolvent deeper in the recursion
        // appends to the pool and to these per-pivot lists.
        for (std::size_t idx = 0; idx < by_pivot[pivot].size(); ++idx) {
            const int entry = by_pivot[pivot][idx];
            if (slot < fixed_slot ? entry >= fixed_entry : entry > fixed_entry) break;
            if (!try_entry(entry)) return false;
        }
        return true;
    }

    // All combinations in which the frontier entry fills at least one slot;
    // the earliest slot it fills breaks the symmetry.
    bool process(int frontier) {
        // Copy: emitted resolvents grow the arena under this mask.
        const std::vector<std::uint64_t> frontier_mask(pool_mask(frontier).begin(),
                                                       pool_mask(frontier).end());
        for (const Nucleus& nucleus : nuclei) {
            if (popcount(std::span<const std::uint64_t>(nucleus.negative_mask)) > width)
                continue;
            const std::size_t r = nucleus.pivot_vars.size();
            if (chosen.size() < r) chosen.resize(r);
            if (level_masks.size() < (r + 1) * words) level_masks.resize((r + 1) * words);
            for (std::size_t s = 0; s < r; ++s) {
                const int pivot = nucleus.pivot_vars[s];
                if (!(frontier_mask[pivot / 64] >> (pivot % 64) & 1)) continue;
                std::copy(nucleus.negative_mask.begin(), nucleus.negative_mask.end(),
                          level_mask(0).begin());
                if (!search(nucleus, s, frontier, 0)) return false;
            }
        }
        return true;
    }

    void run(std::uint64_t shuffle_seed) {
        // Split inputs into nuclei (some positive literal) and the initial
        // purely negative pool; an input empty clause is already a refutation.
        std::vector<int> negative_inputs;
        for (std::size_t i = 0; i < cnf.size(); ++i) {
            const Clause& clause = cnf.clauses()[i];
            if (clause.empty()) {
                result.refuted = true;
                return;
            }
            if (clause.has_positive_literal()) {
                Nucleus nucleus;
                nucleus.id = static_cast<int>(i);
                for (int lit : clause.lits())
                    if (lit_positive(lit)) nucleus.pivot_vars.push_back(lit_var(lit) - 1);
                std::vector<int> negatives;
                for (int lit : clause.lits())
                    if (!lit_positive(lit)) negatives.push_back(lit);
                nucleus.negative_mask = clause_mask(Clause(std::move(negatives)));
                nuclei.push_back(std::move(nucleus));
            } else {
                negative_inputs.push_back(static_cast<int>(i));
            }
        }
        if (shuffle_seed != 0) {
            Rng rng(shuffle_seed);
            rng.shuffle(negative_inputs);
        }
        by_pivot.assign(static_cast<std::size_t>(cnf.num_vars()), {});
        for (int id : negative_inputs) {
            const auto mask = clause_mask(cnf.clauses()[id]);
            if (known.insert(mask).second) add_pool_entry(mask, id);
        }
        for (int frontier = 0; frontier < static_cast<int>(pool_ids.size()); ++frontier)
            if (!process(frontier)) return;
    }
};

} // namespace

RefuteResult refute_width_k(const CnfFormula& cnf, int width, RefuteOptions options) {
    if (width < 1) throw Error("derived-clause width bound must be at least 1");
    if (cnf.num_vars() > 0 && width > cnf.num_vars())
        throw Error("derived-clause width bound " + std::to_string(width) +
                    " exceeds the variable count " + std::to_string(cnf.num_vars()));
    Saturation saturation(cnf, static_cast<std::size_t>(width));
    saturation.run(options.shuffle_seed);
    return std::move(saturation.result);
}

std::vector<ResolutionStep> expand_to_resolution(const NhrStep& step) {
    const Clause recomputed = negative_hyper_resolve(step.nucleus, step.sides);
    if (!(recomputed == step.resolvent))
        throw Error("step resolvent " + step.resolvent.str() +
                    " does not match its nucleus and sides (expected " + recomputed.str() +
                    ")");

    std::vector<int> pivots; // positive literals, ascending variable order
    for (int lit : step.nucleus.lits())
        if (lit_positive(lit)) pivots.push_back(lit);
    const std::size_t r = pivots.size();

    // A side that mentions another pivot's negation must resolve after that
    // pivot's own side, or the intermediate clause would be a tautology.
    std::vector<std::vector<std::size_t>> successors(r);
    std::vector<std::size_t> indegree(r, 0);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            if (i == j) continue;
            if (step.sides[i].contains(-pivots[j])) {
                successors[j].push_back(i);
                indegree[i] += 1;
            }
        }

    std::vector<std::size_t> order;
    std::vector<char> placed(r, 0);
    while (order.size() < r) {
        // Among the ready sides, take the one with the largest pivot.
        std::size_t best = r;
        for (std::size_t i = 0; i < r; ++i)
            if (!placed[i] && indegree[i] == 0 && (best == r || pivots[i] > pivots[best]))
                best = i;
        if (best == r)
            throw Error("side clauses overlap cyclically on pivot variables; "
                        "no binary resolution expansion exists");
        placed[best] = 1;
        order.push_back(best);
        for (std::size_t succ : successors[best])
            indegree[succ] -= 1;
    }

    std::vector<ResolutionStep> chain;
    Clause intermediate = step.nucleus;
    std::size_t done = 0;
    for (std::size_t i : order) {
        std::vector<int> lits;
        for (int lit : intermediate.lits())
            if (lit != pivots[i]) lits.push_back(lit);
        for (int lit : step.sides[i].lits())
            if (lit != -pivots[i]) lits.push_back(lit);
        Clause result = [&] {
            try {
                return Clause(std::move(lits));
            } catch (const Error&) {
                throw InternalError("binary expansion produced a tautology");
            }
        }();
        done += 1;
        if (static_cast<std::size_t>(result.size()) >
            static_cast<std::size_t>(step.resolvent.size()) + (r - done))
            throw InternalError("binary expansion exceeded its width budget");
        chain.push_back({intermediate, step.sides[i], pivots[i], result});
        intermediate = std::move(result);
    }
    if (!(intermediate == step.resolvent))
        throw InternalError("binary expansion did not reproduce the resolvent");
    return chain;
}

} // namespace kcsat
