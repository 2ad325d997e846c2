#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "kcsat/absorb.hpp"
#include "kcsat/bench.hpp"
#include "kcsat/bounds.hpp"
#include "kcsat/cdcl.hpp"
#include "kcsat/consistency.hpp"
#include "kcsat/csp_json.hpp"
#include "kcsat/dimacs.hpp"
#include "kcsat/encode.hpp"
#include "kcsat/error.hpp"
#include "kcsat/hyperres.hpp"

namespace py = pybind11;
using namespace kcsat;

namespace {

py::object to_python_int(const BigInt& value) {
    const std::string digits = value.str();
    PyObject* obj = PyLong_FromString(digits.c_str(), nullptr, 10);
    if (!obj) throw py::error_already_set();
    return py::reinterpret_steal<py::object>(obj);
}

py::dict assignment_to_dict(const CspInstance& inst, const PartialAssignment& pa) {
    py::dict out;
    for (const auto& [var, val_idx] : pa.bindings())
        out[py::str(inst.variables[var])] = inst.domains[var][val_idx];
    return out;
}

Encoding encode_with(const CspInstance& inst, const std::string& encoding) {
    if (encoding == "direct") return direct_encode(inst, true);
    if (encoding == "direct-no-amo") return direct_encode(inst, false);
    if (encoding == "support") return support_encode(inst, true);
    throw Error("unknown encoding '" + encoding + "' (direct, direct-no-amo, support)");
}

SolverConfig config_from(const std::string& scheme, const std::string& restart,
                         std::uint64_t seed, bool minimize) {
    SolverConfig config;
    if (scheme == "1uip")
        config.learning = LearningScheme::OneUip;
    else if (scheme == "decision")
        config.learning = LearningScheme::Decision;
    else
        throw Error("unknown learning scheme '" + scheme + "' (1uip, decision)");
    if (restart == "every")
        config.restart = RestartPolicy::every_conflict();
    else if (restart == "never")
        config.restart = RestartPolicy::never();
    else if (restart == "geometric")
        config.restart = RestartPolicy::geometric(100.0, 1.5);
    else
        throw Error("unknown restart policy '" + restart + "' (every, never, geometric)");
    config.seed = seed;
    config.minimize_learned = minimize;
    return config;
}

} // namespace

PYBIND11_MODULE(kcsat, m) {
    m.doc() = "Consistency closure, bounded-width hyper-resolution, and a "
              "restarting clause-learning solver over sparse constraint encodings";

    py::register_exception<Error>(m, "KcsatError", PyExc_ValueError);

    m.def(
        "generate_chain",
        [](int w, int d) {
            return instance_to_json_text(generate_chain(ChainSpec{w, d}));
        },
        py::arg("w"), py::arg("d"),
        "Unsatisfiable chain instance with group size w over domain {0..d-1}, "
        "as instance JSON.");

    m.def(
        "validate",
        [](const std::string& instance_json) {
            const CspInstance inst = instance_from_json_text(instance_json);
            return validate_instance(inst).violations;
        },
        py::arg("instance_json"),
        "List of problems that make the instance invalid; empty when fine.");

    m.def(
        "closure",
        [](const std::string& instance_json, int k) {
            const CspInstance inst = instance_from_json_text(instance_json);
            require_valid(inst);
            const ClosureResult result = k_consistency_closure(inst, k);
            py::dict out;
            out["empty"] = result.empty;
            out["surviving"] = result.surviving.size();
            out["removed"] = result.removal_trace.size();
            out["iterations"] = result.iterations;
            return out;
        },
        py::arg("instance_json"), py::arg("k"),
        "Run the k-consistency closure; empty=True certifies unsatisfiability.");

    m.def(
        "solve_via_closure",
        [](const std::string& instance_json, int k) -> py::object {
            const CspInstance inst = instance_from_json_text(instance_json);
            require_valid(inst);
            const ClosureSolveOutcome outcome = solve_via_closure(inst, k);
            py::dict out;
            switch (outcome.kind) {
                case ClosureSolveOutcome::Kind::Solution:
                    out["status"] = "solution";
                    out["assignment"] = assignment_to_dict(inst, outcome.assignment);
                    break;
                case ClosureSolveOutcome::Kind::ClosureEmpty:
                    out["status"] = "unsatisfiable";
                    break;
                case ClosureSolveOutcome::Kind::Inconclusive:
                    out["status"] = "inconclusive";
                    out["assignment"] = assignment_to_dict(inst, outcome.assignment);
                    break;
            }
            return out;
        },
        py::arg("instance_json"), py::arg("k"),
        "Pin variables one at a time, keeping values whose closure stays nonempty.");

    m.def(
        "encode",
        [](const std::string& instance_json, const std::string& encoding) {
            const CspInstance inst = instance_from_json_text(instance_json);
            const Encoding enc = encode_with(inst, encoding);
            return write_dimacs(enc.cnf, map_entries_for(inst, enc.map));
        },
        py::arg("instance_json"), py::arg("encoding") = "direct",
        "Encode as DIMACS text ('direct', 'direct-no-amo', or 'support').");

    m.def(
        "refute",
        [](const std::string& dimacs, int width) {
            const ParsedDimacs parsed = parse_dimacs(dimacs);
            const RefuteResult result = refute_width_k(parsed.cnf, width);
            py::dict out;
            out["refuted"] = result.refuted;
            out["steps"] = result.trace.steps.size();
            out["width"] = result.trace.width();
            out["saturated_clauses"] = result.saturated_clause_count;
            return out;
        },
        py::arg("dimacs"), py::arg("width"),
        "Search for a hyper-resolution refutation deriving clauses of at most "
        "`width` literals.");

    m.def(
        "solve",
        [](const std::string& dimacs, const std::string& scheme,
           const std::string& restart, std::uint64_t seed, bool minimize) {
            const ParsedDimacs parsed = parse_dimacs(dimacs);
            CdclSolver solver(parsed.cnf, config_from(scheme, restart, seed, minimize));
            const SolveResult result = solver.solve();
            py::dict out;
            out["sat"] = result.sat;
            out["restarts"] = solver.stats().restarts;
            out["conflicts"] = solver.stats().conflicts;
            out["decisions"] = solver.stats().decisions;
            out["propagations"] = solver.stats().propagations;
            if (result.sat) {
                std::vector<int> lits;
                for (std::size_t v = 0; v < result.model.size(); ++v)
                    lits.push_back(result.model[v] ? static_cast<int>(v + 1)
                                                   : -static_cast<int>(v + 1));
                out["model"] = lits;
            }
            return out;
        },
        py::arg("dimacs"), py::arg("scheme") = "1uip", py::arg("restart") = "every",
        py::arg("seed") = 1, py::arg("minimize") = false,
        "Run the clause-learning solver on DIMACS text.");

    m.def(
        "is_absorbed",
        [](const std::string& dimacs, const std::vector<int>& clause) {
            const ParsedDimacs parsed = parse_dimacs(dimacs);
            const AbsorptionReport report =
                is_absorbed(parsed.cnf, Clause(std::vector<int>(clause)));
            py::list per_literal;
            for (const LiteralAbsorption& entry : report.per_literal) {
                const char* status = nullptr;
                switch (entry.status) {
                    case AbsorptionStatus::ImpliedLiteral: status = "implied"; break;
                    case AbsorptionStatus::Conflict: status = "conflict"; break;
                    case AbsorptionStatus::PrefixSatisfied:
                        status = "prefix-satisfied";
                        break;
                    case AbsorptionStatus::NotAbsorbed: status = "not-absorbed"; break;
                }
                per_literal.append(py::make_tuple(entry.literal, entry.absorbed, status));
            }
            py::dict out;
            out["absorbed"] = report.absorbed;
            out["per_literal"] = per_literal;
            return out;
        },
        py::arg("dimacs"), py::arg("clause"),
        "Check whether unit propagation over the database already covers the "
        "clause, literal by literal.");

    m.def(
        "bounds",
        [](long long n, long long d, long long k, long long m) {
            const BoundsReport report = theoretical_bounds(n, d, k, m);
            py::dict out;
            out["restarts_any_asserting"] = to_python_int(report.restarts_any_asserting);
            out["restarts_decision_scheme"] =
                to_python_int(report.restarts_decision_scheme);
            out["restarts_decision_median"] =
                to_python_int(report.restarts_decision_median);
            out["csp_restart_bound"] = to_python_int(report.csp_restart_bound);
            return out;
        },
        py::arg("n"), py::arg("d"), py::arg("k"), py::arg("m"),
        "Worst-case restart counts as exact Python ints.");

    m.def(
        "enumerate_solutions",
        [](const std::string& instance_json, std::size_t limit) {
            const CspInstance inst = instance_from_json_text(instance_json);
            require_valid(inst);
            py::list out;
            for (const PartialAssignment& pa : enumerate_solutions(inst, limit))
                out.append(assignment_to_dict(inst, pa));
            return out;
        },
        py::arg("instance_json"), py::arg("limit"),
        "Solutions in lexicographic order, truncated at `limit`.");
}
