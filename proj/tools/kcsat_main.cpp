#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

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

namespace {

using namespace kcsat;

EncodingChoice parse_encoding(const std::string& name) {
    if (name == "direct") return EncodingChoice::Direct;
    if (name == "direct-no-amo") return EncodingChoice::DirectNoAmo;
    if (name == "support") return EncodingChoice::Support;
    throw Error("unknown encoding '" + name + "' (direct, direct-no-amo, support)");
}

LearningScheme parse_scheme(const std::string& name) {
    if (name == "1uip") return LearningScheme::OneUip;
    if (name == "decision") return LearningScheme::Decision;
    throw Error("unknown learning scheme '" + name + "' (1uip, decision)");
}

RestartPolicy parse_restart(const std::string& name, double base, double factor) {
    if (name == "every") return RestartPolicy::every_conflict();
    if (name == "never") return RestartPolicy::never();
    if (name == "geometric") return RestartPolicy::geometric(base, factor);
    throw Error("unknown restart policy '" + name + "' (every, never, geometric)");
}

Clause parse_clause_text(const std::string& text) {
    std::istringstream in(text);
    std::vector<int> lits;
    int lit;
    while (in >> lit) lits.push_back(lit);
    if (!in.eof()) throw Error("clause must be a space-separated list of literals");
    return Clause(std::move(lits));
}

int run_closure(const std::string& instance_path, int k, bool trace) {
    const CspInstance inst = load_instance(instance_path);
    require_valid(inst);
    const ClosureResult result = k_consistency_closure(inst, k);
    if (trace)
        for (const RemovalRecord& record : result.removal_trace)
            std::cout << "REMOVE " << format_assignment(inst, record.removed)
                      << " BLOCKED-ON " << inst.variables[record.blocked_on] << '\n';
    std::cout << (result.empty ? "EMPTY" : "NONEMPTY") << '\n';
    std::cout << "surviving=" << result.surviving.size()
              << " removed=" << result.removal_trace.size()
              << " iterations=" << result.iterations << '\n';
    return 0;
}

int run_encode(const std::string& instance_path, const std::string& encoding_name,
               const std::string& out_path) {
    const CspInstance inst = load_instance(instance_path);
    const EncodingChoice choice = parse_encoding(encoding_name);
    Encoding enc;
    switch (choice) {
        case EncodingChoice::Direct: enc = direct_encode(inst, true); break;
        case EncodingChoice::DirectNoAmo: enc = direct_encode(inst, false); break;
        case EncodingChoice::Support: enc = support_encode(inst, true); break;
    }
    const auto map = map_entries_for(inst, enc.map);
    write_text_file(out_path, write_dimacs(enc.cnf, map));
    std::cout << "vars=" << enc.cnf.num_vars() << " clauses=" << enc.cnf.size() << '\n';
    return 0;
}

int run_nhr(const std::string& cnf_path, int width, bool trace) {
    const ParsedDimacs parsed = parse_dimacs(read_text_file(cnf_path));
    const RefuteResult result = refute_width_k(parsed.cnf, width);
    if (trace)
        for (std::size_t i = 0; i < result.trace.steps.size(); ++i) {
            const NhrStep& step = result.trace.steps[i];
            std::cout << "STEP " << i << ": nucleus=" << step.nucleus.str() << " sides=[";
            for (std::size_t j = 0; j < step.side_ids.size(); ++j)
                std::cout << (j ? " " : "") << step.side_ids[j];
            std::cout << "] resolvent=" << step.resolvent.str() << '\n';
        }
    if (result.refuted)
        std::cout << "REFUTED width=" << result.trace.width()
                  << " steps=" << result.trace.steps.size() << '\n';
    else
        std::cout << "SATURATED clauses=" << result.saturated_clause_count << '\n';
    return 0;
}

int run_bounds(long long n, long long d, long long k, long long m) {
    const BoundsReport report = theoretical_bounds(n, d, k, m);
    std::cout << "restarts_any_asserting=" << report.restarts_any_asserting << '\n'
              << "restarts_decision_scheme=" << report.restarts_decision_scheme << '\n'
              << "restarts_decision_median=" << report.restarts_decision_median << '\n'
              << "csp_restart_bound=" << report.csp_restart_bound << '\n';
    return 0;
}

int run_solve(const std::string& cnf_path, const std::string& scheme_name,
              const std::string& restart_name, double restart_base, double restart_factor,
              std::uint64_t seed, bool minimize, bool stats_json) {
    const ParsedDimacs parsed = parse_dimacs(read_text_file(cnf_path));
    SolverConfig config;
    config.learning = parse_scheme(scheme_name);
    config.minimize_learned = minimize;
    config.restart = parse_restart(restart_name, restart_base, restart_factor);
    config.seed = seed;
    CdclSolver solver(parsed.cnf, config);
    const SolveResult result = solver.solve();
    const SolverStats& stats = solver.stats();
    if (stats_json) {
        nlohmann::ordered_json out;
        out["sat"] = result.sat;
        out["restarts"] = stats.restarts;
        out["conflicts"] = stats.conflicts;
        out["decisions"] = stats.decisions;
        out["propagations"] = stats.propagations;
        out["learned_clauses"] = stats.learned_clause_count;
        if (result.sat) {
            std::vector<int> lits;
            for (std::size_t v = 0; v < result.model.size(); ++v)
                lits.push_back(result.model[v] ? static_cast<int>(v + 1)
                                               : -static_cast<int>(v + 1));
            out["model"] = lits;
        }
        std::cout << out.dump(2) << '\n';
        return 0;
    }
    std::cout << (result.sat ? "SAT" : "UNSAT") << '\n';
    std::cout << "restarts=" << stats.restarts << " conflicts=" << stats.conflicts
              << " decisions=" << stats.decisions << " props=" << stats.propagations
              << '\n';
    if (result.sat) {
        std::cout << "v";
        for (std::size_t v = 0; v < result.model.size(); ++v)
            std::cout << ' ' << (result.model[v] ? static_cast<int>(v + 1)
                                                 : -static_cast<int>(v + 1));
        std::cout << " 0\n";
    }
    return 0;
}

int run_absorb(const std::string& cnf_path, const std::string& clause_text) {
    const ParsedDimacs parsed = parse_dimacs(read_text_file(cnf_path));
    const Clause clause = parse_clause_text(clause_text);
    const AbsorptionReport report = is_absorbed(parsed.cnf, clause);
    for (const LiteralAbsorption& entry : report.per_literal) {
        std::cout << "literal " << entry.literal << ": ";
        switch (entry.status) {
            case AbsorptionStatus::ImpliedLiteral: std::cout << "absorbed (implied)"; break;
            case AbsorptionStatus::Conflict: std::cout << "absorbed (conflict)"; break;
            case AbsorptionStatus::PrefixSatisfied:
                std::cout << "absorbed (prefix satisfied)";
                break;
            case AbsorptionStatus::NotAbsorbed: std::cout << "not absorbed"; break;
        }
        std::cout << '\n';
    }
    std::cout << (report.absorbed ? "ABSORBED" : "NOT-ABSORBED") << '\n';
    return 0;
}

int run_generate(int w, int d, const std::string& out_path) {
    const CspInstance inst = generate_chain(ChainSpec{w, d});
    save_instance(inst, out_path);
    std::cout << "variables=" << inst.num_variables()
              << " constraints=" << inst.constraints.size() << '\n';
    return 0;
}

int run_bench(const std::vector<int>& ws, const std::vector<int>& ds,
              const std::string& encoding_name, const std::string& scheme_name,
              const std::string& restart_name, int seed_count, bool minimize,
              const std::string& csv_path, const std::string& plot_path, bool no_times,
              int jobs) {
    if (seed_count < 1) throw Error("--seeds must be at least 1");
    const EncodingChoice encoding = parse_encoding(encoding_name);

    SolverConfig config;
    config.learning = parse_scheme(scheme_name);
    config.minimize_learned = minimize;
    config.restart = parse_restart(restart_name, 100.0, 1.5);

    std::vector<std::uint64_t> seeds;
    for (int s = 1; s <= seed_count; ++s) seeds.push_back(static_cast<std::uint64_t>(s));

    std::vector<ExperimentSpec> specs;
    for (int w : ws)
        for (int d : ds) {
            ExperimentSpec spec;
            spec.instance = generate_chain(ChainSpec{w, d});
            spec.w = w;
            spec.d = d;
            spec.encoding = encoding;
            spec.solver = config;
            spec.seeds = seeds;
            specs.push_back(std::move(spec));
        }

    const std::vector<ResultRow> rows = run_experiments(specs, jobs);
    if (!csv_path.empty()) {
        std::ofstream out(csv_path);
        if (!out) throw Error("cannot open " + csv_path + " for writing");
        write_csv(rows, out, !no_times);
    }

    const std::vector<AggregateRow> aggregates = aggregate_rows(rows);
    for (const AggregateRow& agg : aggregates)
        std::cout << "w=" << agg.w << " d=" << agg.d << " n=" << agg.n
                  << " scheme=" << agg.scheme << " runs=" << agg.runs
                  << " mean_restarts=" << agg.mean_restarts
                  << " stddev=" << agg.stddev_restarts << '\n';
    for (const ResultRow& row : rows)
        if (!row.error.empty())
            std::cout << "error w=" << row.w << " d=" << row.d << " seed=" << row.seed
                      << ": " << row.error << '\n';

    if (!plot_path.empty()) {
        std::ofstream out(plot_path);
        if (!out) throw Error("cannot open " + plot_path + " for writing");
        write_plotdata(aggregates, out);
        const auto report = scaling_report(aggregates);
        for (const ScalingSeries& series : report) {
            if (series.bound_overlay.empty()) continue;
            out << "\n# w=" << series.w << " scheme=" << series.scheme << " reference\n";
            for (const auto& [x, y] : series.bound_overlay) out << x << ' ' << y << '\n';
        }
    }

    for (const ScalingSeries& series : scaling_report(aggregates))
        std::cout << "scaling w=" << series.w << " scheme=" << series.scheme
                  << " points=" << series.points << " slope=" << series.slope
                  << " reference_degree=" << series.bound_slope
                  << (series.reliable
                          ? (series.exceeds_bound ? " above-reference" : " within-reference")
                          : " unreliable")
                  << '\n';
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"k-consistency, bounded-width hyper-resolution, and a restarting "
                 "clause-learning solver over sparse constraint encodings"};
    app.require_subcommand(1);

    // closure
    std::string closure_instance;
    int closure_k = 2;
    bool closure_trace = false;
    auto* closure = app.add_subcommand("closure", "k-consistency closure of an instance");
    closure->add_option("--instance", closure_instance, "instance JSON file")->required();
    closure->add_option("--k", closure_k, "consistency level (>= 1)")->required();
    closure->add_flag("--trace", closure_trace, "print removals as they happen");

    // encode
    std::string encode_instance, encode_kind = "direct", encode_out;
    auto* encode = app.add_subcommand("encode", "write a sparse encoding as DIMACS");
    encode->add_option("--instance", encode_instance, "instance JSON file")->required();
    encode->add_option("--encoding", encode_kind, "direct | direct-no-amo | support");
    encode->add_option("--out", encode_out, "output DIMACS path")->required();

    // nhr
    std::string nhr_cnf;
    int nhr_width = 2;
    bool nhr_trace = false;
    auto* nhr = app.add_subcommand("nhr", "bounded-width hyper-resolution refutation");
    nhr->add_option("--cnf", nhr_cnf, "DIMACS file")->required();
    nhr->add_option("--width", nhr_width, "derived clause width bound")->required();
    nhr->add_flag("--trace", nhr_trace, "print each derivation step");

    // bounds
    long long bounds_n = 0, bounds_d = 0, bounds_k = 0, bounds_m = 0;
    auto* bounds = app.add_subcommand("bounds", "worst-case restart bounds");
    bounds->add_option("--n", bounds_n, "variable count")->required();
    bounds->add_option("--d", bounds_d, "domain size")->required();
    bounds->add_option("--k", bounds_k, "width / consistency level")->required();
    bounds->add_option("--m", bounds_m, "clause count")->required();

    // solve
    std::string solve_cnf, solve_scheme = "1uip", solve_restart = "every";
    double solve_restart_base = 100.0, solve_restart_factor = 1.5;
    std::uint64_t solve_seed = 1;
    bool solve_minimize = false, solve_stats_json = false;
    auto* solve = app.add_subcommand("solve", "run the clause-learning solver");
    solve->add_option("--cnf", solve_cnf, "DIMACS file")->required();
    solve->add_option("--scheme", solve_scheme, "1uip | decision");
    solve->add_option("--restart", solve_restart, "every | never | geometric");
    solve->add_option("--restart-base", solve_restart_base, "geometric base");
    solve->add_option("--restart-factor", solve_restart_factor, "geometric factor");
    solve->add_option("--seed", solve_seed, "branching seed");
    solve->add_flag("--minimize", solve_minimize, "minimize learned clauses");
    solve->add_flag("--stats-json", solve_stats_json, "print a JSON report");

    // absorb
    std::string absorb_cnf, absorb_clause;
    auto* absorb = app.add_subcommand("absorb", "test clause absorption by a database");
    absorb->add_option("--cnf", absorb_cnf, "DIMACS file")->required();
    absorb->add_option("--clause", absorb_clause, "space-separated literals")->required();

    // generate
    int gen_w = 1, gen_d = 2;
    std::string gen_out;
    auto* generate = app.add_subcommand("generate", "write a chain instance as JSON");
    generate->add_option("--w", gen_w, "group size (>= 1)")->required();
    generate->add_option("--d", gen_d, "domain size (>= 2)")->required();
    generate->add_option("--out", gen_out, "output JSON path")->required();

    // bench
    std::vector<int> bench_w, bench_d;
    std::string bench_encoding = "direct", bench_scheme = "1uip", bench_restart = "every";
    int bench_seeds = 5, bench_jobs = 1;
    bool bench_minimize = false, bench_no_times = false;
    std::string bench_csv, bench_plot;
    auto* bench = app.add_subcommand("bench", "run chain experiments and aggregate");
    bench->add_option("--w", bench_w, "group sizes")->required();
    bench->add_option("--d", bench_d, "domain sizes")->required();
    bench->add_option("--encoding", bench_encoding, "direct | direct-no-amo | support");
    bench->add_option("--scheme", bench_scheme, "1uip | decision");
    bench->add_option("--restart", bench_restart, "every | never | geometric");
    bench->add_option("--seeds", bench_seeds, "seeds 1..N per configuration");
    bench->add_option("--jobs", bench_jobs, "parallel experiments");
    bench->add_flag("--minimize", bench_minimize, "minimize learned clauses");
    bench->add_flag("--no-times", bench_no_times, "omit wall times for stable bytes");
    bench->add_option("--csv", bench_csv, "write per-run rows here");
    bench->add_option("--plotdata", bench_plot, "write aggregate series here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(closure)) return run_closure(closure_instance, closure_k, closure_trace);
        if (app.got_subcommand(encode)) return run_encode(encode_instance, encode_kind, encode_out);
        if (app.got_subcommand(nhr)) return run_nhr(nhr_cnf, nhr_width, nhr_trace);
        if (app.got_subcommand(bounds)) return run_bounds(bounds_n, bounds_d, bounds_k, bounds_m);
        if (app.got_subcommand(solve))
            return run_solve(solve_cnf, solve_scheme, solve_restart, solve_restart_base,
                             solve_restart_factor, solve_seed, solve_minimize,
                             solve_stats_json);
        if (app.got_subcommand(absorb)) return run_absorb(absorb_cnf, absorb_clause);
        if (app.got_subcommand(generate)) return run_generate(gen_w, gen_d, gen_out);
        if (app.got_subcommand(bench))
            return run_bench(bench_w, bench_d, bench_encoding, bench_scheme, bench_restart,
                             bench_seeds, bench_minimize, bench_csv, bench_plot,
                             bench_no_times, bench_jobs);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    std::cerr << "error: no subcommand\n";
    return 1;
}
