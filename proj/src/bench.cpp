#include "kcsat/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <iomanip>
#include <thread>

#include "kcsat/encode.hpp"
#include "kcsat/error.hpp"

namespace kcsat {

CspInstance generate_chain(const ChainSpec& spec) {
    if (spec.group_size < 1) throw Error("chain group size must be at least 1");
    if (spec.domain_size < 2) throw Error("chain domain size must be at least 2");

    const int w = spec.group_size;
    const int d = spec.domain_size;
    CspInstance inst;
    for (int v = 1; v <= spec.num_variables(); ++v)
        inst.variables.push_back("x" + std::to_string(v));
    std::vector<Value> domain;
    for (int value = 0; value < d; ++value) domain.push_back(value);
    inst.domains.assign(inst.variables.size(), domain);

    // Shared tuple set: group sums must strictly increase along the chain.
    std::vector<std::vector<Value>> increasing;
    std::vector<Value> tuple(2 * static_cast<std::size_t>(w), 0);
    for (;;) {
        Value left = 0, right = 0;
        for (int i = 0; i < w; ++i) left += tuple[i];
        for (int i = w; i < 2 * w; ++i) right += tuple[i];
        if (left < right) increasing.push_back(tuple);
        int pos = 2 * w - 1;
        while (pos >= 0 && tuple[pos] == d - 1) tuple[pos--] = 0;
        if (pos < 0) break;
        tuple[pos] += 1;
    }

    for (int g = 0; g + 1 < spec.groups(); ++g) {
        Constraint con;
        for (int i = 0; i < 2 * w; ++i)
            con.scope.push_back(inst.variables[static_cast<std::size_t>(g) * w + i]);
        con.allowed = increasing;
        inst.constraints.push_back(std::move(con));
    }
    return inst;
}

std::string scheme_label(const SolverConfig& config) {
    std::string label = config.learning == LearningScheme::OneUip ? "1uip" : "decision";
    if (config.minimize_learned) label += "+ccmin";
    return label;
}

namespace {

Encoding encode_for(const CspInstance& inst, EncodingChoice choice) {
    switch (choice) {
        case EncodingChoice::Direct: return direct_encode(inst, true);
        case EncodingChoice::DirectNoAmo: return direct_encode(inst, false);
        case EncodingChoice::Support: return support_encode(inst, true);
    }
    throw InternalError("unhandled encoding choice");
}

ResultRow base_row(const ExperimentSpec& spec, std::uint64_t seed) {
    ResultRow row;
    row.w = spec.w;
    row.d = spec.d;
    row.n = spec.instance.num_variables();
    row.scheme = scheme_label(spec.solver);
    row.seed = seed;
    return row;
}

std::vector<ResultRow> error_rows(const ExperimentSpec& spec, const std::string& message) {
    std::vector<ResultRow> rows;
    for (std::uint64_t seed : spec.seeds.empty() ? std::vector<std::uint64_t>{0}
                                                 : spec.seeds) {
        ResultRow row = base_row(spec, seed);
        row.verdict = "ERROR";
        row.error = message;
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    if (spec.seeds.empty()) throw Error("an experiment needs at least one seed");
    std::vector<std::uint64_t> sorted_seeds = spec.seeds;
    std::sort(sorted_seeds.begin(), sorted_seeds.end());
    if (std::adjacent_find(sorted_seeds.begin(), sorted_seeds.end()) != sorted_seeds.end())
        throw Error("experiment seeds must be pairwise distinct");

    std::vector<ResultRow> rows;
    Encoding encoding;
    try {
        encoding = encode_for(spec.instance, spec.encoding);
    } catch (const std::exception& e) {
        return error_rows(spec, e.what());
    }

    for (std::uint64_t seed : spec.seeds) {
        ResultRow row = base_row(spec, seed);
        row.clause_count = encoding.cnf.size();
        try {
            SolverConfig config = spec.solver;
            config.seed = seed;
            CdclSolver solver(encoding.cnf, config);
            const auto start = std::chrono::steady_clock::now();
            const SolveResult result = solver.solve();
            const auto stop = std::chrono::steady_clock::now();
            row.verdict = result.sat ? "SAT" : "UNSAT";
            row.restarts = solver.stats().restarts;
            row.conflicts = solver.stats().conflicts;
            row.decisions = solver.stats().decisions;
            row.wall_time_seconds = std::chrono::duration<double>(stop - start).count();
        } catch (const std::exception& e) {
            row.verdict = "ERROR";
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<ResultRow> run_experiments(std::span<const ExperimentSpec> specs, int jobs) {
    if (jobs < 1) throw Error("jobs must be at least 1");
    std::vector<std::vector<ResultRow>> per_spec(specs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= specs.size()) return;
            try {
                per_spec[i] = run_experiment(specs[i]);
            } catch (const std::exception& e) {
                per_spec[i] = error_rows(specs[i], e.what());
            }
        }
    };
    const int thread_count = std::min<int>(jobs, static_cast<int>(specs.size()));
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }
    std::vector<ResultRow> rows;
    for (std::vector<ResultRow>& chunk : per_spec)
        for (ResultRow& row : chunk) rows.push_back(std::move(row));
    return rows;
}

namespace {

std::string csv_safe(std::string text) {
    for (char& c : text)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return text;
}

} // namespace

void write_csv(std::span<const ResultRow> rows, std::ostream& out,
               bool include_wall_time) {
    out << "w,d,n,clauses,scheme,seed,verdict,restarts,conflicts,decisions";
    if (include_wall_time) out << ",wall_time_seconds";
    out << ",error\n";
    for (const ResultRow& row : rows) {
        out << row.w << ',' << row.d << ',' << row.n << ',' << row.clause_count << ','
            << row.scheme << ',' << row.seed << ',' << row.verdict << ',' << row.restarts
            << ',' << row.conflicts << ',' << row.decisions;
        if (include_wall_time)
            out << ',' << std::fixed << std::setprecision(6) << row.wall_time_seconds
                << std::defaultfloat;
        out << ',' << csv_safe(row.error) << '\n';
    }
}

std::vector<AggregateRow> aggregate_rows(std::span<const ResultRow> rows) {
    std::vector<AggregateRow> groups;
    std::vector<std::vector<double>> samples;
    for (const ResultRow& row : rows) {
        if (!row.error.empty()) continue;
        std::size_t g = 0;
        for (; g < groups.size(); ++g)
            if (groups[g].w == row.w && groups[g].d == row.d && groups[g].scheme == row.scheme)
                break;
        if (g == groups.size()) {
            AggregateRow agg;
            agg.w = row.w;
            agg.d = row.d;
            agg.n = row.n;
            agg.scheme = row.scheme;
            groups.push_back(std::move(agg));
            samples.emplace_back();
        }
        samples[g].push_back(static_cast<double>(row.restarts));
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        const std::vector<double>& xs = samples[g];
        groups[g].runs = xs.size();
        double mean = 0.0;
        for (double x : xs) mean += x;
        mean /= static_cast<double>(xs.size());
        groups[g].mean_restarts = mean;
        if (xs.size() > 1) {
            double ss = 0.0;
            for (double x : xs) ss += (x - mean) * (x - mean);
            groups[g].stddev_restarts = std::sqrt(ss / static_cast<double>(xs.size() - 1));
        }
    }
    return groups;
}

void write_plotdata(std::span<const AggregateRow> aggregates, std::ostream& out) {
    std::vector<std::pair<int, std::string>> series;
    for (const AggregateRow& agg : aggregates) {
        const std::pair<int, std::string> key{agg.w, agg.scheme};
        if (std::find(series.begin(), series.end(), key) == series.end())
            series.push_back(key);
    }
    bool first = true;
    for (const auto& [w, scheme] : series) {
        if (!first) out << '\n';
        first = false;
        out << "# w=" << w << " scheme=" << scheme << '\n';
        for (const AggregateRow& agg : aggregates)
            if (agg.w == w && agg.scheme == scheme)
                out << agg.n * agg.d << ' ' << std::fixed << std::setprecision(3)
                    << agg.mean_restarts << std::defaultfloat << '\n';
    }
}

BigInt chain_restart_overlay(int w, int d) {
    if (w < 1) throw Error("chain group size must be at least 1");
    if (d < 2) throw Error("chain domain size must be at least 2");
    const ChainSpec spec{w, d};
    BigInt factor = 1;
    for (int i = 0; i < 2 * w - 2; ++i) factor *= d;
    return factor * binomial(static_cast<long long>(spec.groups()) * d, 3);
}

std::vector<ScalingSeries> scaling_report(std::span<const AggregateRow> aggregates) {
    std::vector<ScalingSeries> report;
    for (const AggregateRow& agg : aggregates) {
        const bool found = std::any_of(report.begin(), report.end(), [&](const auto& s) {
            return s.w == agg.w && s.scheme == agg.scheme;
        });
        if (!found) {
            ScalingSeries series;
            series.w = agg.w;
            series.scheme = agg.scheme;
            series.bound_slope = 4.0 * agg.w - 2.0;
            report.push_back(std::move(series));
        }
    }
    for (ScalingSeries& series : report) {
        std::vector<double> xs, ys;
        std::vector<int> ds;
        for (const AggregateRow& agg : aggregates) {
            if (agg.w != series.w || agg.scheme != series.scheme) continue;
            if (agg.mean_restarts <= 0.0) continue;
            xs.push_back(std::log(static_cast<double>(agg.n) * agg.d));
            ys.push_back(std::log(agg.mean_restarts));
            if (std::find(ds.begin(), ds.end(), agg.d) == ds.end()) ds.push_back(agg.d);
            if (series.w >= 1 && agg.d >= 2)
                series.bound_overlay.emplace_back(
                    static_cast<double>(agg.n) * agg.d,
                    chain_restart_overlay(series.w, agg.d).convert_to<double>());
        }
        series.points = ds.size();
        series.reliable = series.points >= 4;
        if (xs.size() >= 2) {
            double mx = 0.0, my = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                mx += xs[i];
                my += ys[i];
            }
            mx /= static_cast<double>(xs.size());
            my /= static_cast<double>(xs.size());
            double sxx = 0.0, sxy = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sxx += (xs[i] - mx) * (xs[i] - mx);
                sxy += (xs[i] - mx) * (ys[i] - my);
            }
            if (sxx > 0.0) series.slope = sxy / sxx;
        }
        series.exceeds_bound = series.reliable && series.slope > series.bound_slope;
    }
    return report;
}

} // namespace kcsat
