#pragma once

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kcsat/bounds.hpp"
#include "kcsat/cdcl.hpp"
#include "kcsat/csp.hpp"

namespace kcsat {

/// Chain instances: groups of `group_size` variables over {0..domain_size-1},
/// consecutive groups linked by a constraint forcing the group sums to
/// strictly increase. With (domain_size-1)*group_size + 2 groups there is one
/// more group than distinct sums, so every chain is unsatisfiable, while the
/// constraint graph stays a path (tree-width 2*group_size - 1).
struct ChainSpec {
    int group_size = 1;  // w >= 1
    int domain_size = 2; // d >= 2

    int groups() const { return (domain_size - 1) * group_size + 2; }
    int num_variables() const { return groups() * group_size; }
    int num_constraints() const { return groups() - 1; }
};

/// Variables x1..xn in group order; throws Error on out-of-range parameters.
CspInstance generate_chain(const ChainSpec&);

enum class EncodingChoice { Direct, DirectNoAmo, Support };

/// One experiment = one instance solved once per seed under one solver
/// configuration (whose seed field is overridden per run).
struct ExperimentSpec {
    CspInstance instance;
    int w = 0; // chain group size label carried into result rows
    int d = 0; // chain domain size label carried into result rows
    EncodingChoice encoding = EncodingChoice::Direct;
    SolverConfig solver;
    std::vector<std::uint64_t> seeds; // nonempty, pairwise distinct
};

struct ResultRow {
    int w = 0;
    int d = 0;
    int n = 0; // constraint variables in the instance
    std::size_t clause_count = 0;
    std::string scheme;
    std::uint64_t seed = 0;
    std::string verdict; // SAT, UNSAT, or ERROR
    std::uint64_t restarts = 0;
    std::uint64_t conflicts = 0;
    std::uint64_t decisions = 0;
    double wall_time_seconds = 0.0;
    std::string error; // nonempty iff verdict == ERROR
};

/// "1uip" or "decision", with "+ccmin" appended when clause minimization is on.
std::string scheme_label(const SolverConfig&);

std::vector<ResultRow> run_experiment(const ExperimentSpec&);

/// Run several experiments, `jobs` at a time; rows keep experiment order.
/// Per-run failures are recorded in their rows, never thrown.
std::vector<ResultRow> run_experiments(std::span<const ExperimentSpec>, int jobs = 1);

/// CSV with a header row. Omitting wall times makes the bytes reproducible
/// across runs for fixed inputs.
void write_csv(std::span<const ResultRow>, std::ostream&, bool include_wall_time = true);

struct AggregateRow {
    int w = 0;
    int d = 0;
    int n = 0;
    std::string scheme;
    std::size_t runs = 0; // error rows are excluded
    double mean_restarts = 0.0;
    double stddev_restarts = 0.0; // sample standard deviation
};

std::vector<AggregateRow> aggregate_rows(std::span<const ResultRow>);

/// Gnuplot-style blocks: one "# w=<w> scheme=<scheme>" series per group,
/// lines "<n*d> <mean_restarts>", blank line between series.
void write_plotdata(std::span<const AggregateRow>, std::ostream&);

/// Reference curve for chain experiments at (w, d): d^(2w-2) * C(n*d/w, 3),
/// a closed form dominating the worst-case restart count for the matching
/// consistency width. Plotted against measured means to show the gap.
BigInt chain_restart_overlay(int w, int d);

struct ScalingSeries {
    int w = 0;
    std::string scheme;
    std::size_t points = 0; // distinct d values with a positive mean
    bool reliable = false;  // at least 4 points
    double slope = 0.0;     // least-squares d ln(mean) / d ln(n*d)
    double bound_slope = 0.0;      // 4w - 2, the reference curve's degree
    bool exceeds_bound = false;    // reliable and slope above bound_slope
    std::vector<std::pair<double, double>> bound_overlay; // (n*d, reference)
};

/// Fit per-(w, scheme) growth exponents of mean restarts against n*d.
std::vector<ScalingSeries> scaling_report(std::span<const AggregateRow>);

} // namespace kcsat
