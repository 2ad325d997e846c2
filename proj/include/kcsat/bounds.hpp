#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

namespace kcsat {

using BigInt = boost::multiprecision::cpp_int;

/// Exact binomial coefficient; 0 when k < 0 or k > n. Requires n >= 0.
BigInt binomial(long long n, long long k);

/// Worst-case restart counts for a conflict-driven solver that restarts
/// after every conflict, branches on random variables, and never forgets
/// learned clauses, run on a formula refutable by width-k hyper-resolution.
///
/// The restart fields read the inputs as properties of the formula itself:
/// n is its variable count and m its clause count. The csp field instead
/// reads n as the number of constraint variables and d as their common
/// domain size, bounding the restarts needed on any of the instance's
/// sparse encodings when the instance is refutable by k-consistency.
struct BoundsReport {
    long long n = 0;
    long long d = 0;
    long long k = 0;
    long long m = 0;
    BigInt restarts_any_asserting;   // m * n * k^2 * C(n, k)
    BigInt restarts_decision_scheme; // m * C(n, k)
    BigInt restarts_decision_median; // (m + ceil(sqrt(m))) * C(n, k)
    BigInt csp_restart_bound;        // (sum_{i=1..k} d^i * C(n, i)) * C(n*d, k)
};

/// Requires n >= 1, d >= 1, 1 <= k <= n, m >= 1; throws Error otherwise.
BoundsReport theoretical_bounds(long long n, long long d, long long k, long long m);

} // namespace kcsat
