#include "kcsat/bounds.hpp"

#include <string>

#include "kcsat/error.hpp"

namespace kcsat {

BigInt binomial(long long n, long long k) {
    if (n < 0) throw Error("binomial requires a nonnegative upper argument");
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt result = 1;
    for (long long i = 0; i < k; ++i) {
        result *= n - i;
        result /= i + 1; // exact: result is C(n, i+1) after this line
    }
    return result;
}

namespace {

BigInt ceil_sqrt(const BigInt& m) {
    BigInt root = boost::multiprecision::sqrt(m); // floor square root
    if (root * root < m) root += 1;
    return root;
}

} // namespace

BoundsReport theoretical_bounds(long long n, long long d, long long k, long long m) {
    if (n < 1) throw Error("n must be at least 1");
    if (d < 1) throw Error("d must be at least 1");
    if (k < 1 || k > n)
        throw Error("k must satisfy 1 <= k <= n (got k=" + std::to_string(k) +
                    ", n=" + std::to_string(n) + ")");
    if (m < 1) throw Error("m must be at least 1");

    BoundsReport report;
    report.n = n;
    report.d = d;
    report.k = k;
    report.m = m;

    const BigInt choose_n_k = binomial(n, k);
    report.restarts_any_asserting = BigInt(m) * n * k * k * choose_n_k;
    report.restarts_decision_scheme = BigInt(m) * choose_n_k;
    report.restarts_decision_median = (BigInt(m) + ceil_sqrt(BigInt(m))) * choose_n_k;

    BigInt tuple_sum = 0;
    BigInt d_power = 1;
    for (long long i = 1; i <= k; ++i) {
        d_power *= d;
        tuple_sum += d_power * binomial(n, i);
    }
    report.csp_restart_bound = tuple_sum * binomial(n * d, k);
    return report;
}

} // namespace kcsat
