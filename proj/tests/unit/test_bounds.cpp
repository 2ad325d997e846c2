#include <catch2/catch_amalgamated.hpp>

#include "kcsat/bounds.hpp"
#include "kcsat/error.hpp"

using namespace kcsat;

TEST_CASE("binomial coefficients are exact", "[bounds]") {
    REQUIRE(binomial(0, 0) == 1);
    REQUIRE(binomial(5, 0) == 1);
    REQUIRE(binomial(5, 5) == 1);
    REQUIRE(binomial(5, 2) == 10);
    REQUIRE(binomial(52, 5) == 2598960);
    REQUIRE(binomial(4, 7) == 0);
    REQUIRE(binomial(4, -1) == 0);
    // Past the 64-bit range: C(80, 40) has 23 digits.
    REQUIRE(binomial(80, 40) == BigInt("107507208733336176461620"));
}

TEST_CASE("worked restart bounds match hand calculations", "[bounds]") {
    const BoundsReport r = theoretical_bounds(4, 2, 2, 5);
    REQUIRE(r.restarts_any_asserting == 480);   // 5 * 4 * 4 * C(4,2)
    REQUIRE(r.restarts_decision_scheme == 30);  // 5 * C(4,2)
    REQUIRE(r.restarts_decision_median == 48);  // (5 + 3) * C(4,2)
    REQUIRE(r.csp_restart_bound == 896);

    // ceil(sqrt(m)) must be exact on perfect squares too.
    REQUIRE(theoretical_bounds(4, 2, 2, 9).restarts_decision_median == 72); // (9+3)*6

    // (sum_{i=1..3} 2^i C(8,i)) * C(16,3) = (16 + 112 + 448) * 560
    REQUIRE(theoretical_bounds(8, 2, 3, 1).csp_restart_bound == 322560);
}

TEST_CASE("bound inputs outside the preconditions are rejected", "[bounds]") {
    REQUIRE_THROWS_AS(theoretical_bounds(0, 2, 1, 1), Error);  // n < 1
    REQUIRE_THROWS_AS(theoretical_bounds(4, 0, 1, 1), Error);  // d < 1
    REQUIRE_THROWS_AS(theoretical_bounds(4, 2, 0, 1), Error);  // k < 1
    REQUIRE_THROWS_AS(theoretical_bounds(4, 2, 5, 1), Error);  // k > n
    REQUIRE_THROWS_AS(theoretical_bounds(4, 2, 2, 0), Error);  // m < 1
}

TEST_CASE("the decision-scheme bound never exceeds its median variant", "[bounds]") {
    for (long long n = 1; n <= 6; ++n)
        for (long long k = 1; k <= n; ++k)
            for (long long m : {1, 2, 9, 50}) {
                const BoundsReport r = theoretical_bounds(n, 2, k, m);
                REQUIRE(r.restarts_decision_scheme <= r.restarts_decision_median);
                REQUIRE(r.restarts_decision_scheme > 0);
                REQUIRE(r.csp_restart_bound > 0);
            }
}
