#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "dioph/solvers.hpp"

using namespace dioph;

namespace {

bool contains(std::vector<PowerSumSolution> const & sols, unsigned long a, unsigned long b, long x)
{
    return std::any_of(sols.begin(), sols.end(), [&](auto const & s) { return s.a == a && s.b == b && s.x == x; });
}

TraceStep const & step(SzalayTrace const & tr, std::string const & prefix)
{
    for (auto const & s : tr.steps)
        if (s.name.rfind(prefix, 0) == 0)
            return s;
    throw std::runtime_error("no step " + prefix);
}

Integer value(TraceStep const & s, std::string const & name)
{
    for (auto const & v : s.values)
        if (v.name == name)
            return v.value;
    throw std::runtime_error("no value " + name);
}

} // namespace

TEST_CASE("search_pow2 plus sign, small range")
{
    auto const sols = search_pow2(10, 1);
    CHECK(contains(sols, 5, 4, 7));
    CHECK(contains(sols, 9, 4, 23));
    std::tuple<unsigned long, unsigned long, long> const family_a[]{
        {2, 2, 3}, {4, 3, 5}, {6, 4, 9}, {8, 5, 17}, {10, 6, 33}};
    for (auto [a, b, x] : family_a)
        CHECK(contains(sols, a, b, x));
    CHECK(sols.size() == 7);
    for (auto const & s : sols) {
        CHECK(s.holds());
        CHECK(s.family != Family::Other);
    }
}

TEST_CASE("search_pow2 minus sign, small range")
{
    auto const sols = search_pow2(15, -1);
    CHECK(contains(sols, 5, 3, 5));
    CHECK(contains(sols, 7, 3, 11));
    CHECK(contains(sols, 15, 3, 181));
    for (auto const & s : sols) {
        CHECK(s.holds());
        CHECK(s.a > s.b);
        CHECK(s.family != Family::Other);
    }
    CHECK_THROWS_AS(search_pow2(1, 1), std::invalid_argument);
}

TEST_CASE("family classification")
{
    CHECK(classify_pow2(2, 2, 1, 3) == Family::A);
    CHECK(classify_pow2(5, 4, 1, 7) == Family::B);
    CHECK(classify_pow2(9, 4, 1, 23) == Family::C);
    CHECK(classify_pow2(4, 3, -1, 3) == Family::D);
    CHECK(classify_pow2(2, 2, -1, 1) == Family::Other);   // t = 1 excluded from D
    CHECK(classify_pow2(15, 3, -1, 181) == Family::G);
    CHECK(classify_odd_prime(3, 3, 1, -1, 5) == Family::Luca1);
    CHECK(classify_odd_prime(5, 3, 1, -1, 11) == Family::Luca2);
    CHECK(classify_odd_prime(5, 3, 1, 1, 11) == Family::Other);
}

TEST_CASE("search_odd_prime small")
{
    auto const minus = search_odd_prime(20, 10, -1);
    REQUIRE(minus.size() == 2);
    CHECK(minus[0].base == 3);
    CHECK(minus[0].x == 5);
    CHECK(minus[1].base == 5);
    CHECK(minus[1].x == 11);
    CHECK(search_odd_prime(20, 10, 1).empty());
}

TEST_CASE("search_theorem14 small and perfect powers skipped")
{
    CHECK(search_theorem14(12, 8).empty());
    CHECK_THROWS_AS(search_theorem14(2, 8), std::invalid_argument);
}

TEST_CASE("szalay_trace halts at the a = 2t - 1 gate")
{
    auto const tr = szalay_trace(5, 4, 7);
    CHECK(tr.outcome == TraceOutcome::CaseB);
    CHECK(tr.family == Family::B);
    CHECK(tr.t == 3);
    CHECK(tr.k == 1);
    CHECK(tr.branch == 3);
    auto const & gate = tr.steps.back();
    CHECK(gate.name == "a >= 2t - 1");
    CHECK(value(gate, "a") == 5);
    CHECK(value(gate, "2t - 1") == 5);
    auto const & eq = step(tr, "2^a + 2^b + 1");
    CHECK(eq.passed);
    CHECK(value(eq, "lhs") == 49);
}

TEST_CASE("szalay_trace halts at the a - 2t = 2t - 3 gate")
{
    auto const tr = szalay_trace(9, 4, 23);
    CHECK(tr.outcome == TraceOutcome::CaseC);
    CHECK(tr.t == 3);
    CHECK(tr.k == 3);
    REQUIRE(tr.g);
    CHECK(*tr.g == 1);
    auto const & gate = tr.steps.back();
    CHECK(gate.name == "a - 2t >= 2t - 3");
    CHECK(value(gate, "a - 2t") == 3);
    CHECK(value(gate, "2t - 3") == 3);
    auto const & e22 = step(tr, "2^(a-2t)");
    CHECK(e22.passed);
    CHECK(value(e22, "2^(a-2t)") == 8);
    CHECK(value(e22, "k^2 +- g") == 8);
}

TEST_CASE("szalay_trace family A and preconditions")
{
    auto const tr = szalay_trace(10, 6, 33);
    CHECK(tr.outcome == TraceOutcome::FamilyA);
    CHECK(tr.steps.empty());
    CHECK_THROWS_AS(szalay_trace(4, 3, 5), std::invalid_argument);      // b <= 3
    CHECK_THROWS_AS(szalay_trace(9, 4, 25), std::invalid_argument);     // not a solution
    CHECK_THROWS_AS(szalay_trace(4, 4, 7), std::invalid_argument);
}

TEST_CASE("trace identities hold on synthetic near-misses")
{
    // Odd x and arbitrary (a, b): the algebraic identities recorded in each
    // step must reproduce exactly, whatever the pass/fail verdicts.
    for (unsigned long a = 6; a <= 40; ++a)
        for (unsigned long b = 4; b < a; b += 3)
            for (long xv = 3; xv < 4000; xv += 38) {
                Integer const x = xv;
                auto const tr = szalay_trace_unchecked(a, b, x);
                int const sgn = tr.branch == 1 ? 1 : -1;
                REQUIRE(ipow(2, tr.t) * tr.k + sgn == x);
                auto const & e21 = step(tr, "2^a + 2^b + 1");
                REQUIRE(value(e21, "rhs") == x * x);
                if (tr.g) {
                    REQUIRE(tr.k - sgn == ipow(2, tr.t - 1) * *tr.g);
                    for (auto const & s : tr.steps) {
                        if (s.name.rfind("2^(a-2t)", 0) == 0 && s.name.find('=') != std::string::npos) {
                            Integer const g = *tr.g;
                            REQUIRE(value(s, "k^2 +- g") == tr.k * tr.k + sgn * g);
                            REQUIRE(value(s, "expanded") == value(s, "k^2 +- g"));
                        }
                    }
                }
            }
}

TEST_CASE("trace near-miss reaching the final inequality")
{
    // Build a triple that satisfies every structural step except the equation
    // itself: t = 4, g = 2^t - 1 = 15 (upper sign), k = 2^(t-1) g + 1.
    unsigned long const t = 4;
    Integer const g = 15;
    Integer const k = ipow(2, t - 1) * g + 1;
    Integer const x = ipow(2, t) * k + 1;
    auto const tr = szalay_trace_unchecked(40, t + 1, x);
    CHECK(tr.t == t);
    CHECK(tr.k == k);
    REQUIRE(tr.g);
    CHECK(*tr.g == g);
    CHECK(step(tr, "b = t + 1").passed);
    CHECK(step(tr, "g +- 1 = 2^t h").passed);
    CHECK_FALSE(step(tr, "2^a + 2^b + 1").passed);
    CHECK(tr.outcome == TraceOutcome::StepFailed);
}

TEST_CASE("bb_gap_check")
{
    // b = 4: 13 * 16 = 208 while 17^50 < 2^205
    CHECK(ipow(17, 50) < ipow(2, 205));
    CHECK_FALSE(bb_bound_admits(16, 4));
    CHECK(bb_bound_admits(15, 4));   // 2^195 < 17^50
    CHECK(bb_gap_check(4, 4));
    CHECK(bb_gap_check(4, 100));
    CHECK_THROWS_AS(bb_gap_check(3, 10), std::invalid_argument);

    // a < (50/13) log2(2^b + 1) in floating point, for a sanity comparison
    for (unsigned long b = 4; b <= 60; ++b)
        for (unsigned long a = 1; a <= 300; ++a) {
            double const bound = 50.0 / 13.0 * std::log2(std::ldexp(1.0, static_cast<int>(b)) + 1.0);
            if (std::fabs(a - bound) > 1e-6)
                REQUIRE(bb_bound_admits(a, b) == (a < bound));
        }
}

TEST_CASE("theorem15_witness")
{
    auto w = theorem15_witness(3, 2, 50);
    CHECK(w.value == 10);
    CHECK(w.D == 10);
    CHECK(w.u == 1);
    CHECK(w.all_units);
    CHECK_FALSE(w.prime_power_norm_found);
    w = theorem15_witness(7, 2, 50);
    CHECK(w.value == 50);
    CHECK(w.D == 2);
    CHECK(w.u == 5);
    CHECK(w.all_units);
    w = theorem15_witness(3, 4, 50);
    CHECK(w.value == 82);
    CHECK(w.all_units);
    CHECK_THROWS_AS(theorem15_witness(5, 2), std::invalid_argument);
    CHECK_THROWS_AS(theorem15_witness(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(theorem15_witness(9, 2), std::invalid_argument);
}

TEST_CASE("theorem41_bound spot values")
{
    auto c = theorem41_bound(250);
    CHECK(c.split.P == 10);
    CHECK(c.split.Q == 1);
    CHECK(c.u == 0);
    CHECK(c.h_exponent == 2);
    CHECK(c.N == 4);
    CHECK_FALSE(c.allows(5));

    c = theorem41_bound(2);
    CHECK(c.N == 2);
    CHECK(c.allows(3));

    c = theorem41_bound(4);
    CHECK(c.split.P == 1);
    CHECK(c.split.Q == 2);
    REQUIRE(c.lcm_terms.size() == 1);
    CHECK(c.lcm_terms[0].q == 2);
    CHECK(c.lcm_terms[0].term == 2);
    CHECK(c.N == 4);

    c = theorem41_bound(32);
    CHECK(c.N == 2);

    // 198 = 22 * 3^2
    c = theorem41_bound(198);
    CHECK(c.split.P == 22);
    CHECK(c.split.Q == 3);
    CHECK(c.lcm_terms[0].term == 3 - legendre_paper(-22, 3));

    // 44 = 11 * 2^2, and 11 = 3 mod 8 brings in the factor 3
    c = theorem41_bound(44);
    CHECK(c.split.P == 11);
    CHECK(c.u == 1);
    CHECK(c.N == 2 * 3 * 1 * 2);

    CHECK_THROWS_AS(theorem41_bound(7), std::invalid_argument);
}

TEST_CASE("theorem41_bound certificates are consistent")
{
    for (long C = 2; C <= 2000; C += 2) {
        auto const c = theorem41_bound(C);
        REQUIRE(c.split.P * c.split.s * c.split.s == C);
        REQUIRE(mpz_even_p(c.N.get_mpz_t()));
        REQUIRE(c.allows(1));
        REQUIRE(c.allows(2));
        REQUIRE(c.allows(3));
        Integer l = 1;
        for (auto const & t : c.lcm_terms)
            l = lcm(l, t.term);
        REQUIRE(c.N == 2 * ipow(3, c.u) * c.h_exponent * l);
        REQUIRE((c.u == 1) == (c.split.P > 3 && c.split.P % 8 == 3));
    }
}

TEST_CASE("solve_x2_plus_C")
{
    auto has = [](std::vector<XCYNSolution> const & v, long x, long y, unsigned long n, XCYNStatus st) {
        return std::any_of(v.begin(), v.end(),
                           [&](auto const & s) { return s.x == x && s.y == y && s.n == n && s.status == st; });
    };
    auto const s32 = solve_x2_plus_C(32, 200, 30);
    CHECK(has(s32, 7, 3, 4, XCYNStatus::Exceptional));
    auto const s250 = solve_x2_plus_C(250, 200, 30);
    CHECK(has(s250, 401, 11, 5, XCYNStatus::Exceptional));
    auto const s2 = solve_x2_plus_C(2, 200, 30);
    CHECK(has(s2, 5, 3, 3, XCYNStatus::BoundSatisfied));
    for (auto const * v : {&s32, &s250, &s2})
        for (auto const & s : *v) {
            CHECK(s.x * s.x + s.C == ipow(s.y, s.n));
            CHECK(s.status != XCYNStatus::Violation);
        }
    CHECK_THROWS_AS(solve_x2_plus_C(3, 10, 10), std::invalid_argument);
}
