#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/classgroup.hpp"
#include "dioph/ntheory.hpp"

namespace dioph {

/// Known solution families of p^a +- p^b + 1 = x^2.
///   A: (2t, t+1, 2^t + 1)      B: (5, 4, 7)     C: (9, 4, 23)
///   D: (2t, t+1, 2^t - 1), t>1 E: (5, 3, 5)     F: (7, 3, 11)    G: (15, 3, 181)
///   Luca1: p=3 (3, 1, 5)       Luca2: p=5 (3, 1, 11)
enum class Family { A, B, C, D, E, F, G, Luca1, Luca2, Other };

std::string_view to_string(Family f);
std::optional<Family> family_from_string(std::string_view s);

/// base^a + sign * base^b + const_sign = x^2
struct PowerSumSolution {
    Integer base;
    unsigned long a = 0;
    unsigned long b = 0;
    int sign = 1;
    int const_sign = 1;
    Integer x;
    Family family = Family::Other;

    bool holds() const;

    bool operator==(PowerSumSolution const &) const = default;
};

bool operator<(PowerSumSolution const & l, PowerSumSolution const & r);

Family classify_pow2(unsigned long a, unsigned long b, int sign, Integer const & x);
Family classify_odd_prime(Integer const & p, unsigned long a, unsigned long b, int sign, Integer const & x);

/// 2^a + sign 2^b + 1 = x^2 with a_max >= a >= b >= 1 (a > b for sign -1).
std::vector<PowerSumSolution> search_pow2(unsigned long a_max, int sign);

/// p^a + sign p^b + 1 = x^2 over odd primes p <= p_max, a_max >= a > b >= 1.
std::vector<PowerSumSolution> search_odd_prime(Integer const & p_max, unsigned long a_max, int sign);

/// x^2 = y^a + e1 y^b + e2 over 2 < y <= y_max not a perfect power, even
/// a <= a_max, a > b >= 1, all four sign pairs.
std::vector<PowerSumSolution> search_theorem14(Integer const & y_max, unsigned long a_max);

// ---------------------------------------------------------------------------
// Step-by-step trace of the 2^a + 2^b + 1 = x^2 argument.

struct TraceValue {
    std::string name;
    Integer value;
};

struct TraceStep {
    std::string name;
    bool passed = false;
    std::vector<TraceValue> values;
};

enum class TraceOutcome {
    FamilyA,          ///< excluded before the trace body
    CaseA,            ///< a = 2t gate
    CaseB,            ///< a = 2t - 1 gate
    CaseC,            ///< a - 2t = 2t - 3 gate
    ReachedBound,     ///< every step passed through a >= 6b - 8
    StepFailed,
};

std::string_view to_string(TraceOutcome o);

struct SzalayTrace {
    unsigned long a = 0;
    unsigned long b = 0;
    Integer x;
    Family family = Family::Other;
    unsigned long t = 0;
    Integer k;
    int branch = 0;   ///< x mod 4, 1 or 3
    std::optional<Integer> g;
    std::optional<Integer> h;
    std::vector<TraceStep> steps;
    TraceOutcome outcome = TraceOutcome::StepFailed;
};

/// Validates 2^a + 2^b + 1 = x^2 with a > b > 3 and runs the trace.
SzalayTrace szalay_trace(unsigned long a, unsigned long b, Integer const & x);

/// The trace body without the equation check; x must be odd and > 1.
/// Identities recorded in each step are exact regardless of whether the
/// triple solves the equation.
SzalayTrace szalay_trace_unchecked(unsigned long a, unsigned long b, Integer const & x);

/// Exact form of a < (50/13) log2(2^b + 1).
bool bb_bound_admits(unsigned long a, unsigned long b);

/// True iff for every b in [b_lo, b_hi] no a >= 6b - 8 meets the bound.
bool bb_gap_check(unsigned long b_lo, unsigned long b_hi);

// ---------------------------------------------------------------------------

struct Theorem15Witness {
    Integer p;
    unsigned long b = 0;
    Integer value;    ///< p^b + 1
    Integer D;        ///< squarefree part
    Integer u;        ///< value = D u^2
    std::vector<Integer> period;
    std::vector<Integer> norms;
    bool all_units = false;             ///< every norm is +-1
    bool prime_power_norm_found = false; ///< some norm equals +-p^c, 1 <= c <= b/2
};

Theorem15Witness theorem15_witness(Integer const & p, unsigned long b, std::size_t k = 50);

// ---------------------------------------------------------------------------

struct LcmTerm {
    Integer q;
    Integer term;   ///< q - legendre_paper(-P, q)
};

struct BoundCertificate {
    Integer C;
    SquarefreeSplit split;
    int u = 0;
    unsigned long class_number = 0;
    unsigned long h_exponent = 0;
    std::vector<LcmTerm> lcm_terms;
    Integer lcm;
    Integer N;
    std::vector<Integer> allowed_n;   ///< divisors of N together with 3, sorted

    bool allows(unsigned long n) const;
};

BoundCertificate theorem41_bound(Integer const & C);

enum class XCYNStatus { BoundSatisfied, Exceptional, Violation };
std::string_view to_string(XCYNStatus s);
std::optional<XCYNStatus> status_from_string(std::string_view s);

struct XCYNSolution {
    Integer x;
    Integer y;
    unsigned long n = 0;
    Integer C;
    XCYNStatus status = XCYNStatus::Violation;

    bool operator==(XCYNSolution const &) const = default;
};

/// (7, 3, 4) and (401, 11, 5).
bool is_exceptional(Integer const & x, Integer const & y, unsigned long n);

/// x^2 + C = y^n with y <= y_max and x a prime power or 1, y a prime
/// power, gcd(x, y) = 1, n <= n_max; sorted by (y, n).
std::vector<XCYNSolution> solve_x2_plus_C(Integer const & C, Integer const & y_max, unsigned long n_max);

} // namespace dioph
