#include "dioph/solvers.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "dioph/pell.hpp"

namespace dioph {

namespace {

Integer pow2(unsigned long e)
{
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
    return r;
}

Integer ul(unsigned long v) { return Integer(v); }

constexpr std::array<std::pair<Family, std::string_view>, 10> kFamilyNames{{
    {Family::A, "A"},
    {Family::B, "B"},
    {Family::C, "C"},
    {Family::D, "D"},
    {Family::E, "E"},
    {Family::F, "F"},
    {Family::G, "G"},
    {Family::Luca1, "Luca1"},
    {Family::Luca2, "Luca2"},
    {Family::Other, "other"},
}};

constexpr std::array<std::pair<XCYNStatus, std::string_view>, 3> kStatusNames{{
    {XCYNStatus::BoundSatisfied, "bound_satisfied"},
    {XCYNStatus::Exceptional, "exceptional"},
    {XCYNStatus::Violation, "violation"},
}};

} // namespace

std::string_view to_string(Family f)
{
    for (auto const & [k, v] : kFamilyNames)
        if (k == f)
            return v;
    return "other";
}

std::optional<Family> family_from_string(std::string_view s)
{
    for (auto const & [k, v] : kFamilyNames)
        if (v == s)
            return k;
    return std::nullopt;
}

std::string_view to_string(XCYNStatus s)
{
    for (auto const & [k, v] : kStatusNames)
        if (k == s)
            return v;
    return "violation";
}

std::optional<XCYNStatus> status_from_string(std::string_view s)
{
    for (auto const & [k, v] : kStatusNames)
        if (v == s)
            return k;
    return std::nullopt;
}

std::string_view to_string(TraceOutcome o)
{
    switch (o) {
    case TraceOutcome::FamilyA: return "family_A";
    case TraceOutcome::CaseA: return "case_A";
    case TraceOutcome::CaseB: return "case_B";
    case TraceOutcome::CaseC: return "case_C";
    case TraceOutcome::ReachedBound: return "reached_bound";
    case TraceOutcome::StepFailed: return "step_failed";
    }
    return "step_failed";
}

bool PowerSumSolution::holds() const
{
    return ipow(base, a) + sign * ipow(base, b) + const_sign == x * x;
}

bool operator<(PowerSumSolution const & l, PowerSumSolution const & r)
{
    auto key = [](PowerSumSolution const & s) { return std::tie(s.base, s.a, s.b, s.sign, s.const_sign, s.x); };
    return key(l) < key(r);
}

Family classify_pow2(unsigned long a, unsigned long b, int sign, Integer const & x)
{
    auto is = [&](unsigned long aa, unsigned long bb, unsigned long xx) { return a == aa && b == bb && x == xx; };
    if (sign == 1) {
        if (a % 2 == 0 && a >= 2 && b == a / 2 + 1 && x == pow2(a / 2) + 1)
            return Family::A;
        if (is(5, 4, 7))
            return Family::B;
        if (is(9, 4, 23))
            return Family::C;
    } else {
        if (a % 2 == 0 && a >= 4 && b == a / 2 + 1 && x == pow2(a / 2) - 1)
            return Family::D;
        if (is(5, 3, 5))
            return Family::E;
        if (is(7, 3, 11))
            return Family::F;
        if (is(15, 3, 181))
            return Family::G;
    }
    return Family::Other;
}

Family classify_odd_prime(Integer const & p, unsigned long a, unsigned long b, int sign, Integer const & x)
{
    if (sign == -1 && a == 3 && b == 1) {
        if (p == 3 && x == 5)
            return Family::Luca1;
        if (p == 5 && x == 11)
            return Family::Luca2;
    }
    return Family::Other;
}

std::vector<PowerSumSolution> search_pow2(unsigned long a_max, int sign)
{
    if (a_max < 2)
        throw std::invalid_argument("search-pow2: a_max must be >= 2");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("search-pow2: sign must be + or -");
    std::vector<PowerSumSolution> out;
    for (unsigned long a = 1; a <= a_max; ++a) {
        Integer const pa = pow2(a);
        unsigned long const b_top = sign == 1 ? a : a - 1;
        for (unsigned long b = 1; b <= b_top; ++b) {
            if (auto x = perfect_square_root(pa + sign * pow2(b) + 1); x && *x > 0)
                out.push_back({2, a, b, sign, 1, *x, classify_pow2(a, b, sign, *x)});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PowerSumSolution> search_odd_prime(Integer const & p_max, unsigned long a_max, int sign)
{
    if (p_max < 3)
        throw std::invalid_argument("search-odd-prime: p_max must be >= 3");
    if (a_max < 2)
        throw std::invalid_argument("search-odd-prime: a_max must be >= 2");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("search-odd-prime: sign must be + or -");
    std::vector<PowerSumSolution> out;
    for (Integer p = 3; p <= p_max; p += 2) {
        if (!is_prime(p))
            continue;
        std::vector<Integer> powers{1};
        for (unsigned long e = 1; e <= a_max; ++e)
            powers.push_back(powers.back() * p);
        for (unsigned long a = 2; a <= a_max; ++a)
            for (unsigned long b = 1; b < a; ++b)
                if (auto x = perfect_square_root(powers[a] + sign * powers[b] + 1); x && *x > 0)
                    out.push_back({p, a, b, sign, 1, *x, classify_odd_prime(p, a, b, sign, *x)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<PowerSumSolution> search_theorem14(Integer const & y_max, unsigned long a_max)
{
    if (y_max < 3)
        throw std::invalid_argument("search-t14: y_max must be >= 3");
    std::vector<PowerSumSolution> out;
    for (Integer y = 3; y <= y_max; ++y) {
        if (is_perfect_power(y))
            continue;
        std::vector<Integer> powers{1};
        for (unsigned long e = 1; e <= a_max; ++e)
            powers.push_back(powers.back() * y);
        for (unsigned long a = 2; a <= a_max; a += 2)
            for (unsigned long b = 1; b < a; ++b)
                for (int e1 : {1, -1})
                    for (int e2 : {1, -1})
                        if (auto x = perfect_square_root(powers[a] + e1 * powers[b] + e2); x && *x > 0)
                            out.push_back({y, a, b, e1, e2, *x, Family::Other});
    }
    std::sort(out.begin(), out.end());
    return out;
}

// ---------------------------------------------------------------------------

SzalayTrace szalay_trace(unsigned long a, unsigned long b, Integer const & x)
{
    if (!(a > b && b > 3))
        throw std::invalid_argument("trace: requires a > b > 3 (b <= 3 is handled directly)");
    if (pow2(a) + pow2(b) + 1 != x * x || x <= 0)
        throw std::invalid_argument("trace: (a, b, x) must satisfy 2^a + 2^b + 1 = x^2 with x > 0");
    SzalayTrace tr;
    tr.a = a;
    tr.b = b;
    tr.x = x;
    tr.family = classify_pow2(a, b, 1, x);
    if (tr.family == Family::A) {
        tr.outcome = TraceOutcome::FamilyA;
        return tr;
    }
    auto body = szalay_trace_unchecked(a, b, x);
    body.family = tr.family;
    return body;
}

SzalayTrace szalay_trace_unchecked(unsigned long a, unsigned long b, Integer const & x)
{
    if (x <= 1 || mpz_even_p(x.get_mpz_t()))
        throw std::invalid_argument("trace: x must be odd and > 1");
    SzalayTrace tr;
    tr.a = a;
    tr.b = b;
    tr.x = x;
    tr.family = classify_pow2(a, b, 1, x);

    bool all_passed = true;
    auto add = [&](std::string name, bool passed, std::vector<TraceValue> values) {
        tr.steps.push_back({std::move(name), passed, std::move(values)});
        all_passed = all_passed && passed;
    };
    auto halt = [&](TraceOutcome o) {
        tr.outcome = o;
        return tr;
    };

    // x = 2^t k + sgn, sgn = +1 for x = 1 (mod 4), -1 for x = 3 (mod 4)
    tr.branch = static_cast<int>(mpz_fdiv_ui(x.get_mpz_t(), 4));
    int const sgn = tr.branch == 1 ? 1 : -1;
    Integer const xm = x - sgn;
    tr.t = valuation2(xm);
    tr.k = xm / pow2(tr.t);
    unsigned long const t = tr.t;
    Integer const & k = tr.k;
    add("x = 2^t k +- 1", mpz_odd_p(k.get_mpz_t()) && t >= 2,
        {{"x", x}, {"t", ul(t)}, {"k", k}, {"sign", sgn}});

    // expand x^2 in t and k
    Integer const lhs = pow2(a) + pow2(b) + 1;
    Integer const rhs = pow2(2 * t) * k * k + sgn * (k - sgn) * pow2(t + 1) + pow2(t + 1) + 1;
    add("2^a + 2^b + 1 = 2^2t k^2 +- (k -+ 1) 2^(t+1) + 2^(t+1) + 1", lhs == rhs,
        {{"lhs", lhs}, {"rhs", rhs}, {"x^2", x * x}});

    add("b = t + 1, t >= 3", b == t + 1 && t >= 3, {{"b", ul(b)}, {"t + 1", ul(t + 1)}});

    // a >= 2t - 1, equality only for Case (B)
    add("a >= 2t - 1", a + 1 >= 2 * t, {{"a", ul(a)}, {"2t - 1", ul(2 * t - 1)}, {"k", k}, {"x mod 4", tr.branch}});
    if (a + 1 < 2 * t)
        return halt(TraceOutcome::StepFailed);
    if (a + 1 == 2 * t) {
        bool const is_b = t == 3 && k == 1 && tr.branch == 3;
        return halt(is_b ? TraceOutcome::CaseB : TraceOutcome::StepFailed);
    }
    if (a == 2 * t) {
        add("a > 2t", false, {{"a", ul(a)}, {"2t", ul(2 * t)}});
        return halt(TraceOutcome::CaseA);
    }
    add("a > 2t", a > 2 * t, {{"a", ul(a)}, {"2t", ul(2 * t)}});

    // k -+ 1 = 2^(t-1) g, g odd
    Integer const km = k - sgn;
    if (km <= 0 || valuation2(km) < t - 1) {
        add("k -+ 1 = 2^(t-1) g", false, {{"k -+ 1", km}, {"2^(t-1)", pow2(t - 1)}});
        return halt(TraceOutcome::StepFailed);
    }
    Integer const g = km / pow2(t - 1);
    tr.g = g;
    add("k -+ 1 = 2^(t-1) g", mpz_odd_p(g.get_mpz_t()) != 0, {{"k -+ 1", km}, {"g", g}});

    // divide out 2^(2t) and substitute k
    Integer const p22 = pow2(a - 2 * t);
    Integer const mid = k * k + sgn * g;
    Integer const right = pow2(2 * t - 2) * g * g + sgn * pow2(t) * g + 1 + sgn * g;
    add("2^(a-2t) = k^2 +- g = 2^(2t-2) g^2 +- 2^t g + 1 +- g", p22 == mid && mid == right,
        {{"2^(a-2t)", p22}, {"k^2 +- g", mid}, {"expanded", right}});

    // a - 2t >= 2t - 3, equality only for Case (C)
    long const lhs_e = static_cast<long>(a) - 2 * static_cast<long>(t);
    long const rhs_e = 2 * static_cast<long>(t) - 3;
    add("a - 2t >= 2t - 3", lhs_e >= rhs_e,
        {{"a - 2t", Integer(lhs_e)}, {"2t - 3", Integer(rhs_e)}, {"g", g}, {"x mod 4", tr.branch}});
    if (lhs_e == rhs_e) {
        bool const is_c = t == 3 && g == 1 && tr.branch == 3;
        return halt(is_c ? TraceOutcome::CaseC : TraceOutcome::StepFailed);
    }

    // g +- 1 = 2^t h, h odd
    Integer const gp = g + sgn;
    bool const h_ok = gp > 0 && valuation2(gp) == t;
    if (h_ok)
        tr.h = gp / pow2(t);
    add("g +- 1 = 2^t h", h_ok, {{"g +- 1", gp}, {"2^t", pow2(t)}, {"h", tr.h.value_or(0)}});

    Integer const g_floor = pow2(t) - sgn;
    add("g >= 2^t -+ 1", g >= g_floor, {{"g", g}, {"2^t -+ 1", g_floor}});

    Integer const p23 = pow2(4 * t - 3);
    add("2^(a-2t) > 2^(4t-3)", p22 > p23, {{"2^(a-2t)", p22}, {"2^(4t-3)", p23}});

    long const six_t = 6 * static_cast<long>(t) - 2;
    long const six_b = 6 * static_cast<long>(b) - 8;
    add("a >= 6t - 2 = 6b - 8", static_cast<long>(a) >= six_t && six_t == six_b,
        {{"a", ul(a)}, {"6t - 2", Integer(six_t)}, {"6b - 8", Integer(six_b)}});

    return halt(all_passed ? TraceOutcome::ReachedBound : TraceOutcome::StepFailed);
}

bool bb_bound_admits(unsigned long a, unsigned long b)
{
    return pow2(13 * a) < ipow(pow2(b) + 1, 50);
}

bool bb_gap_check(unsigned long b_lo, unsigned long b_hi)
{
    if (b_lo < 4)
        throw std::invalid_argument("bb-gap: b_lo must be >= 4");
    if (b_lo > b_hi)
        throw std::invalid_argument("bb-gap: b_lo must be <= b_hi");
    // The bound is monotone in a, so the smallest candidate a = 6b - 8 decides.
    for (unsigned long b = b_lo; b <= b_hi; ++b)
        if (bb_bound_admits(6 * b - 8, b))
            return false;
    return true;
}

// ---------------------------------------------------------------------------

Theorem15Witness theorem15_witness(Integer const & p, unsigned long b, std::size_t k)
{
    if (!is_prime(p) || mpz_fdiv_ui(p.get_mpz_t(), 4) != 3)
        throw std::invalid_argument("t15-witness: p must be a prime = 3 mod 4");
    if (b < 2 || b % 2 != 0)
        throw std::invalid_argument("t15-witness: b must be even and positive");
    if (k < 1)
        throw std::invalid_argument("t15-witness: k must be >= 1");
    Theorem15Witness w;
    w.p = p;
    w.b = b;
    w.value = ipow(p, b) + 1;
    auto const dec = squarefree_decompose(w.value);
    w.D = dec.core;
    w.u = dec.s;
    w.period = cf_sqrt(w.value).period;
    w.norms = convergent_norms(w.value, k);
    w.all_units = std::all_of(w.norms.begin(), w.norms.end(), [](Integer const & n) { return abs(n) == 1; });
    for (unsigned long c = 1; c <= b / 2; ++c) {
        Integer const pc = ipow(p, c);
        for (auto const & n : w.norms)
            if (abs(n) == pc)
                w.prime_power_norm_found = true;
    }
    return w;
}

bool BoundCertificate::allows(unsigned long n) const
{
    return n == 3 || mpz_divisible_ui_p(N.get_mpz_t(), n);
}

BoundCertificate theorem41_bound(Integer const & C)
{
    if (C < 2 || mpz_odd_p(C.get_mpz_t()))
        throw std::invalid_argument("bound: C must be an even integer >= 2");
    BoundCertificate cert;
    cert.C = C;
    cert.split = squarefree_split(C);
    Integer const & P = cert.split.P;
    cert.u = (P > 3 && mpz_fdiv_ui(P.get_mpz_t(), 8) == 3) ? 1 : 0;
    auto const table = class_exponent(P);
    cert.class_number = table.h;
    cert.h_exponent = table.exponent;
    cert.lcm = 1;
    for (auto const & f : factorize(cert.split.Q).factors) {
        Integer const term = f.prime - legendre_paper(-P, f.prime);
        cert.lcm_terms.push_back({f.prime, term});
        cert.lcm = lcm(cert.lcm, term);
    }
    cert.N = 2 * ipow(3, cert.u) * cert.h_exponent * cert.lcm;
    cert.allowed_n = divisors(cert.N);
    if (std::find(cert.allowed_n.begin(), cert.allowed_n.end(), Integer(3)) == cert.allowed_n.end())
        cert.allowed_n.push_back(3);
    std::sort(cert.allowed_n.begin(), cert.allowed_n.end());
    return cert;
}

bool is_exceptional(Integer const & x, Integer const & y, unsigned long n)
{
    return (x == 7 && y == 3 && n == 4) || (x == 401 && y == 11 && n == 5);
}

std::vector<XCYNSolution> solve_x2_plus_C(Integer const & C, Integer const & y_max, unsigned long n_max)
{
    if (C < 2 || mpz_odd_p(C.get_mpz_t()))
        throw std::invalid_argument("solve-xc: C must be an even integer >= 2");
    if (y_max < 2 || n_max < 2)
        throw std::invalid_argument("solve-xc: y_max and n_max must be >= 2");
    auto const cert = theorem41_bound(C);
    std::vector<XCYNSolution> out;
    for (Integer y = 2; y <= y_max; ++y) {
        if (!is_prime_power(y))
            continue;
        Integer yn = 1;
        for (unsigned long n = 1; n <= n_max; ++n) {
            yn *= y;
            Integer const v = yn - C;
            if (v <= 0)
                continue;
            auto const x = perfect_square_root(v);
            if (!x || gcd(*x, y) != 1 || !is_prime_power(*x))
                continue;
            XCYNStatus status = XCYNStatus::Violation;
            if (is_exceptional(*x, y, n))
                status = XCYNStatus::Exceptional;
            else if (cert.allows(n))
                status = XCYNStatus::BoundSatisfied;
            out.push_back({*x, y, n, C, status});
        }
    }
    std::sort(out.begin(), out.end(), [](XCYNSolution const & l, XCYNSolution const & r) {
        return std::tie(l.y, l.n, l.x) < std::tie(r.y, r.n, r.x);
    });
    return out;
}

} // namespace dioph
