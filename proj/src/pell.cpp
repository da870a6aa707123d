#include "dioph/pell.hpp"

#include <algorithm>
#include <stdexcept>

namespace dioph {

namespace {

void require_nonsquare(Integer const & D, char const * who)
{
    if (D < 2 || perfect_square_root(D))
        throw std::invalid_argument(std::string(who) + ": D must be >= 2 and not a perfect square");
}

Integer isqrt(Integer const & n)
{
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

bool divides(Integer const & d, Integer const & n)
{
    return d != 0 && mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t());
}

std::vector<Integer> prime_divisors(Integer const & n)
{
    std::vector<Integer> out;
    for (auto const & f : factorize(abs(n)).factors)
        out.push_back(f.prime);
    return out;
}

} // namespace

CFExpansion cf_sqrt(Integer const & D)
{
    require_nonsquare(D, "cf_sqrt");
    CFExpansion e{D, isqrt(D), {}};
    Integer m = 0, d = 1, a = e.a0;
    // (m, d) returns to (a0, 1) exactly at the end of the first period.
    do {
        m = d * a - m;
        d = (D - m * m) / d;
        a = (e.a0 + m) / d;
        e.period.push_back(a);
    } while (d != 1);
    return e;
}

std::vector<Convergent> convergents(CFExpansion const & e, std::size_t k)
{
    if (k < 1)
        throw std::invalid_argument("convergents: k must be >= 1");
    std::vector<Convergent> out;
    out.reserve(k);
    Integer p_prev = 1, p = e.a0;
    Integer q_prev = 0, q = 1;
    out.push_back({p, q});
    for (std::size_t i = 1; i < k; ++i) {
        Integer const & a = e.period[(i - 1) % e.period.size()];
        Integer const p_next = a * p + p_prev;
        Integer const q_next = a * q + q_prev;
        p_prev = std::move(p);
        q_prev = std::move(q);
        p = p_next;
        q = q_next;
        out.push_back({p, q});
    }
    return out;
}

std::vector<Integer> convergent_norms(Integer const & D, std::size_t k)
{
    auto const e = cf_sqrt(D);
    std::vector<Integer> out;
    out.reserve(k);
    for (auto const & c : convergents(e, k))
        out.push_back(c.v * c.v - D * c.w * c.w);
    return out;
}

PellFundamentals pell_fundamental(Integer const & D)
{
    auto const e = cf_sqrt(D);
    std::size_t const L = e.period.size();
    auto const cs = convergents(e, 2 * L);
    PellFundamentals f;
    if (L % 2 == 1) {
        f.negative = PellSolution{D, cs[L - 1].v, cs[L - 1].w, 1, -1};
        f.positive = PellSolution{D, cs[2 * L - 1].v, cs[2 * L - 1].w, 1, 1};
    } else {
        f.positive = PellSolution{D, cs[L - 1].v, cs[L - 1].w, 1, 1};
    }
    return f;
}

PellSolution pell_power(PellSolution const & fund, unsigned long n)
{
    if (n < 1)
        throw std::invalid_argument("pell_power: n must be >= 1");
    QuadInt const z = quad_pow(fund.as_quad(), n);
    int const target = (fund.target == -1 && n % 2 == 1) ? -1 : 1;
    return {fund.D, z.re, z.im, fund.n * n, target};
}

bool primes_divide(Integer const & n, Integer const & m)
{
    Integer rest = abs(n);
    if (rest == 0)
        return false;
    for (;;) {
        Integer const g = gcd(rest, m);
        if (g == 1)
            break;
        rest /= g;
    }
    return rest == 1;
}

std::vector<StormerViolation> stormer_scan(Integer const & D, unsigned long n_max)
{
    auto const f = pell_fundamental(D);
    std::vector<StormerViolation> out;
    auto scan = [&](QuadInt const & first, QuadInt const & step, int target) {
        QuadInt z = first;
        for (unsigned long i = 1; i <= n_max; ++i) {
            if (norm(z) != target)
                throw std::logic_error("stormer_scan: solution sequence left the norm class");
            if (i > 1 && primes_divide(z.im, D))
                out.push_back({target, i, z.re, z.im});
            z = quad_mul(z, step);
        }
    };
    if (f.negative) {
        // -1 solutions are the odd powers of eps, +1 solutions the even ones.
        QuadInt const eps = f.negative->as_quad();
        QuadInt const eps2 = quad_mul(eps, eps);
        scan(eps, eps2, -1);
        scan(eps2, eps2, 1);
    } else {
        QuadInt const eps = f.positive.as_quad();
        scan(eps, eps, 1);
    }
    return out;
}

bool ScLemmaEntry::passes() const
{
    if (Yj_y_smooth)
        return false;
    bool any = false;
    for (auto const & c : primes) {
        if (!c.divides_quotient)
            continue;
        any = true;
        if (!c.all_hold() || c.cofactor <= 1)
            return false;
    }
    if (quotient_y_smooth && quotient > 1 && !any)
        return false;
    return true;
}

bool ScLemmaReport::passes() const
{
    return std::all_of(entries.begin(), entries.end(), [](ScLemmaEntry const & e) { return e.passes(); });
}

ScLemmaReport sc_lemma_scan(Integer const & y, unsigned long e, int eps, unsigned long j_max)
{
    if (y <= 2)
        throw std::invalid_argument("sc_lemma_scan: y must be > 2");
    if (e < 1)
        throw std::invalid_argument("sc_lemma_scan: e must be >= 1");
    if (eps != 1 && eps != -1)
        throw std::invalid_argument("sc_lemma_scan: eps must be +1 or -1");

    ScLemmaReport report;
    report.y = y;
    report.e = e;
    report.eps = eps;
    Integer const ye = ipow(y, e);
    report.D = ye * ye + eps;

    auto const qs = prime_divisors(y);
    unsigned long top = j_max;
    for (auto const & q : qs)
        top = std::max(top, 2 * q.get_ui());

    // Y[j] for j = 0..top
    QuadInt const base{ye, 1, {report.D, 1}};
    std::vector<Integer> Y{0};
    QuadInt z = QuadInt::one(base.ring);
    for (unsigned long j = 1; j <= top; ++j) {
        z = quad_mul(z, base);
        Y.push_back(z.im);
    }
    report.Y2 = Y[2];

    for (unsigned long j = 4; j <= j_max; j += 2) {
        ScLemmaEntry entry;
        entry.j = j;
        entry.Yj = Y[j];
        if (!divides(Y[2], Y[j]))
            throw std::logic_error("sc_lemma_scan: Y_2 does not divide Y_j");
        entry.quotient = Y[j] / Y[2];
        entry.quotient_y_smooth = primes_divide(entry.quotient, y);
        entry.Yj_y_smooth = primes_divide(Y[j], y);
        for (auto const & q : qs) {
            ScPrimeCheck c;
            c.q = q;
            c.divides_quotient = divides(q, entry.quotient);
            unsigned long const twoq = 2 * q.get_ui();
            c.y2q_divides_yj = divides(Y[twoq], Y[j]);
            Integer const qy2 = q * Y[2];
            c.cofactor_integral = divides(qy2, Y[twoq]);
            if (c.cofactor_integral) {
                c.cofactor = Y[twoq] / qy2;
                c.cofactor_prime_to_y = gcd(c.cofactor, y) == 1;
            }
            entry.primes.push_back(c);
        }
        report.entries.push_back(std::move(entry));
    }
    return report;
}

bool NormRepReport::divisibility_law_holds() const
{
    if (!t)
        return representable.empty();
    return std::all_of(representable.begin(), representable.end(),
                       [this](unsigned long n) { return n % *t == 0; });
}

namespace {

bool admissible(Integer const & r, Integer const & s, Integer const & D, Integer const & u)
{
    return r != 0 && s != 0 && divides(u, s) && gcd(r, s * D) == 1;
}

// Least T >= 1 with eps^T = 1 (mod u).
unsigned long unit_period_mod(QuadInt const & eps, Integer const & u)
{
    if (u == 1)
        return 1;
    QuadInt z = eps;
    for (unsigned long T = 1;; ++T) {
        z.re %= u;
        z.im %= u;
        Integer const re_minus_one = z.re - 1;
        if (divides(u, re_minus_one) && divides(u, z.im))
            return T;
        z = quad_mul(z, eps);
    }
}

std::optional<NormWitness> search_via_reduction(Integer const & D, Integer const & u, Integer const & M,
                                                 QuadInt const & eps, unsigned long period)
{
    Integer const absM = abs(M);
    Integer const bound = isqrt(absM * (eps.re + 1) / (2 * D)) + 1;
    for (Integer s = 1; s <= bound; ++s) {
        auto const r = perfect_square_root(M + D * s * s);
        if (!r || *r == 0)
            continue;
        for (int conj : {1, -1}) {
            QuadInt z{*r, conj * s, eps.ring};
            if (gcd(z.re, z.im * D) != 1)
                break;   // primitivity is invariant under units and conjugation
            for (unsigned long k = 0; k < period; ++k) {
                if (admissible(z.re, z.im, D, u))
                    return NormWitness{0, 0, z.re, z.im};
                z = quad_mul(z, eps);
            }
        }
    }
    return std::nullopt;
}

// D = 1: r^2 - s^2 = (r - s)(r + s) = M factors through the divisors of M.
std::optional<NormWitness> search_split(Integer const & u, Integer const & p, unsigned long n, Integer const & M)
{
    for (unsigned long i = 0; i <= n; ++i) {
        for (int sd : {1, -1}) {
            Integer const d = sd * ipow(p, i);
            Integer const e = M / d;
            if (mpz_odd_p(Integer(d + e).get_mpz_t()))
                continue;
            Integer const r = (d + e) / 2, s = (e - d) / 2;
            if (admissible(r, s, 1, u))
                return NormWitness{0, 0, r, s};
        }
    }
    return std::nullopt;
}

} // namespace

NormRepReport norm_rep_least_exponent(Integer const & D, Integer const & u, Integer const & p,
                                      unsigned long n_max)
{
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("norm_rep_least_exponent: p must be an odd prime");
    if (D < 1 || !is_squarefree(D))
        throw std::invalid_argument("norm_rep_least_exponent: D must be squarefree and >= 1");
    if (u < 1)
        throw std::invalid_argument("norm_rep_least_exponent: u must be >= 1");
    if (divides(p, D))
        throw std::invalid_argument("norm_rep_least_exponent: p must not divide D");

    NormRepReport report;
    report.D = D;
    report.u = u;
    report.p = p;
    report.checked_up_to = n_max;

    std::optional<QuadInt> eps;
    unsigned long period = 1;
    if (D > 1) {
        eps = pell_fundamental(D).positive.as_quad();
        period = unit_period_mod(*eps, u);
    }

    for (unsigned long n = 1; n <= n_max; ++n) {
        Integer const pn = ipow(p, n);
        for (int sign : {1, -1}) {
            Integer const M = sign * pn;
            auto w = eps ? search_via_reduction(D, u, M, *eps, period) : search_split(u, p, n, M);
            if (w) {
                w->n = n;
                w->sign = sign;
                if (w->r * w->r - D * w->s * w->s != M)
                    throw std::logic_error("norm_rep_least_exponent: witness fails the norm equation");
                report.representable.insert(n);
                report.witnesses.push_back(*w);
                break;
            }
        }
    }
    if (!report.representable.empty())
        report.t = *report.representable.begin();

    // Plain bounded search: anything it finds must already be known.
    constexpr unsigned long kBruteS = 3000;
    for (unsigned long n = 1; n <= n_max; ++n) {
        Integer const pn = ipow(p, n);
        for (unsigned long s = 1; s <= kBruteS; ++s) {
            Integer const S = s;
            if (!divides(u, S))
                continue;
            for (int sign : {1, -1}) {
                auto const r = perfect_square_root(sign * pn + D * S * S);
                if (r && admissible(*r, S, D, u) && !report.representable.count(n))
                    report.brute_force_agrees = false;
            }
        }
    }
    return report;
}

} // namespace dioph
