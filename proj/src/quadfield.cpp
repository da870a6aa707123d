#include "dioph/quadfield.hpp"

#include <stdexcept>

namespace dioph {

namespace {

void require_same_ring(QuadInt const & x, QuadInt const & y)
{
    if (x.ring != y.ring)
        throw std::invalid_argument("quadratic integers belong to different rings");
}

void require_valid_ring(QuadRing const & ring)
{
    if (ring.D < 1 || (ring.sigma != 1 && ring.sigma != -1))
        throw std::invalid_argument("quadratic ring needs D >= 1 and sigma = +-1");
}

// m mod n in [0, n)
Integer mod_floor(Integer const & m, Integer const & n)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
    return r;
}

Integer pow2_mod(unsigned long e, Integer const & modulus)
{
    Integer r;
    Integer const two = 2, exp = e;
    mpz_powm(r.get_mpz_t(), two.get_mpz_t(), exp.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

} // namespace

QuadInt quad_mul(QuadInt const & x, QuadInt const & y)
{
    require_same_ring(x, y);
    Integer const d = x.ring.sigma * x.ring.D;
    return {x.re * y.re + d * x.im * y.im, x.re * y.im + x.im * y.re, x.ring};
}

QuadInt quad_pow(QuadInt const & x, unsigned long r)
{
    require_valid_ring(x.ring);
    QuadInt result = QuadInt::one(x.ring);
    QuadInt base = x;
    while (r > 0) {
        if (r & 1)
            result = quad_mul(result, base);
        r >>= 1;
        if (r > 0)
            base = quad_mul(base, base);
    }
    return result;
}

QuadInt conjugate(QuadInt const & x)
{
    return {x.re, -x.im, x.ring};
}

Integer norm(QuadInt const & x)
{
    return x.re * x.re - x.ring.sigma * x.ring.D * x.im * x.im;
}

Integer im_coeff(unsigned long r, Integer const & D)
{
    if (r % 2 == 0)
        throw std::invalid_argument("im_coeff: r must be odd");
    Integer const minus_d = -D;
    Integer binom = r;        // binom(r, k), k = 1, 3, 5, ...
    Integer power = 1;        // (-D)^((k-1)/2)
    Integer sum = 0;
    for (unsigned long k = 1; k <= r; k += 2) {
        sum += binom * power;
        if (k + 2 <= r) {
            binom *= (r - k) * (r - k - 1);
            mpz_divexact_ui(binom.get_mpz_t(), binom.get_mpz_t(), (k + 1) * (k + 2));
            power *= minus_d;
        }
    }
    return sum;
}

int lemma32_sign(Integer const & D)
{
    if (mpz_odd_p(D.get_mpz_t()))
        throw std::invalid_argument("(D+2)/2 must be integral: D must be even");
    Integer const half = (D + 2) / 2;
    return mpz_even_p(half.get_mpz_t()) ? 1 : -1;
}

bool congruence1(unsigned long r, Integer const & D)
{
    if (r % 2 == 0 || r % 3 == 0)
        throw std::invalid_argument("congruence1: r must be odd and prime to 3");
    if (D < 4)
        throw std::invalid_argument("congruence1: D must be >= 4");
    int const lhs = lemma32_sign(D);
    Integer const modulus = D - 3;
    if (modulus == 1)
        return true;
    int const r_over_3 = (r % 3 == 1) ? 1 : -1;
    Integer const rhs = r_over_3 * pow2_mod(r - 1, modulus);
    return mod_floor(lhs - rhs, modulus) == 0;
}

bool congruence2(unsigned long r, Integer const & D)
{
    if (r < 1)
        throw std::invalid_argument("congruence2: r must be >= 1");
    int const lhs = lemma32_sign(D);
    Integer const modulus = D + 1;
    return mod_floor(lhs - pow2_mod(r - 1, modulus), modulus) == 0;
}

bool lemma32_eligible(Integer const & D)
{
    if (D < 1)
        return false;
    unsigned long const residue = mpz_fdiv_ui(D.get_mpz_t(), 4);
    if (residue == 2)
        return true;
    return residue == 0 && is_prime_power(D + 1).has_value();
}

bool Lemma32Report::filters_consistent() const
{
    for (auto const & e : congruence_log) {
        if (!e.solution)
            continue;
        if (!e.congruence2 || !e.sign_law)
            return false;
        if (e.congruence1 && !*e.congruence1)
            return false;
    }
    return true;
}

Lemma32Report lemma32_search(Integer const & D, unsigned long r_max)
{
    unsigned long const residue = D < 1 ? 1 : mpz_fdiv_ui(D.get_mpz_t(), 4);
    if (residue != 0 && residue != 2)
        throw std::invalid_argument("lemma32_search: D must be positive and 0 or 2 mod 4");
    if (r_max < 3)
        throw std::invalid_argument("lemma32_search: r_max must be >= 3");

    Lemma32Report report;
    report.D = D;
    report.r_max = r_max;
    report.eligible = lemma32_eligible(D);

    QuadRing const ring{D, -1};
    QuadInt const base{1, 1, ring};
    int const sign = lemma32_sign(D);

    // Walk the powers incrementally; each hit is recomputed independently.
    QuadInt power = base;
    for (unsigned long r = 2; r <= r_max; ++r) {
        power = quad_mul(power, base);
        bool const hit = abs(power.im) == 1;
        if (hit) {
            QuadInt const check = quad_pow(base, r);
            if (check != power)
                throw std::logic_error("lemma32_search: incremental power disagrees with quad_pow");
            if (r % 2 == 1 && im_coeff(r, D) != power.im)
                throw std::logic_error("lemma32_search: im_coeff disagrees with quad_pow");
            report.solutions.push_back({r, power.re, power.im == 1 ? 1 : -1});
        }
        if (r % 2 == 1) {
            CongruenceLogEntry entry;
            entry.r = r;
            if (r % 3 != 0 && D >= 4)
                entry.congruence1 = congruence1(r, D);
            entry.congruence2 = congruence2(r, D);
            entry.sign_law = power.im == sign;
            entry.solution = hit;
            report.congruence_log.push_back(entry);
        }
    }
    return report;
}

} // namespace dioph
