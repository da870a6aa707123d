#include "dioph/ntheory.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <stdexcept>

namespace dioph {

namespace {

constexpr std::array<unsigned long, 12> kWitnessBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
constexpr unsigned long kTrialLimit = 100000;

// Strong probable prime test to base a; n odd, n > a.
bool strong_probable_prime(Integer const & n, unsigned long a)
{
    Integer const n1 = n - 1;
    Integer d = n1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Integer x;
    Integer const base = a;
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    if (x == 1 || x == n1)
        return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = x * x % n;
        if (x == n1)
            return true;
        if (x == 1)
            return false;
    }
    return false;
}

bool trial_division_prime(Integer const & n)
{
    if (n < 2)
        return false;
    if (n < 4)
        return true;
    if (mpz_even_p(n.get_mpz_t()) || mpz_divisible_ui_p(n.get_mpz_t(), 3))
        return false;
    Integer root;
    mpz_sqrt(root.get_mpz_t(), n.get_mpz_t());
    for (Integer d = 5; d <= root; d += 6) {
        if (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()))
            return false;
        Integer const d2 = d + 2;
        if (mpz_divisible_p(n.get_mpz_t(), d2.get_mpz_t()))
            return false;
    }
    return true;
}

// Brent's variant of Pollard rho. Returns a nontrivial factor of the odd
// composite n.
Integer rho_factor(Integer const & n)
{
    for (unsigned long c = 1;; ++c) {
        Integer y = 2, x, g = 1, q = 1, ys;
        unsigned long r = 1;
        constexpr unsigned long m = 64;
        auto step = [&](Integer const & v) -> Integer { return (v * v + c) % n; };
        do {
            x = y;
            for (unsigned long i = 0; i < r; ++i)
                y = step(y);
            unsigned long k = 0;
            do {
                ys = y;
                for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
                    y = step(y);
                    Integer diff = abs(x - y);
                    q = q * diff % n;
                }
                g = gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = step(ys);
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n)
            return g;
    }
}

void split_into(Integer const & n, std::map<Integer, unsigned long> & out)
{
    if (n == 1)
        return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    if (auto r = exact_root(n, 2)) {
        split_into(*r, out);
        split_into(*r, out);
        return;
    }
    Integer const f = rho_factor(n);
    split_into(f, out);
    split_into(n / f, out);
}

} // namespace

Integer Factorization::product() const
{
    Integer p = 1;
    for (auto const & f : factors)
        p *= ipow(f.prime, f.exponent);
    return p;
}

Integer const & deterministic_primality_limit()
{
    static Integer const limit("318665857834031151167461");
    return limit;
}

bool is_prime(Integer const & n)
{
    if (n < 2)
        return false;
    for (unsigned long p : kWitnessBases) {
        if (n == p)
            return true;
        if (mpz_divisible_ui_p(n.get_mpz_t(), p))
            return false;
    }
    if (n < 41 * 41)
        return true;
    for (unsigned long a : kWitnessBases)
        if (!strong_probable_prime(n, a))
            return false;
    if (n < deterministic_primality_limit())
        return true;
    return trial_division_prime(n);
}

Factorization factorize(Integer const & n)
{
    if (n < 1)
        throw std::invalid_argument("factorize: n must be >= 1");
    std::map<Integer, unsigned long> found;
    Integer m = n;
    auto strip = [&](unsigned long d) {
        while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
            mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
            ++found[Integer(d)];
        }
    };
    strip(2);
    strip(3);
    for (unsigned long d = 5; d <= kTrialLimit; d += 6) {
        if (Integer(d) * d > m)
            break;
        strip(d);
        strip(d + 2);
    }
    if (m > 1) {
        if (m <= Integer(kTrialLimit) * kTrialLimit)
            ++found[m];
        else
            split_into(m, found);
    }
    Factorization f{n, {}};
    for (auto const & [p, e] : found)
        f.factors.push_back({p, e});
    return f;
}

std::optional<Integer> exact_root(Integer const & n, unsigned long k)
{
    if (n < 0 || k == 0)
        return std::nullopt;
    Integer r;
    if (mpz_root(r.get_mpz_t(), n.get_mpz_t(), k) == 0)
        return std::nullopt;
    return r;
}

std::optional<PrimePowerInfo> is_prime_power(Integer const & n)
{
    if (n == 0)
        throw std::invalid_argument("is_prime_power: n must be nonzero");
    Integer const m = abs(n);
    if (m == 1)
        return PrimePowerInfo{true, 0, 0};
    // The largest k with an exact k-th root leaves a base that is not itself
    // a perfect power, so m is a prime power iff that base is prime.
    unsigned long const top = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (unsigned long k = top; k >= 1; --k) {
        if (auto r = exact_root(m, k)) {
            if (*r < 2)
                continue;
            if (is_prime(*r))
                return PrimePowerInfo{false, *r, k};
            return std::nullopt;
        }
    }
    return std::nullopt;
}

bool is_perfect_power(Integer const & n)
{
    Integer const m = abs(n);
    if (m < 4)
        return false;
    unsigned long const top = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (unsigned long k = 2; k <= top; ++k)
        if (exact_root(m, k))
            return true;
    return false;
}

std::optional<Integer> perfect_square_root(Integer const & n)
{
    if (n < 0 || !mpz_perfect_square_p(n.get_mpz_t()))
        return std::nullopt;
    Integer r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

SquarefreeDecomposition squarefree_decompose(Integer const & n)
{
    if (n < 1)
        throw std::invalid_argument("squarefree_decompose: n must be >= 1");
    SquarefreeDecomposition d{1, 1};
    for (auto const & [p, e] : factorize(n).factors) {
        if (e % 2 == 1)
            d.core *= p;
        d.s *= ipow(p, e / 2);
    }
    return d;
}

SquarefreeSplit squarefree_split(Integer const & C)
{
    if (C < 2 || mpz_odd_p(C.get_mpz_t()))
        throw std::invalid_argument("squarefree_split: C must be an even integer >= 2");
    SquarefreeSplit split{C, 1, 1, 1};
    for (auto const & [p, e] : factorize(C).factors) {
        if (e % 2 == 1)
            split.P *= p;
        else
            split.Q *= p;
        split.s *= ipow(p, e / 2);
    }
    return split;
}

bool is_squarefree(Integer const & n)
{
    if (n < 1)
        return false;
    auto const f = factorize(n);
    return std::all_of(f.factors.begin(), f.factors.end(),
                       [](PrimePower const & pp) { return pp.exponent == 1; });
}

Integer radical(Integer const & n)
{
    Integer r = 1;
    for (auto const & f : factorize(abs(n)).factors)
        r *= f.prime;
    return r;
}

int jacobi(Integer const & a_in, Integer const & n_in)
{
    if (n_in < 1 || mpz_even_p(n_in.get_mpz_t()))
        throw std::invalid_argument("jacobi: n must be odd and positive");
    Integer n = n_in;
    Integer a = a_in % n;
    if (a < 0)
        a += n;
    int result = 1;
    while (a != 0) {
        unsigned long const twos = mpz_scan1(a.get_mpz_t(), 0);
        mpz_tdiv_q_2exp(a.get_mpz_t(), a.get_mpz_t(), twos);
        // (2/n) = -1 iff n = 3, 5 (mod 8)
        unsigned long const n8 = mpz_fdiv_ui(n.get_mpz_t(), 8);
        if ((twos & 1) && (n8 == 3 || n8 == 5))
            result = -result;
        // reciprocity: flip when both are 3 (mod 4)
        if (mpz_fdiv_ui(a.get_mpz_t(), 4) == 3 && n8 % 4 == 3)
            result = -result;
        std::swap(a, n);
        a %= n;
    }
    return n == 1 ? result : 0;
}

int legendre_paper(Integer const & a, Integer const & q)
{
    if (!is_prime(q))
        throw std::invalid_argument("legendre_paper: q must be prime");
    if (q == 2)
        return 0;
    return jacobi(a, q);
}

Integer multiplicative_order(Integer const & base, Integer const & p)
{
    Integer const b = ((base % p) + p) % p;
    Integer order = p - 1;
    for (auto const & [q, e] : factorize(p - 1).factors) {
        for (unsigned long i = 0; i < e; ++i) {
            Integer const candidate = order / q;
            Integer r;
            mpz_powm(r.get_mpz_t(), b.get_mpz_t(), candidate.get_mpz_t(), p.get_mpz_t());
            if (r != 1)
                break;
            order = candidate;
        }
    }
    return order;
}

std::optional<Integer> negation_order(Integer const & base, Integer const & p)
{
    if (p < 3 || !is_prime(p))
        throw std::invalid_argument("negation_order: p must be an odd prime");
    if (mpz_divisible_p(base.get_mpz_t(), p.get_mpz_t()))
        throw std::invalid_argument("negation_order: p must not divide base");
    // In the cyclic group (Z/p)^*, base^g = -1 has a solution iff the order
    // of base is even, and the least one is half the order.
    Integer const order = multiplicative_order(base, p);
    if (mpz_odd_p(order.get_mpz_t()))
        return std::nullopt;
    return Integer(order / 2);
}

std::vector<Integer> divisors(Integer const & n)
{
    std::vector<Integer> divs{1};
    for (auto const & [p, e] : factorize(n).factors) {
        std::size_t const prev = divs.size();
        Integer pk = 1;
        for (unsigned long k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < prev; ++i)
                divs.push_back(divs[i] * pk);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

Integer ipow(Integer const & base, unsigned long e)
{
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

unsigned long valuation2(Integer const & n)
{
    if (n == 0)
        throw std::invalid_argument("valuation2: n must be nonzero");
    return mpz_scan1(n.get_mpz_t(), 0);
}

} // namespace dioph
