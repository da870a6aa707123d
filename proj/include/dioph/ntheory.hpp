#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

namespace dioph {

/// Arbitrary precision signed integer used for every exact computation.
using Integer = mpz_class;

struct PrimePower {
    Integer prime;
    unsigned long exponent = 0;

    bool operator==(PrimePower const &) const = default;
};

/*
 * n = prod prime^exponent, primes strictly increasing.
 * n = 1 has an empty factor list.
 */
struct Factorization {
    Integer value;
    std::vector<PrimePower> factors;

    Integer product() const;
};

/// C = P * s^2 with P the product of the primes occurring to an odd power
/// and Q the product of those occurring to an even power, so that P * Q is
/// the radical of C.
struct SquarefreeSplit {
    Integer C;
    Integer P;
    Integer Q;
    Integer s;
};

/// Result of is_prime_power. A unit (|n| = 1) has unit = true and no prime.
struct PrimePowerInfo {
    bool unit = false;
    Integer prime;
    unsigned long exponent = 0;
};

/// Miller-Rabin with the first twelve prime bases is deterministic below
/// this bound; is_prime falls back to trial division above it.
Integer const & deterministic_primality_limit();

bool is_prime(Integer const & n);

Factorization factorize(Integer const & n);

std::optional<PrimePowerInfo> is_prime_power(Integer const & n);

/// Exact k-th root of n >= 0, when n is a perfect k-th power.
std::optional<Integer> exact_root(Integer const & n, unsigned long k);

/// True when |n| = m^k for some m >= 2 and k >= 2.
bool is_perfect_power(Integer const & n);

std::optional<Integer> perfect_square_root(Integer const & n);

/// n = core * s^2 with core squarefree; n >= 1, parity unrestricted.
struct SquarefreeDecomposition {
    Integer core;
    Integer s;
};
SquarefreeDecomposition squarefree_decompose(Integer const & n);

SquarefreeSplit squarefree_split(Integer const & C);

bool is_squarefree(Integer const & n);

Integer radical(Integer const & n);

/// Jacobi symbol (a/n) for odd n >= 1, by binary quadratic reciprocity.
int jacobi(Integer const & a, Integer const & n);

/// Legendre symbol with the convention (a/2) = 0.
int legendre_paper(Integer const & a, Integer const & q);

/// Least g >= 1 with base^g = -1 (mod p), or nothing when -1 is not a power
/// of base. Computed as ord_p(base)/2 when the order is even.
std::optional<Integer> negation_order(Integer const & base, Integer const & p);

/// Multiplicative order of base modulo the prime p.
Integer multiplicative_order(Integer const & base, Integer const & p);

std::vector<Integer> divisors(Integer const & n);

Integer ipow(Integer const & base, unsigned long e);

/// 2-adic valuation of n != 0.
unsigned long valuation2(Integer const & n);

} // namespace dioph
