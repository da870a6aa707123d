#pragma once

#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "dioph/ntheory.hpp"
#include "dioph/quadfield.hpp"

namespace dioph {

/// sqrt(D) = [a0; period, period, ...] with the period minimal.
struct CFExpansion {
    Integer D;
    Integer a0;
    std::vector<Integer> period;
};

struct Convergent {
    Integer v;   ///< numerator
    Integer w;   ///< denominator

    bool operator==(Convergent const &) const = default;
};

/// (X, Y) = n-th power of a fundamental solution of X^2 - D Y^2 = +-1.
struct PellSolution {
    Integer D;
    Integer X;
    Integer Y;
    unsigned long n = 1;
    int target = 1;   ///< X^2 - D Y^2

    QuadInt as_quad() const { return {X, Y, {D, 1}}; }
};

struct PellFundamentals {
    std::optional<PellSolution> negative;   ///< least solution of X^2 - D Y^2 = -1
    PellSolution positive;                  ///< least solution of X^2 - D Y^2 = +1
};

CFExpansion cf_sqrt(Integer const & D);

std::vector<Convergent> convergents(CFExpansion const & e, std::size_t k);

/// v^2 - D w^2 for the first k convergents of sqrt(D).
std::vector<Integer> convergent_norms(Integer const & D, std::size_t k);

PellFundamentals pell_fundamental(Integer const & D);

/// fund^n, with target fund.target^n.
PellSolution pell_power(PellSolution const & fund, unsigned long n);

/// A solution X^2 - D Y^2 = target, other than the least one, whose Y has
/// all of its prime factors dividing D.
struct StormerViolation {
    int target = 1;
    unsigned long index = 0;   ///< position in the solution sequence of that equation
    Integer X;
    Integer Y;
};

/// Scans the first n_max solutions of X^2 - D Y^2 = 1 and (when solvable)
/// of X^2 - D Y^2 = -1. Stormer's theorem says the result is empty.
std::vector<StormerViolation> stormer_scan(Integer const & D, unsigned long n_max);

/// True when every prime factor of n divides m (vacuously for n = +-1).
bool primes_divide(Integer const & n, Integer const & m);

struct ScPrimeCheck {
    Integer q;
    bool divides_quotient = false;   ///< q | Y_j / Y_2
    bool y2q_divides_yj = false;     ///< Y_{2q} | Y_j
    bool cofactor_integral = false;  ///< q Y_2 | Y_{2q}
    bool cofactor_prime_to_y = false;
    Integer cofactor;                ///< Y_{2q} / (q Y_2) when integral

    bool all_hold() const
    {
        return divides_quotient && y2q_divides_yj && cofactor_integral && cofactor_prime_to_y;
    }
};

struct ScLemmaEntry {
    unsigned long j = 0;
    Integer Yj;
    Integer quotient;                 ///< Y_j / Y_2
    bool quotient_y_smooth = false;   ///< every prime of Y_j / Y_2 divides y
    std::vector<ScPrimeCheck> primes; ///< one entry per prime q | y
    bool Yj_y_smooth = false;

    /// Each q dividing the quotient satisfies all three facts; a y-smooth
    /// quotient > 1 produces at least one such q; Y_j is never y-smooth.
    bool passes() const;
};

struct ScLemmaReport {
    Integer y;
    unsigned long e = 0;
    int eps = 1;       ///< D = y^(2e) + eps
    Integer D;
    Integer Y2;
    std::vector<ScLemmaEntry> entries;

    bool passes() const;
};

/// For D = y^(2e) + eps and the sequence X_j + Y_j sqrt(D) = (y^e + sqrt(D))^j,
/// checks the divisibility facts used to force j = 2, for every even j in
/// [4, j_max].
ScLemmaReport sc_lemma_scan(Integer const & y, unsigned long e, int eps, unsigned long j_max);

struct NormWitness {
    unsigned long n = 0;
    int sign = 1;   ///< r^2 - D s^2 = sign * p^n
    Integer r;
    Integer s;
};

struct NormRepReport {
    Integer D;
    Integer u;
    Integer p;
    unsigned long checked_up_to = 0;
    std::set<unsigned long> representable;
    std::vector<NormWitness> witnesses;   ///< one per representable exponent
    std::optional<unsigned long> t;
    bool brute_force_agrees = true;

    /// Every representable exponent is a multiple of t.
    bool divisibility_law_holds() const;
};

/// Decides for n = 1..n_max whether +-p^n = r^2 - D s^2 with gcd(r, sD) = 1,
/// u | s and r s != 0.
NormRepReport norm_rep_least_exponent(Integer const & D, Integer const & u, Integer const & p,
                                      unsigned long n_max = 12);

} // namespace dioph
