#pragma once

#include <optional>
#include <vector>

#include "dioph/ntheory.hpp"

namespace dioph {

/// The ring Z[sqrt(sigma * D)], D >= 1, sigma = +1 or -1.
struct QuadRing {
    Integer D;
    int sigma = -1;

    bool operator==(QuadRing const &) const = default;
};

/// re + im * sqrt(sigma * D).
struct QuadInt {
    Integer re;
    Integer im;
    QuadRing ring;

    static QuadInt one(QuadRing const & ring) { return {1, 0, ring}; }

    bool operator==(QuadInt const &) const = default;
};

QuadInt quad_mul(QuadInt const & x, QuadInt const & y);
QuadInt quad_pow(QuadInt const & x, unsigned long r);
QuadInt conjugate(QuadInt const & x);

/// re^2 - sigma * D * im^2.
Integer norm(QuadInt const & x);

inline QuadInt operator*(QuadInt const & x, QuadInt const & y) { return quad_mul(x, y); }

/// Coefficient of sqrt(-D) in (1 + sqrt(-D))^r for odd r:
///   sum_j binom(r, 2j+1) (-D)^j
/// evaluated directly as an alternating binomial sum.
Integer im_coeff(unsigned long r, Integer const & D);

/// (-1)^((D+2)/2) == (r/3) 2^(r-1)  (mod D-3). Requires r odd, 3 !| r,
/// D even, D >= 4.
bool congruence1(unsigned long r, Integer const & D);

/// (-1)^((D+2)/2) == 2^(r-1)  (mod D+1). Requires D even.
bool congruence2(unsigned long r, Integer const & D);

/// (-1)^((D+2)/2) for even D.
int lemma32_sign(Integer const & D);

struct Lemma32Solution {
    unsigned long r = 0;
    Integer a;
    int im = 0;   ///< +1 or -1, the coefficient of sqrt(-D)

    bool operator==(Lemma32Solution const &) const = default;
};

/// Filters evaluated for one odd exponent r. congruence1 is absent when 3 | r.
struct CongruenceLogEntry {
    unsigned long r = 0;
    std::optional<bool> congruence1;
    bool congruence2 = false;
    bool sign_law = false;    ///< im_coeff(r, D) == (-1)^((D+2)/2)
    bool solution = false;
};

struct Lemma32Report {
    Integer D;
    unsigned long r_max = 0;
    bool eligible = false;
    std::vector<Lemma32Solution> solutions;
    std::vector<CongruenceLogEntry> congruence_log;

    /// Every solution with odd r passes both congruences (where defined)
    /// and the sign law.
    bool filters_consistent() const;
};

/// D = 2 (mod 4), or D = 0 (mod 4) with 1 + D a prime power.
bool lemma32_eligible(Integer const & D);

/// All r in [2, r_max] with (1 + sqrt(-D))^r = a +- sqrt(-D).
Lemma32Report lemma32_search(Integer const & D, unsigned long r_max);

} // namespace dioph
