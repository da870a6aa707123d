#pragma once

#include <compare>
#include <vector>

#include "dioph/ntheory.hpp"

namespace dioph {

/*
 * Positive definite binary quadratic form a x^2 + b xy + c y^2 with
 * discriminant b^2 - 4ac < 0. A reduced form has |b| <= a <= c, and b >= 0
 * whenever |b| = a or a = c.
 */
struct QuadForm {
    Integer a, b, c;

    Integer discriminant() const { return b * b - 4 * a * c; }
    bool is_reduced() const;
    bool is_primitive() const;

    bool operator==(QuadForm const &) const = default;
};

/// Lexicographic on (a, b, c).
bool operator<(QuadForm const & f, QuadForm const & g);

/// Principal form of the discriminant.
QuadForm identity_form(Integer const & disc);

QuadForm reduce(QuadForm f);

/// (a, -b, c) reduced.
QuadForm inverse(QuadForm const & f);

/// Gauss composition followed by reduction.
QuadForm compose(QuadForm const & f, QuadForm const & g);

/// Least k >= 1 with f^k equal to the principal form.
unsigned long form_order(QuadForm const & f);

/// All reduced primitive forms of a negative discriminant, sorted.
std::vector<QuadForm> reduced_forms(Integer const & disc);

/// -P when P = 3 (mod 4), otherwise -4P.
Integer fundamental_discriminant(Integer const & P);

struct ClassGroupTable {
    Integer P;
    Integer disc;
    std::vector<QuadForm> forms;
    std::vector<unsigned long> orders;   ///< order of forms[i]
    unsigned long h = 0;                 ///< class number
    unsigned long exponent = 0;          ///< lcm of the element orders
};

/// Class number and exponent of the maximal order of Q(sqrt(-P)).
ClassGroupTable class_exponent(Integer const & P);

} // namespace dioph
