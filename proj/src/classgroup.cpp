#include "dioph/classgroup.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace dioph {

namespace {

// Returns (g, x, y) with x a + y b = g = gcd(a, b) >= 0.
std::tuple<Integer, Integer, Integer> xgcd(Integer const & a, Integer const & b)
{
    Integer g, x, y;
    mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return {g, x, y};
}

Integer floor_div(Integer const & n, Integer const & d)
{
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return q;
}

Integer mod_floor(Integer const & n, Integer const & d)
{
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
    return r;
}

void require_valid_disc(Integer const & disc)
{
    unsigned long const r = mpz_fdiv_ui(disc.get_mpz_t(), 4);
    if (disc >= 0 || (r != 0 && r != 1))
        throw std::invalid_argument("discriminant must be negative and 0 or 1 mod 4");
}

} // namespace

bool QuadForm::is_reduced() const
{
    if (a <= 0 || abs(b) > a || a > c)
        return false;
    if ((abs(b) == a || a == c) && b < 0)
        return false;
    return true;
}

bool QuadForm::is_primitive() const
{
    Integer g = gcd(a, b);
    g = gcd(g, c);
    return g == 1;
}

bool operator<(QuadForm const & f, QuadForm const & g)
{
    if (f.a != g.a)
        return f.a < g.a;
    if (f.b != g.b)
        return f.b < g.b;
    return f.c < g.c;
}

QuadForm identity_form(Integer const & disc)
{
    require_valid_disc(disc);
    if (mpz_fdiv_ui(disc.get_mpz_t(), 4) == 0)
        return {1, 0, -disc / 4};
    return {1, 1, (1 - disc) / 4};
}

QuadForm reduce(QuadForm f)
{
    Integer const disc = f.discriminant();
    if (disc >= 0 || f.a <= 0)
        throw std::invalid_argument("reduce: form must be positive definite");
    for (;;) {
        // normalize b into (-a, a]
        if (!(-f.a < f.b && f.b <= f.a)) {
            Integer const two_a = 2 * f.a;
            Integer const q = floor_div(f.a - f.b, two_a);
            f.b += two_a * q;
            f.c = (f.b * f.b - disc) / (4 * f.a);
        }
        if (f.a > f.c) {
            std::swap(f.a, f.c);
            f.b = -f.b;
            continue;
        }
        if (f.a == f.c && f.b < 0)
            f.b = -f.b;
        return f;
    }
}

QuadForm inverse(QuadForm const & f)
{
    return reduce({f.a, -f.b, f.c});
}

QuadForm compose(QuadForm const & f, QuadForm const & g)
{
    Integer const disc = f.discriminant();
    if (disc != g.discriminant())
        throw std::invalid_argument("compose: discriminants differ");
    if (!f.is_reduced() || !g.is_reduced())
        throw std::invalid_argument("compose: forms must be reduced");

    QuadForm f1 = f, f2 = g;
    if (f1.a > f2.a)
        std::swap(f1, f2);
    Integer const s = (f1.b + f2.b) / 2;
    Integer const n = f2.b - s;

    Integer y1, d;
    if (mpz_divisible_p(f2.a.get_mpz_t(), f1.a.get_mpz_t())) {
        y1 = 0;
        d = f1.a;
    } else {
        auto [gg, u, v] = xgcd(f2.a, f1.a);
        d = gg;
        y1 = u;
    }

    Integer x2, y2, d1;
    if (mpz_divisible_p(s.get_mpz_t(), d.get_mpz_t())) {
        y2 = -1;
        x2 = 0;
        d1 = d;
    } else {
        auto [gg, u, v] = xgcd(s, d);
        d1 = gg;
        x2 = u;
        y2 = -v;
    }

    Integer const v1 = f1.a / d1;
    Integer const v2 = f2.a / d1;
    Integer const r = mod_floor(y1 * y2 * n - x2 * f2.c, v1);
    QuadForm h;
    h.a = v1 * v2;
    h.b = f2.b + 2 * v2 * r;
    h.c = (h.b * h.b - disc) / (4 * h.a);
    return reduce(h);
}

unsigned long form_order(QuadForm const & f)
{
    QuadForm const e = identity_form(f.discriminant());
    QuadForm z = f;
    for (unsigned long k = 1;; ++k) {
        if (z == e)
            return k;
        z = compose(z, f);
    }
}

std::vector<QuadForm> reduced_forms(Integer const & disc)
{
    require_valid_disc(disc);
    std::vector<QuadForm> out;
    Integer const absd = -disc;
    // a <= sqrt(|disc| / 3) for reduced forms
    for (Integer a = 1; 3 * a * a <= absd; ++a) {
        for (Integer b = -a + 1; b <= a; ++b) {
            Integer const num = b * b - disc;
            if (!mpz_divisible_p(num.get_mpz_t(), Integer(4 * a).get_mpz_t()))
                continue;
            QuadForm const f{a, b, num / (4 * a)};
            if (f.is_reduced() && f.is_primitive())
                out.push_back(f);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

Integer fundamental_discriminant(Integer const & P)
{
    if (mpz_fdiv_ui(P.get_mpz_t(), 4) == 3)
        return -P;
    return -4 * P;
}

ClassGroupTable class_exponent(Integer const & P)
{
    if (P < 1 || !is_squarefree(P))
        throw std::invalid_argument("class_exponent: P must be squarefree and >= 1");
    ClassGroupTable t;
    t.P = P;
    t.disc = fundamental_discriminant(P);
    t.forms = reduced_forms(t.disc);
    t.h = t.forms.size();
    t.exponent = 1;
    for (auto const & f : t.forms) {
        unsigned long const k = form_order(f);
        t.orders.push_back(k);
        t.exponent = std::lcm(t.exponent, k);
    }
    return t;
}

} // namespace dioph
