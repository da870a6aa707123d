#include "dioph/report.hpp"

#include <stdexcept>

#ifndef DIOPH_VERSION
#define DIOPH_VERSION "0.0.0"
#endif

namespace dioph {

namespace {

Json to_json_list(std::vector<Integer> const & xs)
{
    Json out = Json::array();
    for (auto const & x : xs)
        out.push_back(to_json(x));
    return out;
}

} // namespace

char const * version_string() { return DIOPH_VERSION; }

Json to_json(Integer const & v)
{
    return v.get_str();
}

Integer integer_from_json(Json const & j)
{
    if (!j.is_string())
        throw std::invalid_argument("expected an integer encoded as a decimal string");
    Integer v;
    if (v.set_str(j.get<std::string>(), 10) != 0)
        throw std::invalid_argument("malformed integer: " + j.get<std::string>());
    return v;
}

Json to_json(PowerSumSolution const & s)
{
    return {
        {"base", to_json(s.base)},
        {"a", s.a},
        {"b", s.b},
        {"sign", s.sign},
        {"const_sign", s.const_sign},
        {"x", to_json(s.x)},
        {"family", std::string(to_string(s.family))},
    };
}

PowerSumSolution power_sum_from_json(Json const & j)
{
    PowerSumSolution s;
    s.base = integer_from_json(j.at("base"));
    s.a = j.at("a").get<unsigned long>();
    s.b = j.at("b").get<unsigned long>();
    s.sign = j.at("sign").get<int>();
    s.const_sign = j.at("const_sign").get<int>();
    s.x = integer_from_json(j.at("x"));
    auto const f = family_from_string(j.at("family").get<std::string>());
    if (!f)
        throw std::invalid_argument("unknown family tag");
    s.family = *f;
    return s;
}

Json to_json(XCYNSolution const & s)
{
    return {
        {"x", to_json(s.x)},
        {"y", to_json(s.y)},
        {"n", s.n},
        {"C", to_json(s.C)},
        {"status", std::string(to_string(s.status))},
    };
}

XCYNSolution xcyn_from_json(Json const & j)
{
    XCYNSolution s;
    s.x = integer_from_json(j.at("x"));
    s.y = integer_from_json(j.at("y"));
    s.n = j.at("n").get<unsigned long>();
    s.C = integer_from_json(j.at("C"));
    auto const st = status_from_string(j.at("status").get<std::string>());
    if (!st)
        throw std::invalid_argument("unknown status tag");
    s.status = *st;
    return s;
}

Json to_json(BoundCertificate const & c)
{
    Json terms = Json::array();
    for (auto const & t : c.lcm_terms)
        terms.push_back({{"q", to_json(t.q)}, {"term", to_json(t.term)}});
    return {
        {"C", to_json(c.C)},
        {"P", to_json(c.split.P)},
        {"Q", to_json(c.split.Q)},
        {"s", to_json(c.split.s)},
        {"u", c.u},
        {"class_number", c.class_number},
        {"h_exponent", c.h_exponent},
        {"lcm_terms", terms},
        {"lcm", to_json(c.lcm)},
        {"N", to_json(c.N)},
        {"allowed_n", to_json_list(c.allowed_n)},
    };
}

BoundCertificate bound_from_json(Json const & j)
{
    BoundCertificate c;
    c.C = integer_from_json(j.at("C"));
    c.split = {c.C, integer_from_json(j.at("P")), integer_from_json(j.at("Q")), integer_from_json(j.at("s"))};
    c.u = j.at("u").get<int>();
    c.class_number = j.at("class_number").get<unsigned long>();
    c.h_exponent = j.at("h_exponent").get<unsigned long>();
    for (auto const & t : j.at("lcm_terms"))
        c.lcm_terms.push_back({integer_from_json(t.at("q")), integer_from_json(t.at("term"))});
    c.lcm = integer_from_json(j.at("lcm"));
    c.N = integer_from_json(j.at("N"));
    for (auto const & n : j.at("allowed_n"))
        c.allowed_n.push_back(integer_from_json(n));
    return c;
}

Json to_json(SzalayTrace const & t)
{
    Json steps = Json::array();
    for (auto const & s : t.steps) {
        Json values = Json::object();
        for (auto const & v : s.values)
            values[v.name] = to_json(v.value);
        steps.push_back({{"name", s.name}, {"passed", s.passed}, {"values", values}});
    }
    return {
        {"a", t.a},
        {"b", t.b},
        {"x", to_json(t.x)},
        {"family", std::string(to_string(t.family))},
        {"t", t.t},
        {"k", to_json(t.k)},
        {"x_mod_4", t.branch},
        {"g", t.g ? to_json(*t.g) : Json(nullptr)},
        {"h", t.h ? to_json(*t.h) : Json(nullptr)},
        {"steps", steps},
        {"outcome", std::string(to_string(t.outcome))},
    };
}

Json to_json(Lemma32Report const & r)
{
    Json sols = Json::array();
    for (auto const & s : r.solutions)
        sols.push_back({{"r", s.r}, {"a", to_json(s.a)}, {"im", s.im}});
    Json log = Json::array();
    for (auto const & e : r.congruence_log) {
        log.push_back({
            {"r", e.r},
            {"congruence1", e.congruence1 ? Json(*e.congruence1) : Json(nullptr)},
            {"congruence2", e.congruence2},
            {"sign_law", e.sign_law},
            {"solution", e.solution},
        });
    }
    return {
        {"D", to_json(r.D)},
        {"r_max", r.r_max},
        {"eligible", r.eligible},
        {"solutions", sols},
        {"filters_consistent", r.filters_consistent()},
        {"congruence_log", log},
    };
}

Json to_json(PellSolution const & s)
{
    return {{"D", to_json(s.D)}, {"X", to_json(s.X)}, {"Y", to_json(s.Y)}, {"n", s.n}, {"target", s.target}};
}

Json to_json(CFExpansion const & e)
{
    return {{"D", to_json(e.D)}, {"a0", to_json(e.a0)}, {"period", to_json_list(e.period)}};
}

Json to_json(ClassGroupTable const & t)
{
    Json forms = Json::array();
    for (std::size_t i = 0; i < t.forms.size(); ++i) {
        auto const & f = t.forms[i];
        forms.push_back({{"a", to_json(f.a)}, {"b", to_json(f.b)}, {"c", to_json(f.c)}, {"order", t.orders[i]}});
    }
    return {
        {"P", to_json(t.P)},
        {"disc", to_json(t.disc)},
        {"h", t.h},
        {"exponent", t.exponent},
        {"forms", forms},
    };
}

Json to_json(Theorem15Witness const & w)
{
    return {
        {"p", to_json(w.p)},
        {"b", w.b},
        {"value", to_json(w.value)},
        {"D", to_json(w.D)},
        {"u", to_json(w.u)},
        {"period", to_json_list(w.period)},
        {"norms", to_json_list(w.norms)},
        {"all_units", w.all_units},
        {"prime_power_norm_found", w.prime_power_norm_found},
    };
}

Json to_json(NormRepReport const & r)
{
    Json wit = Json::array();
    for (auto const & w : r.witnesses)
        wit.push_back({{"n", w.n}, {"sign", w.sign}, {"r", to_json(w.r)}, {"s", to_json(w.s)}});
    Json rep = Json::array();
    for (auto n : r.representable)
        rep.push_back(n);
    return {
        {"D", to_json(r.D)},
        {"u", to_json(r.u)},
        {"p", to_json(r.p)},
        {"checked_up_to", r.checked_up_to},
        {"representable", rep},
        {"t", r.t ? Json(*r.t) : Json(nullptr)},
        {"witnesses", wit},
        {"brute_force_agrees", r.brute_force_agrees},
    };
}

Json make_run_report(std::string const & command, Json parameters, Json payload, double elapsed_ms)
{
    return {
        {"command", command},
        {"parameters", std::move(parameters)},
        {"payload", std::move(payload)},
        {"meta", {{"version", version_string()}, {"elapsed_ms", elapsed_ms}}},
    };
}

} // namespace dioph
