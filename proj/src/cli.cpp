#include "dioph/cli.hpp"

#include <chrono>
#include <functional>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "dioph/report.hpp"

namespace dioph {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommandResult {
    Json parameters = Json::object();
    Json payload = Json::object();
    std::string plain;
    bool violation = false;
};

Integer parse_integer(std::string const & name, std::string const & text)
{
    Integer v;
    std::string s = text;
    if (!s.empty() && s[0] == '+')
        s.erase(0, 1);
    if (s.empty() || s.find_first_not_of("-0123456789") != std::string::npos || v.set_str(s, 10) != 0)
        throw UsageError("--" + name + ": malformed integer '" + text + "'");
    return v;
}

unsigned long parse_count(std::string const & name, std::string const & text)
{
    Integer const v = parse_integer(name, text);
    if (v < 0)
        throw UsageError("--" + name + ": must be nonnegative");
    if (!v.fits_ulong_p())
        throw UsageError("--" + name + ": value too large");
    return v.get_ui();
}

int parse_sign(std::string const & text)
{
    if (text == "+" || text == "+1" || text == "1")
        return 1;
    if (text == "-" || text == "-1")
        return -1;
    throw UsageError("--sign: must be + or -");
}

// Aligned plain-text table.
std::string table(std::vector<std::string> const & header, std::vector<std::vector<std::string>> const & rows)
{
    std::vector<std::size_t> width(header.size());
    for (std::size_t i = 0; i < header.size(); ++i)
        width[i] = header[i].size();
    for (auto const & r : rows)
        for (std::size_t i = 0; i < r.size() && i < width.size(); ++i)
            width[i] = std::max(width[i], r[i].size());
    std::ostringstream os;
    auto line = [&](std::vector<std::string> const & cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                os << "  ";
            os << std::setw(static_cast<int>(width[i])) << cells[i];
        }
        os << '\n';
    };
    line(header);
    for (auto const & r : rows)
        line(r);
    return os.str();
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string sign_text(int s) { return s > 0 ? "+" : "-"; }

std::string power_sum_table(std::vector<PowerSumSolution> const & sols)
{
    std::vector<std::vector<std::string>> rows;
    for (auto const & s : sols)
        rows.push_back({s.base.get_str(), std::to_string(s.a), std::to_string(s.b), sign_text(s.sign),
                        sign_text(s.const_sign), s.x.get_str(), std::string(to_string(s.family))});
    return table({"base", "a", "b", "e1", "e2", "x", "family"}, rows) + std::to_string(sols.size()) + " solution(s)\n";
}

Json power_sum_payload(std::string equation, std::vector<PowerSumSolution> const & sols)
{
    Json list = Json::array();
    for (auto const & s : sols)
        list.push_back(to_json(s));
    return {{"equation", std::move(equation)}, {"count", sols.size()}, {"solutions", list}};
}

// ---------------------------------------------------------------------------

CommandResult cmd_search_pow2(std::string const & sign_s, std::string const & a_max_s)
{
    int const sign = parse_sign(sign_s);
    unsigned long const a_max = parse_count("a-max", a_max_s);
    CommandResult r;
    r.parameters = {{"sign", sign_text(sign)}, {"a_max", a_max}};
    auto const sols = search_pow2(a_max, sign);
    r.payload = power_sum_payload(sign > 0 ? "2^a + 2^b + 1 = x^2" : "2^a - 2^b + 1 = x^2", sols);
    r.plain = power_sum_table(sols);
    for (auto const & s : sols)
        r.violation = r.violation || s.family == Family::Other;
    return r;
}

CommandResult cmd_search_odd_prime(std::string const & sign_s, std::string const & p_max_s, std::string const & a_max_s)
{
    int const sign = parse_sign(sign_s);
    Integer const p_max = parse_integer("p-max", p_max_s);
    unsigned long const a_max = parse_count("a-max", a_max_s);
    CommandResult r;
    r.parameters = {{"sign", sign_text(sign)}, {"p_max", to_json(p_max)}, {"a_max", a_max}};
    auto const sols = search_odd_prime(p_max, a_max, sign);
    r.payload = power_sum_payload(sign > 0 ? "p^a + p^b + 1 = x^2" : "p^a - p^b + 1 = x^2", sols);
    r.plain = power_sum_table(sols);
    for (auto const & s : sols)
        r.violation = r.violation || s.family == Family::Other;
    return r;
}

CommandResult cmd_search_t14(std::string const & y_max_s, std::string const & a_max_s)
{
    Integer const y_max = parse_integer("y-max", y_max_s);
    unsigned long const a_max = parse_count("a-max", a_max_s);
    CommandResult r;
    r.parameters = {{"y_max", to_json(y_max)}, {"a_max", a_max}};
    auto const sols = search_theorem14(y_max, a_max);
    r.payload = power_sum_payload("x^2 = y^a + e1 y^b + e2", sols);
    r.plain = power_sum_table(sols);
    r.violation = !sols.empty();
    return r;
}

CommandResult cmd_trace(std::string const & a_s, std::string const & b_s, std::string const & x_s)
{
    unsigned long const a = parse_count("a", a_s);
    unsigned long const b = parse_count("b", b_s);
    Integer const x = parse_integer("x", x_s);
    CommandResult r;
    r.parameters = {{"a", a}, {"b", b}, {"x", to_json(x)}};
    auto const tr = szalay_trace(a, b, x);
    r.payload = to_json(tr);
    std::vector<std::vector<std::string>> rows;
    for (auto const & s : tr.steps) {
        std::string values;
        for (auto const & v : s.values)
            values += (values.empty() ? "" : ", ") + v.name + "=" + v.value.get_str();
        rows.push_back({s.passed ? "pass" : "FAIL", s.name, values});
    }
    r.plain = "x = 2^" + std::to_string(tr.t) + " * " + tr.k.get_str() + (tr.branch == 1 ? " + 1" : " - 1") + "\n" +
              table({"step", "check", "values"}, rows) + "outcome: " + std::string(to_string(tr.outcome)) + "\n";
    r.violation = tr.outcome == TraceOutcome::ReachedBound || tr.outcome == TraceOutcome::StepFailed;
    return r;
}

CommandResult cmd_bb_gap(std::string const & lo_s, std::string const & hi_s)
{
    unsigned long const lo = parse_count("b-lo", lo_s);
    unsigned long const hi = parse_count("b-hi", hi_s);
    CommandResult r;
    r.parameters = {{"b_lo", lo}, {"b_hi", hi}};
    bool const empty = bb_gap_check(lo, hi);
    r.payload = {{"inequality", "2^(13a) < (2^b + 1)^50 with a >= 6b - 8"}, {"gap_empty", empty}};
    r.plain = std::string("no a satisfies both a >= 6b - 8 and the bound for b in [") + std::to_string(lo) + ", " +
              std::to_string(hi) + "]: " + yes_no(empty) + "\n";
    r.violation = !empty;
    return r;
}

CommandResult cmd_t15(std::string const & p_s, std::string const & b_s, std::string const & k_s)
{
    Integer const p = parse_integer("p", p_s);
    unsigned long const b = parse_count("b", b_s);
    unsigned long const k = parse_count("k", k_s);
    CommandResult r;
    r.parameters = {{"p", to_json(p)}, {"b", b}, {"k", k}};
    auto const w = theorem15_witness(p, b, k);
    r.payload = to_json(w);
    std::ostringstream os;
    os << "p^b + 1 = " << w.value << " = " << w.D << " * " << w.u << "^2\n"
       << "period of sqrt: [";
    for (std::size_t i = 0; i < w.period.size(); ++i)
        os << (i ? ", " : "") << w.period[i];
    os << "]\n"
       << w.norms.size() << " convergent norms, all +-1: " << yes_no(w.all_units) << "\n"
       << "some norm equals +-p^c, 1 <= c <= b/2: " << yes_no(w.prime_power_norm_found) << "\n";
    r.plain = os.str();
    r.violation = !w.all_units || w.prime_power_norm_found;
    return r;
}

CommandResult cmd_lemma32(std::string const & d_s, std::string const & r_s)
{
    Integer const D = parse_integer("d", d_s);
    unsigned long const r_max = parse_count("r-max", r_s);
    CommandResult r;
    r.parameters = {{"d", to_json(D)}, {"r_max", r_max}};
    auto const rep = lemma32_search(D, r_max);
    r.payload = to_json(rep);
    std::vector<std::vector<std::string>> rows;
    for (auto const & s : rep.solutions)
        rows.push_back({std::to_string(s.r), s.a.get_str(), s.im > 0 ? "+1" : "-1"});
    r.plain = "D = " + D.get_str() + ", eligible: " + yes_no(rep.eligible) + "\n" + table({"r", "a", "im"}, rows) +
              "filters consistent: " + yes_no(rep.filters_consistent()) + "\n";
    bool unexpected = false;
    for (auto const & s : rep.solutions)
        unexpected = unexpected || !(s.r == 3 && (D == 2 || D == 4));
    r.violation = !rep.filters_consistent() || (rep.eligible && unexpected);
    return r;
}

CommandResult cmd_bound(std::string const & c_s)
{
    Integer const C = parse_integer("c", c_s);
    CommandResult r;
    r.parameters = {{"c", to_json(C)}};
    auto const cert = theorem41_bound(C);
    r.payload = to_json(cert);
    std::ostringstream os;
    os << "C = " << cert.C << " = " << cert.split.P << " * " << cert.split.s << "^2, Q = " << cert.split.Q << "\n"
       << "u = " << cert.u << ", h = " << cert.class_number << ", exponent = " << cert.h_exponent << "\n"
       << "lcm terms:";
    for (auto const & t : cert.lcm_terms)
        os << " (" << t.q << ": " << t.term << ")";
    os << (cert.lcm_terms.empty() ? " none" : "") << "\nN = " << cert.N << "\nallowed n:";
    for (auto const & n : cert.allowed_n)
        os << ' ' << n;
    os << '\n';
    r.plain = os.str();
    return r;
}

CommandResult cmd_solve_xc(std::string const & c_s, std::string const & y_s, std::string const & n_s)
{
    Integer const C = parse_integer("c", c_s);
    Integer const y_max = parse_integer("y-max", y_s);
    unsigned long const n_max = parse_count("n-max", n_s);
    CommandResult r;
    r.parameters = {{"c", to_json(C)}, {"y_max", to_json(y_max)}, {"n_max", n_max}};
    auto const sols = solve_x2_plus_C(C, y_max, n_max);
    auto const cert = theorem41_bound(C);
    Json list = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (auto const & s : sols) {
        list.push_back(to_json(s));
        rows.push_back({s.x.get_str(), s.y.get_str(), std::to_string(s.n), std::string(to_string(s.status))});
        r.violation = r.violation || s.status == XCYNStatus::Violation;
    }
    r.payload = {{"equation", "x^2 + C = y^n"}, {"N", to_json(cert.N)}, {"count", sols.size()}, {"solutions", list}};
    r.plain = "C = " + C.get_str() + ", N = " + cert.N.get_str() + "\n" + table({"x", "y", "n", "status"}, rows) +
              std::to_string(sols.size()) + " solution(s)\n";
    return r;
}

CommandResult cmd_pell(std::string const & d_s, std::string const & powers_s)
{
    Integer const D = parse_integer("d", d_s);
    unsigned long const powers = parse_count("powers", powers_s);
    CommandResult r;
    r.parameters = {{"d", to_json(D)}, {"powers", powers}};
    auto const f = pell_fundamental(D);
    PellSolution const & least = f.negative ? *f.negative : f.positive;
    Json list = Json::array();
    std::vector<std::vector<std::string>> rows;
    for (unsigned long n = 1; n <= powers; ++n) {
        auto const s = pell_power(least, n);
        list.push_back(to_json(s));
        rows.push_back({std::to_string(s.n), s.X.get_str(), s.Y.get_str(), std::to_string(s.target)});
    }
    r.payload = {
        {"D", to_json(D)},
        {"negative", f.negative ? to_json(*f.negative) : Json(nullptr)},
        {"positive", to_json(f.positive)},
        {"powers", list},
    };
    r.plain = "X^2 - " + D.get_str() + " Y^2 = +-1\n" + table({"n", "X", "Y", "norm"}, rows);
    return r;
}

CommandResult cmd_cf(std::string const & d_s, std::string const & k_s)
{
    Integer const D = parse_integer("d", d_s);
    unsigned long const k = parse_count("convergents", k_s);
    CommandResult r;
    r.parameters = {{"d", to_json(D)}, {"convergents", k}};
    auto const e = cf_sqrt(D);
    Json list = Json::array();
    std::vector<std::vector<std::string>> rows;
    if (k > 0) {
        for (auto const & c : convergents(e, k)) {
            Integer const nv = c.v * c.v - D * c.w * c.w;
            list.push_back({{"v", to_json(c.v)}, {"w", to_json(c.w)}, {"norm", to_json(nv)}});
            rows.push_back({c.v.get_str(), c.w.get_str(), nv.get_str()});
        }
    }
    r.payload = to_json(e);
    r.payload["convergents"] = list;
    std::string period;
    for (auto const & a : e.period)
        period += (period.empty() ? "" : ", ") + a.get_str();
    r.plain = "sqrt(" + D.get_str() + ") = [" + e.a0.get_str() + "; (" + period + ")]\n" +
              table({"v", "w", "v^2 - D w^2"}, rows);
    return r;
}

CommandResult cmd_classgroup(std::string const & p_s)
{
    Integer const P = parse_integer("p", p_s);
    CommandResult r;
    r.parameters = {{"p", to_json(P)}};
    auto const t = class_exponent(P);
    r.payload = to_json(t);
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < t.forms.size(); ++i)
        rows.push_back({t.forms[i].a.get_str(), t.forms[i].b.get_str(), t.forms[i].c.get_str(),
                        std::to_string(t.orders[i])});
    r.plain = "disc = " + t.disc.get_str() + ", h = " + std::to_string(t.h) + ", exponent = " +
              std::to_string(t.exponent) + "\n" + table({"a", "b", "c", "order"}, rows);
    return r;
}

CommandResult cmd_jacobi(std::string const & a_s, std::string const & n_s)
{
    Integer const a = parse_integer("a", a_s);
    Integer const n = parse_integer("n", n_s);
    CommandResult r;
    r.parameters = {{"a", to_json(a)}, {"n", to_json(n)}};
    int const v = jacobi(a, n);
    r.payload = {{"value", v}};
    r.plain = "(" + a.get_str() + " / " + n.get_str() + ") = " + std::to_string(v) + "\n";
    return r;
}

} // namespace

int run_cli(std::vector<std::string> const & args, std::ostream & out, std::ostream & err)
{
    CLI::App app{"Exact verifiers for exponential Diophantine equations", "dioph"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "json";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "plain"}));

    std::map<std::string, std::string> opt;
    std::function<CommandResult()> action;
    std::string command;

    auto sub = [&](char const * name, char const * help) {
        auto * s = app.add_subcommand(name, help);
        s->callback([&command, name] { command = name; });
        return s;
    };
    auto req = [&](CLI::App * s, std::string const & flag) {
        s->add_option("--" + flag, opt[flag])->required()->allow_extra_args(false);
    };
    auto optional = [&](CLI::App * s, std::string const & flag, std::string def) {
        opt[flag] = std::move(def);
        s->add_option("--" + flag, opt[flag])->capture_default_str()->allow_extra_args(false);
    };

    auto * s = sub("search-pow2", "2^a +- 2^b + 1 = x^2");
    req(s, "sign"), req(s, "a-max");
    s = sub("search-odd-prime", "p^a +- p^b + 1 = x^2 for odd primes p");
    req(s, "sign"), req(s, "p-max"), req(s, "a-max");
    s = sub("search-t14", "x^2 = y^a +- y^b +- 1, a even, y not a perfect power");
    req(s, "y-max"), req(s, "a-max");
    s = sub("trace", "step-by-step check of a solution of 2^a + 2^b + 1 = x^2");
    req(s, "a"), req(s, "b"), req(s, "x");
    s = sub("bb-gap", "a >= 6b - 8 against the exact hypergeometric bound");
    req(s, "b-lo"), req(s, "b-hi");
    s = sub("t15-witness", "convergent norms of sqrt(p^b + 1)");
    req(s, "p"), req(s, "b"), optional(s, "k", "50");
    s = sub("lemma32", "(1 + sqrt(-D))^r = a +- sqrt(-D)");
    req(s, "d"), req(s, "r-max");
    s = sub("bound", "bound certificate for x^2 + C = y^n");
    req(s, "c");
    s = sub("solve-xc", "prime power solutions of x^2 + C = y^n");
    req(s, "c"), optional(s, "y-max", "200"), optional(s, "n-max", "30");
    s = sub("pell", "fundamental solutions of X^2 - D Y^2 = +-1");
    req(s, "d"), optional(s, "powers", "3");
    s = sub("cf", "continued fraction of sqrt(D)");
    req(s, "d"), optional(s, "convergents", "10");
    s = sub("classgroup", "form class group of Q(sqrt(-P))");
    req(s, "p");
    s = sub("jacobi", "Jacobi symbol (a/n)");
    req(s, "a"), req(s, "n");

    std::vector<std::string> argv_storage{"dioph"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<char const *> argv;
    for (auto const & a : argv_storage)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (CLI::CallForHelp const &) {
        out << app.help();
        return kExitOk;
    } catch (CLI::CallForAllHelp const &) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (CLI::ParseError const & e) {
        err << "dioph: " << e.what() << '\n';
        return kExitUsage;
    }

    auto const start = std::chrono::steady_clock::now();
    CommandResult result;
    try {
        if (command == "search-pow2")
            result = cmd_search_pow2(opt["sign"], opt["a-max"]);
        else if (command == "search-odd-prime")
            result = cmd_search_odd_prime(opt["sign"], opt["p-max"], opt["a-max"]);
        else if (command == "search-t14")
            result = cmd_search_t14(opt["y-max"], opt["a-max"]);
        else if (command == "trace")
            result = cmd_trace(opt["a"], opt["b"], opt["x"]);
        else if (command == "bb-gap")
            result = cmd_bb_gap(opt["b-lo"], opt["b-hi"]);
        else if (command == "t15-witness")
            result = cmd_t15(opt["p"], opt["b"], opt["k"]);
        else if (command == "lemma32")
            result = cmd_lemma32(opt["d"], opt["r-max"]);
        else if (command == "bound")
            result = cmd_bound(opt["c"]);
        else if (command == "solve-xc")
            result = cmd_solve_xc(opt["c"], opt["y-max"], opt["n-max"]);
        else if (command == "pell")
            result = cmd_pell(opt["d"], opt["powers"]);
        else if (command == "cf")
            result = cmd_cf(opt["d"], opt["convergents"]);
        else if (command == "classgroup")
            result = cmd_classgroup(opt["p"]);
        else if (command == "jacobi")
            result = cmd_jacobi(opt["a"], opt["n"]);
        else
            throw UsageError("unknown subcommand");
    } catch (UsageError const & e) {
        err << "dioph " << command << ": " << e.what() << '\n';
        return kExitUsage;
    } catch (std::invalid_argument const & e) {
        err << "dioph " << command << ": precondition failed: " << e.what() << '\n';
        return kExitUsage;
    }
    double const elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (format == "plain") {
        out << result.plain;
        if (result.violation)
            out << "VIOLATION: result contradicts the expected solution set\n";
    } else {
        out << make_run_report(command, result.parameters, result.payload, elapsed).dump(2) << '\n';
    }
    return result.violation ? kExitViolation : kExitOk;
}

} // namespace dioph
