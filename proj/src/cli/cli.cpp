#include "umbra/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "umbra/errors.hpp"
#include "umbra/expr.hpp"
#include "umbra/log_algebra.hpp"
#include "umbra/sequences.hpp"
#include "umbra/verify.hpp"

namespace umbra::cli {

namespace {

using json = nlohmann::ordered_json;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string op;
    std::string op2;
    std::optional<int> n;
    std::string range;
    std::optional<int> order;
    std::optional<int> depth;
    std::vector<std::string> params;
    std::string format;
    std::string config;
    int threads = 1;
    std::string suite;
    std::optional<int> corrupt;
    std::string method = "transfer";
    std::string at = "1";
    int digits = 30;
};

struct Settings {
    int order = 16;
    int depth = 12;
    std::string format = "json";
    ParamMap params;
};

int parse_int(const std::string& text, const std::string& what) {
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) throw usage_error(what + ": not an integer: '" + text + "'");
    return v;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Precedence: command-line flag, then --config file, then UMBRA_ORDER, then defaults.
Settings resolve(const Options& o) {
    Settings s;
    if (const char* env = std::getenv("UMBRA_ORDER"); env && *env) s.order = parse_int(env, "UMBRA_ORDER");
    if (!o.config.empty()) {
        std::ifstream in(o.config);
        if (!in) throw usage_error("cannot read config file '" + o.config + "'");
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::string t = trim(line.substr(0, line.find('#')));
            if (t.empty()) continue;
            const auto eq = t.find('=');
            if (eq == std::string::npos) throw usage_error(o.config + ":" + std::to_string(lineno) + ": expected key=value");
            const std::string key = trim(t.substr(0, eq));
            std::string value = trim(t.substr(eq + 1));
            if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
            if (key == "order") s.order = parse_int(value, "config order");
            else if (key == "depth") s.depth = parse_int(value, "config depth");
            else if (key == "format") s.format = value;
            else throw usage_error(o.config + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (o.order) s.order = *o.order;
    if (o.depth) s.depth = *o.depth;
    if (!o.format.empty()) s.format = o.format;
    if (s.format != "json" && s.format != "csv" && s.format != "latex" && s.format != "plain")
        throw usage_error("unknown format '" + s.format + "'");
    if (s.order < 2) throw precondition_error("working order must be at least 2");
    if (s.depth < 1) throw precondition_error("depth must be positive");
    for (const std::string& p : o.params) {
        const auto eq = p.find('=');
        if (eq == std::string::npos || eq == 0) throw usage_error("--param expects name=value, got '" + p + "'");
        try {
            s.params[trim(p.substr(0, eq))] = Rat::parse(trim(p.substr(eq + 1)));
        } catch (const std::invalid_argument&) {
            throw usage_error("--param " + p + ": value must be a rational p or p/q");
        }
    }
    return s;
}

std::pair<int, int> parse_range(const Options& o, int lo, int hi) {
    if (!o.range.empty()) {
        const auto dots = o.range.find("..");
        if (dots == std::string::npos) throw usage_error("--range expects a..b");
        const int a = parse_int(o.range.substr(0, dots), "--range");
        const int b = parse_int(o.range.substr(dots + 2), "--range");
        if (b < a) throw usage_error("--range is empty");
        return {a, b};
    }
    if (o.n) return {*o.n, *o.n};
    return {lo, hi};
}

void parallel_for(int count, int threads, const std::function<void(int)>& fn) {
    threads = std::clamp(threads, 1, std::max(count, 1));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < count; i += threads) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

json coeff_map(const std::map<int, Rat>& m) {
    json j = json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v.str();
    return j;
}

json coeff_list(const std::vector<Rat>& v, int start = 0) {
    json j = json::object();
    for (std::size_t i = 0; i < v.size(); ++i) j[std::to_string(static_cast<int>(i) + start)] = v[i].str();
    return j;
}

std::map<int, Rat> poly_map(const Polynomial& p) {
    std::map<int, Rat> m;
    for (int k = 0; k <= p.degree(); ++k)
        if (!p.coeff(k).is_zero()) m.emplace(k, p.coeff(k));
    return m;
}

json header(const std::string& command, const Settings& s) {
    json j;
    j["command"] = command;
    j["order"] = s.order;
    return j;
}

Expr parse_op(const std::string& text, const Settings& s, const std::string& flag) {
    if (text.empty()) throw usage_error(flag + " is required");
    return parse_operator(text, s.params);
}

// ---- commands ---------------------------------------------------------------

json cmd_seq(const Options& o, const Settings& s) {
    const Expr e = parse_op(o.op, s, "--op");
    const auto [lo, hi] = parse_range(o, 0, 12);
    if (lo < 0) throw precondition_error("polynomial sequences start at n = 0");
    const int order = std::max(s.order, hi + 2);
    const TruncatedSeries series = elaborate(e, s.params, order);
    const DeltaOperator f(series, to_string(e));
    std::optional<BinomialSequence> seq;
    if (o.method == "transfer") seq.emplace(generate_transfer(f, hi));
    else if (o.method == "recurrence") seq.emplace(generate_recurrence(f, hi));
    else if (o.method == "conjugate") seq.emplace(conjugate_sequence(f, hi));
    else throw usage_error("unknown --method '" + o.method + "'");
    json j = header("seq", s);
    j["op"] = to_string(e);
    j["method"] = o.method;
    json rows = json::array();
    for (int n = lo; n <= hi; ++n)
        rows.push_back({{"n", n}, {"coeffs", coeff_map(poly_map((*seq)[n]))}, {"basis", "x^k"}});
    j["results"] = std::move(rows);
    return j;
}

json log_entry(int n, const HarmonicLogSeries& p) {
    return {{"n", n},
            {"coeffs", coeff_map(p.terms())},
            {"basis", "lambda_k^(" + std::to_string(p.order_t()) + ")"},
            {"floor", p.floor()},
            {"top", p.top()},
            {"order_t", p.order_t()}};
}

json cmd_logseq(const Options& o, const Settings& s) {
    const Expr e = parse_op(o.op, s, "--op");
    const auto [lo, hi] = parse_range(o, -3, 3);
    const DeltaOperator f(elaborate(e, s.params, std::max(s.order, s.depth + 1)), to_string(e));
    const LogBinomialSequence seq(f, s.depth);
    std::vector<json> rows(static_cast<std::size_t>(hi - lo + 1));
    parallel_for(hi - lo + 1, o.threads, [&](int i) { rows[static_cast<std::size_t>(i)] = log_entry(lo + i, seq.term(lo + i)); });
    json j = header("logseq", s);
    j["op"] = to_string(e);
    j["depth"] = s.depth;
    j["results"] = rows;
    return j;
}

json cmd_expand(const Options& o, const Settings& s) {
    const Expr t = parse_op(o.op, s, "--op");
    const Expr q = parse_operator(o.op2.empty() ? "D" : o.op2, s.params);
    const ShiftInvariantOperator top(elaborate(t, s.params, s.order), to_string(t));
    const DeltaOperator qop(elaborate(q, s.params, s.order), to_string(q));
    json j = header("expand", s);
    j["op"] = to_string(t);
    j["basis_op"] = to_string(q);
    j["results"] = json::array({{{"coeffs", coeff_list(expand_in_basis(top, qop, s.order))}, {"basis", "Q^k/k!"}}});
    return j;
}

json cmd_invert(const Options& o, const Settings& s, bool& failed) {
    const Expr e = parse_op(o.op, s, "--op");
    const DeltaOperator f(elaborate(e, s.params, s.order), to_string(e));
    const TruncatedSeries lag = lagrange_inversion(f, TruncatedSeries::variable(s.order), s.order - 1);
    const TruncatedSeries newton = compositional_inverse(f.series());
    const bool match = agree(lag, newton);
    failed = !match;
    std::map<int, Rat> m;
    for (int k = lag.valuation(); k < lag.order(); ++k)
        if (!lag.coeff(k).is_zero()) m.emplace(k, lag.coeff(k));
    json j = header("invert", s);
    j["op"] = to_string(e);
    j["results"] = json::array({{{"coeffs", coeff_map(m)}, {"basis", "t^k"}}});
    j["check"] = match ? "match" : "mismatch";
    return j;
}

json cmd_connect(const Options& o, const Settings& s) {
    const Expr g = parse_op(o.op, s, "--op");
    const Expr h = parse_op(o.op2, s, "--op2");
    const int n_max = o.n.value_or(12);
    if (n_max < 0) throw precondition_error("--n must be nonnegative");
    const int order = std::max(s.order, n_max + 2);
    const DeltaOperator gop(elaborate(g, s.params, order), to_string(g));
    const DeltaOperator hop(elaborate(h, s.params, order), to_string(h));
    const ConnectionMatrix c = connection_constants(gop, hop, n_max);
    json j = header("connect", s);
    j["op"] = to_string(g);
    j["op2"] = to_string(h);
    json rows = json::array();
    for (int n = 0; n < c.size(); ++n)
        rows.push_back({{"n", n}, {"coeffs", coeff_list(c.rows[static_cast<std::size_t>(n)])}, {"basis", "p_k"}});
    j["results"] = std::move(rows);
    return j;
}

json cmd_verify(const Options& o, const Settings& s, bool& failed) {
    if (o.suite.empty()) throw usage_error("--suite is required");
    SuiteOptions so;
    so.n = o.n.value_or(o.suite == "vandermonde" || o.suite == "connection_upper_lower" ? 10 : 8);
    so.order = s.order;
    so.depth = s.depth;
    so.params = s.params;
    so.corrupt = o.corrupt;
    if (!o.op.empty()) {
        const Expr e = parse_operator(o.op, s.params);
        so.op_text = to_string(e);
        so.op = elaborate(e, s.params, std::max(s.order, so.n + 2));
    }
    const SuiteReport r = run_suite(o.suite, so);
    failed = !r.passed();
    json j = header("verify", s);
    j["suite"] = r.suite;
    j["identity"] = r.identity;
    j["status"] = r.passed() ? "pass" : "fail";
    json checks = json::array();
    for (const auto& c : r.checks)
        checks.push_back({{"label", c.label}, {"status", c.passed ? "pass" : "fail"}, {"detail", c.detail}});
    j["checks"] = std::move(checks);
    return j;
}

json cmd_eval(const Options& o, const Settings& s) {
    const Expr e = parse_op(o.op, s, "--op");
    Rat x0;
    try {
        x0 = Rat::parse(o.at);
    } catch (const std::invalid_argument&) {
        throw usage_error("--at expects a rational");
    }
    const auto [lo, hi] = parse_range(o, -1, -1);
    const DeltaOperator f(elaborate(e, s.params, std::max(s.order, s.depth + 1)), to_string(e));
    std::vector<json> rows(static_cast<std::size_t>(hi - lo + 1));
    parallel_for(hi - lo + 1, o.threads, [&](int i) {
        const int n = lo + i;
        const HarmonicLogSeries p = log_sequence(f, n, s.depth);
        const NumericValue v = evaluate_numeric(p, x0, o.digits);
        json row{{"n", n}, {"x0", x0.str()}, {"value", v.decimal}, {"floor", p.floor()}, {"top", p.top()}};
        if (v.tail_bound) {
            std::ostringstream os;
            os.precision(3);
            os << std::scientific << *v.tail_bound;
            row["tail_bound"] = os.str();
        } else {
            row["tail_bound"] = nullptr;
        }
        rows[static_cast<std::size_t>(i)] = std::move(row);
    });
    json j = header("eval", s);
    j["op"] = to_string(e);
    j["depth"] = s.depth;
    j["digits"] = o.digits;
    j["results"] = rows;
    return j;
}

// ---- rendering --------------------------------------------------------------

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string basis_term(const std::string& basis, int k, bool latex) {
    if (basis == "x^k") {
        if (k == 0) return "";
        if (k == 1) return "x";
        return latex ? "x^{" + std::to_string(k) + "}" : "x^" + std::to_string(k);
    }
    const std::string t = basis.substr(basis.find('^') + 1);  // "(1)"
    return latex ? "\\lambda_{" + std::to_string(k) + "}^{" + t + "}" : "lambda_" + std::to_string(k) + "^" + t;
}

std::string render_combination(const json& coeffs, const std::string& basis, bool latex) {
    std::vector<std::pair<int, Rat>> terms;
    for (const auto& [k, v] : coeffs.items()) terms.emplace_back(std::stoi(k), Rat::parse(v.get<std::string>()));
    std::sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::string out;
    for (const auto& [k, c] : terms) {
        const bool negative = c.sign() < 0;
        out += out.empty() ? (negative ? "-" : "") : (negative ? " - " : " + ");
        const Rat a = negative ? -c : c;
        const std::string b = basis_term(basis, k, latex);
        const std::string num = latex ? a.latex() : a.str();
        if (b.empty()) out += num;
        else if (a == Rat(1)) out += b;
        else out += latex ? num + " " + b : num + "*" + b;
    }
    return out.empty() ? "0" : out;
}

bool is_combination(const std::string& basis) { return basis == "x^k" || basis.rfind("lambda", 0) == 0; }

void render_csv(const json& j, std::ostream& out) {
    if (j.contains("checks")) {
        out << "label,status,detail\n";
        for (const auto& c : j["checks"])
            out << csv_quote(c["label"].get<std::string>()) << "," << c["status"].get<std::string>() << ","
                << csv_quote(c["detail"].get<std::string>()) << "\n";
        return;
    }
    if (j["command"] == "eval") {
        out << "n,x0,value,tail_bound\n";
        for (const auto& r : j["results"])
            out << r["n"].get<int>() << "," << r["x0"].get<std::string>() << "," << r["value"].get<std::string>() << ","
                << (r["tail_bound"].is_null() ? std::string{} : r["tail_bound"].get<std::string>()) << "\n";
        return;
    }
    out << "n,degree,coefficient\n";
    for (const auto& r : j["results"]) {
        const std::string n = r.contains("n") ? std::to_string(r["n"].get<int>()) : std::string{};
        for (const auto& [k, v] : r["coeffs"].items()) out << n << "," << k << "," << v.get<std::string>() << "\n";
    }
}

void render_text(const json& j, std::ostream& out, bool latex) {
    if (j.contains("checks")) {
        out << (latex ? "\\text{" : "") << j["suite"].get<std::string>() << ": " << j["status"].get<std::string>()
            << (latex ? "}" : "") << "\n";
        for (const auto& c : j["checks"]) {
            const std::string status = c["status"] == "pass" ? "PASS" : "FAIL";
            if (latex) out << "\\text{" << status << " " << c["label"].get<std::string>() << "}\\\\\n";
            else out << status << " " << c["label"].get<std::string>() << ": " << c["detail"].get<std::string>() << "\n";
        }
        return;
    }
    if (j["command"] == "eval") {
        for (const auto& r : j["results"]) {
            const int n = r["n"].get<int>();
            if (latex) out << "p_{" << n << "}^{(1)}(" << r["x0"].get<std::string>() << ") \\approx " << r["value"].get<std::string>() << "\\\\\n";
            else out << "n=" << n << ": " << r["value"].get<std::string>()
                     << (r["tail_bound"].is_null() ? std::string{} : " +- " + r["tail_bound"].get<std::string>()) << "\n";
        }
        return;
    }
    if (j.contains("check")) out << "check: " << j["check"].get<std::string>() << "\n";
    for (const auto& r : j["results"]) {
        const std::string basis = r["basis"].get<std::string>();
        if (is_combination(basis)) {
            std::string body = render_combination(r["coeffs"], basis, latex);
            if (r.contains("floor")) {
                const int f = r["floor"].get<int>();
                if (f > HarmonicLogSeries::exact)
                    body += latex ? " + O(\\lambda_{" + std::to_string(f - 1) + "})" : " + O(lambda_" + std::to_string(f - 1) + ")";
            }
            const int n = r["n"].get<int>();
            const std::string sup = basis == "x^k" ? "" : "^{(1)}";
            if (latex) out << "p_{" << n << "}" << sup << "(x) = " << body << "\\\\\n";
            else out << "n=" << n << ": " << body << "\n";
            continue;
        }
        const std::string prefix = r.contains("n") ? "n=" + std::to_string(r["n"].get<int>()) + " " : std::string{};
        for (const auto& [k, v] : r["coeffs"].items()) {
            const Rat c = Rat::parse(v.get<std::string>());
            if (latex) out << "c_{" << (r.contains("n") ? std::to_string(r["n"].get<int>()) + "," : std::string{}) << k << "} = " << c.latex() << "\\\\\n";
            else out << prefix << "k=" << k << ": " << c.str() << "\n";
        }
    }
}

void render(const json& j, const std::string& format, std::ostream& out) {
    if (format == "json") out << j.dump(2) << "\n";
    else if (format == "csv") render_csv(j, out);
    else render_text(j, out, format == "latex");
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--op", o.op, "Operator expression in D");
    sub->add_option("--n", o.n, "Index, or the size N for verify/connect");
    sub->add_option("--range", o.range, "Index range a..b");
    sub->add_option("--order", o.order, "Working order (default 16)");
    sub->add_option("--depth", o.depth, "Harmonic-log window size (default 12)");
    sub->add_option("--param", o.params, "Parameter binding name=p/q (repeatable)");
    sub->add_option("--format", o.format, "json|csv|latex|plain (default json)");
    sub->add_option("--config", o.config, "key=value file with order, depth, format");
    sub->add_option("--threads", o.threads, "Worker threads for independent indices")->check(CLI::PositiveNumber);
}

constexpr const char* footer =
    "Exit codes: 0 success, 2 parse/usage error, 3 precondition violated, 4 verification failed.\n"
    "Parameters are exact rationals. An identity in a parameter is certified by checking it\n"
    "at more distinct rational values than its degree in that parameter.";

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact umbral calculus: delta operators, binomial sequences, harmonic logarithms", "umbra"};
    app.footer(footer);
    app.require_subcommand(1);
    Options o;
    auto* seq = app.add_subcommand("seq", "Polynomial sequence of binomial type for --op");
    auto* logseq = app.add_subcommand("logseq", "Logarithmic sequence windows for --op");
    auto* expand = app.add_subcommand("expand", "Expansion of --op in powers of the delta operator --op2");
    auto* invert = app.add_subcommand("invert", "Compositional inverse by Lagrange inversion, checked by Newton");
    auto* connect = app.add_subcommand("connect", "Connection constants: --op2's sequence in --op's basis");
    auto* verify = app.add_subcommand("verify", "Run a named identity suite");
    auto* eval = app.add_subcommand("eval", "Numeric value of logarithmic sequence terms at --at");
    for (auto* sub : {seq, logseq, expand, invert, connect, verify, eval}) add_common(sub, o);
    seq->add_option("--method", o.method, "transfer|recurrence|conjugate");
    expand->add_option("--op2", o.op2, "Delta operator basis (default D)");
    connect->add_option("--op2", o.op2, "Target delta operator");
    verify->add_option("--suite", o.suite, "abel|vandermonde|pincherle|logbinomial|connection_upper_lower|golden|abel_numeric|binomial");
    verify->add_option("--corrupt", o.corrupt, "binomial suite: perturb p_k (negative control)");
    eval->add_option("--at", o.at, "Evaluation point x0 > 0 (rational)");
    eval->add_option("--digits", o.digits, "Significant digits")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : parse_failure;
    }

    try {
        const Settings s = resolve(o);
        bool failed = false;
        json j;
        if (seq->parsed()) j = cmd_seq(o, s);
        else if (logseq->parsed()) j = cmd_logseq(o, s);
        else if (expand->parsed()) j = cmd_expand(o, s);
        else if (invert->parsed()) j = cmd_invert(o, s, failed);
        else if (connect->parsed()) j = cmd_connect(o, s);
        else if (verify->parsed()) j = cmd_verify(o, s, failed);
        else j = cmd_eval(o, s);
        if (!j.contains("status")) j["status"] = failed ? "fail" : "ok";
        render(j, s.format, out);
        return failed ? verification_failure : ok;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return parse_failure;
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        return parse_failure;
    } catch (const precondition_error& e) {
        err << "precondition violated: " << e.what() << "\n";
        return precondition;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return internal;
    }
}

}  // namespace umbra::cli
