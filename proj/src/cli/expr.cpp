#include "umbra/expr.hpp"

#include <algorithm>
#include <cctype>

#include "umbra/errors.hpp"

namespace umbra {

namespace {

const std::vector<std::string>& atom_expectation() {
    static const std::vector<std::string> v{"number", "D", "identifier", "(", "-"};
    return v;
}

bool is_catalog_ident(const std::string& s) {
    static const std::vector<std::string> names{"delta", "nabla",       "shift",       "abel",
                                                "laguerre", "weierstrass", "bernoulli_op"};
    return std::find(names.begin(), names.end(), s) != names.end();
}

bool is_function_ident(const std::string& s) { return s == "exp" || s == "log"; }

class Parser {
public:
    Parser(std::string_view text, const ParamMap& params) : text_(text), params_(params) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'", {"+", "-", "*", "/", "^", "end of input"});
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected, std::size_t at = npos) const {
        const std::size_t p = (at == npos ? pos_ : at) + 1;
        std::string msg = what + " at position " + std::to_string(p);
        if (!expected.empty()) {
            msg += "; expected one of:";
            for (const auto& e : expected) msg += " " + e;
        }
        throw parse_error(msg, p, std::move(expected));
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    std::string digits() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Expr expr() {
        Expr lhs = term();
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') return lhs;
            ++pos_;
            Expr rhs = term();
            lhs = Expr{c == '+' ? Expr::Kind::add : Expr::Kind::sub, {}, {}, 0, {std::move(lhs), std::move(rhs)}};
        }
    }

    Expr term() {
        Expr lhs = factor();
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '*' && c != '/') return lhs;
            ++pos_;
            Expr rhs = factor();
            lhs = Expr{c == '*' ? Expr::Kind::mul : Expr::Kind::div, {}, {}, 0, {std::move(lhs), std::move(rhs)}};
        }
    }

    Expr factor() {
        Expr base = atom();
        skip_ws();
        if (peek() != '^') return base;
        ++pos_;
        skip_ws();
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        const std::size_t start = pos_;
        const std::string d = digits();
        if (d.empty()) fail("missing exponent", {"integer"});
        if (d.size() > 6) fail("exponent too large", {"integer"}, start);
        const int e = std::stoi(d);
        return Expr{Expr::Kind::pow, {}, {}, negative ? -e : e, {std::move(base)}};
    }

    Expr atom() {
        skip_ws();
        if (at_end()) fail("unexpected end of input", atom_expectation());
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return number();
        if (c == '(') {
            ++pos_;
            Expr inner = expr();
            expect(')');
            return inner;
        }
        if (c == '-') {
            ++pos_;
            return Expr{Expr::Kind::neg, {}, {}, 0, {atom()}};
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
        fail("unexpected '" + std::string(1, c) + "'", atom_expectation());
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(at_end() ? "unexpected end of input" : "unexpected '" + std::string(1, peek()) + "'",
                              {std::string(1, c)});
        ++pos_;
    }

    Expr number() {
        std::string text = digits();
        if (peek() == '/' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            const std::size_t slash = pos_;
            ++pos_;
            const std::string den = digits();
            if (std::all_of(den.begin(), den.end(), [](char ch) { return ch == '0'; }))
                fail("zero denominator", {"nonzero integer"}, slash + 1);
            text += "/" + den;
        }
        return Expr{Expr::Kind::number, Rat::parse(text), {}, 0, {}};
    }

    Expr identifier() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        if (name == "D") return Expr{Expr::Kind::symbol_d, {}, {}, 0, {}};
        const bool callable = is_catalog_ident(name) || is_function_ident(name);
        if (!callable) {
            if (params_.count(name)) return Expr{Expr::Kind::ident, {}, name, 0, {}};
            fail("unknown identifier or unbound parameter '" + name + "'", {"identifier"}, start);
        }
        skip_ws();
        if (peek() != '(') {
            if (is_function_ident(name)) fail(name + " needs an argument", {"("});
            return Expr{Expr::Kind::ident, {}, name, 0, {}};
        }
        const std::size_t open = pos_;
        ++pos_;
        std::vector<Expr> args{expr()};
        skip_ws();
        while (peek() == ',') {
            ++pos_;
            args.push_back(expr());
            skip_ws();
        }
        expect(')');
        if (args.size() != 1) fail(name + " takes exactly one argument", {")"}, open);
        return Expr{Expr::Kind::call, {}, std::move(name), 0, std::move(args)};
    }

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::string_view text_;
    const ParamMap& params_;
    std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::add:
        case Expr::Kind::sub: return 1;
        case Expr::Kind::mul:
        case Expr::Kind::div: return 2;
        case Expr::Kind::pow: return 3;
        default: return 4;
    }
}

std::string wrap(const Expr& e, bool parens) {
    const std::string s = to_string(e);
    return parens ? "(" + s + ")" : s;
}

Rat lookup(const ParamMap& params, const std::string& key) {
    auto it = params.find(key);
    return it == params.end() ? Rat(1) : it->second;
}

Rat constant_value(const TruncatedSeries& s, const std::string& who) {
    if (s.is_zero()) return Rat(0);
    if (s.valuation() != 0) throw precondition_error(who + " expects a constant argument");
    for (int e = 1; e < s.order(); ++e)
        if (!s.coeff(e).is_zero()) throw precondition_error(who + " expects a constant argument");
    return s.coeff(0);
}

ShiftInvariantOperator named(const std::string& name, const ParamMap& params, int order) {
    if (name == "delta") return catalog("forward_difference", {}, order);
    if (name == "nabla") return catalog("backward_difference", {}, order);
    if (name == "shift") return catalog("shift", {{"a", lookup(params, "a")}}, order);
    if (name == "abel") return catalog("abel", {{"b", lookup(params, "b")}}, order);
    return catalog(name, {}, order);
}

TruncatedSeries eval(const Expr& e, const ParamMap& params, int order) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::number: return TruncatedSeries::constant(e.value, order);
        case K::symbol_d: return TruncatedSeries::variable(order);
        case K::ident:
            if (auto it = params.find(e.name); it != params.end() && !is_catalog_ident(e.name))
                return TruncatedSeries::constant(it->second, order);
            return named(e.name, params, order).series();
        case K::call: {
            const TruncatedSeries arg = eval(e.args[0], params, order);
            if (e.name == "exp") return exp_series(arg);
            if (e.name == "log") return log_series(arg);
            if (e.name == "shift") return catalog("shift", {{"a", constant_value(arg, "shift")}}, order).series();
            if (e.name == "abel") return catalog("abel", {{"b", constant_value(arg, "abel")}}, order).series();
            return compose(named(e.name, params, order).series(), arg);
        }
        case K::neg: return neg(eval(e.args[0], params, order));
        case K::add: return add(eval(e.args[0], params, order), eval(e.args[1], params, order));
        case K::sub: return sub(eval(e.args[0], params, order), eval(e.args[1], params, order));
        case K::mul: return mul(eval(e.args[0], params, order), eval(e.args[1], params, order));
        case K::div: return div(eval(e.args[0], params, order), eval(e.args[1], params, order));
        case K::pow: return int_pow(eval(e.args[0], params, order), e.exponent);
    }
    throw precondition_error("malformed expression");
}

}  // namespace

const std::vector<std::string>& expression_identifiers() {
    static const std::vector<std::string> v{"exp",      "log",         "delta",       "nabla", "shift",
                                            "abel",     "laguerre",    "weierstrass", "bernoulli_op"};
    return v;
}

Expr parse_operator(std::string_view text, const ParamMap& params) { return Parser(text, params).parse(); }

std::string to_string(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::number: return e.value.str();
        case K::symbol_d: return "D";
        case K::ident: return e.name;
        case K::call: return e.name + "(" + to_string(e.args[0]) + ")";
        case K::neg: return "-" + wrap(e.args[0], precedence(e.args[0]) < 4);
        case K::pow: return wrap(e.args[0], precedence(e.args[0]) < 4) + "^" + std::to_string(e.exponent);
        default: break;
    }
    const char* op = e.kind == K::add ? " + " : e.kind == K::sub ? " - " : e.kind == K::mul ? " * " : " / ";
    const int p = precedence(e);
    return wrap(e.args[0], precedence(e.args[0]) < p) + op + wrap(e.args[1], precedence(e.args[1]) <= p);
}

TruncatedSeries elaborate(const Expr& e, const ParamMap& params, int order) {
    if (order < 1) throw precondition_error("working order must be positive");
    int work = order;
    for (int attempt = 0; attempt < 8; ++attempt) {
        const TruncatedSeries s = eval(e, params, work);
        if (s.order() >= order) return truncate(s, order);
        work += order - s.order();
    }
    throw precondition_error("expression loses too much precision to reach order " + std::to_string(order));
}

TruncatedSeries operator_series(std::string_view text, const ParamMap& params, int order) {
    return elaborate(parse_operator(text, params), params, order);
}

}  // namespace umbra
