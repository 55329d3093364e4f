#include <doctest.h>

#include <cmath>
#include <thread>

#include "support.hpp"
#include "umbra/errors.hpp"
#include "umbra/log_algebra.hpp"
#include "umbra/numbers.hpp"
#include "umbra/sequences.hpp"

using namespace umbra;
using namespace umbra::testing;

namespace {

using Lambda = HarmonicLogSeries;

DeltaOperator op(const std::string& name, int order, const Rat& b = Rat(1)) { return catalog_delta(name, {{"b", b}}, order); }

// Plain series in u = 1/x: coefficient k multiplies x^(-k).
using InvSeries = std::vector<Rat>;

InvSeries inv_mul(const InvSeries& a, const InvSeries& b) {
    InvSeries c(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; i + j < a.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
}

// 1/(x + r) = u / (1 + r u).
InvSeries inv_linear(const Rat& r, std::size_t len) {
    InvSeries c(len);
    Rat p(1);
    for (std::size_t k = 1; k < len; ++k, p *= -r) c[k] = p;
    return c;
}

// Window of the expansion in x^(-k), k = 1 .. len-1, as an order-(1) series.
Lambda to_window(const InvSeries& c, int floor) {
    std::map<int, Rat> m;
    for (std::size_t k = 1; k < c.size(); ++k) m[-static_cast<int>(k)] = c[k];
    return Lambda(1, m, floor, -1);
}

// d/dx of x^n sum c_i (log x)^i, as the map for x^(n-1).
std::map<int, Rat> differentiate(int n, const std::map<int, Rat>& m) {
    std::map<int, Rat> out;
    for (const auto& [i, c] : m) {
        out[i] += Rat(n) * c;
        if (i > 0) out[i - 1] += Rat(i) * c;
    }
    std::erase_if(out, [](const auto& kv) { return kv.second.is_zero(); });
    return out;
}

Lambda random_window(int t, int floor, int top) {
    std::map<int, Rat> m;
    for (int j = floor; j <= top; ++j) m[j] = random_rat();
    return Lambda(t, m, floor, top);
}

}  // namespace

TEST_CASE("harmonic logarithm examples") {
    CHECK(harmonic_log(2, 1) == std::map<int, Rat>{{0, Rat(-3, 2)}, {1, Rat(1)}});
    CHECK(harmonic_log(-3, 1) == std::map<int, Rat>{{0, Rat(1)}});
    CHECK(harmonic_log(0, 1) == std::map<int, Rat>{{1, Rat(1)}});
    CHECK(harmonic_log(4, 0) == std::map<int, Rat>{{0, Rat(1)}});
    CHECK(harmonic_log(-2, 0).empty());
    for (int n = 0; n <= 8; ++n) {
        Rat h;
        for (int i = 1; i <= n; ++i) h += Rat(1, i);
        auto expected = std::map<int, Rat>{{1, Rat(1)}};
        if (!h.is_zero()) expected[0] = -h;
        CHECK(harmonic_log(n, 1) == expected);
    }
}

TEST_CASE("property: harmonic logarithms differentiate like powers with roman numbers") {
    for (int t = 0; t <= 3; ++t)
        for (int n = -5; n <= 5; ++n) {
            auto lhs = differentiate(n, harmonic_log(n, t));
            auto rhs = harmonic_log(n - 1, t);
            for (auto& [i, c] : rhs) c *= Rat(roman_number(n));
            CHECK(lhs == rhs);
        }
}

TEST_CASE("series construction invariants") {
    const Lambda p(0, {{-2, Rat(5)}, {1, Rat(2)}, {3, Rat(0)}}, Lambda::exact, 3);
    CHECK(p.terms().size() == 1);
    CHECK(p.top() == 1);
    CHECK(Lambda::monomial(-1, 0).is_zero());
    const Lambda w(1, {{-4, Rat(1)}, {-2, Rat(3)}}, -3, -1);
    CHECK(w.terms().size() == 1);
    CHECK(w.top() == -2);
    CHECK_THROWS_AS(w.coeff(-4), precondition_error);
    CHECK(w.coeff(-3) == Rat(0));
    CHECK(Lambda::from_polynomial(Polynomial({Rat(1), Rat(2)})).to_polynomial() == Polynomial({Rat(1), Rat(2)}));
}

TEST_CASE("apply_operator examples") {
    const auto d = catalog("derivative", {}, 4);
    // A truncated operator leaves a finite window even on an exact input.
    const auto dl = apply_operator(d, Lambda::monomial(0, 1));
    CHECK(dl.floor() == -3);
    CHECK(agree(dl, Lambda::monomial(-1, 1)));
    CHECK(apply_derivative_power(1, Lambda::monomial(0, 1)) == Lambda::monomial(-1, 1));
    const ShiftInvariantOperator dinv(TruncatedSeries::monomial(Rat(1), -1, 4));
    CHECK(agree(apply_operator(dinv, Lambda::monomial(-1, 1)), Lambda::monomial(0, 1)));
    CHECK(apply_derivative_power(-1, Lambda::monomial(-1, 1)) == Lambda::monomial(0, 1));
    for (const Rat& a : {Rat(1), Rat(1, 2), Rat(-3)}) {
        const auto s = apply_operator(catalog("shift", {{"a", a}}, 12), Lambda::monomial(-1, 1));
        CHECK(s.floor() == -12);
        CHECK(s.top() == -1);
        CHECK(agree(s, to_window(inv_linear(a, 13), -12)));
    }
    const auto pd = apply_operator(catalog("forward_difference", {}, 5), Lambda::monomial(3, 1));
    CHECK(pd.top() == 2);
    CHECK(pd.floor() == -1);
    CHECK_THROWS_AS(apply_operator(dinv, Lambda::monomial(2, 0)), precondition_error);
}

TEST_CASE("property: D and its inverse undo each other") {
    for (int t = 1; t <= 2; ++t)
        for (int trial = 0; trial < 10; ++trial) {
            const auto s = random_window(t, -6 + trial % 3, 4);
            for (int k : {1, 2, 3}) {
                CHECK(agree(apply_derivative_power(-k, apply_derivative_power(k, s)), s));
                CHECK(agree(apply_derivative_power(k, apply_derivative_power(-k, s)), s));
            }
            const auto ex = Lambda(t, {{-3, Rat(2)}, {0, Rat(1)}, {5, Rat(-1, 7)}}, Lambda::exact, 5);
            CHECK(apply_derivative_power(-1, apply_derivative_power(1, ex)) == ex);
        }
}

TEST_CASE("roman shift examples and commutators") {
    CHECK(roman_shift(Lambda::monomial(3, 1)) == Lambda::monomial(4, 1));
    CHECK(roman_shift(Lambda::monomial(-1, 1)).is_zero());
    CHECK(roman_shift(Lambda::monomial(2, 0)) == Lambda::monomial(3, 0));
    for (int t = 0; t <= 2; ++t)
        for (int n = -6; n <= 6; ++n) {
            const auto s = Lambda::monomial(n, t);
            for (int k = 1; k <= 5; ++k) {
                const auto lhs = sub(apply_derivative_power(k, roman_shift(s)), roman_shift(apply_derivative_power(k, s)));
                CHECK(lhs == scale(apply_derivative_power(k - 1, s), Rat(k)));
            }
        }
}

TEST_CASE("augmentation") {
    CHECK(augmentation(Lambda::monomial(0, 1), 1) == Rat(1));
    CHECK(augmentation(Lambda::monomial(5, 1), 1) == Rat(0));
    CHECK(augmentation(Lambda::monomial(0, 2), 1) == Rat(0));
    CHECK_THROWS_WITH_AS(augmentation(Lambda::monomial(3, 1).restricted(1), 1), "augmentation outside window",
                         precondition_error);
}

TEST_CASE("skip") {
    const auto s = random_window(1, -5, 3);
    const auto s2 = skip(s, 2);
    CHECK(s2.order_t() == 2);
    CHECK(s2.terms() == s.terms());
    CHECK(skip(s2, 1) == s);
    for (int n = 0; n <= 5; ++n) CHECK(skip(log_lower_factorial(n, n + 3), 0).to_polynomial() == generate_transfer(op("forward_difference", 8), 5)[n]);
}

TEST_CASE("property: skip commutes with operators") {
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_window(1, -8, 2);
        const ShiftInvariantOperator t(random_series(-1, 8));
        CHECK(skip(apply_operator(t, s), 2) == apply_operator(t, skip(s, 2)));
        CHECK(skip(apply_operator(t, skip(s, 3)), 1) == apply_operator(t, s));
    }
}

TEST_CASE("property: logarithmic binomial theorem") {
    const int depth = 12;
    for (int n = -5; n <= -1; ++n)
        for (const Rat& a : {Rat(1), Rat(1, 2)}) {
            const auto lhs = apply_operator(catalog("shift", {{"a", a}}, depth), Lambda::monomial(n, 1));
            std::map<int, Rat> m;
            for (int k = 0; k < depth; ++k) m[n - k] = binomial(Rat(n), k) * a.pow(k);
            const Lambda rhs(1, m, n - depth + 1, n);
            CHECK(lhs == rhs);
            for (int k = 0; k < depth; ++k) CHECK(roman_coefficient(n, k) == binomial(Rat(n), k));
        }
}

TEST_CASE("property: logarithmic taylor formula") {
    for (int trial = 0; trial < 10; ++trial) {
        const auto s = random_window(1, -7, 4);
        std::map<int, Rat> m;
        for (int k = s.floor(); k <= s.top(); ++k)
            m[k] = augmentation(apply_derivative_power(k, s), 1) / roman_factorial(k);
        CHECK(Lambda(1, m, s.floor(), s.top()) == s);
    }
}

TEST_CASE("residual terms") {
    const int depth = 12;
    const auto d = residual_term(op("derivative", depth + 2), depth);
    CHECK(d == Lambda(1, {{-1, Rat(1)}}, -depth, -1));
    const auto r = residual_term(op("forward_difference", depth + 2), depth);
    CHECK(r.floor() == -depth);
    CHECK(r.top() == -1);
    CHECK(r == to_window(inv_linear(Rat(1), depth + 1), -depth));
    for (const Rat& b : {Rat(1), Rat(-1), Rat(1, 2)}) {
        // x (x+b)^(-2) = x * (1/(x+b))^2
        const InvSeries g = inv_linear(b, depth + 2);
        const InvSeries sq = inv_mul(g, g);
        InvSeries shifted(depth + 1);
        for (std::size_t k = 1; k < shifted.size(); ++k) shifted[k] = sq[k + 1];
        CHECK(residual_term(op("abel", depth + 2, b), depth) == to_window(shifted, -depth));
    }
}

TEST_CASE("logarithmic sequences") {
    const int depth = 12;
    // (x)_{-2} = 1/((x+1)(x+2))
    const auto lf2 = log_sequence(op("forward_difference", depth + 1), -2, depth);
    CHECK(lf2.top() == -2);
    CHECK(lf2.floor() == -2 - depth + 1);
    const InvSeries prod = inv_mul(inv_linear(Rat(1), depth + 2), inv_linear(Rat(2), depth + 2));
    CHECK(agree(lf2, to_window(prod, -depth - 1)));

    for (const Rat& b : {Rat(1), Rat(2), Rat(-1, 3)}) {
        const auto a0 = log_sequence(op("abel", depth + 1, b), 0, depth);
        CHECK(a0 == Lambda(1, {{0, Rat(1)}, {-1, b}}, -depth + 1, 0));
    }
    const auto l0 = log_sequence(op("laguerre", depth + 1), 0, depth);
    CHECK(l0.coeff(0) == Rat(1));
    for (int k = 1; k < depth; ++k) CHECK(l0.coeff(-k) == Rat(k % 2 == 1 ? 1 : -1) * factorial_rat(k - 1));
    CHECK(l0.coeff(-1) == Rat(1));
    CHECK(l0.coeff(-2) == Rat(-1));
    CHECK(l0.coeff(-3) == Rat(2));
    CHECK(l0.coeff(-4) == Rat(-6));
}

TEST_CASE("property: logarithmic sequence invariants") {
    const int depth = 10;
    for (const std::string name : {"derivative", "forward_difference", "backward_difference", "abel", "laguerre"}) {
        const auto f = op(name, depth + 2, Rat(1, 2));
        const auto poly = generate_transfer(op(name, depth + 2, Rat(1, 2)), 6);
        for (int n = -6; n <= 6; ++n) {
            const auto p = log_sequence(f, n, depth);
            if (p.floor() <= 0 && p.top() >= 0) CHECK(augmentation(p, 1) == Rat(n == 0 ? 1 : 0));
            const auto prev = log_sequence(f, n - 1, depth);
            CHECK(agree(apply_operator(f, p), scale(prev, Rat(roman_number(n)))));
            if (n >= 0) CHECK(skip(log_sequence(f, n, n + 2), 0).to_polynomial() == poly[n]);
        }
    }
}

TEST_CASE("log binomial sequence cache under concurrent reads") {
    const LogBinomialSequence seq(op("abel", 14, Rat(1, 2)), 12);
    CHECK(seq.residual() == residual_term(seq.op(), 12));
    std::vector<Lambda> serial;
    for (int n = -6; n <= 6; ++n) serial.push_back(log_sequence(seq.op(), n, 12));
    std::vector<std::thread> pool;
    std::vector<int> mismatches(6, 0);
    for (int i = 0; i < 6; ++i)
        pool.emplace_back([&, i] {
            for (int rep = 0; rep < 3; ++rep)
                for (int j = 0; j < 13; ++j) {
                    const int idx = (j + i) % 13;
                    if (!(seq.term(idx - 6) == serial[static_cast<std::size_t>(idx)])) ++mismatches[static_cast<std::size_t>(i)];
                }
        });
    for (auto& t : pool) t.join();
    for (int m : mismatches) CHECK(m == 0);
}

TEST_CASE("logarithmic lower factorial") {
    const int depth = 12;
    CHECK(log_lower_factorial(-1, depth) == to_window(inv_linear(Rat(1), depth + 1), -depth));
    const auto p1 = log_lower_factorial(1, depth);
    CHECK(p1 == log_lower_factorial_bernoulli(1, depth));
    CHECK(p1.coeff(1) == Rat(1));
    // E^1 sum_k B_{k,2} [1|k] lambda_{1-k}: the lambda_0 entry is B_{1,2} + 1.
    CHECK(p1.coeff(0) == bernoulli_higher(1, 2) + Rat(1));
    const auto p0 = log_lower_factorial(0, depth);
    const auto dp0 = apply_operator(catalog("forward_difference", {}, depth + 1), p0);
    CHECK(agree(dp0, log_lower_factorial(-1, depth)));
    CHECK(dp0.top() == -1);
    for (int n = 0; n <= 6; ++n) CHECK_NOTHROW(log_lower_factorial(n, depth));
}

TEST_CASE("logarithmic conjugate sequences") {
    const int depth = 12;
    const auto phi = log_conjugate_sequence(op("forward_difference", depth + 2), -1, depth);
    for (int k = 0; k < depth; ++k) CHECK(phi.coeff(-1 - k) == factorial_rat(k));
    for (int n = -3; n <= 3; ++n)
        CHECK(agree(log_conjugate_sequence(op("derivative", depth + 2), n, depth), Lambda::monomial(n, 1)));
    const Rat b(2, 5);
    const auto mu = log_conjugate_sequence(op("abel", depth + 2, b), 2, depth);
    for (int k = 0; k <= 2; ++k) CHECK(mu.coeff(k) == choose(2, k) * (b * Rat(k)).pow(2 - k));
}

TEST_CASE("golden identity") {
    // 1/x = sum_{m >= 1} (m-1)! / ((x+1)...(x+m)), checked independently on
    // twelve inverse powers before comparing with the library expansion.
    const int depth = 12;
    const std::size_t len = depth + 1;
    InvSeries sum(len);
    InvSeries prod(len);
    prod[0] = Rat(1);
    for (int m = 1; m <= depth; ++m) {
        prod = inv_mul(prod, inv_linear(Rat(m), len));
        for (std::size_t k = 0; k < len; ++k) sum[k] += factorial_rat(m - 1) * prod[k];
    }
    for (std::size_t k = 0; k < len; ++k) CHECK(sum[k] == Rat(k == 1 ? 1 : 0));

    const auto s = Lambda::monomial(-1, 1).restricted(-depth);
    const auto w = newton_expand(s);
    for (int n = -depth; n <= -1; ++n) CHECK(w.at(n) == factorial_rat(-n - 1));
    const auto back = newton_resum(w, -depth);
    CHECK(back.floor() == -depth);
    CHECK(agree(back, s));
    for (int m = 1; m <= 6; ++m) {
        InvSeries q(len);
        q[0] = Rat(1);
        for (int i = 1; i <= m; ++i) q = inv_mul(q, inv_linear(Rat(i), len));
        CHECK(agree(log_lower_factorial(-m, depth), to_window(q, -depth)));
    }
}

TEST_CASE("newton expansion examples") {
    const auto w = newton_expand(log_lower_factorial(-2, 10));
    CHECK(w.at(-2) == Rat(1));
    for (int n = w.floor; n <= w.top; ++n)
        if (n != -2) CHECK(w.at(n) == Rat(0));
    const auto z = newton_expand(Lambda::monomial(0, 1).restricted(-8));
    CHECK(z.at(0) == Rat(1));
}

TEST_CASE("numeric evaluation") {
    CHECK(evaluate_numeric(Lambda::monomial(0, 1), Rat(1)).value == doctest::Approx(0.0));
    const auto r = evaluate_numeric(residual_term(op("forward_difference", 32), 30), Rat(3));
    CHECK(std::abs(r.value - 0.25) < 1e-9);
    REQUIRE(r.tail_bound.has_value());
    CHECK(*r.tail_bound < 1e-9);
    CHECK(*r.tail_bound >= std::abs(r.value - 0.25));
    const auto l = evaluate_numeric(Lambda::monomial(2, 1), Rat(2), 40);
    CHECK(l.value == doctest::Approx(4.0 * (std::log(2.0) - 1.5)));
    CHECK(l.decimal.size() > 30);
    CHECK_THROWS_AS(evaluate_numeric(Lambda::monomial(0, 1), Rat(0)), precondition_error);
}
