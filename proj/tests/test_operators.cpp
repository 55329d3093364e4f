#include <doctest.h>

#include "support.hpp"
#include "umbra/errors.hpp"
#include "umbra/numbers.hpp"
#include "umbra/operators.hpp"
#include "umbra/sequences.hpp"

using namespace umbra;
using namespace umbra::testing;

namespace {

const std::vector<std::string> delta_names{"derivative", "forward_difference", "backward_difference", "abel", "laguerre"};

ShiftInvariantOperator random_operator(int order) {
    return ShiftInvariantOperator(random_series(0, order));
}

// Newton's forward coefficients of a polynomial by repeated differencing,
// without going through any series code.
std::vector<Rat> forward_differences_at_zero(const Polynomial& p) {
    std::vector<Rat> values;
    for (int i = 0; i <= p.degree(); ++i) values.push_back(p(Rat(i)));
    std::vector<Rat> out;
    while (!values.empty()) {
        out.push_back(values.front());
        for (std::size_t i = 0; i + 1 < values.size(); ++i) values[i] = values[i + 1] - values[i];
        values.pop_back();
    }
    return out;
}

}  // namespace

TEST_CASE("apply_to_polynomial examples") {
    const auto delta = catalog("forward_difference", {}, 8);
    const Polynomial x2 = Polynomial::monomial(Rat(1), 2);
    CHECK(apply_to_polynomial(delta, x2) == Polynomial({Rat(1), Rat(2)}));

    const Rat a(3, 7);
    const Polynomial x3 = Polynomial::monomial(Rat(1), 3);
    const auto shift = catalog("shift", {{"a", a}}, 8);
    CHECK(apply_to_polynomial(shift, x3) == Polynomial({a.pow(3), Rat(3) * a * a, Rat(3) * a, Rat(1)}));

    CHECK(apply_to_polynomial(catalog("laguerre", {}, 8), x2) == Polynomial({Rat(-2), Rat(-2)}));
}

TEST_CASE("apply_to_polynomial errors") {
    const Polynomial x3 = Polynomial::monomial(Rat(1), 3);
    const ShiftInvariantOperator inv(TruncatedSeries::monomial(Rat(1), -1, 6));
    CHECK_THROWS_WITH_AS(apply_to_polynomial(inv, x3), "negative powers of D undefined on polynomials", precondition_error);
    CHECK_THROWS_WITH_AS(apply_to_polynomial(catalog("forward_difference", {}, 3), x3),
                         "truncation too small for exact action", precondition_error);
    CHECK_NOTHROW(apply_to_polynomial(catalog("forward_difference", {}, 4), x3));
}

TEST_CASE("property: shift invariance") {
    for (int trial = 0; trial < 20; ++trial) {
        const auto t = random_operator(1 + trial % 10);
        const Polynomial p = random_polynomial(trial % 7 > 5 ? 5 : trial % 7);
        if (p.degree() >= t.order()) continue;
        for (const Rat& a : {Rat(1), Rat(-2), Rat(1, 3)})
            CHECK(apply_to_polynomial(t, p.shifted(a)) == apply_to_polynomial(t, p).shifted(a));
    }
}

TEST_CASE("pincherle derivative examples") {
    for (int n = 1; n <= 5; ++n) {
        const auto d = pincherle_derivative(ShiftInvariantOperator(TruncatedSeries::monomial(Rat(1), n, 10)));
        CHECK(d.series() == TruncatedSeries::monomial(Rat(n), n - 1, 9));
    }
    const auto e = pincherle_derivative(catalog("forward_difference", {}, 10));
    for (int k = 0; k < 9; ++k) CHECK(e.series().coeff(k) == Rat(1) / factorial_rat(k));
    CHECK(pincherle_derivative(ShiftInvariantOperator(TruncatedSeries::constant(Rat(1), 5))).series().is_zero());
}

TEST_CASE("property: pincherle derivative is a derivation") {
    for (int trial = 0; trial < 25; ++trial) {
        const auto f = random_series(0, 10);
        const auto g = random_series(0, 10);
        const auto lhs = pincherle_derivative(ShiftInvariantOperator(mul(f, g))).series();
        const auto fp = pincherle_derivative(ShiftInvariantOperator(f)).series();
        const auto gp = pincherle_derivative(ShiftInvariantOperator(g)).series();
        CHECK(agree(lhs, add(mul(fp, g), mul(f, gp))));
    }
}

TEST_CASE("catalog examples") {
    const auto fd = catalog("forward_difference", {}, 12).series();
    CHECK(fd.valuation() == 1);
    for (int k = 1; k < 12; ++k) CHECK(fd.coeff(k) == Rat(1) / factorial_rat(k));
    const auto lag = catalog("laguerre", {}, 12).series();
    for (int k = 1; k < 12; ++k) CHECK(lag.coeff(k) == Rat(-1));
    const auto bd = catalog("backward_difference", {}, 12).series();
    for (int k = 1; k < 12; ++k) CHECK(bd.coeff(k) == Rat(k % 2 == 1 ? 1 : -1) / factorial_rat(k));
    const auto w = catalog("weierstrass", {}, 12).series();
    CHECK(w.coeff(0) == Rat(1));
    CHECK(w.coeff(2) == Rat(1, 2));
    CHECK(w.coeff(4) == Rat(1, 8));
    CHECK(w.coeff(3) == Rat(0));
    const auto j = catalog("bernoulli_op", {}, 12).series();
    for (int k = 0; k < 12; ++k) CHECK(j.coeff(k) == Rat(1) / factorial_rat(k + 1));
    const auto ab = catalog("abel", {{"b", Rat(2)}}, 12).series();
    for (int k = 1; k < 12; ++k) CHECK(ab.coeff(k) == Rat(2).pow(k - 1) / factorial_rat(k - 1));
    for (const auto& name : catalog_names()) CHECK(catalog(name, {}, 9).order() == 9);
    CHECK_THROWS_WITH_AS(catalog("nope", {}, 8), "unknown operator: nope", precondition_error);
    CHECK_THROWS_WITH_AS(catalog_delta("weierstrass", {}, 8), "not a delta series", precondition_error);
}

TEST_CASE("expand_in_basis examples") {
    const int order = 12;
    const auto delta = catalog_delta("forward_difference", {}, order);
    const auto d = catalog_delta("derivative", {}, order);
    for (const Rat& a : {Rat(2), Rat(-3), Rat(5, 2)}) {
        const auto c = expand_in_basis(catalog("shift", {{"a", a}}, order), delta, order);
        REQUIRE(c.size() == static_cast<std::size_t>(order));
        for (int k = 0; k < order; ++k) CHECK(c[static_cast<std::size_t>(k)] == falling_factorial(a, k));
    }
    const auto l = expand_in_basis(catalog("laguerre", {}, order), d, order);
    REQUIRE(l.size() == static_cast<std::size_t>(order));
    CHECK(l[0] == Rat(0));
    for (int k = 1; k < order; ++k) CHECK(l[static_cast<std::size_t>(k)] == -factorial_rat(k));
    const auto j = expand_in_basis(catalog("bernoulli_op", {}, order), d, order);
    REQUIRE(j.size() == static_cast<std::size_t>(order));
    for (int k = 0; k < order; ++k) CHECK(j[static_cast<std::size_t>(k)] == Rat(1, k + 1));
}

TEST_CASE("property: expansion coefficients are augmentations of T p_k") {
    // c_k = <T p_k(x)>_0 for the sequence p of Q; the sequence comes from the
    // recurrence path and the constant term from direct action.
    const int order = 10;
    for (const auto& qn : delta_names) {
        const auto q = catalog_delta(qn, {}, order + 2);
        const auto seq = generate_recurrence(q, order - 1);
        for (const auto& tn : catalog_names()) {
            const auto t = catalog(tn, {}, order + 2);
            const auto c = expand_in_basis(t, q, order);
            for (int k = 0; k < order; ++k)
                CHECK(c[static_cast<std::size_t>(k)] == apply_to_polynomial(t, seq[k]).coeff(0));
        }
    }
}

TEST_CASE("property: expansion resums to the operator") {
    const int order = 12;
    for (const auto& qn : delta_names) {
        const auto q = catalog_delta(qn, {}, order);
        for (const auto& tn : catalog_names()) {
            const auto t = catalog(tn, {}, order);
            const auto c = expand_in_basis(t, q);
            TruncatedSeries sum = TruncatedSeries::zero(order);
            for (std::size_t k = 0; k < c.size(); ++k)
                sum = add(sum, scale(int_pow(q.series(), static_cast<int>(k)), c[k] / factorial_rat(static_cast<int>(k))));
            const auto resum = truncate(sum, std::min(sum.order(), static_cast<int>(c.size())));
            CHECK(agree(resum, t.series()));
            CHECK(resum.order() >= order - 1);
        }
    }
}

TEST_CASE("taylor expansion in the forward difference basis matches repeated differencing") {
    for (int trial = 0; trial < 10; ++trial) {
        const Polynomial p = random_polynomial(trial % 6);
        const auto delta = catalog_delta("forward_difference", {}, 10);
        const auto d = taylor_expand(p, delta);
        const auto oracle = forward_differences_at_zero(p);
        for (std::size_t k = 0; k < oracle.size(); ++k) CHECK(d[k] == oracle[k] / factorial_rat(static_cast<int>(k)));
    }
}

TEST_CASE("lagrange inversion examples") {
    const auto id = DeltaOperator(TruncatedSeries::variable(12));
    for (int n = 1; n <= 4; ++n) {
        const auto r = lagrange_inversion(id, TruncatedSeries::monomial(Rat(1), n, 12), 10);
        for (int k = n; k <= 10; ++k) CHECK(r.coeff(k) == Rat(k == n ? 1 : 0));
    }
    const auto fd = catalog_delta("forward_difference", {}, 22);
    const auto l = lagrange_inversion(fd, TruncatedSeries::variable(22), 20);
    CHECK(l.order() == 21);
    for (int k = 1; k <= 20; ++k) CHECK(l.coeff(k) == Rat(k % 2 == 1 ? 1 : -1, k));
    for (const Rat& b : {Rat(1), Rat(-1), Rat(1, 2)}) {
        const auto ab = catalog_delta("abel", {{"b", b}}, 22);
        const auto r = lagrange_inversion(ab, TruncatedSeries::variable(22), 20);
        for (int k = 1; k <= 20; ++k) CHECK(r.coeff(k) == (-b * Rat(k)).pow(k - 1) / factorial_rat(k));
    }
}

TEST_CASE("property: lagrange inversion equals newton inversion for catalog delta operators") {
    for (const auto& name : delta_names) {
        for (const Rat& b : {Rat(1), Rat(-1), Rat(1, 2)}) {
            const auto f = catalog_delta(name, {{"b", b}}, 22);
            const auto l = lagrange_inversion(f, TruncatedSeries::variable(22), 20);
            const auto n = compositional_inverse(f.series());
            CHECK(l.order() == 21);
            for (int k = 1; k <= 20; ++k) CHECK(l.coeff(k) == n.coeff(k));
        }
    }
}

TEST_CASE("lagrange inversion with Laurent g") {
    // g = 1/t: the Laurent expansion of 1/f^(-1)(t).
    const auto fd = catalog_delta("forward_difference", {}, 16);
    const auto g = TruncatedSeries::monomial(Rat(1), -1, 16);
    const auto k_max = lagrange_max_degree(fd, g);
    const auto r = lagrange_inversion(fd, g);
    const auto oracle = reciprocal(compositional_inverse(fd.series()));
    CHECK(r.valuation() == -1);
    CHECK(r.order() == k_max + 1);
    CHECK(agree(r, oracle));
    CHECK(r.order() <= oracle.order());
}

TEST_CASE("property: fundamental theorem generating function") {
    // sum p_n(x) t^n / n! = exp(x f^(-1)(t)): [x^j] p_n = n! [t^n] (f^(-1))^j / j!.
    const int deg = 8;
    for (const auto& name : delta_names) {
        const auto f = catalog_delta(name, {{"b", Rat(1, 2)}}, deg + 2);
        const auto seq = generate_transfer(f, deg);
        const auto inv = compositional_inverse(catalog(name, {{"b", Rat(1, 2)}}, deg + 1).series());
        for (int n = 0; n <= deg; ++n)
            for (int j = 0; j <= deg; ++j) {
                const Rat expected =
                    j == 0 ? Rat(n == 0 ? 1 : 0) : factorial_rat(n) * int_pow(inv, j).coeff(n) / factorial_rat(j);
                CHECK(seq[n].coeff(j) == expected);
            }
    }
}
