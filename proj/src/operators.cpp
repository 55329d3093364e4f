#include "umbra/operators.hpp"

#include <algorithm>

#include "umbra/errors.hpp"
#include "umbra/numbers.hpp"

namespace umbra {

DeltaOperator::DeltaOperator(ShiftInvariantOperator op) : op_(std::move(op)) {
    const TruncatedSeries& s = op_.series();
    if (s.is_zero() || s.valuation() != 1) throw precondition_error("not a delta series");
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"derivative", "shift",    "forward_difference",
                                                "backward_difference", "abel", "laguerre",
                                                "weierstrass", "bernoulli_op"};
    return names;
}

namespace {

Rat param(const ParamMap& params, const std::string& key) {
    auto it = params.find(key);
    return it == params.end() ? Rat(1) : it->second;
}

// sum_{k >= start} (scale^k / k!) t^(k + offset), known below `order`.
TruncatedSeries exp_like(const Rat& scale, int start, int offset, int order) {
    std::vector<Rat> c;
    const int first = start + offset;
    for (int e = first; e < order; ++e) {
        const int k = e - offset;
        c.push_back(scale.pow(k) / Rat(factorial(k)));
    }
    if (order <= first) return TruncatedSeries::zero(order);
    return TruncatedSeries::from_coefficients(first, c, order);
}

}  // namespace

ShiftInvariantOperator catalog(const std::string& name, const ParamMap& params, int order) {
    if (order < 1) throw precondition_error("catalog: working order must be positive");
    if (name == "derivative") return ShiftInvariantOperator(TruncatedSeries::variable(order), "D");
    if (name == "shift") {
        const Rat a = param(params, "a");
        return ShiftInvariantOperator(exp_like(a, 0, 0, order), "shift", {{"a", a}});
    }
    if (name == "forward_difference")
        return ShiftInvariantOperator(exp_like(Rat(1), 1, 0, order), "forward_difference");
    if (name == "backward_difference")
        return ShiftInvariantOperator(neg(exp_like(Rat(-1), 1, 0, order)), "backward_difference");
    if (name == "abel") {
        const Rat b = param(params, "b");
        return ShiftInvariantOperator(exp_like(b, 0, 1, order), "abel", {{"b", b}});
    }
    if (name == "laguerre") {
        std::vector<Rat> c(static_cast<std::size_t>(std::max(order - 1, 0)), Rat(-1));
        return ShiftInvariantOperator(TruncatedSeries::from_coefficients(1, c, order), "laguerre");
    }
    if (name == "weierstrass") {
        std::vector<Rat> c(static_cast<std::size_t>(order));
        for (int e = 0; e < order; e += 2)
            c[static_cast<std::size_t>(e)] = Rat(1) / (Rat(factorial(e / 2)) * Rat(2).pow(e / 2));
        return ShiftInvariantOperator(TruncatedSeries::from_coefficients(0, c, order), "weierstrass");
    }
    if (name == "bernoulli_op") return ShiftInvariantOperator(exp_like(Rat(1), 1, -1, order), "bernoulli_op");
    throw precondition_error("unknown operator: " + name);
}

DeltaOperator catalog_delta(const std::string& name, const ParamMap& params, int order) {
    return DeltaOperator(catalog(name, params, order));
}

Polynomial derivative(const Polynomial& p, int k) {
    if (k <= 0) return p;
    if (p.degree() < k) return {};
    std::vector<Rat> c;
    for (int j = k; j <= p.degree(); ++j) c.push_back(p.coeff(j) * falling_factorial(Rat(j), k));
    return Polynomial(std::move(c));
}

Polynomial apply_to_polynomial(const ShiftInvariantOperator& t, const Polynomial& p) {
    const TruncatedSeries& s = t.series();
    if (!s.is_zero() && s.valuation() < 0) throw precondition_error("negative powers of D undefined on polynomials");
    if (p.is_zero()) return {};
    if (s.order() <= p.degree()) throw precondition_error("truncation too small for exact action");
    Polynomial out;
    Polynomial dk = derivative(p, std::max(s.valuation(), 0));
    for (int k = std::max(s.valuation(), 0); k <= p.degree(); ++k) {
        const Rat a = s.coeff(k);
        if (!a.is_zero()) out += dk * a;
        dk = derivative(dk);
    }
    return out;
}

ShiftInvariantOperator pincherle_derivative(const ShiftInvariantOperator& t) {
    const std::string name = t.name().empty() ? std::string{} : t.name() + "'";
    return ShiftInvariantOperator(formal_derivative(t.series()), name, t.parameters());
}

std::vector<Rat> expand_in_basis(const ShiftInvariantOperator& t, const DeltaOperator& q, int count) {
    if (!t.series().is_zero() && t.series().valuation() < 0)
        throw precondition_error("expand_in_basis requires a power series operator");
    const TruncatedSeries c = compose(t.series(), compositional_inverse(q.series()));
    if (count < 0) count = std::max(c.order(), 0);
    if (count > c.order())
        throw precondition_error("expand_in_basis: only " + std::to_string(c.order()) +
                                 " coefficients are determined");
    return hurwitz_coefficients(c, count);
}

int lagrange_max_degree(const DeltaOperator& f, const TruncatedSeries& g) {
    const int rf = f.series().relative_precision();
    return g.valuation() + std::min(g.relative_precision(), rf) - 1;
}

TruncatedSeries lagrange_inversion(const DeltaOperator& f, const TruncatedSeries& g, int k_max) {
    const int limit = lagrange_max_degree(f, g);
    if (k_max < 0) k_max = limit;
    if (k_max > limit)
        throw precondition_error("lagrange_inversion: degree " + std::to_string(k_max) +
                                 " beyond achievable " + std::to_string(limit));
    const int d = g.valuation();
    if (g.is_zero() || k_max < d) return TruncatedSeries::zero(k_max + 1);
    const TruncatedSeries inv_f = reciprocal(f.series());
    TruncatedSeries h = mul(mul(g, formal_derivative(f.series())), int_pow(inv_f, d + 1));
    std::vector<Rat> coeffs;
    for (int k = d; k <= k_max; ++k) {
        coeffs.push_back(h.coeff(-1));
        h = mul(h, inv_f);
    }
    return TruncatedSeries::from_coefficients(d, coeffs, k_max + 1);
}

}  // namespace umbra
