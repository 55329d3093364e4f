#include "umbra/series.hpp"

#include <algorithm>
#include <sstream>

#include "umbra/errors.hpp"

namespace umbra {

void TruncatedSeries::normalize() {
    std::size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
    if (lead == coeffs_.size()) {
        coeffs_.clear();
        val_ = order_;
        return;
    }
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
        val_ += static_cast<int>(lead);
    }
}

TruncatedSeries TruncatedSeries::zero(int order) { return TruncatedSeries(order, order, {}); }

TruncatedSeries TruncatedSeries::constant(const Rat& c, int order) { return monomial(c, 0, order); }

TruncatedSeries TruncatedSeries::monomial(const Rat& c, int exponent, int order) {
    if (exponent >= order || c.is_zero()) return zero(order);
    std::vector<Rat> v(static_cast<std::size_t>(order - exponent));
    v[0] = c;
    return TruncatedSeries(exponent, order, std::move(v));
}

TruncatedSeries TruncatedSeries::from_coefficients(int start, const std::vector<Rat>& coeffs, int order) {
    if (order < start) throw precondition_error("series order below its first exponent");
    std::vector<Rat> v(static_cast<std::size_t>(order - start));
    for (std::size_t i = 0; i < v.size() && i < coeffs.size(); ++i) v[i] = coeffs[i];
    TruncatedSeries s(start, order, std::move(v));
    s.normalize();
    return s;
}

Rat TruncatedSeries::coeff(int e) const {
    if (e >= order_) throw precondition_error("coefficient of t^" + std::to_string(e) + " is beyond truncation order " + std::to_string(order_));
    if (e < val_) return Rat(0);
    return coeffs_[static_cast<std::size_t>(e - val_)];
}

const Rat& TruncatedSeries::leading_coefficient() const {
    if (is_zero()) throw precondition_error("zero series has no leading coefficient");
    return coeffs_.front();
}

std::string TruncatedSeries::str(const std::string& symbol) const {
    std::ostringstream os;
    bool first = true;
    for (int e = val_; e < order_; ++e) {
        const Rat& c = coeffs_[static_cast<std::size_t>(e - val_)];
        if (c.is_zero()) continue;
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        first = false;
        const Rat a = c.sign() < 0 ? -c : c;
        if (e == 0) { os << a; continue; }
        if (a != Rat(1)) os << a << "*";
        os << symbol;
        if (e != 1) os << "^" << e;
    }
    if (first) os << "0";
    os << " + O(" << symbol << "^" << order_ << ")";
    return os.str();
}

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g) {
    const int order = std::min(f.order_, g.order_);
    const int lo = std::min(f.val_, g.val_);
    if (lo >= order) return TruncatedSeries::zero(order);
    std::vector<Rat> v(static_cast<std::size_t>(order - lo));
    for (int e = std::max(f.val_, lo); e < std::min(order, f.order_); ++e)
        if (e >= f.val_) v[static_cast<std::size_t>(e - lo)] += f.coeffs_[static_cast<std::size_t>(e - f.val_)];
    for (int e = std::max(g.val_, lo); e < std::min(order, g.order_); ++e)
        if (e >= g.val_) v[static_cast<std::size_t>(e - lo)] += g.coeffs_[static_cast<std::size_t>(e - g.val_)];
    TruncatedSeries r(lo, order, std::move(v));
    r.normalize();
    return r;
}

TruncatedSeries scale(const TruncatedSeries& f, const Rat& c) {
    if (c.is_zero()) return TruncatedSeries::zero(f.order_);
    TruncatedSeries r = f;
    for (auto& a : r.coeffs_) a *= c;
    return r;
}

TruncatedSeries neg(const TruncatedSeries& f) { return scale(f, Rat(-1)); }

TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, neg(g)); }

TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g) {
    const int val = f.val_ + g.val_;
    const int order = std::min(f.order_ + g.val_, g.order_ + f.val_);
    if (f.is_zero() || g.is_zero() || val >= order) return TruncatedSeries::zero(order);
    const std::size_t n = static_cast<std::size_t>(order - val);
    std::vector<Rat> v(n);
    for (std::size_t i = 0; i < n && i < f.coeffs_.size(); ++i) {
        if (f.coeffs_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n && j < g.coeffs_.size(); ++j) v[i + j] += f.coeffs_[i] * g.coeffs_[j];
    }
    TruncatedSeries r(val, order, std::move(v));
    r.normalize();
    return r;
}

TruncatedSeries reciprocal(const TruncatedSeries& f) {
    if (f.is_zero()) throw precondition_error("non-invertible: zero series");
    const std::size_t n = f.coeffs_.size();
    const Rat inv0 = Rat(1) / f.coeffs_[0];
    std::vector<Rat> b(n);
    b[0] = inv0;
    for (std::size_t k = 1; k < n; ++k) {
        Rat acc;
        for (std::size_t j = 1; j <= k; ++j) acc += f.coeffs_[j] * b[k - j];
        b[k] = -acc * inv0;
    }
    TruncatedSeries r(-f.val_, -f.val_ + static_cast<int>(n), std::move(b));
    r.normalize();
    return r;
}

TruncatedSeries div(const TruncatedSeries& f, const TruncatedSeries& g) { return mul(f, reciprocal(g)); }

TruncatedSeries int_pow(const TruncatedSeries& f, int n) {
    if (n < 0) return int_pow(reciprocal(f), -n);
    TruncatedSeries result = TruncatedSeries::constant(Rat(1), f.relative_precision());
    if (n == 0) return result;
    TruncatedSeries base = f;
    bool first = true;
    while (n > 0) {
        if (n & 1) {
            result = first ? base : mul(result, base);
            first = false;
        }
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return result;
}

namespace {

TruncatedSeries add_constant(const TruncatedSeries& acc, const Rat& c) {
    if (acc.order() <= 0) return acc;
    return add(acc, TruncatedSeries::constant(c, acc.order()));
}

}  // namespace

TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g) {
    if (g.is_zero() || g.valuation() < 1) throw precondition_error("composition requires positive valuation");
    // Horner form: f = g^vf * (b_0 + g(b_1 + ... + g(b_{n-1} + g^n U))), U unknown.
    const int n = f.relative_precision();
    TruncatedSeries acc = TruncatedSeries::zero(0);
    for (int j = n - 1; j >= 0; --j) acc = add_constant(mul(g, acc), f.coeff(f.valuation() + j));
    if (f.valuation() != 0) acc = mul(acc, int_pow(g, f.valuation()));
    return acc;
}

TruncatedSeries compositional_inverse(const TruncatedSeries& f) {
    if (f.is_zero() || f.valuation() != 1) throw precondition_error("not a delta series");
    const int target = f.order();
    TruncatedSeries g = TruncatedSeries::monomial(Rat(1) / f.leading_coefficient(), 1, std::min(2, target));
    const TruncatedSeries df = formal_derivative(f);
    int prec = g.order();
    while (prec < target) {
        const int next = std::min(2 * prec, target);
        // Treat the current approximation as an exact polynomial for this step.
        std::vector<Rat> gc;
        for (int e = 0; e < prec; ++e) gc.push_back(g.coeff(e));
        const TruncatedSeries gx = TruncatedSeries::from_coefficients(0, gc, next);
        const TruncatedSeries residual = sub(compose(f, gx), TruncatedSeries::variable(next));
        const TruncatedSeries step = div(residual, compose(df, gx));
        const TruncatedSeries updated = sub(gx, step);
        g = truncate(updated, std::min(next, updated.order()));
        prec = next;
    }
    return g;
}

TruncatedSeries exp_series(const TruncatedSeries& f) {
    if (!f.is_zero() && f.valuation() < 1) throw precondition_error("exp_series requires valuation >= 1");
    const int order = f.order();
    if (order <= 0) return TruncatedSeries::zero(order);
    std::vector<Rat> h(static_cast<std::size_t>(order));
    h[0] = Rat(1);
    for (int m = 1; m < order; ++m) {
        Rat acc;
        for (int k = std::max(1, f.valuation()); k <= m; ++k) {
            const Rat fk = f.coeff(k);
            if (!fk.is_zero()) acc += Rat(k) * fk * h[static_cast<std::size_t>(m - k)];
        }
        h[static_cast<std::size_t>(m)] = acc / Rat(m);
    }
    return TruncatedSeries::from_coefficients(0, h, order);
}

TruncatedSeries log_series(const TruncatedSeries& f) {
    if (f.is_zero() || f.valuation() != 0 || f.leading_coefficient() != Rat(1))
        throw precondition_error("log_series requires constant term 1");
    const int order = f.order();
    std::vector<Rat> l(static_cast<std::size_t>(order));
    for (int m = 1; m < order; ++m) {
        Rat acc = Rat(m) * f.coeff(m);
        for (int k = 1; k < m; ++k) acc -= Rat(k) * l[static_cast<std::size_t>(k)] * f.coeff(m - k);
        l[static_cast<std::size_t>(m)] = acc / Rat(m);
    }
    return TruncatedSeries::from_coefficients(0, l, order);
}

TruncatedSeries formal_derivative(const TruncatedSeries& f) {
    const int order = f.order_ - 1;
    if (f.is_zero()) return TruncatedSeries::zero(order);
    const int start = f.val_ - 1;
    std::vector<Rat> v(static_cast<std::size_t>(order - start));
    for (int e = f.val_; e < f.order_; ++e)
        v[static_cast<std::size_t>(e - 1 - start)] = Rat(e) * f.coeffs_[static_cast<std::size_t>(e - f.val_)];
    TruncatedSeries r(start, order, std::move(v));
    r.normalize();
    return r;
}

TruncatedSeries truncate(const TruncatedSeries& f, int order) {
    if (order > f.order_) throw precondition_error("cannot extend a series beyond its truncation order");
    if (order <= f.val_) return TruncatedSeries::zero(order);
    std::vector<Rat> v(f.coeffs_.begin(), f.coeffs_.begin() + (order - f.val_));
    TruncatedSeries r(f.val_, order, std::move(v));
    r.normalize();
    return r;
}

TruncatedSeries shift_exponent(const TruncatedSeries& f, int k) {
    TruncatedSeries r = f;
    r.val_ += k;
    r.order_ += k;
    return r;
}

bool agree(const TruncatedSeries& f, const TruncatedSeries& g) {
    const int order = std::min(f.order(), g.order());
    const int lo = std::min(f.valuation(), g.valuation());
    for (int e = lo; e < order; ++e)
        if (f.coeff(e) != g.coeff(e)) return false;
    return true;
}

std::vector<Rat> hurwitz_coefficients(const TruncatedSeries& f, int count) {
    std::vector<Rat> out;
    for (int k = 0; k < count && k < f.order(); ++k) out.push_back(f.coeff(k) * Rat(factorial(k)));
    return out;
}

}  // namespace umbra
