#include "umbra/log_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include <mpfr.h>

#include "umbra/errors.hpp"
#include "umbra/numbers.hpp"

namespace umbra {

namespace {

constexpr int exact = HarmonicLogSeries::exact;

// Floors near the sentinel stay at the sentinel under shifts.
int shift_floor(int floor, int by) { return floor == exact ? exact : floor + by; }

Rat derivative_factor(int j, int k, int t) {
    if (t == 0 && j - k < 0) return Rat(0);
    return roman_factorial(j) / roman_factorial(j - k);
}

}  // namespace

HarmonicLogSeries::HarmonicLogSeries(int order_t, std::map<int, Rat> coeffs, int floor, int top)
    : order_t_(order_t), floor_(floor), top_(top) {
    if (order_t < 0) throw precondition_error("harmonic logarithm order must be nonnegative");
    for (auto& [j, c] : coeffs) {
        if (c.is_zero() || j < floor || j > top) continue;
        if (order_t == 0 && j < 0) continue;
        coeffs_.emplace(j, std::move(c));
    }
    if (order_t_ == 0 && floor_ <= 0) floor_ = exact;
    if (!coeffs_.empty()) top_ = coeffs_.rbegin()->first;
    else if (floor_ == exact) top_ = exact - 1;
}

HarmonicLogSeries HarmonicLogSeries::monomial(int n, int t, const Rat& c) {
    return HarmonicLogSeries(t, {{n, c}}, exact, n);
}

HarmonicLogSeries HarmonicLogSeries::from_polynomial(const Polynomial& p) {
    std::map<int, Rat> m;
    for (int k = 0; k <= p.degree(); ++k) m.emplace(k, p.coeff(k));
    return HarmonicLogSeries(0, std::move(m), exact, std::max(p.degree(), 0));
}

Rat HarmonicLogSeries::coeff(int j) const {
    if (j < floor_) throw precondition_error("degree " + std::to_string(j) + " is below the known window");
    auto it = coeffs_.find(j);
    return it == coeffs_.end() ? Rat(0) : it->second;
}

HarmonicLogSeries HarmonicLogSeries::restricted(int new_floor) const {
    return HarmonicLogSeries(order_t_, coeffs_, std::max(new_floor, floor_), top_);
}

Polynomial HarmonicLogSeries::to_polynomial() const {
    if (floor_ > 0) throw precondition_error("window does not reach degree 0");
    std::vector<Rat> c;
    for (auto it = coeffs_.lower_bound(0); it != coeffs_.end(); ++it) {
        c.resize(static_cast<std::size_t>(it->first + 1));
        c[static_cast<std::size_t>(it->first)] = it->second;
    }
    return Polynomial(std::move(c));
}

std::string HarmonicLogSeries::str() const {
    std::ostringstream os;
    bool first = true;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        const Rat& c = it->second;
        if (!first) os << (c.sign() < 0 ? " - " : " + ");
        else if (c.sign() < 0) os << "-";
        first = false;
        const Rat a = c.sign() < 0 ? -c : c;
        if (a != Rat(1)) os << a << "*";
        os << "lambda_" << it->first << "^(" << order_t_ << ")";
    }
    if (first) os << "0";
    if (!is_exact()) os << " + O(lambda_" << floor_ - 1 << ")";
    return os.str();
}

HarmonicLogSeries add(const HarmonicLogSeries& a, const HarmonicLogSeries& b) {
    if (a.order_t() != b.order_t()) throw precondition_error("cannot add series of different log orders");
    std::map<int, Rat> m = a.terms();
    for (const auto& [j, c] : b.terms()) m[j] += c;
    return HarmonicLogSeries(a.order_t(), std::move(m), std::max(a.floor(), b.floor()), std::max(a.top(), b.top()));
}

HarmonicLogSeries scale(const HarmonicLogSeries& a, const Rat& c) {
    std::map<int, Rat> m;
    for (const auto& [j, v] : a.terms()) m.emplace(j, v * c);
    return HarmonicLogSeries(a.order_t(), std::move(m), a.floor(), a.top());
}

HarmonicLogSeries sub(const HarmonicLogSeries& a, const HarmonicLogSeries& b) { return add(a, scale(b, Rat(-1))); }

bool agree(const HarmonicLogSeries& a, const HarmonicLogSeries& b) {
    if (a.order_t() != b.order_t()) return false;
    const int floor = std::max(a.floor(), b.floor());
    auto known = [floor](const std::map<int, Rat>& m, const std::map<int, Rat>& other) {
        for (const auto& [j, c] : m) {
            if (j < floor) continue;
            auto it = other.find(j);
            if (it == other.end() || it->second != c) return false;
        }
        return true;
    };
    return known(a.terms(), b.terms()) && known(b.terms(), a.terms());
}

std::map<int, Rat> harmonic_log(int n, int t) {
    if (t < 0) throw precondition_error("harmonic logarithm order must be nonnegative");
    std::map<int, Rat> out;
    const Rat rf = roman_factorial(n);
    for (int k = 0; k <= t; ++k) {
        const Rat c = rf * falling_factorial(Rat(t), k) * stirling_first(-n, k, t + 1);
        if (!c.is_zero()) out.emplace(t - k, c);
    }
    return out;
}

HarmonicLogSeries apply_operator(const ShiftInvariantOperator& op, const HarmonicLogSeries& s) {
    const TruncatedSeries& ts = op.series();
    const int t = s.order_t();
    if (t == 0 && !ts.is_zero() && ts.valuation() < 0)
        throw precondition_error("negative powers of D undefined on polynomials");
    const int v = ts.valuation();
    const int top = s.top() - v;
    int floor = std::max(shift_floor(s.floor(), -v), s.top() - ts.order() + 1);
    if (s.is_exact() && s.is_zero()) floor = exact;
    std::map<int, Rat> out;
    for (const auto& [j, c] : s.terms()) {
        for (int k = v; k < ts.order() && j - k >= floor; ++k) {
            const Rat a = ts.coeff(k);
            if (a.is_zero()) continue;
            const Rat f = derivative_factor(j, k, t);
            if (!f.is_zero()) out[j - k] += c * a * f;
        }
    }
    return HarmonicLogSeries(t, std::move(out), floor, std::max(top, floor - 1));
}

HarmonicLogSeries apply_derivative_power(int k, const HarmonicLogSeries& s) {
    if (s.order_t() == 0 && k < 0) throw precondition_error("negative powers of D undefined on polynomials");
    std::map<int, Rat> out;
    for (const auto& [j, c] : s.terms()) {
        const Rat f = derivative_factor(j, k, s.order_t());
        if (!f.is_zero()) out[j - k] += c * f;
    }
    return HarmonicLogSeries(s.order_t(), std::move(out), shift_floor(s.floor(), -k), s.top() - k);
}

HarmonicLogSeries roman_shift(const HarmonicLogSeries& s) {
    std::map<int, Rat> out;
    for (const auto& [j, c] : s.terms())
        if (j != -1) out.emplace(j + 1, c);
    return HarmonicLogSeries(s.order_t(), std::move(out), shift_floor(s.floor(), 1), s.top() + 1);
}

Rat augmentation(const HarmonicLogSeries& s, int t) {
    if (s.order_t() != t) return Rat(0);
    if (s.floor() > 0) throw precondition_error("augmentation outside window");
    return s.coeff(0);
}

HarmonicLogSeries skip(const HarmonicLogSeries& s, int to_t) {
    return HarmonicLogSeries(to_t, s.terms(), s.floor(), s.top());
}

HarmonicLogSeries residual_term(const DeltaOperator& f, int depth) {
    const ShiftInvariantOperator df(formal_derivative(f.series()));
    return apply_operator(df, HarmonicLogSeries::monomial(-1, 1)).restricted(-depth);
}

HarmonicLogSeries log_sequence(const DeltaOperator& f, int n, int depth) {
    const TruncatedSeries op = mul(formal_derivative(f.series()), int_pow(f.series(), -1 - n));
    const HarmonicLogSeries r = apply_operator(ShiftInvariantOperator(op), HarmonicLogSeries::monomial(-1, 1));
    return scale(r, roman_factorial(n)).restricted(n - depth + 1);
}

LogBinomialSequence::LogBinomialSequence(DeltaOperator f, int depth)
    : op_(std::move(f)), depth_(depth), residual_(residual_term(op_, depth)),
      mutex_(std::make_unique<std::shared_mutex>()) {}

HarmonicLogSeries LogBinomialSequence::term(int n) const {
    {
        std::shared_lock lock(*mutex_);
        if (auto it = cache_.find(n); it != cache_.end()) return it->second;
    }
    HarmonicLogSeries s = log_sequence(op_, n, depth_);
    std::unique_lock lock(*mutex_);
    return cache_.emplace(n, std::move(s)).first->second;
}

HarmonicLogSeries log_lower_factorial_bernoulli(int n, int depth) {
    if (n < 0) throw precondition_error("the Bernoulli form needs n >= 0");
    std::map<int, Rat> m;
    for (int k = 0; k < depth; ++k) {
        const Rat c = bernoulli_higher(k, n + 1) * roman_coefficient(n, k);
        if (!c.is_zero()) m.emplace(n - k, c);
    }
    const HarmonicLogSeries inner(1, std::move(m), n - depth + 1, n);
    return apply_operator(catalog("shift", {{"a", Rat(1)}}, depth), inner);
}

HarmonicLogSeries log_lower_factorial(int n, int depth) {
    const DeltaOperator delta = catalog_delta("forward_difference", {}, depth + 1);
    HarmonicLogSeries s = log_sequence(delta, n, depth);
    if (n >= 0 && !agree(s, log_lower_factorial_bernoulli(n, depth)))
        throw std::logic_error("lower factorial disagrees with its Bernoulli form at n = " + std::to_string(n));
    return s;
}

HarmonicLogSeries log_conjugate_sequence(const DeltaOperator& g, int n, int depth) {
    // <g^k lambda_n>_(1) = [n]! [t^n] g^k, nonzero only for k <= n.
    const TruncatedSeries u = shift_exponent(g.series(), -1);
    const int achievable = std::min(depth, u.relative_precision());
    std::map<int, Rat> m;
    const int low = n - achievable + 1;
    TruncatedSeries power = int_pow(u, low);
    const TruncatedSeries& step = u;
    for (int k = low; k <= n; ++k) {
        const Rat c = roman_factorial(n) * power.coeff(n - k) / roman_factorial(k);
        if (!c.is_zero()) m.emplace(k, c);
        power = mul(power, step);
    }
    return HarmonicLogSeries(1, std::move(m), low, n);
}

Rat CoefficientWindow::at(int n) const {
    if (n < floor) throw precondition_error("coefficient below the known window");
    auto it = coeffs.find(n);
    return it == coeffs.end() ? Rat(0) : it->second;
}

CoefficientWindow newton_expand(const HarmonicLogSeries& s) {
    if (s.order_t() != 1) throw precondition_error("newton_expand needs an order-(1) series");
    if (s.is_exact() && s.is_zero()) return {0, -1, {}};
    if (s.is_exact()) throw precondition_error("newton_expand needs a finite window floor");
    CoefficientWindow w{s.floor(), s.top(), {}};
    const int width = s.top() - s.floor() + 1;
    // Delta^n = t^n u^n with u = (e^t - 1)/t; <Delta^n lambda_j> = [j]! [t^(j-n)] u^n.
    std::vector<Rat> uc;
    for (int k = 0; k < width; ++k) uc.push_back(Rat(1) / Rat(factorial(k + 1)));
    const TruncatedSeries u = TruncatedSeries::from_coefficients(0, uc, std::max(width, 1));
    TruncatedSeries power = int_pow(u, s.floor());
    for (int n = s.floor(); n <= s.top(); ++n) {
        Rat acc;
        for (auto it = s.terms().lower_bound(n); it != s.terms().end(); ++it)
            acc += it->second * roman_factorial(it->first) * power.coeff(it->first - n);
        acc /= roman_factorial(n);
        if (!acc.is_zero()) w.coeffs.emplace(n, acc);
        power = mul(power, u);
    }
    return w;
}

HarmonicLogSeries newton_resum(const CoefficientWindow& w, int floor) {
    HarmonicLogSeries acc(1, {}, floor, w.top);
    for (const auto& [n, c] : w.coeffs) {
        if (n < floor) continue;
        acc = add(acc, scale(log_lower_factorial(n, n - floor + 1), c));
    }
    return acc.restricted(std::max(floor, w.floor));
}

namespace {

struct Mpfr {
    mpfr_t v;
    explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v, prec); mpfr_set_zero(v, 1); }
    ~Mpfr() { mpfr_clear(v); }
    Mpfr(const Mpfr&) = delete;
    Mpfr& operator=(const Mpfr&) = delete;
};

void set_rat(mpfr_t out, const Rat& r) { mpfr_set_q(out, r.raw().get_mpq_t(), MPFR_RNDN); }

}  // namespace

NumericValue evaluate_numeric(const HarmonicLogSeries& s, const Rat& x0, int digits) {
    if (x0.sign() <= 0) throw precondition_error("evaluate_numeric needs x0 > 0");
    if (digits < 1) throw precondition_error("evaluate_numeric needs at least one digit");
    const auto prec = static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623) + 32);
    Mpfr x(prec), logx(prec), sum(prec), term(prec), xp(prec), lp(prec), c(prec);
    set_rat(x.v, x0);
    mpfr_log(logx.v, x.v, MPFR_RNDN);
    std::vector<double> magnitudes;  // |term| by ascending degree
    for (const auto& [j, coef] : s.terms()) {
        mpfr_set_zero(term.v, 1);
        for (const auto& [i, hc] : harmonic_log(j, s.order_t())) {
            mpfr_pow_si(xp.v, x.v, j, MPFR_RNDN);
            mpfr_pow_ui(lp.v, logx.v, static_cast<unsigned long>(i), MPFR_RNDN);
            mpfr_mul(xp.v, xp.v, lp.v, MPFR_RNDN);
            set_rat(c.v, hc);
            mpfr_mul(xp.v, xp.v, c.v, MPFR_RNDN);
            mpfr_add(term.v, term.v, xp.v, MPFR_RNDN);
        }
        set_rat(c.v, coef);
        mpfr_mul(term.v, term.v, c.v, MPFR_RNDN);
        mpfr_add(sum.v, sum.v, term.v, MPFR_RNDN);
        magnitudes.push_back(std::fabs(mpfr_get_d(term.v, MPFR_RNDN)));
    }
    NumericValue out;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Rg", digits, sum.v);
    out.decimal = buf;
    mpfr_free_str(buf);
    out.value = mpfr_get_d(sum.v, MPFR_RNDN);
    // Lowest two window terms give a ratio; a geometric tail below it is bounded
    // by |last| r / (1 - r).
    if (!s.is_exact() && magnitudes.size() >= 3) {
        const double last = magnitudes[0];
        const double prev = magnitudes[1];
        if (prev > 0.0) {
            const double r = last / prev;
            if (r < 1.0) out.tail_bound = last * r / (1.0 - r);
        }
    }
    return out;
}

}  // namespace umbra
