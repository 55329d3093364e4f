#pragma once

/**
 * @file series.hpp
 * @brief Exact truncated Laurent series in one formal symbol.
 *
 * A TruncatedSeries knows its coefficients on the exponent range
 * [valuation, order); everything at or above `order` is unknown. Every
 * operation returns the largest exponent range that is determined by its
 * inputs (the precision algebra), so results can be compared exactly on
 * their declared range.
 *
 * Coefficients are stored plain (f = sum a_k t^k). Divided-power (Hurwitz)
 * coefficients c_k = k! a_k are produced on demand by hurwitz_coefficients().
 */

#include <string>
#include <vector>

#include "umbra/rational.hpp"

namespace umbra {

class TruncatedSeries {
public:
    /// The zero series O(t^0).
    TruncatedSeries() = default;

    static TruncatedSeries zero(int order);
    static TruncatedSeries constant(const Rat& c, int order);
    static TruncatedSeries monomial(const Rat& c, int exponent, int order);
    /// The formal symbol t itself, known to `order`.
    static TruncatedSeries variable(int order) { return monomial(Rat(1), 1, order); }
    /// coeffs[i] is the coefficient of t^(start + i); entries at or above
    /// `order` are dropped. Requires order >= start.
    static TruncatedSeries from_coefficients(int start, const std::vector<Rat>& coeffs, int order);

    int valuation() const { return val_; }
    int order() const { return order_; }
    int relative_precision() const { return order_ - val_; }
    bool is_zero() const { return coeffs_.empty(); }

    /// Coefficient of t^e. Zero below the valuation; throws precondition_error
    /// at or beyond the truncation order.
    Rat coeff(int e) const;
    const Rat& leading_coefficient() const;

    std::string str(const std::string& symbol = "t") const;

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    TruncatedSeries(int val, int order, std::vector<Rat> coeffs)
        : val_(val), order_(order), coeffs_(std::move(coeffs)) {}
    void normalize();

    int val_ = 0;
    int order_ = 0;
    std::vector<Rat> coeffs_;  // exponents val_ .. order_-1

    friend TruncatedSeries add(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries mul(const TruncatedSeries&, const TruncatedSeries&);
    friend TruncatedSeries scale(const TruncatedSeries&, const Rat&);
    friend TruncatedSeries reciprocal(const TruncatedSeries&);
    friend TruncatedSeries formal_derivative(const TruncatedSeries&);
    friend TruncatedSeries truncate(const TruncatedSeries&, int);
    friend TruncatedSeries shift_exponent(const TruncatedSeries&, int);
    friend TruncatedSeries exp_series(const TruncatedSeries&);
    friend TruncatedSeries log_series(const TruncatedSeries&);
};

TruncatedSeries add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries sub(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries neg(const TruncatedSeries& f);
TruncatedSeries scale(const TruncatedSeries& f, const Rat& c);
/// Cauchy product; valuation v_f + v_g, order min(o_f + v_g, o_g + v_f).
TruncatedSeries mul(const TruncatedSeries& f, const TruncatedSeries& g);
/// Multiplicative inverse of a nonzero series (relative precision preserved).
TruncatedSeries reciprocal(const TruncatedSeries& f);
/// f / g = f * reciprocal(g).
TruncatedSeries div(const TruncatedSeries& f, const TruncatedSeries& g);
/// f^n for any integer n; n < 0 requires f nonzero.
TruncatedSeries int_pow(const TruncatedSeries& f, int n);

/// f(g(t)). g must have positive valuation; f may be Laurent.
TruncatedSeries compose(const TruncatedSeries& f, const TruncatedSeries& g);
/// g with f(g) = g(f) = t, by Newton iteration. f must have valuation 1.
TruncatedSeries compositional_inverse(const TruncatedSeries& f);

/// exp(f) for valuation >= 1.
TruncatedSeries exp_series(const TruncatedSeries& f);
/// log(f) for f = 1 + O(t).
TruncatedSeries log_series(const TruncatedSeries& f);

TruncatedSeries formal_derivative(const TruncatedSeries& f);

/// Forget everything at or above `order` (order <= f.order()).
TruncatedSeries truncate(const TruncatedSeries& f, int order);
/// Exact multiplication by t^k.
TruncatedSeries shift_exponent(const TruncatedSeries& f, int k);

/// True when f and g agree on every exponent known to both.
bool agree(const TruncatedSeries& f, const TruncatedSeries& g);

/// e.g.f. coefficients k! * a_k for 0 <= k < min(count, order).
std::vector<Rat> hurwitz_coefficients(const TruncatedSeries& f, int count);

inline TruncatedSeries operator+(const TruncatedSeries& f, const TruncatedSeries& g) { return add(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f, const TruncatedSeries& g) { return sub(f, g); }
inline TruncatedSeries operator-(const TruncatedSeries& f) { return neg(f); }
inline TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g) { return mul(f, g); }
inline TruncatedSeries operator*(const Rat& c, const TruncatedSeries& f) { return scale(f, c); }
inline TruncatedSeries operator/(const TruncatedSeries& f, const TruncatedSeries& g) { return div(f, g); }

}  // namespace umbra
