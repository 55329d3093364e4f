#pragma once

/**
 * @file log_algebra.hpp
 * @brief Harmonic logarithms of single-log order (t) and their windowed series.
 *
 * A HarmonicLogSeries is sum_j c_j lambda_j^(t) over a window of degrees.
 * Degrees above `top` are zero, degrees in [floor, top] are exact, degrees
 * below `floor` are unknown. A floor equal to HarmonicLogSeries::exact means
 * nothing is unknown (a finite combination).
 *
 * Operators in D act degreewise like on powers of x with Roman factorials:
 *     D^k lambda_j = ([j]! / [j-k]!) lambda_{j-k}
 * for every integer k when t >= 1. At t = 0 the lambda_j are the powers x^j,
 * negative degrees vanish and negative powers of D are rejected.
 */

#include <climits>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "umbra/operators.hpp"

namespace umbra {

class HarmonicLogSeries {
public:
    static constexpr int exact = INT_MIN / 4;

    HarmonicLogSeries() = default;
    /// Terms below `floor` and above `top` are dropped; zero terms removed.
    HarmonicLogSeries(int order_t, std::map<int, Rat> coeffs, int floor, int top);

    /// c * lambda_n^(t), exact. Zero when t = 0 and n < 0.
    static HarmonicLogSeries monomial(int n, int t, const Rat& c = Rat(1));
    /// A polynomial as an order-(0) series.
    static HarmonicLogSeries from_polynomial(const Polynomial& p);

    int order_t() const { return order_t_; }
    int floor() const { return floor_; }
    int top() const { return top_; }
    bool is_exact() const { return floor_ == exact; }
    bool is_zero() const { return coeffs_.empty(); }
    /// True when no degree is known to be nonzero-capable (floor above top).
    bool window_empty() const { return floor_ > top_; }
    const std::map<int, Rat>& terms() const { return coeffs_; }

    /// Coefficient of lambda_j; throws precondition_error below the floor.
    Rat coeff(int j) const;

    /// Same series with every degree below `new_floor` forgotten.
    HarmonicLogSeries restricted(int new_floor) const;

    /// Polynomial part (degrees >= 0); requires the window to reach degree 0.
    Polynomial to_polynomial() const;

    std::string str() const;

    friend bool operator==(const HarmonicLogSeries&, const HarmonicLogSeries&) = default;

private:
    int order_t_ = 1;
    std::map<int, Rat> coeffs_;
    int floor_ = exact;
    int top_ = exact - 1;
};

/// Sum on the common window (orders must match).
HarmonicLogSeries add(const HarmonicLogSeries& a, const HarmonicLogSeries& b);
HarmonicLogSeries sub(const HarmonicLogSeries& a, const HarmonicLogSeries& b);
HarmonicLogSeries scale(const HarmonicLogSeries& a, const Rat& c);
/// True when a and b agree on every degree both know.
bool agree(const HarmonicLogSeries& a, const HarmonicLogSeries& b);

/// lambda_n^(t) = x^n sum_i c_i (log x)^i; the map is i -> c_i.
std::map<int, Rat> harmonic_log(int n, int t);

/// T s with the window rule floor' = max(floor - v_T, top - order_T + 1),
/// top' = top - v_T.
HarmonicLogSeries apply_operator(const ShiftInvariantOperator& t, const HarmonicLogSeries& s);
/// D^k for any integer k (exact).
HarmonicLogSeries apply_derivative_power(int k, const HarmonicLogSeries& s);

/// sigma lambda_n = lambda_{n+1} (n != -1), sigma lambda_{-1} = 0.
HarmonicLogSeries roman_shift(const HarmonicLogSeries& s);

/// Coefficient of lambda_0^(t) when s has order t, else 0.
Rat augmentation(const HarmonicLogSeries& s, int t);

/// Relabel to order to_t (degrees below 0 vanish when to_t = 0).
HarmonicLogSeries skip(const HarmonicLogSeries& s, int to_t);

/// f'(D) lambda_{-1}^(1) on the window [-depth, -1].
HarmonicLogSeries residual_term(const DeltaOperator& f, int depth);

/// p_n^(1) = [n]! f'(D) f(D)^(-1-n) lambda_{-1}^(1), on [n-depth+1, n].
/// Exact windows need depth < order of f.
HarmonicLogSeries log_sequence(const DeltaOperator& f, int n, int depth);

/// Order-(1) sequence of binomial type with a lazily filled term cache.
/// Reads may run concurrently; inserts are exclusive.
class LogBinomialSequence {
public:
    LogBinomialSequence(DeltaOperator f, int depth);

    const DeltaOperator& op() const { return op_; }
    int depth() const { return depth_; }
    const HarmonicLogSeries& residual() const { return residual_; }
    HarmonicLogSeries term(int n) const;

private:
    DeltaOperator op_;
    int depth_;
    HarmonicLogSeries residual_;
    mutable std::unique_ptr<std::shared_mutex> mutex_;
    mutable std::map<int, HarmonicLogSeries> cache_;
};

/// (x)_n^(1): log_sequence of the forward difference, checked for n >= 0
/// against log_lower_factorial_bernoulli. Throws std::logic_error on mismatch.
HarmonicLogSeries log_lower_factorial(int n, int depth);
/// E^1 sum_k B_{k,n+1} [n|k] lambda_{n-k}, n >= 0.
HarmonicLogSeries log_lower_factorial_bernoulli(int n, int depth);

/// sum_k (<g(D)^k lambda_n>_(1) / [k]!) lambda_k^(1) on [n-depth+1, n].
HarmonicLogSeries log_conjugate_sequence(const DeltaOperator& g, int n, int depth);

/// Coefficients over a window of degrees.
struct CoefficientWindow {
    int floor = 0;
    int top = -1;
    std::map<int, Rat> coeffs;

    Rat at(int n) const;
};

/// Coefficients a_n = <Delta^n s>_(1) / [n]! of s over (x)_n^(1).
CoefficientWindow newton_expand(const HarmonicLogSeries& s);
/// sum a_n (x)_n^(1) on degrees >= floor.
HarmonicLogSeries newton_resum(const CoefficientWindow& w, int floor);

struct NumericValue {
    std::string decimal;
    double value = 0.0;
    /// Estimated size of the omitted tail when the window looks geometric.
    std::optional<double> tail_bound;
};

/// sum_j c_j lambda_j^(t)(x0) evaluated with `digits` significant digits.
NumericValue evaluate_numeric(const HarmonicLogSeries& s, const Rat& x0, int digits = 30);

}  // namespace umbra
