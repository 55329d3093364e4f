#pragma once

/**
 * @file operators.hpp
 * @brief Shift-invariant operators as series in D.
 *
 * An operator T = sum a_k D^k is stored as the TruncatedSeries of its
 * coefficients a_k in the symbol D. Acting on a polynomial of degree m only
 * needs a_0..a_m, so the action is exact whenever the truncation order
 * exceeds m. Laurent operators (negative powers of D) are representable but
 * only act on the logarithmic algebra (see log_algebra.hpp).
 */

#include <map>
#include <string>
#include <vector>

#include "umbra/polynomial.hpp"
#include "umbra/series.hpp"

namespace umbra {

using ParamMap = std::map<std::string, Rat>;

class ShiftInvariantOperator {
public:
    ShiftInvariantOperator() = default;
    explicit ShiftInvariantOperator(TruncatedSeries series, std::string name = {}, ParamMap params = {})
        : series_(std::move(series)), name_(std::move(name)), params_(std::move(params)) {}

    const TruncatedSeries& series() const { return series_; }
    const std::string& name() const { return name_; }
    const ParamMap& parameters() const { return params_; }
    int order() const { return series_.order(); }

private:
    TruncatedSeries series_;
    std::string name_;
    ParamMap params_;
};

/// A shift-invariant operator whose series has valuation exactly 1.
class DeltaOperator {
public:
    /// Throws precondition_error("not a delta series") unless valuation is 1.
    explicit DeltaOperator(ShiftInvariantOperator op);
    explicit DeltaOperator(TruncatedSeries series, std::string name = {})
        : DeltaOperator(ShiftInvariantOperator(std::move(series), std::move(name))) {}

    const ShiftInvariantOperator& op() const { return op_; }
    const TruncatedSeries& series() const { return op_.series(); }
    const std::string& name() const { return op_.name(); }
    int order() const { return op_.order(); }

    operator const ShiftInvariantOperator&() const { return op_; }  // NOLINT

private:
    ShiftInvariantOperator op_;
};

/// Names accepted by catalog(): derivative, shift (a), forward_difference,
/// backward_difference, abel (b), laguerre, weierstrass, bernoulli_op.
const std::vector<std::string>& catalog_names();

/// Named operator known to `order` (exponents of D below `order`).
/// Missing parameters default to a = 1, b = 1.
ShiftInvariantOperator catalog(const std::string& name, const ParamMap& params, int order);
/// catalog() checked to be a delta operator.
DeltaOperator catalog_delta(const std::string& name, const ParamMap& params, int order);

/// k-th derivative of a polynomial.
Polynomial derivative(const Polynomial& p, int k = 1);

/// sum a_k D^k p, exact. Requires valuation >= 0 and order > deg p.
Polynomial apply_to_polynomial(const ShiftInvariantOperator& t, const Polynomial& p);

/// T' : formal derivative of the series in D.
ShiftInvariantOperator pincherle_derivative(const ShiftInvariantOperator& t);

/// e.g.f. coefficients c_0..c_{count-1} of T = sum c_k Q^k / k!.
/// count < 0 means every coefficient the inputs determine.
std::vector<Rat> expand_in_basis(const ShiftInvariantOperator& t, const DeltaOperator& q, int count = -1);

/// Coefficients of g(f^(-1)(t)) by residues: the coefficient of t^k is the
/// coefficient of t^(-1) in g(t) f'(t) f(t)^(-1-k). Returns the series on
/// exponents [v_g, k_max]; k_max < 0 picks the largest determined degree.
TruncatedSeries lagrange_inversion(const DeltaOperator& f, const TruncatedSeries& g, int k_max = -1);

/// Largest k for which lagrange_inversion(f, g, k) is determined.
int lagrange_max_degree(const DeltaOperator& f, const TruncatedSeries& g);

}  // namespace umbra
