#pragma once

/**
 * @file sequences.hpp
 * @brief Polynomial sequences of binomial type.
 *
 * Every sequence is tied to its delta operator f(D) and satisfies
 * f p_n = n p_{n-1}, p_n(0) = [n == 0]. Generating p_0..p_N exactly needs
 * f known through D^(N+1) for the transfer formula, through D^N for the
 * recurrence.
 */

#include <optional>
#include <string>
#include <vector>

#include "umbra/operators.hpp"
#include "umbra/polynomial.hpp"

namespace umbra {

enum class GenerationMethod { transfer, recurrence, conjugate };

std::string to_string(GenerationMethod m);

class BinomialSequence {
public:
    BinomialSequence(DeltaOperator op, std::vector<Polynomial> polys, GenerationMethod method)
        : op_(std::move(op)), polys_(std::move(polys)), method_(method) {}

    const DeltaOperator& op() const { return op_; }
    GenerationMethod method() const { return method_; }
    /// Number of cached terms (p_0 .. p_{size-1}).
    int size() const { return static_cast<int>(polys_.size()); }
    const Polynomial& operator[](int n) const;
    const std::vector<Polynomial>& polynomials() const { return polys_; }

private:
    DeltaOperator op_;
    std::vector<Polynomial> polys_;
    GenerationMethod method_;
};

/// Lower-triangular c_{nk}, 0 <= k <= n <= N.
struct ConnectionMatrix {
    std::string source;
    std::string target;
    std::vector<std::vector<Rat>> rows;

    int size() const { return static_cast<int>(rows.size()); }
    Rat entry(int n, int k) const;
};

/// p_n = f'(D) g(D)^(-n-1) x^n with f = D g.
BinomialSequence generate_transfer(const DeltaOperator& f, int n_max);
/// p_n = x f'(D)^(-1) p_{n-1}.
BinomialSequence generate_recurrence(const DeltaOperator& f, int n_max);
/// p_n = sum_k (<g(D)^k x^n>_0 / k!) x^k; binomial type for g^(-1).
BinomialSequence conjugate_sequence(const DeltaOperator& g, int n_max);

/// d_k with p = sum d_k q_k, q the sequence of `q_op`; d_k = <Q^k p>_0 / k!.
std::vector<Rat> taylor_expand(const Polynomial& p, const DeltaOperator& q_op);

/// r_n = sum_k [x^k]q_n * p_k, the sequence of q.op()(p.op()(D)).
BinomialSequence umbral_compose(const BinomialSequence& q, const BinomialSequence& p);

/// Coefficients c_{nk} with h_n = sum_k c_{nk} g_k, where g_k and h_k are the
/// sequences of g and h. Computed as the sequence of h(g^(-1)(D)).
ConnectionMatrix connection_constants(const DeltaOperator& g, const DeltaOperator& h, int n_max);

/// Sequence of e^(bD) f(D).
BinomialSequence ramey_sequence(const DeltaOperator& f, const Rat& b, int n_max);

struct BinomialWitness {
    bool holds = true;
    std::optional<Rat> a;
    std::optional<Rat> x;
    Rat lhs;
    Rat rhs;
};

/// Checks p_n(x+a) = sum_k C(n,k) p_k(a) p_{n-k}(x) on an (n+1)x(n+1) grid of
/// distinct rationals, which certifies the bivariate identity.
BinomialWitness verify_binomial_identity(const BinomialSequence& s, int n);

/// Distinct grid points used by verify_binomial_identity.
std::vector<Rat> certification_grid(int count);

}  // namespace umbra
