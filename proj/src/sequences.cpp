#include "umbra/sequences.hpp"

#include "umbra/errors.hpp"
#include "umbra/numbers.hpp"

namespace umbra {

std::string to_string(GenerationMethod m) {
    switch (m) {
        case GenerationMethod::transfer: return "transfer";
        case GenerationMethod::recurrence: return "recurrence";
        case GenerationMethod::conjugate: return "conjugate";
    }
    return "unknown";
}

const Polynomial& BinomialSequence::operator[](int n) const {
    if (n < 0 || n >= size()) throw precondition_error("sequence index " + std::to_string(n) + " not generated");
    return polys_[static_cast<std::size_t>(n)];
}

Rat ConnectionMatrix::entry(int n, int k) const {
    if (n < 0 || n >= size()) throw precondition_error("connection row out of range");
    if (k < 0 || k > n) return Rat(0);
    return rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

namespace {

void check_count(int n_max) {
    if (n_max < 0) throw precondition_error("sequence length must be nonnegative");
}

}  // namespace

BinomialSequence generate_transfer(const DeltaOperator& f, int n_max) {
    check_count(n_max);
    const TruncatedSeries g = shift_exponent(f.series(), -1);
    const TruncatedSeries df = formal_derivative(f.series());
    const TruncatedSeries g_inv = reciprocal(g);
    std::vector<Polynomial> polys;
    TruncatedSeries power = g_inv;  // g^(-n-1)
    for (int n = 0; n <= n_max; ++n) {
        const ShiftInvariantOperator op(mul(df, power));
        polys.push_back(apply_to_polynomial(op, Polynomial::monomial(Rat(1), n)));
        power = mul(power, g_inv);
    }
    return {f, std::move(polys), GenerationMethod::transfer};
}

BinomialSequence generate_recurrence(const DeltaOperator& f, int n_max) {
    check_count(n_max);
    const ShiftInvariantOperator step(reciprocal(formal_derivative(f.series())));
    std::vector<Polynomial> polys{Polynomial::constant(Rat(1))};
    for (int n = 1; n <= n_max; ++n)
        polys.push_back(Polynomial::x() * apply_to_polynomial(step, polys.back()));
    return {f, std::move(polys), GenerationMethod::recurrence};
}

BinomialSequence conjugate_sequence(const DeltaOperator& g, int n_max) {
    check_count(n_max);
    const int needed = n_max + 1;
    if (g.order() < needed) throw precondition_error("truncation too small for exact action");
    // coefficient of x^k in p_n is n! [t^n] g^k / k!
    std::vector<std::vector<Rat>> table(static_cast<std::size_t>(n_max + 1));
    table[0].push_back(Rat(1));
    for (int n = 1; n <= n_max; ++n) table[static_cast<std::size_t>(n)].assign(static_cast<std::size_t>(n + 1), Rat(0));
    TruncatedSeries power = g.series();
    for (int k = 1; k <= n_max; ++k) {
        for (int n = k; n <= n_max; ++n)
            table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)] =
                Rat(factorial(n)) * power.coeff(n) / Rat(factorial(k));
        power = mul(power, g.series());
    }
    std::vector<Polynomial> polys;
    for (auto& row : table) polys.emplace_back(std::move(row));
    DeltaOperator f(compositional_inverse(g.series()), g.name().empty() ? "" : g.name() + "^(-1)");
    return {std::move(f), std::move(polys), GenerationMethod::conjugate};
}

std::vector<Rat> taylor_expand(const Polynomial& p, const DeltaOperator& q_op) {
    std::vector<Rat> d;
    Polynomial cur = p;
    for (int k = 0; k <= p.degree(); ++k) {
        d.push_back(cur(Rat(0)) / Rat(factorial(k)));
        cur = apply_to_polynomial(q_op, cur);
    }
    return d;
}

BinomialSequence umbral_compose(const BinomialSequence& q, const BinomialSequence& p) {
    const int n = std::min(q.size(), p.size());
    std::vector<Polynomial> polys;
    for (int i = 0; i < n; ++i) {
        Polynomial r;
        for (int k = 0; k <= q[i].degree(); ++k) r += q[i].coeff(k) * p[k];
        polys.push_back(std::move(r));
    }
    const std::string name = q.op().name().empty() || p.op().name().empty()
                                 ? std::string{}
                                 : q.op().name() + "(" + p.op().name() + ")";
    DeltaOperator op(compose(q.op().series(), p.op().series()), name);
    return {std::move(op), std::move(polys), q.method()};
}

ConnectionMatrix connection_constants(const DeltaOperator& g, const DeltaOperator& h, int n_max) {
    const DeltaOperator f(compose(h.series(), compositional_inverse(g.series())));
    const BinomialSequence s = generate_transfer(f, n_max);
    ConnectionMatrix m{g.name(), h.name(), {}};
    for (const Polynomial& p : s.polynomials()) {
        std::vector<Rat> row;
        for (int k = 0; k <= p.degree(); ++k) row.push_back(p.coeff(k));
        m.rows.push_back(std::move(row));
    }
    return m;
}

BinomialSequence ramey_sequence(const DeltaOperator& f, const Rat& b, int n_max) {
    const ShiftInvariantOperator e = catalog("shift", {{"a", b}}, f.order());
    DeltaOperator op(mul(e.series(), f.series()), f.name().empty() ? "" : "ramey(" + f.name() + ")");
    return generate_transfer(op, n_max);
}

std::vector<Rat> certification_grid(int count) {
    // -count/2, ..., spaced by 1/3 off the integers to avoid special points.
    std::vector<Rat> pts;
    for (int i = 0; i < count; ++i) pts.push_back(Rat(i - count / 2) + Rat(1, 3));
    return pts;
}

BinomialWitness verify_binomial_identity(const BinomialSequence& s, int n) {
    if (n < 0 || n >= s.size()) throw precondition_error("verify_binomial_identity: n beyond generated terms");
    const std::vector<Rat> grid = certification_grid(n + 1);
    BinomialWitness w;
    for (const Rat& a : grid) {
        std::vector<Rat> pa;
        for (int k = 0; k <= n; ++k) pa.push_back(s[k](a));
        for (const Rat& x : grid) {
            const Rat lhs = s[n](x + a);
            Rat rhs;
            for (int k = 0; k <= n; ++k) rhs += binomial(Rat(n), k) * pa[static_cast<std::size_t>(k)] * s[n - k](x);
            if (lhs != rhs) return {false, a, x, lhs, rhs};
        }
    }
    return w;
}

}  // namespace umbra
