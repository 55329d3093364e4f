#pragma once

#include <string>
#include <vector>

#include "umbra/rational.hpp"

namespace umbra {

/// Dense exact polynomial in x. The highest stored coefficient is nonzero;
/// the zero polynomial stores nothing and has degree -1.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rat> coeffs);

    static Polynomial constant(const Rat& c) { return Polynomial({c}); }
    static Polynomial x() { return Polynomial({Rat(0), Rat(1)}); }
    static Polynomial monomial(const Rat& c, int degree);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.empty(); }
    Rat coeff(int k) const;
    const std::vector<Rat>& coefficients() const { return coeffs_; }

    Rat operator()(const Rat& x) const;
    /// p(x + a).
    Polynomial shifted(const Rat& a) const;

    std::string str(const std::string& var = "x") const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    Polynomial& operator*=(const Rat& c);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(Polynomial a, const Rat& c) { return a *= c; }
    friend Polynomial operator*(const Rat& c, Polynomial a) { return a *= c; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial&, const Polynomial&) = default;

private:
    void trim();
    std::vector<Rat> coeffs_;
};

}  // namespace umbra
