#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalars.
 *
 * Rat is the scalar field for every computation in umbra. It is a thin value
 * wrapper over GMP's mpq_class; every arithmetic result is canonical (lowest
 * terms, positive denominator, zero is 0/1), so equality is structural.
 */

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace umbra {

using BigInt = mpz_class;

class Rat {
public:
    Rat() = default;
    Rat(int v) : q_(v) {}  // NOLINT: implicit by design of a scalar type
    Rat(long v) : q_(v) {}  // NOLINT
    Rat(long long v) : q_(BigInt(std::to_string(v))) {}  // NOLINT
    Rat(const BigInt& v) : q_(v) {}  // NOLINT
    Rat(const BigInt& num, const BigInt& den);
    Rat(long num, long den) : Rat(BigInt(num), BigInt(den)) {}

    /// Parses "p", "-p", "p/q" (decimal digits only). Throws std::invalid_argument.
    static Rat parse(std::string_view text);

    BigInt numerator() const { return q_.get_num(); }
    BigInt denominator() const { return q_.get_den(); }

    bool is_zero() const { return sgn(q_) == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    /// Exact integer power; negative exponents require a nonzero base.
    Rat pow(long e) const;

    /// "p/q", or "p" when q = 1.
    std::string str() const;
    /// \frac{p}{q} (with sign pulled out), or p.
    std::string latex() const;
    double to_double() const { return q_.get_d(); }
    const mpq_class& raw() const { return q_; }

    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o);

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
    friend Rat operator-(const Rat& a) { Rat r; r.q_ = -a.q_; return r; }

    friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
    friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
        const int c = cmp(a.q_, b.q_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

    friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

private:
    mpq_class q_{0};
};

/// n! as an exact integer; n >= 0.
BigInt factorial(long n);

/// Binomial coefficient C(n, k) for integer n (any sign) and k >= 0.
Rat binomial(const Rat& n, long k);

}  // namespace umbra
