#include "umbra/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace umbra {

Rat::Rat(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("division by zero");
    q_ = mpq_class(num, den);
    q_.canonicalize();
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    q_ /= o.q_;
    return *this;
}

namespace {

BigInt parse_integer(std::string_view s, std::string_view whole) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
        neg = s[i] == '-';
        ++i;
    }
    if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    for (std::size_t j = i; j < s.size(); ++j) {
        if (!std::isdigit(static_cast<unsigned char>(s[j])))
            throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
    BigInt v(std::string(s.substr(i)), 10);
    return neg ? BigInt(-v) : v;
}

}  // namespace

Rat Rat::parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rat(parse_integer(text, text));
    const BigInt num = parse_integer(text.substr(0, slash), text);
    const auto den_text = text.substr(slash + 1);
    if (!den_text.empty() && (den_text[0] == '-' || den_text[0] == '+'))
        throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
    const BigInt den = parse_integer(den_text, text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rat(num, den);
}

Rat Rat::pow(long e) const {
    if (e < 0) {
        if (is_zero()) throw std::domain_error("zero to a negative power");
        return Rat(1) / pow(-e);
    }
    BigInt n, d;
    mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rat(n, d);
}

std::string Rat::str() const {
    if (is_integer()) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

std::string Rat::latex() const {
    if (is_integer()) return q_.get_num().get_str();
    const BigInt n = q_.get_num();
    const std::string body = "\\frac{" + BigInt(abs(n)).get_str() + "}{" + q_.get_den().get_str() + "}";
    return n < 0 ? "-" + body : body;
}

BigInt factorial(long n) {
    if (n < 0) throw std::domain_error("factorial of a negative integer");
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Rat binomial(const Rat& n, long k) {
    if (k < 0) return Rat(0);
    Rat r(1);
    for (long i = 0; i < k; ++i) r *= (n - Rat(i));
    return r / Rat(factorial(k));
}

}  // namespace umbra
