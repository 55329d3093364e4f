#include <doctest.h>

#include "umbra/errors.hpp"
#include "umbra/rational.hpp"

using namespace umbra;

TEST_CASE("rationals are canonical") {
    CHECK(Rat(2, 4) == Rat(1, 2));
    CHECK(Rat(3, -6).str() == "-1/2");
    CHECK(Rat(0, 5).str() == "0");
    CHECK(Rat(0, -5).denominator() == 1);
    CHECK(Rat(6, 3).is_integer());
    CHECK_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("parsing and printing") {
    CHECK(Rat::parse("7") == Rat(7));
    CHECK(Rat::parse("-3/9") == Rat(-1, 3));
    CHECK(Rat::parse("123456789012345678901234567890").str() == "123456789012345678901234567890");
    CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(Rat::parse("1.5"), std::invalid_argument);
    CHECK(Rat(-3, 4).latex() == "-\\frac{3}{4}");
    CHECK(Rat(5).latex() == "5");
}

TEST_CASE("arithmetic") {
    CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
    CHECK(Rat(1, 2) * Rat(2, 3) == Rat(1, 3));
    CHECK(Rat(1, 2) / Rat(1, 4) == Rat(2));
    CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
    CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
    CHECK_THROWS_AS(Rat(0).pow(-1), std::domain_error);
    CHECK(Rat(-1, 2) < Rat(1, 3));
    CHECK(binomial(Rat(-1), 3) == Rat(-1));
    CHECK(binomial(Rat(5), 2) == Rat(10));
    CHECK(factorial(20) == BigInt("2432902008176640000"));
}
