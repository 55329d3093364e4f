#pragma once

// Shared helpers for the unit and property tests: seeded generators and
// brute-force oracles that do not go through the library code paths.

#include <random>
#include <vector>

#include "umbra/polynomial.hpp"
#include "umbra/series.hpp"

namespace umbra::testing {

inline std::mt19937_64& rng() {
    static std::mt19937_64 gen(0x5eed1234ULL);
    return gen;
}

inline Rat random_rat(int span = 5, int den = 4) {
    std::uniform_int_distribution<int> num(-span, span);
    std::uniform_int_distribution<int> d(1, den);
    return Rat(num(rng()), d(rng()));
}

inline TruncatedSeries random_series(int start, int order, int span = 5) {
    std::vector<Rat> c;
    for (int e = start; e < order; ++e) c.push_back(random_rat(span));
    return TruncatedSeries::from_coefficients(start, c, order);
}

/// Random series with nonzero coefficient at `start`.
inline TruncatedSeries random_unit_series(int start, int order) {
    std::vector<Rat> c{Rat(1) + Rat(std::uniform_int_distribution<int>(0, 3)(rng()))};
    for (int e = start + 1; e < order; ++e) c.push_back(random_rat());
    return TruncatedSeries::from_coefficients(start, c, order);
}

inline Polynomial random_polynomial(int degree) {
    std::vector<Rat> c;
    for (int k = 0; k <= degree; ++k) c.push_back(random_rat());
    if (c.back().is_zero()) c.back() = Rat(1);
    return Polynomial(std::move(c));
}

/// Coefficients of prod_i (x - r_i) by direct multiplication.
inline std::vector<Rat> expand_roots(const std::vector<Rat>& roots) {
    std::vector<Rat> c{Rat(1)};
    for (const Rat& r : roots) {
        std::vector<Rat> next(c.size() + 1);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

inline Rat factorial_rat(int n) {
    Rat r(1);
    for (int i = 2; i <= n; ++i) r *= Rat(i);
    return r;
}

inline Rat choose(int n, int k) {
    if (k < 0 || k > n) return Rat(0);
    return factorial_rat(n) / (factorial_rat(k) * factorial_rat(n - k));
}

}  // namespace umbra::testing
