#pragma once

/**
 * @file numbers.hpp
 * @brief Roman factorials, Stirling and Bernoulli numbers, elementary
 * symmetric functions.
 *
 * Roman factorial:
 *     [n]! = n!                       n >= 0
 *     [n]! = (-1)^(n-1) / (-n-1)!     n < 0
 * so that [n]!/[n-1]! = [n], where [n] = n for n != 0 and [0] = 1.
 *
 * Stirling numbers of the first kind are defined for every integer degree as
 * the coefficients of y^k in (y)_n = Gamma(y+1)/Gamma(y-n+1). For n < 0 this
 * is the power series 1/((y+1)(y+2)...(y-n)), which is only known to a finite
 * working order.
 */

#include <map>
#include <mutex>
#include <shared_mutex>
#include <span>
#include <utility>
#include <vector>

#include "umbra/rational.hpp"

namespace umbra {

Rat roman_factorial(long n);
long roman_number(long n);
/// [j]! / ([k]! [j-k]!).
Rat roman_coefficient(long j, long k);

/// Memoizing engine for the tabulated numbers. All members are safe to call
/// concurrently; caches are guarded by a shared mutex.
class NumberTables {
public:
    /// s(n, k); `order` bounds k for negative n (k < order required there).
    Rat stirling_first(long n, long k, int order);
    Rat stirling_second(long n, long k);
    Rat bernoulli(long k);
    /// B_{k,n}: (t/(e^t - 1))^n = sum B_{k,n} t^k / k!, n >= 1.
    Rat bernoulli_higher(long k, long n);

private:
    const std::vector<Rat>& stirling_first_row(long n, int order);
    Rat higher_bernoulli_entry(long n, long k);

    std::shared_mutex mutex_;
    std::map<std::pair<long, int>, std::vector<Rat>> stirling1_;
    std::map<long, std::vector<Rat>> stirling2_;
    std::map<long, std::vector<Rat>> bernoulli_;  // keyed by power n
};

/// Process-wide tables used by the free functions below.
NumberTables& default_tables();

inline Rat stirling_first(long n, long k, int order) { return default_tables().stirling_first(n, k, order); }
inline Rat stirling_second(long n, long k) { return default_tables().stirling_second(n, k); }
inline Rat bernoulli(long k) { return default_tables().bernoulli(k); }
inline Rat bernoulli_higher(long k, long n) { return default_tables().bernoulli_higher(k, n); }

/// Coefficient of y^n in prod (1 + x_i y).
Rat elementary_symmetric(long n, std::span<const Rat> values);

/// Lower factorial (a)_k = a(a-1)...(a-k+1), k >= 0.
Rat falling_factorial(const Rat& a, long k);

}  // namespace umbra
