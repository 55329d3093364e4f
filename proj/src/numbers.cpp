#include "umbra/numbers.hpp"

#include <algorithm>

#include "umbra/errors.hpp"
#include "umbra/series.hpp"

namespace umbra {

Rat roman_factorial(long n) {
    if (n >= 0) return Rat(factorial(n));
    // (-1)^(n-1) / (-n-1)!
    const Rat sign = ((n - 1) % 2 == 0) ? Rat(1) : Rat(-1);
    return sign / Rat(factorial(-n - 1));
}

long roman_number(long n) { return n == 0 ? 1 : n; }

Rat roman_coefficient(long j, long k) {
    return roman_factorial(j) / (roman_factorial(k) * roman_factorial(j - k));
}

Rat falling_factorial(const Rat& a, long k) {
    Rat r(1);
    for (long i = 0; i < k; ++i) r *= a - Rat(i);
    return r;
}

NumberTables& default_tables() {
    static NumberTables tables;
    return tables;
}

const std::vector<Rat>& NumberTables::stirling_first_row(long n, int order) {
    const std::pair<long, int> key{n, n >= 0 ? 0 : order};
    {
        std::shared_lock lock(mutex_);
        if (auto it = stirling1_.find(key); it != stirling1_.end()) return it->second;
    }
    std::vector<Rat> row;
    if (n >= 0) {
        // y(y-1)...(y-n+1), coefficients from degree 0 upward.
        row = {Rat(1)};
        for (long i = 0; i < n; ++i) {
            std::vector<Rat> next(row.size() + 1);
            for (std::size_t d = 0; d < row.size(); ++d) {
                next[d + 1] += row[d];
                next[d] -= Rat(i) * row[d];
            }
            row = std::move(next);
        }
    } else {
        std::vector<Rat> prod{Rat(1)};
        for (long i = 1; i <= -n; ++i) {
            std::vector<Rat> next(prod.size() + 1);
            for (std::size_t d = 0; d < prod.size(); ++d) {
                next[d + 1] += prod[d];
                next[d] += Rat(i) * prod[d];
            }
            prod = std::move(next);
        }
        const TruncatedSeries inv = reciprocal(TruncatedSeries::from_coefficients(0, prod, order));
        for (int k = 0; k < order; ++k) row.push_back(inv.coeff(k));
    }
    std::unique_lock lock(mutex_);
    return stirling1_.emplace(key, std::move(row)).first->second;
}

Rat NumberTables::stirling_first(long n, long k, int order) {
    if (k < 0) return Rat(0);
    if (n < 0 && k >= order)
        throw precondition_error("stirling_first: k must be below the working order for negative degree");
    const auto& row = stirling_first_row(n, n < 0 ? order : 0);
    return static_cast<std::size_t>(k) < row.size() ? row[static_cast<std::size_t>(k)] : Rat(0);
}

Rat NumberTables::stirling_second(long n, long k) {
    if (n < 0) throw precondition_error("stirling_second requires n >= 0");
    if (k < 0 || k > n) return Rat(0);
    {
        std::shared_lock lock(mutex_);
        if (auto it = stirling2_.find(n); it != stirling2_.end()) return it->second[static_cast<std::size_t>(k)];
    }
    // S(m, j) = j S(m-1, j) + S(m-1, j-1)
    std::vector<Rat> row{Rat(1)};
    for (long m = 1; m <= n; ++m) {
        std::vector<Rat> next(static_cast<std::size_t>(m + 1));
        for (long j = 1; j <= m; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const Rat same = ju < row.size() ? row[ju] : Rat(0);
            next[ju] = Rat(j) * same + row[ju - 1];
        }
        row = std::move(next);
    }
    std::unique_lock lock(mutex_);
    return stirling2_.emplace(n, std::move(row)).first->second[static_cast<std::size_t>(k)];
}

Rat NumberTables::higher_bernoulli_entry(long n, long k) {
    const auto ku = static_cast<std::size_t>(k);
    {
        std::shared_lock lock(mutex_);
        if (auto it = bernoulli_.find(n); it != bernoulli_.end() && it->second.size() > ku) return it->second[ku];
    }
    const int order = static_cast<int>(std::max<long>(2 * k + 1, 16));
    std::vector<Rat> expm1_over_t;
    for (int j = 0; j < order; ++j) expm1_over_t.push_back(Rat(1) / Rat(factorial(j + 1)));
    const TruncatedSeries gen = int_pow(reciprocal(TruncatedSeries::from_coefficients(0, expm1_over_t, order)),
                                        static_cast<int>(n));
    std::vector<Rat> row = hurwitz_coefficients(gen, order);
    const Rat value = row[ku];
    std::unique_lock lock(mutex_);
    auto& slot = bernoulli_[n];
    if (slot.size() < row.size()) slot = std::move(row);
    return value;
}

Rat NumberTables::bernoulli(long k) { return bernoulli_higher(k, 1); }

Rat NumberTables::bernoulli_higher(long k, long n) {
    if (k < 0) throw precondition_error("bernoulli index must be nonnegative");
    if (n < 1) throw precondition_error("bernoulli_higher requires a positive power");
    return higher_bernoulli_entry(n, k);
}

Rat elementary_symmetric(long n, std::span<const Rat> values) {
    if (n < 0) return Rat(0);
    std::vector<Rat> e{Rat(1)};
    for (const Rat& x : values) {
        e.push_back(Rat(0));
        for (std::size_t j = e.size() - 1; j > 0; --j) e[j] += x * e[j - 1];
    }
    return static_cast<std::size_t>(n) < e.size() ? e[static_cast<std::size_t>(n)] : Rat(0);
}

}  // namespace umbra
