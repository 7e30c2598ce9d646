#pragma once

// Small-prime utilities: the ascending prime list p_1 = 2, p_2 = 3, ...

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "kronecker/rational.hpp"

namespace kronecker::primes {

namespace detail {

class Table {
public:
    static Table& instance() {
        static Table t;
        return t;
    }

    std::uint64_t nth(std::size_t n) {
        std::lock_guard lock(mutex_);
        while (n > primes_.size()) extend_locked(2 * sieved_);
        return primes_[n - 1];
    }

    std::size_t index_of(std::uint64_t p) {
        std::lock_guard lock(mutex_);
        extend_locked(p);
        auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
        if (it == primes_.end() || *it != p) return 0;
        return static_cast<std::size_t>(it - primes_.begin()) + 1;
    }

private:
    Table() { extend_locked(1 << 16); }

    // Ensures every prime <= limit is listed. Caller holds the mutex.
    void extend_locked(std::uint64_t limit) {
        if (limit <= sieved_) return;
        std::uint64_t target = std::max<std::uint64_t>(limit, 2 * sieved_);
        std::vector<bool> composite(target + 1, false);
        primes_.clear();
        for (std::uint64_t i = 2; i <= target; ++i) {
            if (composite[i]) continue;
            primes_.push_back(i);
            for (std::uint64_t k = i * i; k <= target; k += i) composite[k] = true;
        }
        sieved_ = target;
    }

    std::mutex mutex_;
    std::vector<std::uint64_t> primes_;
    std::uint64_t sieved_ = 0;
};

} // namespace detail

/// n-th prime in ascending order, 1-based (nth(1) = 2).
inline std::uint64_t nth(std::size_t n) {
    if (n == 0) throw DomainError("prime indices start at 1");
    return detail::Table::instance().nth(n);
}

/// 1-based index of p in the prime list, 0 if p is not prime.
inline std::size_t index_of(std::uint64_t p) {
    if (p < 2) return 0;
    if (p > 200'000'000) throw UnsupportedStructure("prime " + std::to_string(p) + " is beyond the indexed prime table");
    return detail::Table::instance().index_of(p);
}

inline bool is_prime(std::uint64_t p) {
    Integer n(static_cast<unsigned long>(p));
    return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0;
}

inline bool is_odd_indexed(std::uint64_t p) { return index_of(p) % 2 == 1; }

/// Prime factorization by trial division. Refuses cofactors that would need
/// more than `trial_limit` divisions.
inline std::map<std::uint64_t, long> factorize(const Integer& value, std::uint64_t trial_limit = 10'000'000) {
    if (value == 0) throw DomainError("cannot factorize zero");
    Integer n = abs(value);
    std::map<std::uint64_t, long> out;
    for (std::uint64_t d = 2; n > 1; d += (d == 2 ? 1 : 2)) {
        if (Integer(d) * Integer(d) > n) {
            if (!n.fits_ulong_p()) throw UnsupportedStructure("prime factor too large: " + n.get_str());
            out[n.get_ui()] += 1;
            break;
        }
        if (d > trial_limit)
            throw UnsupportedStructure("cannot factorize " + value.get_str() + " within the trial-division budget");
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
            out[d] += 1;
        }
    }
    return out;
}

} // namespace kronecker::primes
