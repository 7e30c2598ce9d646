#pragma once

// Sequences a in Sigma (a_1 = 1, a_j > 1 afterwards), the groups Q(a) they
// present, and the conversions between Q(a) and Baer types.

#include <cstdint>
#include <queue>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "kronecker/baer.hpp"

namespace kronecker {

struct ConstantTail {
    std::uint64_t c;
    friend bool operator==(const ConstantTail&, const ConstantTail&) = default;
};

struct PeriodicTail {
    std::vector<std::uint64_t> period;
    friend bool operator==(const PeriodicTail&, const PeriodicTail&) = default;
};

/// a_j = j past the prefix; with prefix (1) this gives a = (1,2,3,...) and
/// omega_j(a) = 1/j!.
struct IncrementTail {
    friend bool operator==(const IncrementTail&, const IncrementTail&) = default;
};

/// The m-th tail entry is p_(2m-1): 2, 5, 11, 17, ...
struct OddIndexedPrimesTail {
    friend bool operator==(const OddIndexedPrimesTail&, const OddIndexedPrimesTail&) = default;
};

/// Ascending enumeration of the prime powers p^l with 1 <= l <= Lambda_p, each
/// contributing the entry p. The accumulated exponents reproduce Lambda exactly.
struct PrimePowersTail {
    SupernaturalNumber lambda;
    friend bool operator==(const PrimePowersTail&, const PrimePowersTail&) = default;
};

using SigmaTail = std::variant<ConstantTail, PeriodicTail, IncrementTail, OddIndexedPrimesTail, PrimePowersTail>;

class SigmaSequence {
public:
    SigmaSequence(std::vector<std::uint64_t> prefix, SigmaTail tail) : prefix_(std::move(prefix)), tail_(std::move(tail)) {
        validate();
    }

    static SigmaSequence constant(std::uint64_t c) { return SigmaSequence({1}, ConstantTail{c}); }
    static SigmaSequence factorial() { return SigmaSequence({1}, IncrementTail{}); }
    static SigmaSequence odd_indexed_primes() { return SigmaSequence({1}, OddIndexedPrimesTail{}); }

    const std::vector<std::uint64_t>& prefix() const { return prefix_; }
    const SigmaTail& tail() const { return tail_; }

    /// First n entries a_1..a_n.
    std::vector<Integer> values(std::size_t n) const {
        std::vector<Integer> out;
        out.reserve(n);
        for (std::size_t j = 1; j <= n && j <= prefix_.size(); ++j) out.emplace_back(static_cast<unsigned long>(prefix_[j - 1]));
        if (out.size() == n) return out;
        std::size_t need = n - out.size();
        std::size_t start = prefix_.size();
        std::visit(
            [&](const auto& t) {
                using T = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<T, ConstantTail>) {
                    for (std::size_t m = 1; m <= need; ++m) out.emplace_back(static_cast<unsigned long>(t.c));
                } else if constexpr (std::is_same_v<T, PeriodicTail>) {
                    for (std::size_t m = 1; m <= need; ++m)
                        out.emplace_back(static_cast<unsigned long>(t.period[(m - 1) % t.period.size()]));
                } else if constexpr (std::is_same_v<T, IncrementTail>) {
                    for (std::size_t m = 1; m <= need; ++m) out.emplace_back(static_cast<unsigned long>(start + m));
                } else if constexpr (std::is_same_v<T, OddIndexedPrimesTail>) {
                    for (std::size_t m = 1; m <= need; ++m)
                        out.emplace_back(static_cast<unsigned long>(primes::nth(2 * m - 1)));
                } else {
                    for (auto p : enumerate_prime_powers(t.lambda, need)) out.emplace_back(static_cast<unsigned long>(p));
                }
            },
            tail_);
        return out;
    }

    Integer at(std::size_t j) const {
        if (j == 0) throw DomainError("sequence indices start at 1");
        return values(j).back();
    }

    /// omega_j(a) = 1 / (a_1 ... a_j) for j = 1..n.
    std::vector<Rational> inverse_products(std::size_t n) const {
        std::vector<Rational> out;
        Integer prod = 1;
        for (const auto& a : values(n)) {
            prod *= a;
            out.emplace_back(Integer(1), prod);
        }
        return out;
    }

    friend bool operator==(const SigmaSequence&, const SigmaSequence&) = default;

private:
    std::vector<std::uint64_t> prefix_;
    SigmaTail tail_;

    void validate() const {
        if (prefix_.empty() || prefix_.front() != 1)
            throw ValidationError("sequence in Sigma must start with a_1 = 1");
        for (std::size_t j = 1; j < prefix_.size(); ++j)
            if (prefix_[j] < 2)
                throw ValidationError("sequence entry a_" + std::to_string(j + 1) + " = " + std::to_string(prefix_[j]) +
                                      " must exceed 1");
        std::visit(
            [](const auto& t) {
                using T = std::decay_t<decltype(t)>;
                if constexpr (std::is_same_v<T, ConstantTail>) {
                    if (t.c < 2) throw ValidationError("constant tail must exceed 1");
                } else if constexpr (std::is_same_v<T, PeriodicTail>) {
                    if (t.period.empty()) throw ValidationError("periodic tail needs at least one entry");
                    for (auto v : t.period)
                        if (v < 2) throw ValidationError("periodic tail entries must exceed 1");
                } else if constexpr (std::is_same_v<T, PrimePowersTail>) {
                    if (t.lambda.is_finite())
                        throw ValidationError("prime-power tail needs an infinite supernatural number");
                }
            },
            tail_);
    }

    static std::vector<std::uint64_t> enumerate_prime_powers(const SupernaturalNumber& lambda, std::size_t count) {
        // Min-heap of candidate prime powers (value, prime, power).
        struct Candidate {
            Integer value;
            std::uint64_t prime;
            unsigned long power;
            bool generic;
            bool operator>(const Candidate& o) const { return value > o.value; }
        };
        std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap;
        auto positive = [&](std::uint64_t p) { return !lambda.exponent(p).is_zero(); };
        for (const auto& [p, e] : lambda.exceptions())
            if (!e.is_zero()) heap.push({Integer(static_cast<unsigned long>(p)), p, 1, false});
        // next prime of a parity class that is not an exception
        auto next_generic = [&](std::size_t from_index, bool odd) -> std::size_t {
            std::size_t n = from_index;
            while ((n % 2 == 1) != odd || lambda.exceptions().contains(primes::nth(n))) ++n;
            return n;
        };
        if (!lambda.odd_indexed_default().is_zero()) {
            auto n = next_generic(1, true);
            heap.push({Integer(static_cast<unsigned long>(primes::nth(n))), primes::nth(n), 1, true});
        }
        if (!lambda.even_indexed_default().is_zero()) {
            auto n = next_generic(2, false);
            heap.push({Integer(static_cast<unsigned long>(primes::nth(n))), primes::nth(n), 1, true});
        }
        std::vector<std::uint64_t> out;
        while (out.size() < count) {
            if (heap.empty()) throw DomainError("prime-power enumeration exhausted (finite supernatural number)");
            Candidate c = heap.top();
            heap.pop();
            out.push_back(c.prime);
            Exponent e = lambda.exponent(c.prime);
            if (e.is_infinite() || c.power + 1 <= e.value())
                heap.push({c.value * Integer(static_cast<unsigned long>(c.prime)), c.prime, c.power + 1, false});
            if (c.generic && c.power == 1) {
                std::size_t idx = primes::index_of(c.prime);
                auto n = next_generic(idx + 2, idx % 2 == 1);
                if (positive(primes::nth(n)))
                    heap.push({Integer(static_cast<unsigned long>(primes::nth(n))), primes::nth(n), 1, true});
            }
        }
        return out;
    }
};

/// Baer type of Q(a): Lambda_p is the total exponent of p over all a_k, with
/// the tail resolved analytically; i = 1. `depth` entries are scanned to check
/// that the finite partial products stay below the analytic answer.
inline BaerType qa_to_baer(const SigmaSequence& a, std::size_t depth = 16) {
    SupernaturalNumber lambda;
    for (auto v : a.prefix())
        for (const auto& [p, e] : primes::factorize(Integer(static_cast<unsigned long>(v))))
            lambda = lambda + SupernaturalNumber::at({{p, Exponent(static_cast<unsigned long>(e))}});
    SupernaturalNumber tail = std::visit(
        [](const auto& t) -> SupernaturalNumber {
            using T = std::decay_t<decltype(t)>;
            if constexpr (std::is_same_v<T, ConstantTail>) {
                SupernaturalNumber s;
                for (const auto& [p, e] : primes::factorize(Integer(static_cast<unsigned long>(t.c))))
                    s.set(p, Exponent::infinity());
                return s;
            } else if constexpr (std::is_same_v<T, PeriodicTail>) {
                SupernaturalNumber s;
                for (auto v : t.period)
                    for (const auto& [p, e] : primes::factorize(Integer(static_cast<unsigned long>(v))))
                        s.set(p, Exponent::infinity());
                return s;
            } else if constexpr (std::is_same_v<T, IncrementTail>) {
                return SupernaturalNumber::all_infinite();
            } else if constexpr (std::is_same_v<T, OddIndexedPrimesTail>) {
                return SupernaturalNumber::uniform(1, 0);
            } else {
                return t.lambda;
            }
        },
        a.tail());
    lambda = lambda + tail;

    std::map<std::uint64_t, unsigned long> partial;
    for (const auto& v : a.values(depth))
        for (const auto& [p, e] : primes::factorize(v)) partial[p] += static_cast<unsigned long>(e);
    for (const auto& [p, e] : partial) {
        Exponent bound = lambda.exponent(p);
        if (!bound.is_infinite() && e > bound.value())
            throw UnsupportedStructure("prefix of a exceeds the analytic exponent at prime " + std::to_string(p));
    }
    return BaerType(1, lambda);
}

/// A sequence a in Sigma with Q(a) isomorphic to the non-free type t, built by
/// listing the admissible prime powers p^l (l <= Lambda_p) in ascending order.
inline SigmaSequence baer_to_qa(const BaerType& t) {
    if (is_free(t)) throw DomainError("free Baer type " + t.lambda.to_string() + " is cyclic, not of the form Q(a)");
    const auto& lambda = t.lambda;
    // A single infinite prime and nothing else enumerates as (1, p, p, p, ...).
    if (lambda.odd_indexed_default().is_zero() && lambda.even_indexed_default().is_zero() &&
        lambda.exceptions().size() == 1 && lambda.exceptions().begin()->second.is_infinite())
        return SigmaSequence::constant(lambda.exceptions().begin()->first);
    return SigmaSequence({1}, PrimePowersTail{lambda});
}

} // namespace kronecker
