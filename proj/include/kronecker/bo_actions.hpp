#pragma once

// Rational action profiles s_k (Birkhoff actions gamma_k = beta * s_k) and the
// sums sigma_j = sum_k min(j, k) s_k entering the Benjamin-Ono frequencies.

#include <optional>
#include <vector>

#include "kronecker/rational.hpp"

namespace kronecker {

/// s_k = c * r^(k - L - 1) for k > L, where L is the prefix length.
struct GeometricTail {
    Rational c;
    Rational r;
    friend bool operator==(const GeometricTail&, const GeometricTail&) = default;
};

class RationalSequenceSpec {
public:
    RationalSequenceSpec() = default;
    RationalSequenceSpec(std::vector<Rational> prefix, std::optional<GeometricTail> tail)
        : prefix_(std::move(prefix)), tail_(std::move(tail)) {
        for (std::size_t k = 0; k < prefix_.size(); ++k)
            if (prefix_[k] < 0)
                throw ValidationError("s_" + std::to_string(k + 1) + " = " + kronecker::to_string(prefix_[k]) +
                                      " is negative");
        if (tail_) {
            if (tail_->c < 0) throw ValidationError("geometric tail coefficient c must be >= 0");
            if (tail_->r <= 0 || tail_->r >= 1) throw ValidationError("geometric tail ratio r must lie in (0, 1)");
            if (tail_->c == 0) tail_.reset();
        }
    }

    /// s_k = ratio^k, i.e. c = r = ratio.
    static RationalSequenceSpec geometric(const Rational& ratio) { return {{}, GeometricTail{ratio, ratio}}; }

    const std::vector<Rational>& prefix() const { return prefix_; }
    const std::optional<GeometricTail>& tail() const { return tail_; }

    /// Infinitely many nonzero terms.
    bool infinite_support() const { return tail_.has_value(); }
    bool is_zero() const {
        if (tail_) return false;
        for (const auto& s : prefix_)
            if (s != 0) return false;
        return true;
    }

    Rational term(std::size_t k) const {
        if (k == 0) throw DomainError("action indices start at 1");
        if (k <= prefix_.size()) return prefix_[k - 1];
        if (!tail_) return 0;
        return tail_->c * power(tail_->r, k - prefix_.size() - 1);
    }

    /// g_n = sum_{k > n} s_k, from the geometric series in closed form.
    Rational tail_sum(std::size_t n) const {
        Rational s = 0;
        std::size_t L = prefix_.size();
        for (std::size_t k = n + 1; k <= L; ++k) s += prefix_[k - 1];
        if (tail_) {
            std::size_t skip = n > L ? n - L : 0;
            s += tail_->c * power(tail_->r, skip) / (Rational(1) - tail_->r);
        }
        return s;
    }

    /// sigma_j = sum_{k <= j} k s_k + j * sum_{k > j} s_k.
    Rational sigma(std::size_t j) const {
        if (j == 0) throw DomainError("sigma indices start at 1");
        Rational s = 0;
        for (std::size_t k = 1; k <= j; ++k) s += Rational(static_cast<unsigned long>(k)) * term(k);
        return s + Rational(static_cast<unsigned long>(j)) * tail_sum(j);
    }

    friend bool operator==(const RationalSequenceSpec&, const RationalSequenceSpec&) = default;

private:
    std::vector<Rational> prefix_;
    std::optional<GeometricTail> tail_;

    static Rational power(const Rational& r, std::size_t e) {
        Integer num, den;
        mpz_pow_ui(num.get_mpz_t(), r.get_num_mpz_t(), e);
        mpz_pow_ui(den.get_mpz_t(), r.get_den_mpz_t(), e);
        return Rational(num, den);
    }
};

} // namespace kronecker
