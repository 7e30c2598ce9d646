#pragma once

// Supernatural numbers, Baer types of subgroups of Q, and closure descriptors.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "kronecker/primes.hpp"
#include "kronecker/rational.hpp"

namespace kronecker {

/// Element of N_0 plus infinity.
class Exponent {
public:
    constexpr Exponent() = default;
    constexpr Exponent(unsigned long v) : value_(v) {}

    static constexpr Exponent infinity() {
        Exponent e;
        e.infinite_ = true;
        return e;
    }

    constexpr bool is_infinite() const { return infinite_; }
    constexpr bool is_zero() const { return !infinite_ && value_ == 0; }
    unsigned long value() const {
        if (infinite_) throw DomainError("infinite exponent has no finite value");
        return value_;
    }

    friend constexpr Exponent operator+(Exponent a, Exponent b) {
        if (a.infinite_ || b.infinite_) return infinity();
        return Exponent(a.value_ + b.value_);
    }

    friend constexpr bool operator==(Exponent a, Exponent b) {
        return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
    }

    std::string to_string() const { return infinite_ ? "inf" : std::to_string(value_); }

private:
    unsigned long value_ = 0;
    bool infinite_ = false;
};

/// A set of primes in one of the finitely describable shapes.
struct PrimeSet {
    enum class Kind { Finite, All, OddIndexed, EvenIndexed, Cofinite };
    Kind kind = Kind::Finite;
    /// Members for Finite, excluded primes for Cofinite.
    std::set<std::uint64_t> primes;

    static PrimeSet finite(std::set<std::uint64_t> ps) { return {Kind::Finite, std::move(ps)}; }
    static PrimeSet all() { return {Kind::All, {}}; }
    static PrimeSet odd_indexed() { return {Kind::OddIndexed, {}}; }
    static PrimeSet even_indexed() { return {Kind::EvenIndexed, {}}; }
    static PrimeSet cofinite(std::set<std::uint64_t> excluded) { return {Kind::Cofinite, std::move(excluded)}; }

    bool contains(std::uint64_t p) const {
        switch (kind) {
        case Kind::Finite: return primes.contains(p);
        case Kind::All: return true;
        case Kind::OddIndexed: return primes::is_odd_indexed(p);
        case Kind::EvenIndexed: return !primes::is_odd_indexed(p);
        case Kind::Cofinite: return !primes.contains(p);
        }
        return false;
    }

    /// Membership of a prime that is not listed anywhere, given its index parity.
    bool contains_generic(bool odd_indexed) const {
        switch (kind) {
        case Kind::Finite: return false;
        case Kind::All: return true;
        case Kind::OddIndexed: return odd_indexed;
        case Kind::EvenIndexed: return !odd_indexed;
        case Kind::Cofinite: return true;
        }
        return false;
    }

    friend bool operator==(const PrimeSet&, const PrimeSet&) = default;
};

/// Formal product of p^(Lambda_p) over all primes, Lambda_p in N_0 or infinity.
///
/// Represented canonically by one exponent for all odd-indexed primes, one for
/// all even-indexed primes, and a finite table of primes that deviate from
/// their class value. Every pair-list description (first matching pair wins,
/// unmatched primes get 0) reduces to this form.
class SupernaturalNumber {
public:
    struct Pair {
        PrimeSet primes;
        Exponent exponent;
        friend bool operator==(const Pair&, const Pair&) = default;
    };

    SupernaturalNumber() = default;

    static SupernaturalNumber from_pairs(const std::vector<Pair>& pairs) {
        SupernaturalNumber s;
        s.odd_default_ = resolve_generic(pairs, true);
        s.even_default_ = resolve_generic(pairs, false);
        std::set<std::uint64_t> listed;
        for (const auto& pr : pairs) listed.insert(pr.primes.primes.begin(), pr.primes.primes.end());
        for (auto p : listed) {
            if (!primes::is_prime(p)) throw ValidationError("prime set lists non-prime " + std::to_string(p));
            Exponent e = 0;
            for (const auto& pr : pairs)
                if (pr.primes.contains(p)) {
                    e = pr.exponent;
                    break;
                }
            s.set(p, e);
        }
        return s;
    }

    /// Lambda_p = e at the listed primes, 0 elsewhere.
    static SupernaturalNumber at(std::initializer_list<std::pair<std::uint64_t, Exponent>> entries) {
        SupernaturalNumber s;
        for (const auto& [p, e] : entries) s.set(p, e);
        return s;
    }

    static SupernaturalNumber uniform(Exponent odd_indexed, Exponent even_indexed) {
        SupernaturalNumber s;
        s.odd_default_ = odd_indexed;
        s.even_default_ = even_indexed;
        return s;
    }

    static SupernaturalNumber all_infinite() { return uniform(Exponent::infinity(), Exponent::infinity()); }

    Exponent exponent(std::uint64_t p) const {
        auto it = exceptions_.find(p);
        if (it != exceptions_.end()) return it->second;
        return class_default(p);
    }

    void set(std::uint64_t p, Exponent e) {
        if (!primes::is_prime(p)) throw ValidationError("not a prime: " + std::to_string(p));
        if (e == class_default(p))
            exceptions_.erase(p);
        else
            exceptions_[p] = e;
    }

    Exponent odd_indexed_default() const { return odd_default_; }
    Exponent even_indexed_default() const { return even_default_; }
    const std::map<std::uint64_t, Exponent>& exceptions() const { return exceptions_; }

    /// Exponentwise sum (the supernatural product).
    friend SupernaturalNumber operator+(const SupernaturalNumber& a, const SupernaturalNumber& b) {
        SupernaturalNumber s = uniform(a.odd_default_ + b.odd_default_, a.even_default_ + b.even_default_);
        std::set<std::uint64_t> listed;
        for (const auto& [p, e] : a.exceptions_) listed.insert(p);
        for (const auto& [p, e] : b.exceptions_) listed.insert(p);
        for (auto p : listed) s.set(p, a.exponent(p) + b.exponent(p));
        return s;
    }

    /// True when the product is a (finite) natural number.
    bool is_finite() const {
        if (!odd_default_.is_zero() || !even_default_.is_zero()) return false;
        for (const auto& [p, e] : exceptions_)
            if (e.is_infinite()) return false;
        return true;
    }

    /// Value of a finite product.
    Integer value() const {
        if (!is_finite()) throw DomainError("infinite supernatural number has no integer value");
        Integer v = 1;
        for (const auto& [p, e] : exceptions_) {
            Integer pe;
            mpz_ui_pow_ui(pe.get_mpz_t(), p, e.value());
            v *= pe;
        }
        return v;
    }

    /// Canonical pair list: deviating primes grouped by exponent, then the class
    /// defaults ("all" when they agree). Zero class defaults are omitted, and no
    /// pair is shadowed by earlier ones.
    std::vector<Pair> pairs() const {
        std::vector<Pair> out;
        std::map<std::string, std::pair<Exponent, std::set<std::uint64_t>>> groups;
        std::vector<std::string> order;
        for (const auto& [p, e] : exceptions_) {
            auto key = e.to_string();
            if (!groups.contains(key)) {
                order.push_back(key);
                groups[key].first = e;
            }
            groups[key].second.insert(p);
        }
        for (const auto& key : order) out.push_back({PrimeSet::finite(groups[key].second), groups[key].first});
        if (odd_default_ == even_default_) {
            if (!odd_default_.is_zero()) out.push_back({PrimeSet::all(), odd_default_});
        } else {
            if (!odd_default_.is_zero()) out.push_back({PrimeSet::odd_indexed(), odd_default_});
            if (!even_default_.is_zero()) out.push_back({PrimeSet::even_indexed(), even_default_});
        }
        return out;
    }

    std::string to_string() const {
        auto ps = pairs();
        if (ps.empty()) return "1";
        std::string s;
        for (const auto& pr : ps) {
            if (!s.empty()) s += " * ";
            switch (pr.primes.kind) {
            case PrimeSet::Kind::All: s += "p"; break;
            case PrimeSet::Kind::OddIndexed: s += "p_odd"; break;
            case PrimeSet::Kind::EvenIndexed: s += "p_even"; break;
            default: {
                std::string list;
                for (auto p : pr.primes.primes) list += (list.empty() ? "" : ",") + std::to_string(p);
                s += pr.primes.primes.size() == 1 ? list : "{" + list + "}";
            }
            }
            s += "^" + pr.exponent.to_string();
        }
        return s;
    }

    friend bool operator==(const SupernaturalNumber&, const SupernaturalNumber&) = default;

private:
    Exponent odd_default_ = 0;
    Exponent even_default_ = 0;
    std::map<std::uint64_t, Exponent> exceptions_;

    Exponent class_default(std::uint64_t p) const {
        return primes::is_odd_indexed(p) ? odd_default_ : even_default_;
    }

    static Exponent resolve_generic(const std::vector<Pair>& pairs, bool odd_indexed) {
        for (const auto& pr : pairs)
            if (pr.primes.contains_generic(odd_indexed)) return pr.exponent;
        return 0;
    }
};

/// The subgroup S(i, Lambda) = { n i / prod p^(lambda_p) : lambda <= Lambda } of Q.
struct BaerType {
    Integer i = 1;
    SupernaturalNumber lambda;

    BaerType() = default;
    BaerType(Integer i_, SupernaturalNumber lambda_) : i(std::move(i_)), lambda(std::move(lambda_)) { validate(); }

    /// No prime with positive exponent may divide i.
    void validate() const {
        if (i < 1) throw ValidationError("Baer type needs a positive integer i, got " + i.get_str());
        for (const auto& [p, e] : primes::factorize(i))
            if (!lambda.exponent(p).is_zero())
                throw ValidationError("i = " + i.get_str() + " is divisible by " + std::to_string(p) +
                                      " which has a positive exponent in Lambda");
    }

    friend bool operator==(const BaerType&, const BaerType&) = default;
};

/// Free iff the supernatural number is a finite product (the group is then cyclic).
inline bool is_free(const BaerType& t) { return t.lambda.is_finite(); }

/// Isomorphism test: exponents agree at almost all primes and each
/// disagreement is between two finite values.
inline bool baer_isomorphic(const BaerType& a, const BaerType& b) {
    const auto& x = a.lambda;
    const auto& y = b.lambda;
    if (!(x.odd_indexed_default() == y.odd_indexed_default()) ||
        !(x.even_indexed_default() == y.even_indexed_default()))
        return false;
    std::set<std::uint64_t> listed;
    for (const auto& [p, e] : x.exceptions()) listed.insert(p);
    for (const auto& [p, e] : y.exceptions()) listed.insert(p);
    for (auto p : listed) {
        Exponent ex = x.exponent(p);
        Exponent ey = y.exponent(p);
        if (!(ex == ey) && (ex.is_infinite() || ey.is_infinite())) return false;
    }
    return true;
}

/// Baer type of the subgroup of Q generated by `generators` together with all
/// g / m where g is a generator and m is a product of `inverted` primes.
/// The group is characterized by the least p-adic valuation of its elements:
/// -infinity for inverted primes, the minimum over generators otherwise.
inline BaerType baer_of_span(std::span<const Rational> generators, const std::set<std::uint64_t>& inverted = {}) {
    std::vector<Rational> nonzero;
    for (const auto& g : generators)
        if (g != 0) nonzero.push_back(g);
    if (nonzero.empty()) throw DomainError("the trivial group has no Baer type");
    std::set<std::uint64_t> relevant(inverted.begin(), inverted.end());
    for (const auto& g : nonzero) {
        for (const auto& [p, e] : primes::factorize(g.get_num())) relevant.insert(p);
        for (const auto& [p, e] : primes::factorize(g.get_den())) relevant.insert(p);
    }
    Integer i = 1;
    SupernaturalNumber lambda;
    for (auto p : relevant) {
        if (inverted.contains(p)) {
            lambda.set(p, Exponent::infinity());
            continue;
        }
        long least = valuation(nonzero.front(), p);
        for (const auto& g : nonzero) least = std::min(least, valuation(g, p));
        if (least < 0) {
            lambda.set(p, Exponent(static_cast<unsigned long>(-least)));
        } else if (least > 0) {
            Integer pe;
            mpz_ui_pow_ui(pe.get_mpz_t(), p, static_cast<unsigned long>(least));
            i *= pe;
        }
    }
    return BaerType(i, lambda);
}

struct Circle {
    friend bool operator==(const Circle&, const Circle&) = default;
};

struct Solenoid {
    SupernaturalNumber lambda;
    friend bool operator==(const Solenoid&, const Solenoid&) = default;
};

using ClosureFactor = std::variant<Circle, Solenoid>;

/// Orbit closure as a formal product of circles and solenoids.
struct ClosureDescriptor {
    std::vector<ClosureFactor> factors;

    std::size_t circle_count() const {
        std::size_t n = 0;
        for (const auto& f : factors) n += std::holds_alternative<Circle>(f) ? 1 : 0;
        return n;
    }

    std::vector<SupernaturalNumber> solenoids() const {
        std::vector<SupernaturalNumber> out;
        for (const auto& f : factors)
            if (const auto* s = std::get_if<Solenoid>(&f)) out.push_back(s->lambda);
        return out;
    }

    std::string to_string() const {
        if (factors.empty()) return "point";
        std::string s;
        for (const auto& f : factors) {
            if (!s.empty()) s += " x ";
            if (std::holds_alternative<Circle>(f))
                s += "Circle";
            else
                s += "Solenoid(" + std::get<Solenoid>(f).lambda.to_string() + ")";
        }
        return s;
    }

    friend bool operator==(const ClosureDescriptor&, const ClosureDescriptor&) = default;
};

} // namespace kronecker
