#pragma once

// Exact frequency vectors over declared rationally independent generators.
//
// Each frequency omega_j is a finite Q-linear combination of generators. The
// generators {1, sqrt(p) for distinct primes p, pi^k} are assumed rationally
// independent; that assumption is an axiom of the input and is not verified.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kronecker/bigfloat.hpp"
#include "kronecker/bo_actions.hpp"
#include "kronecker/sigma_sequence.hpp"

namespace kronecker {

struct Generator {
    enum class Kind { RationalUnit, SqrtPrime, PiPower, Opaque };

    std::string name;
    Kind kind = Kind::RationalUnit;
    /// p for SqrtPrime, k for PiPower.
    std::uint64_t param = 0;
    /// Decimal value for Opaque generators.
    std::string decimal;

    static Generator one() { return {"1", Kind::RationalUnit, 0, {}}; }
    static Generator sqrt_prime(std::uint64_t p) {
        if (!primes::is_prime(p)) throw ValidationError("sqrt_prime generator needs a prime, got " + std::to_string(p));
        return {"sqrt" + std::to_string(p), Kind::SqrtPrime, p, {}};
    }
    static Generator pi_power(std::uint64_t k) {
        if (k == 0) throw ValidationError("pi_power generator needs k >= 1");
        return {k == 1 ? "pi" : "pi^" + std::to_string(k), Kind::PiPower, k, {}};
    }
    static Generator opaque(std::string name, std::string decimal) {
        return {std::move(name), Kind::Opaque, 0, std::move(decimal)};
    }

    BigFloat value(mpfr_prec_t prec = working_precision()) const {
        switch (kind) {
        case Kind::RationalUnit: return BigFloat(Rational(1), prec);
        case Kind::SqrtPrime: return BigFloat::sqrt_of(static_cast<unsigned long>(param), prec);
        case Kind::PiPower: return BigFloat::pi_power(static_cast<unsigned long>(param), prec);
        case Kind::Opaque: return BigFloat::parse(decimal, prec);
        }
        return BigFloat(prec);
    }

    bool is_rational() const { return kind == Kind::RationalUnit; }

    friend bool operator==(const Generator&, const Generator&) = default;
};

/// omega_j as generator name -> nonzero rational coefficient.
using Coordinates = std::map<std::string, Rational>;

/// A subgroup of Q as an input to the product construction.
struct FreeSubgroup {
    friend bool operator==(const FreeSubgroup&, const FreeSubgroup&) = default;
};
using SubgroupOfQSpec = std::variant<FreeSubgroup, SigmaSequence>;

struct FiniteFrequencies {
    std::vector<Coordinates> terms;
};

/// omega_j = alpha / (a_1 ... a_j).
struct SolenoidRule {
    std::string generator;
    SigmaSequence a;
};

/// Named rational families: omega_j = alpha / j, or alpha * p_(2j) / p_(2j-1).
struct SequenceRule {
    enum class Kind { Harmonic, PrimeRatio };
    std::string generator;
    Kind kind;
};

/// omega_j = j^2 - 2 beta sigma_j with sigma_j = sum_k min(j, k) s_k.
struct BoRule {
    std::string beta;
    RationalSequenceSpec s;
};

/// Product construction of a flow whose module is a direct sum of the given
/// subgroups of Q: a non-free component n (1-based list position) puts
/// sqrt(p_n) / (a_1 ... a_N) at index p_n^N; free components take pi^n at the
/// lowest indices not reserved that way, in list order; all else is zero.
struct ProductConstruction {
    std::vector<SubgroupOfQSpec> components;
};

class FrequencyVector {
public:
    using Variant = std::variant<FiniteFrequencies, SolenoidRule, SequenceRule, BoRule, ProductConstruction>;

    FrequencyVector(std::vector<Generator> generators, Variant rule)
        : generators_(std::move(generators)), rule_(std::move(rule)) {
        bool has_one = false;
        for (const auto& g : generators_) has_one = has_one || g.name == "1";
        if (!has_one) generators_.insert(generators_.begin(), Generator::one());
        if (auto* pc = std::get_if<ProductConstruction>(&rule_)) add_product_generators(*pc);
        validate();
    }

    static FrequencyVector finite(std::vector<Coordinates> terms, std::vector<Generator> generators = {}) {
        return {std::move(generators), FiniteFrequencies{std::move(terms)}};
    }

    /// Finite vector with every entry a rational multiple of 1.
    static FrequencyVector rationals(const std::vector<Rational>& values) {
        std::vector<Coordinates> terms;
        for (const auto& v : values) {
            Coordinates c;
            if (v != 0) c["1"] = v;
            terms.push_back(std::move(c));
        }
        return finite(std::move(terms));
    }

    static FrequencyVector solenoid(SigmaSequence a, const Generator& alpha = Generator::one()) {
        return {{alpha}, SolenoidRule{alpha.name, std::move(a)}};
    }

    static FrequencyVector sequence(SequenceRule::Kind kind, const Generator& alpha = Generator::one()) {
        return {{alpha}, SequenceRule{alpha.name, kind}};
    }

    static FrequencyVector benjamin_ono(const Generator& beta, RationalSequenceSpec s) {
        return {{beta}, BoRule{beta.name, std::move(s)}};
    }

    static FrequencyVector product(std::vector<SubgroupOfQSpec> components) {
        return {{}, ProductConstruction{std::move(components)}};
    }

    const std::vector<Generator>& generators() const { return generators_; }
    const Variant& rule() const { return rule_; }

    const Generator& generator(const std::string& name) const {
        for (const auto& g : generators_)
            if (g.name == name) return g;
        throw ValidationError("unknown generator \"" + name + "\"");
    }

    /// Number of coordinates for finite vectors, nullopt for infinite rules.
    std::optional<std::size_t> dimension() const {
        if (const auto* f = std::get_if<FiniteFrequencies>(&rule_)) return f->terms.size();
        return std::nullopt;
    }

    /// Requested depth clamped to the dimension of a finite vector.
    std::size_t effective_depth(std::size_t depth) const {
        if (depth == 0) throw DomainError("depth must be at least 1");
        auto dim = dimension();
        return dim ? std::min(depth, *dim) : depth;
    }

    /// Exact coordinates of omega_j (j >= 1) over the generators.
    Coordinates coordinates(std::size_t j) const {
        if (j == 0) throw DomainError("frequency indices start at 1");
        return std::visit([&](const auto& r) { return coordinates_of(r, j); }, rule_);
    }

    /// Coordinates of omega_1..omega_n in one pass (n clamped for finite vectors).
    std::vector<Coordinates> coordinates_upto(std::size_t n) const {
        n = effective_depth(n);
        if (const auto* s = std::get_if<SolenoidRule>(&rule_)) {
            std::vector<Coordinates> out;
            for (const auto& w : s->a.inverse_products(n)) out.push_back({{s->generator, w}});
            return out;
        }
        std::vector<Coordinates> out;
        for (std::size_t j = 1; j <= n; ++j) out.push_back(coordinates(j));
        return out;
    }

    /// omega_j evaluated at the given MPFR precision.
    BigFloat evaluate(std::size_t j, mpfr_prec_t prec = working_precision()) const {
        BigFloat sum(prec);
        for (const auto& [name, c] : coordinates(j)) sum += c * generator(name).value(prec);
        return sum;
    }

    double evaluate_double(std::size_t j) const { return evaluate(j).to_double(); }

    /// The single generator carrying every nonzero coordinate of omega_1..omega_n,
    /// if there is one (needed for exact rational-angle flows).
    std::optional<std::string> single_generator(std::size_t n) const {
        std::optional<std::string> found;
        for (const auto& c : coordinates_upto(n))
            for (const auto& [name, v] : c) {
                if (found && *found != name) return std::nullopt;
                found = name;
            }
        return found ? found : std::optional<std::string>("1");
    }

private:
    std::vector<Generator> generators_;
    Variant rule_;

    void add_product_generators(const ProductConstruction& pc) {
        for (std::size_t n = 1; n <= pc.components.size(); ++n) {
            Generator g = std::holds_alternative<FreeSubgroup>(pc.components[n - 1])
                              ? Generator::pi_power(n)
                              : Generator::sqrt_prime(primes::nth(n));
            bool present = false;
            for (const auto& h : generators_) present = present || h.name == g.name;
            if (!present) generators_.push_back(g);
        }
    }

    void validate() const {
        std::map<std::string, int> names;
        std::map<std::pair<int, std::uint64_t>, std::string> kinds;
        for (const auto& g : generators_) {
            if (g.name.empty()) throw ValidationError("generator with empty name");
            if (names[g.name]++) throw ValidationError("duplicate generator name \"" + g.name + "\"");
            if (g.kind == Generator::Kind::Opaque) {
                (void)g.value(64);
                continue;
            }
            if (g.kind == Generator::Kind::SqrtPrime && !primes::is_prime(g.param))
                throw ValidationError("generator \"" + g.name + "\": sqrt_prime needs a prime parameter");
            if (g.kind == Generator::Kind::PiPower && g.param == 0)
                throw ValidationError("generator \"" + g.name + "\": pi_power needs k >= 1");
            auto key = std::make_pair(static_cast<int>(g.kind), g.param);
            if (kinds.contains(key))
                throw ValidationError("generators \"" + kinds[key] + "\" and \"" + g.name + "\" coincide");
            kinds[key] = g.name;
        }
        auto known = [&](const std::string& n) {
            if (!names.contains(n)) throw ValidationError("unknown generator \"" + n + "\"");
        };
        std::visit(
            [&](const auto& r) {
                using T = std::decay_t<decltype(r)>;
                if constexpr (std::is_same_v<T, FiniteFrequencies>) {
                    if (r.terms.empty()) throw ValidationError("finite frequency vector needs at least one term");
                    for (const auto& c : r.terms)
                        for (const auto& [n, v] : c) known(n);
                } else if constexpr (std::is_same_v<T, SolenoidRule> || std::is_same_v<T, SequenceRule>) {
                    known(r.generator);
                } else if constexpr (std::is_same_v<T, BoRule>) {
                    known(r.beta);
                    if (generator(r.beta).is_rational())
                        throw ValidationError("beta must be an irrational generator, not \"" + r.beta + "\"");
                } else {
                    if (r.components.empty())
                        throw DomainError("product construction needs at least one subgroup");
                }
            },
            rule_);
    }

    static Coordinates clean(Coordinates c) {
        for (auto it = c.begin(); it != c.end();) it = it->second == 0 ? c.erase(it) : std::next(it);
        return c;
    }

    Coordinates coordinates_of(const FiniteFrequencies& f, std::size_t j) const {
        if (j > f.terms.size())
            throw DomainError("index " + std::to_string(j) + " beyond finite vector of length " +
                              std::to_string(f.terms.size()));
        return clean(f.terms[j - 1]);
    }

    Coordinates coordinates_of(const SolenoidRule& s, std::size_t j) const {
        return {{s.generator, s.a.inverse_products(j).back()}};
    }

    Coordinates coordinates_of(const SequenceRule& s, std::size_t j) const {
        if (s.kind == SequenceRule::Kind::Harmonic)
            return {{s.generator, Rational(Integer(1), Integer(static_cast<unsigned long>(j)))}};
        Rational q(Integer(static_cast<unsigned long>(primes::nth(2 * j))),
                   Integer(static_cast<unsigned long>(primes::nth(2 * j - 1))));
        return {{s.generator, q}};
    }

    Coordinates coordinates_of(const BoRule& b, std::size_t j) const {
        Integer jj = static_cast<unsigned long>(j);
        return clean({{"1", Rational(jj * jj)}, {b.beta, Rational(-2) * b.s.sigma(j)}});
    }

    Coordinates coordinates_of(const ProductConstruction& pc, std::size_t j) const {
        // non-free component n owns every index p_n^N
        for (std::size_t n = 1; n <= pc.components.size(); ++n) {
            const auto* a = std::get_if<SigmaSequence>(&pc.components[n - 1]);
            if (!a) continue;
            auto level = prime_power_level(j, primes::nth(n));
            if (level == 0) continue;
            return {{"sqrt" + std::to_string(primes::nth(n)), a->inverse_products(level).back()}};
        }
        // free components fill the unreserved indices in order
        std::size_t rank = 0;
        for (std::size_t i = 1; i <= j; ++i)
            if (!reserved(pc, i)) ++rank;
        if (reserved(pc, j)) return {};
        std::size_t seen = 0;
        for (std::size_t n = 1; n <= pc.components.size(); ++n) {
            if (!std::holds_alternative<FreeSubgroup>(pc.components[n - 1])) continue;
            if (++seen == rank) return {{Generator::pi_power(n).name, Rational(1)}};
        }
        return {};
    }

    /// N with j = p^N (N >= 1), or 0.
    static std::size_t prime_power_level(std::size_t j, std::uint64_t p) {
        std::size_t level = 0;
        while (j > 1 && j % p == 0) {
            j /= p;
            ++level;
        }
        return j == 1 ? level : 0;
    }

    static bool reserved(const ProductConstruction& pc, std::size_t j) {
        for (std::size_t n = 1; n <= pc.components.size(); ++n)
            if (std::holds_alternative<SigmaSequence>(pc.components[n - 1]) &&
                prime_power_level(j, primes::nth(n)) > 0)
                return true;
        return false;
    }
};

/// First N frequencies as an explicit finite vector.
inline FrequencyVector truncate(const FrequencyVector& fv, std::size_t n) {
    return FrequencyVector::finite(fv.coordinates_upto(n), fv.generators());
}

} // namespace kronecker
