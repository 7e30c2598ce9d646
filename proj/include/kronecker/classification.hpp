#pragma once

// Frequency modules as direct sums of rank-one subgroups of Q, one per
// generator, and the orbit closures they determine.

#include <string>
#include <vector>

#include "kronecker/benjamin_ono.hpp"
#include "kronecker/frequency.hpp"

namespace kronecker {

struct ModuleComponent {
    std::string generator;
    BaerType type;
    friend bool operator==(const ModuleComponent&, const ModuleComponent&) = default;
};

struct ModuleDescriptor {
    std::vector<ModuleComponent> components;

    std::size_t free_rank() const {
        std::size_t n = 0;
        for (const auto& c : components) n += is_free(c.type) ? 1 : 0;
        return n;
    }
    bool is_free_module() const { return free_rank() == components.size(); }
};

namespace detail {

inline BaerType finite_span_type(const std::vector<Rational>& values, const std::string& generator) {
    try {
        return baer_of_span(values);
    } catch (const DomainError&) {
        throw UnsupportedStructure("generator \"" + generator + "\" has only zero coordinates");
    }
}

/// The span of the first `depth` rule values must be the cyclic group
/// (1/m) Z with m built from primes the analytic Lambda allows.
inline void check_against_prefix(const BaerType& analytic, const std::vector<Rational>& prefix,
                                 const std::string& generator) {
    auto finite = baer_of_span(prefix);
    for (const auto& [p, e] : finite.lambda.exceptions()) {
        Exponent bound = analytic.lambda.exponent(p);
        if (!bound.is_infinite() && e.value() > bound.value())
            throw UnsupportedStructure("coordinates of generator \"" + generator + "\" exceed the analytic type at prime " +
                                       std::to_string(p));
    }
}

inline ModuleDescriptor decompose(const FrequencyVector& fv, const FiniteFrequencies& f, std::size_t) {
    ModuleDescriptor md;
    for (const auto& g : fv.generators()) {
        std::vector<Rational> values;
        for (const auto& c : f.terms)
            if (auto it = c.find(g.name); it != c.end() && it->second != 0) values.push_back(it->second);
        if (!values.empty()) md.components.push_back({g.name, finite_span_type(values, g.name)});
    }
    return md;
}

inline ModuleDescriptor decompose(const FrequencyVector&, const SolenoidRule& s, std::size_t depth) {
    return {{{s.generator, qa_to_baer(s.a, depth)}}};
}

inline ModuleDescriptor decompose(const FrequencyVector& fv, const SequenceRule& s, std::size_t depth) {
    BaerType analytic = s.kind == SequenceRule::Kind::Harmonic ? BaerType(1, SupernaturalNumber::all_infinite())
                                                               : BaerType(1, SupernaturalNumber::uniform(1, 0));
    std::vector<Rational> prefix;
    for (const auto& c : fv.coordinates_upto(depth)) prefix.push_back(c.at(s.generator));
    check_against_prefix(analytic, prefix, s.generator);
    return {{{s.generator, analytic}}};
}

inline ModuleDescriptor decompose(const FrequencyVector&, const BoRule& b, std::size_t) {
    ModuleDescriptor md{{{"1", BaerType(1, SupernaturalNumber())}}};
    if (!b.s.is_zero()) md.components.push_back({b.beta, bo_r_type(b.s)});
    return md;
}

inline ModuleDescriptor decompose(const FrequencyVector&, const ProductConstruction& pc, std::size_t depth) {
    ModuleDescriptor md;
    for (std::size_t n = 1; n <= pc.components.size(); ++n) {
        if (const auto* a = std::get_if<SigmaSequence>(&pc.components[n - 1]))
            md.components.push_back({Generator::sqrt_prime(primes::nth(n)).name, qa_to_baer(*a, depth)});
        else
            md.components.push_back({Generator::pi_power(n).name, BaerType(1, SupernaturalNumber())});
    }
    return md;
}

} // namespace detail

/// Per generator, the subgroup of Q spanned by its coordinates over all j.
inline ModuleDescriptor decompose_module(const FrequencyVector& fv, std::size_t depth = 16) {
    if (depth == 0) throw DomainError("depth must be at least 1");
    return std::visit([&](const auto& r) { return detail::decompose(fv, r, depth); }, fv.rule());
}

/// Every rank-one component contributes rank 1, and all supported modules
/// have finitely many components.
inline std::size_t module_rank(const ModuleDescriptor& md) { return md.components.size(); }

inline ClosureDescriptor closure_of(const ModuleDescriptor& md) {
    ClosureDescriptor cd;
    for (const auto& c : md.components) {
        if (is_free(c.type))
            cd.factors.emplace_back(Circle{});
        else
            cd.factors.emplace_back(Solenoid{c.type.lambda});
    }
    return cd;
}

inline ClosureDescriptor orbit_closure(const FrequencyVector& fv, std::size_t depth = 16) {
    return closure_of(decompose_module(fv, depth));
}

/// Equal free ranks and a matching of the non-free components under Baer
/// isomorphism.
inline bool modules_isomorphic(const ModuleDescriptor& a, const ModuleDescriptor& b) {
    if (a.free_rank() != b.free_rank()) return false;
    std::vector<BaerType> left, right;
    for (const auto& c : a.components)
        if (!is_free(c.type)) left.push_back(c.type);
    for (const auto& c : b.components)
        if (!is_free(c.type)) right.push_back(c.type);
    if (left.size() != right.size()) return false;
    // isomorphism is an equivalence relation, so greedy matching is exact
    std::vector<bool> used(right.size(), false);
    for (const auto& t : left) {
        bool matched = false;
        for (std::size_t k = 0; k < right.size() && !matched; ++k)
            if (!used[k] && baer_isomorphic(t, right[k])) used[k] = matched = true;
        if (!matched) return false;
    }
    return true;
}

inline bool closures_homeomorphic(const FrequencyVector& a, const FrequencyVector& b, std::size_t depth = 16) {
    return modules_isomorphic(decompose_module(a, depth), decompose_module(b, depth));
}

/// Frequency vector whose module is the direct sum of the given groups.
inline FrequencyVector build_frequency_from_groups(std::vector<SubgroupOfQSpec> groups) {
    if (groups.empty()) throw DomainError("build_frequency_from_groups needs at least one group");
    return FrequencyVector::product(std::move(groups));
}

/// Same, from Baer types: free types become Z, the others Q(a).
inline FrequencyVector build_frequency_from_types(const std::vector<BaerType>& types) {
    std::vector<SubgroupOfQSpec> groups;
    for (const auto& t : types) {
        if (is_free(t))
            groups.emplace_back(FreeSubgroup{});
        else
            groups.emplace_back(baer_to_qa(t));
    }
    return build_frequency_from_groups(std::move(groups));
}

} // namespace kronecker
