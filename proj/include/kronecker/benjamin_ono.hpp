#pragma once

// Benjamin-Ono frequencies omega_j = j^2 - 2 beta sigma_j for Birkhoff actions
// gamma_k = beta s_k, and the module R spanned by the sigma_j.

#include <set>
#include <vector>

#include "kronecker/frequency.hpp"

namespace kronecker {

struct BoActionSpec {
    Generator beta;
    RationalSequenceSpec s;
};

/// Baer type of R = span{sigma_j : j >= 1}.
///
/// R is also spanned by g_0 = sigma_1 and g_n = sigma_(n+1) - sigma_n. With a
/// prefix of length L and tail ratio r = u/v in lowest terms, g_n = G r^(n-L)
/// for n >= L where G = c / (1 - r), and span{r^m : m >= 0} = Z[1/v] because
/// u and v are coprime. Hence R = span{g_0..g_(L-1), G} with the primes of v
/// inverted.
inline BaerType bo_r_type(const RationalSequenceSpec& s) {
    if (s.is_zero()) throw DomainError("zero action profile: R = 0 has no Baer type");
    std::size_t L = s.prefix().size();
    std::vector<Rational> gens;
    for (std::size_t n = 0; n < L; ++n) gens.push_back(s.tail_sum(n));
    std::set<std::uint64_t> inverted;
    if (const auto& t = s.tail()) {
        gens.push_back(t->c / (Rational(1) - t->r));
        for (const auto& [p, e] : primes::factorize(t->r.get_den())) inverted.insert(p);
    }
    return baer_of_span(gens, inverted);
}

/// First `depth` frequencies over the generators {1, beta}.
inline FrequencyVector bo_frequencies(const BoActionSpec& spec, std::size_t depth) {
    return truncate(FrequencyVector::benjamin_ono(spec.beta, spec.s), depth);
}

struct BoModuleReport {
    /// sigma_1..sigma_depth.
    std::vector<Rational> sigma_values;
    /// g_0..g_depth with g_n = sum_{k > n} s_k.
    std::vector<Rational> tail_sums;
    /// Absent when every action vanishes (then the module is Z).
    std::optional<BaerType> r_type;
    ClosureDescriptor closure;
    bool infinite_support = false;
};

inline BoModuleReport bo_tail_module(const BoActionSpec& spec, std::size_t depth) {
    if (depth == 0) throw DomainError("depth must be at least 1");
    BoModuleReport rep;
    for (std::size_t j = 1; j <= depth; ++j) rep.sigma_values.push_back(spec.s.sigma(j));
    for (std::size_t n = 0; n <= depth; ++n) rep.tail_sums.push_back(spec.s.tail_sum(n));
    rep.infinite_support = spec.s.infinite_support();
    rep.closure.factors.emplace_back(Circle{});
    if (!spec.s.is_zero()) {
        rep.r_type = bo_r_type(spec.s);
        if (is_free(*rep.r_type))
            rep.closure.factors.emplace_back(Circle{});
        else
            rep.closure.factors.emplace_back(Solenoid{rep.r_type->lambda});
    }
    return rep;
}

inline ClosureDescriptor bo_orbit_closure(const BoActionSpec& spec, std::size_t depth) {
    return bo_tail_module(spec, depth).closure;
}

} // namespace kronecker
