#pragma once

// Exact scalar arithmetic on top of GMP.

#include <gmpxx.h>

#include <cctype>
#include <span>
#include <string>
#include <string_view>

#include "kronecker/errors.hpp"

namespace kronecker {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical text form: "p" when the denominator is 1, "p/q" otherwise.
inline std::string to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline std::string to_string(const Integer& z) { return z.get_str(); }

namespace detail {
inline bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    return true;
}
} // namespace detail

/// Parses "p", "p/q" or "-p/q" (surrounding blanks allowed) and canonicalizes.
inline Rational parse_rational(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!detail::is_integer_literal(num) || !detail::is_integer_literal(den) || den[0] == '-' || den[0] == '+')
        throw ParseError("malformed rational \"" + std::string(text) + "\"");
    Integer n(std::string(num[0] == '+' ? num.substr(1) : num));
    Integer d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in rational \"" + std::string(text) + "\"");
    Rational q(n, d);
    q.canonicalize();
    return q;
}

inline Integer floor(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

/// Representative of q modulo 1 in [0, 1).
inline Rational frac(const Rational& q) {
    Rational r = q - Rational(floor(q));
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer gcd(const Integer& a, const Integer& b) {
    Integer r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Integer lcm(const Integer& a, const Integer& b) {
    Integer r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

/// Nonnegative generator g of the group (a/b)Z + (c/d)Z + ..., i.e. the
/// gcd of the numerators over the lcm of the denominators. Zero for an empty
/// or all-zero list.
inline Rational rational_gcd(std::span<const Rational> values) {
    Integer num = 0;
    Integer den = 1;
    for (const auto& v : values) {
        if (v == 0) continue;
        num = gcd(num, v.get_num());
        den = lcm(den, v.get_den());
    }
    Rational g(num, den);
    g.canonicalize();
    return g;
}

/// p-adic valuation of a nonzero integer.
inline long valuation(const Integer& n, unsigned long p) {
    if (n == 0) throw DomainError("valuation of zero");
    Integer m = abs(n);
    long v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
        ++v;
    }
    return v;
}

/// p-adic valuation of a nonzero rational (may be negative).
inline long valuation(const Rational& q, unsigned long p) {
    return valuation(q.get_num(), p) - valuation(q.get_den(), p);
}

} // namespace kronecker
