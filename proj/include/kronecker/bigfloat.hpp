#pragma once

// Minimal RAII wrapper over MPFR for generator values and frequency evaluation.

#include <mpfr.h>

#include <algorithm>
#include <cstdlib>
#include <string>

#include "kronecker/rational.hpp"

namespace kronecker {

/// Default working precision in bits; KRON_PRECISION overrides it (>= 53).
inline mpfr_prec_t working_precision() {
    constexpr mpfr_prec_t fallback = 128;
    const char* env = std::getenv("KRON_PRECISION");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    long bits = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || bits < 53 || bits > 1 << 20)
        throw ValidationError("KRON_PRECISION must be an integer number of bits >= 53, got \"" + std::string(env) + "\"");
    return static_cast<mpfr_prec_t>(bits);
}

class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = working_precision()) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const Rational& q, mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
    }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat& operator=(const BigFloat& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    static BigFloat sqrt_of(unsigned long n, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_sqrt_ui(r.v_, n, MPFR_RNDN);
        return r;
    }

    static BigFloat pi_power(unsigned long k, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        mpfr_pow_ui(r.v_, r.v_, k, MPFR_RNDN);
        return r;
    }

    static BigFloat parse(const std::string& decimal, mpfr_prec_t prec) {
        BigFloat r(prec);
        char* end = nullptr;
        mpfr_strtofr(r.v_, decimal.c_str(), &end, 10, MPFR_RNDN);
        if (end == decimal.c_str() || *end != '\0') throw ParseError("malformed decimal \"" + decimal + "\"");
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) {
        mpfr_add(v_, v_, o.v_, MPFR_RNDN);
        return *this;
    }
    friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
        mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat operator*(const Rational& q, const BigFloat& b) { return BigFloat(q, mpfr_get_prec(b.v_)) * b; }

    friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
        BigFloat r(std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
        mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    /// (this * t) reduced into [0, 2 pi), for flow angles at large times.
    double times_mod_two_pi(double t) const {
        mpfr_prec_t prec = mpfr_get_prec(v_) + 64;
        BigFloat x(prec), two_pi(prec);
        mpfr_mul_d(x.v_, v_, t, MPFR_RNDN);
        mpfr_const_pi(two_pi.v_, MPFR_RNDN);
        mpfr_mul_ui(two_pi.v_, two_pi.v_, 2, MPFR_RNDN);
        mpfr_fmod(x.v_, x.v_, two_pi.v_, MPFR_RNDN);
        if (mpfr_sgn(x.v_) < 0) mpfr_add(x.v_, x.v_, two_pi.v_, MPFR_RNDN);
        double d = x.to_double();
        return d >= 2 * 3.14159265358979323846 ? 0.0 : d;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long double to_long_double() const { return mpfr_get_ld(v_, MPFR_RNDN); }

    /// Decimal text with `digits` significant digits.
    std::string to_string(int digits = 40) const {
        char* s = nullptr;
        std::string fmt = "%." + std::to_string(digits) + "Rg";
        mpfr_asprintf(&s, fmt.c_str(), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    const __mpfr_struct* get() const { return v_; }

private:
    mpfr_t v_;
};

} // namespace kronecker
