#pragma once

// Points of a truncated torus. Exact points store theta-check values in [0, 1)
// (the angle divided by 2 pi); float points store angles in [0, 2 pi).

#include <cmath>
#include <numbers>
#include <variant>
#include <vector>

#include "kronecker/rational.hpp"

namespace kronecker {

inline constexpr double two_pi = 2 * std::numbers::pi;

/// x reduced into [0, 2 pi).
inline double wrap_angle(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0) r += two_pi;
    return r >= two_pi ? 0.0 : r;
}

class TorusPoint {
public:
    static TorusPoint exact(std::vector<Rational> theta_check) {
        TorusPoint p;
        for (auto& q : theta_check) q = frac(q);
        p.angles_ = std::move(theta_check);
        return p;
    }

    static TorusPoint floating(std::vector<double> angles) {
        TorusPoint p;
        for (auto& x : angles) {
            if (!std::isfinite(x)) throw DomainError("non-finite angle");
            x = wrap_angle(x);
        }
        p.angles_ = std::move(angles);
        return p;
    }

    static TorusPoint origin(std::size_t depth) { return exact(std::vector<Rational>(depth, Rational(0))); }

    bool is_exact() const { return std::holds_alternative<std::vector<Rational>>(angles_); }

    std::size_t depth() const {
        return is_exact() ? std::get<0>(angles_).size() : std::get<1>(angles_).size();
    }

    const std::vector<Rational>& theta_check() const {
        if (!is_exact()) throw DomainError("point has floating angles; exact coordinates unavailable");
        return std::get<0>(angles_);
    }

    /// Angles in [0, 2 pi), converting exact points.
    std::vector<double> angles() const {
        if (!is_exact()) return std::get<1>(angles_);
        std::vector<double> out;
        for (const auto& q : std::get<0>(angles_)) out.push_back(wrap_angle(two_pi * q.get_d()));
        return out;
    }

    /// Theta-check values in [0, 1) as doubles.
    std::vector<double> theta_check_double() const {
        std::vector<double> out;
        if (is_exact())
            for (const auto& q : std::get<0>(angles_)) out.push_back(q.get_d());
        else
            for (double x : std::get<1>(angles_)) out.push_back(x / two_pi);
        return out;
    }

    friend bool operator==(const TorusPoint&, const TorusPoint&) = default;

private:
    std::variant<std::vector<Rational>, std::vector<double>> angles_;
};

/// Arc distance on R/Z between theta-check values, in [0, 1/2].
inline double circle_distance(double a, double b) {
    double d = std::fmod(std::fabs(a - b), 1.0);
    return std::min(d, 1.0 - d);
}

inline Rational circle_distance(const Rational& a, const Rational& b) {
    Rational d = frac(a - b);
    Rational e = Rational(1) - d;
    return d < e ? d : e;
}

} // namespace kronecker
