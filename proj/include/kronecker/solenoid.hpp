#pragma once

// Exact geometry of the solenoid sigma_a = {Theta_j = a_(j+1) Theta_(j+1) mod 2 pi}
// in theta-check coordinates, and the product metric on the torus.

#include <cmath>
#include <variant>
#include <vector>

#include "kronecker/sigma_sequence.hpp"
#include "kronecker/torus_point.hpp"

namespace kronecker {

struct SolenoidCoords {
    Rational tau;
    /// n_2 .. n_N with 0 <= n_j < a_j.
    std::vector<Integer> digits;
    friend bool operator==(const SolenoidCoords&, const SolenoidCoords&) = default;
};

/// theta_j == a_(j+1) theta_(j+1) (mod 1) for all j < depth. Only the first
/// depth - 1 relations are certified.
inline bool is_member(const SigmaSequence& a, const TorusPoint& theta) {
    if (!theta.is_exact()) throw DomainError("membership is decided on exact points only");
    const auto& t = theta.theta_check();
    auto av = a.values(t.size());
    for (std::size_t j = 1; j < t.size(); ++j)
        if (!is_integer(t[j - 1] - Rational(av[j]) * t[j])) return false;
    return true;
}

/// tau = theta_1 and n_j = a_j theta_j - theta_(j-1).
inline SolenoidCoords to_coordinates(const SigmaSequence& a, const TorusPoint& theta) {
    if (!is_member(a, theta)) throw DomainError("point is not in the solenoid");
    const auto& t = theta.theta_check();
    if (t.empty()) throw DomainError("empty point");
    auto av = a.values(t.size());
    SolenoidCoords c{t[0], {}};
    for (std::size_t j = 2; j <= t.size(); ++j) {
        Rational n = Rational(av[j - 1]) * t[j - 1] - t[j - 2];
        c.digits.push_back(n.get_num());
    }
    return c;
}

inline void check_coords(const SigmaSequence& a, const SolenoidCoords& c) {
    if (c.tau < 0 || c.tau >= 1) throw DomainError("tau = " + to_string(c.tau) + " outside [0, 1)");
    auto av = a.values(c.digits.size() + 1);
    for (std::size_t m = 0; m < c.digits.size(); ++m)
        if (c.digits[m] < 0 || c.digits[m] >= av[m + 1])
            throw DomainError("digit n_" + std::to_string(m + 2) + " = " + c.digits[m].get_str() + " outside [0, " +
                              av[m + 1].get_str() + ")");
}

/// t_k = tau + sum_{m=2}^{k} n_m / omega_(m-1)(a), in units of 2 pi.
inline std::vector<Rational> approximating_times(const SigmaSequence& a, const SolenoidCoords& c) {
    check_coords(a, c);
    auto w = a.inverse_products(c.digits.size() + 1);
    std::vector<Rational> times{c.tau};
    for (std::size_t m = 2; m <= c.digits.size() + 1; ++m)
        times.push_back(times.back() + Rational(c.digits[m - 2]) / w[m - 2]);
    return times;
}

/// theta_j = omega_j(a) t_j.
inline TorusPoint from_coordinates(const SigmaSequence& a, const SolenoidCoords& c) {
    auto times = approximating_times(a, c);
    auto w = a.inverse_products(times.size());
    std::vector<Rational> t;
    for (std::size_t j = 0; j < times.size(); ++j) {
        Rational v = w[j] * times[j];
        if (v < 0 || v >= 1) throw DomainError("internal: coordinate left [0, 1)");
        t.push_back(v);
    }
    return TorusPoint::exact(std::move(t));
}

struct ChartPoint {
    Rational interval;
    std::vector<Integer> digits;
};

/// Interval x Cantor chart on the complement of the slice theta_1 = 0.
inline ChartPoint local_chart(const SigmaSequence& a, const TorusPoint& theta) {
    auto c = to_coordinates(a, theta);
    if (c.tau == 0) throw DomainError("point lies on the slice theta_1 = 0, outside the chart");
    return {c.tau, c.digits};
}

/// Weights rho_k = r^k, or an explicit finite list (zero beyond its end).
struct GeometricWeights {
    double r;
};
using Weights = std::variant<GeometricWeights, std::vector<double>>;

struct MetricValue {
    double value;
    /// sum of rho_k past the point depth.
    double tail_bound;
};

inline double weight(const Weights& w, std::size_t k) {
    if (const auto* g = std::get_if<GeometricWeights>(&w)) return std::pow(g->r, static_cast<double>(k));
    const auto& list = std::get<std::vector<double>>(w);
    return k <= list.size() ? list[k - 1] : 0.0;
}

inline void validate_weights(const Weights& w) {
    if (const auto* g = std::get_if<GeometricWeights>(&w)) {
        if (!(g->r > 0 && g->r < 1)) throw DomainError("geometric weights need 0 < r < 1 to be summable");
        return;
    }
    for (double x : std::get<std::vector<double>>(w))
        if (!(x > 0) || !std::isfinite(x)) throw DomainError("weights must be positive and finite");
}

/// d_rho(theta, phi) = sum_k rho_k d(theta_k, phi_k) with d the arc distance
/// on R/Z.
inline MetricValue product_metric(const Weights& w, const TorusPoint& theta, const TorusPoint& phi) {
    validate_weights(w);
    if (theta.depth() != phi.depth()) throw DomainError("points of different depth");
    std::vector<double> dist;
    if (theta.is_exact() && phi.is_exact()) {
        for (std::size_t k = 0; k < theta.depth(); ++k)
            dist.push_back(circle_distance(theta.theta_check()[k], phi.theta_check()[k]).get_d());
    } else {
        auto x = theta.theta_check_double();
        auto y = phi.theta_check_double();
        for (std::size_t k = 0; k < x.size(); ++k) dist.push_back(circle_distance(x[k], y[k]));
    }
    double value = 0;
    for (std::size_t k = 1; k <= dist.size(); ++k) value += weight(w, k) * dist[k - 1];
    double tail = 0;
    std::size_t n = dist.size();
    if (const auto* g = std::get_if<GeometricWeights>(&w))
        tail = std::pow(g->r, static_cast<double>(n + 1)) / (1 - g->r);
    else
        for (std::size_t k = n + 1; k <= std::get<std::vector<double>>(w).size(); ++k) tail += weight(w, k);
    return {value, tail};
}

} // namespace kronecker
