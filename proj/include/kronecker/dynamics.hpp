#pragma once

// Flow evaluation, the Haar functional on trigonometric polynomials, closed-form
// time averages and numeric witnesses of minimality and resonance confinement.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "kronecker/resonance.hpp"
#include "kronecker/solenoid.hpp"

namespace kronecker {

// ---------------------------------------------------------------- flow

/// Exact time: t = 2 pi s / alpha, where alpha is the single generator carrying
/// all frequencies (alpha = 1 for rational vectors), so theta-check advances by
/// the alpha-coordinate of omega_j times s.
struct ExactTime {
    Rational s;
};
using Time = std::variant<ExactTime, double>;

/// Theta_j = Theta0_j + omega_j t (mod 2 pi) for j up to the point depth.
inline TorusPoint flow(const FrequencyVector& fv, const TorusPoint& theta0, const Time& t) {
    std::size_t n = theta0.depth();
    if (n == 0) throw DomainError("flow needs depth >= 1");
    if (auto dim = fv.dimension(); dim && *dim < n)
        throw DomainError("point depth " + std::to_string(n) + " exceeds the vector length " + std::to_string(*dim));
    if (const auto* e = std::get_if<ExactTime>(&t)) {
        if (!theta0.is_exact()) throw DomainError("exact time needs an exact starting point");
        auto g = fv.single_generator(n);
        if (!g) throw DomainError("exact flow needs every frequency on a single generator; use a float time");
        auto coords = fv.coordinates_upto(n);
        std::vector<Rational> out = theta0.theta_check();
        for (std::size_t j = 0; j < n; ++j)
            if (auto it = coords[j].find(*g); it != coords[j].end()) out[j] += it->second * e->s;
        return TorusPoint::exact(std::move(out));
    }
    double time = std::get<double>(t);
    auto angles = theta0.angles();
    for (std::size_t j = 0; j < n; ++j) angles[j] += fv.evaluate(j + 1).times_mod_two_pi(time);
    return TorusPoint::floating(std::move(angles));
}

// ---------------------------------------------------------------- trigonometric polynomials

struct ExactComplex {
    Rational re, im;
    friend bool operator==(const ExactComplex&, const ExactComplex&) = default;
    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
};

/// p(Theta) = sum_nu a_nu e^{i nu . Theta} with a_(-nu) = conj(a_nu).
class TrigPolynomial {
public:
    TrigPolynomial() = default;
    explicit TrigPolynomial(std::map<IntVecFin, ExactComplex> coefficients) : coeffs_(std::move(coefficients)) {
        for (auto it = coeffs_.begin(); it != coeffs_.end();)
            it = (it->second.re == 0 && it->second.im == 0) ? coeffs_.erase(it) : std::next(it);
        for (const auto& [nu, a] : coeffs_) {
            auto it = coeffs_.find(-nu);
            ExactComplex conj{a.re, -a.im};
            if (it == coeffs_.end() || !(it->second == conj))
                throw ValidationError("coefficient of " + nu.to_string() + " lacks the conjugate partner at " +
                                      (-nu).to_string());
        }
    }

    static TrigPolynomial constant(const Rational& c) { return TrigPolynomial({{IntVecFin{}, {c, 0}}}); }

    /// amplitude * cos(nu . Theta).
    static TrigPolynomial cosine(const IntVecFin& nu, const Rational& amplitude) {
        if (nu.is_zero()) return constant(amplitude);
        Rational half = amplitude / 2;
        return TrigPolynomial({{nu, {half, 0}}, {-nu, {half, 0}}});
    }

    /// amplitude * sin(nu . Theta).
    static TrigPolynomial sine(const IntVecFin& nu, const Rational& amplitude) {
        if (nu.is_zero()) return {};
        Rational half = amplitude / 2;
        return TrigPolynomial({{nu, {0, -half}}, {-nu, {0, half}}});
    }

    friend TrigPolynomial operator+(const TrigPolynomial& a, const TrigPolynomial& b) {
        auto c = a.coeffs_;
        for (const auto& [nu, x] : b.coeffs_) {
            auto& y = c[nu];
            y.re += x.re;
            y.im += x.im;
        }
        return TrigPolynomial(std::move(c));
    }

    const std::map<IntVecFin, ExactComplex>& coefficients() const { return coeffs_; }

    std::size_t max_index() const {
        std::size_t m = 0;
        for (const auto& [nu, a] : coeffs_) m = std::max(m, nu.max_index());
        return m;
    }

    /// Value at a point (float).
    double evaluate(const TorusPoint& theta) const {
        auto angles = theta.angles();
        std::complex<double> s = 0;
        for (const auto& [nu, a] : coeffs_) {
            double phase = 0;
            for (const auto& [j, x] : nu.entries()) {
                if (j > angles.size()) throw DomainError("polynomial reaches past the point depth");
                phase += x.get_d() * angles[j - 1];
            }
            s += a.to_complex() * std::polar(1.0, phase);
        }
        return s.real();
    }

    /// p o A: the coefficient of nu moves to A^T nu.
    TrigPolynomial compose(const RowFiniteIntMatrix& a) const {
        auto at = a.transpose();
        std::map<IntVecFin, ExactComplex> c;
        for (const auto& [nu, x] : coeffs_) c[at.apply(nu)] = x;
        return TrigPolynomial(std::move(c));
    }

private:
    std::map<IntVecFin, ExactComplex> coeffs_;
};

/// The Haar functional: the constant coefficient.
inline Rational haar_average(const TrigPolynomial& p) {
    auto it = p.coefficients().find(IntVecFin{});
    return it == p.coefficients().end() ? Rational(0) : it->second.re;
}

/// nu . omega in generator coordinates, then at working precision.
inline BigFloat pairing(const FrequencyVector& fv, const IntVecFin& nu) {
    Coordinates sum;
    for (const auto& [j, x] : nu.entries())
        for (const auto& [g, c] : fv.coordinates(j)) sum[g] += Rational(x) * c;
    BigFloat v;
    for (const auto& [g, c] : sum)
        if (c != 0) v += c * fv.generator(g).value();
    return v;
}

/// nu . Theta0 in radians, reduced mod 2 pi (exactly first on exact points).
inline double initial_phase(const IntVecFin& nu, const TorusPoint& theta0) {
    if (nu.max_index() > theta0.depth()) throw DomainError("frequency index past the starting point depth");
    if (theta0.is_exact()) return wrap_angle(two_pi * frac(nu.dot(theta0.theta_check())).get_d());
    double phase = 0;
    auto angles = theta0.angles();
    for (const auto& [j, x] : nu.entries()) phase += x.get_d() * angles[j - 1];
    return wrap_angle(phase);
}

/// (1/T) int_0^T e^{i nu . Theta(t)} dt in closed form; resonant nu gives the
/// constant e^{i nu . Theta0}.
inline std::complex<double> exponential_average(const FrequencyVector& fv, const IntVecFin& nu, const TorusPoint& theta0,
                                                double T) {
    if (!(T > 0)) throw DomainError("averaging time must be positive");
    std::complex<double> start = std::polar(1.0, initial_phase(nu, theta0));
    if (is_resonance(fv, nu)) return start;
    BigFloat x = pairing(fv, nu);
    double phase = x.times_mod_two_pi(T);
    double xT = x.to_double() * T;
    // (e^{i phase} - 1) / (i x T) with e^{i phase} - 1 = 2i sin(phase/2) e^{i phase/2}
    std::complex<double> num = std::complex<double>(0, 2 * std::sin(phase / 2)) * std::polar(1.0, phase / 2);
    return start * num / std::complex<double>(0, xT);
}

/// (1/T) int_0^T p(Phi^t(Theta0)) dt, evaluated term by term in closed form.
inline std::complex<double> time_average(const FrequencyVector& fv, const TrigPolynomial& p, const TorusPoint& theta0,
                                         double T) {
    std::complex<double> s = 0;
    for (const auto& [nu, a] : p.coefficients())
        s += a.to_complex() * (nu.is_zero() ? std::complex<double>(1) : exponential_average(fv, nu, theta0, T));
    return s;
}

/// Midpoint-rule average of an arbitrary observable along the float flow.
inline double sampled_time_average(const FrequencyVector& fv, const std::function<double(const TorusPoint&)>& f,
                                   const TorusPoint& theta0, double T, std::size_t steps) {
    if (!(T > 0) || steps == 0) throw DomainError("sampled average needs T > 0 and steps >= 1");
    double h = T / static_cast<double>(steps);
    double s = 0;
    for (std::size_t k = 0; k < steps; ++k) s += f(flow(fv, theta0, (static_cast<double>(k) + 0.5) * h));
    return s / static_cast<double>(steps);
}

// ---------------------------------------------------------------- equidistribution

struct EquidistributionRow {
    IntVecFin nu;
    double T = 0;
    double value = 0;
    /// 2 / (T |omega . nu|); absent for excluded rows.
    std::optional<double> bound;
    bool pass = false;
    /// "ok", "near_resonant", "resonant" or "zero".
    std::string flag;
};

inline constexpr double equidistribution_slack = 1e-12;
inline constexpr double near_resonance_threshold = 1e-9;

inline std::vector<EquidistributionRow> equidistribution_report(const FrequencyVector& fv, const std::vector<IntVecFin>& nus,
                                                                const std::vector<double>& Ts, const TorusPoint& theta0) {
    std::vector<EquidistributionRow> rows;
    for (const auto& nu : nus)
        for (double T : Ts) {
            EquidistributionRow row{nu, T, 0, std::nullopt, false, "ok"};
            if (nu.is_zero()) {
                row.flag = "zero";
            } else if (is_resonance(fv, nu)) {
                row.flag = "resonant";
                row.value = std::abs(exponential_average(fv, nu, theta0, T));
            } else {
                double x = std::fabs(pairing(fv, nu).to_double());
                if (x < near_resonance_threshold) row.flag = "near_resonant";
                row.value = std::abs(exponential_average(fv, nu, theta0, T));
                row.bound = 2 / (T * x);
                row.pass = row.value <= *row.bound + equidistribution_slack;
            }
            rows.push_back(std::move(row));
        }
    return rows;
}

// ---------------------------------------------------------------- minimality and confinement

struct ProbeResult {
    bool hit = false;
    double time = 0;
    double distance = 0;
    std::size_t samples = 0;
};

/// First grid time t <= T_max with d_rho(Phi^t(0), target) < eps, rho_k = 2^-k.
/// The grid step defaults to eps / (4 max_j |omega_j|).
inline ProbeResult minimality_probe(const FrequencyVector& fv, const TorusPoint& target, std::size_t depth, double eps,
                                    double T_max, std::optional<double> step = std::nullopt) {
    if (!(eps > 0)) throw DomainError("eps must be positive");
    if (target.depth() != fv.effective_depth(depth)) throw DomainError("target depth does not match the truncation depth");
    auto basis = resonance_basis(fv, depth);
    if (basis.rank() > 0)
        throw DomainError("flow is resonant at depth " + std::to_string(depth) + " (resonance " +
                          basis.vectors.front().to_string() + "); it is not minimal, so the probe does not apply");
    double wmax = 0;
    for (std::size_t j = 1; j <= target.depth(); ++j) wmax = std::max(wmax, std::fabs(fv.evaluate_double(j)));
    double h = step.value_or(wmax > 0 ? eps / (4 * wmax) : T_max);
    if (!(h > 0)) throw DomainError("grid step must be positive");
    Weights w = GeometricWeights{0.5};
    auto origin = TorusPoint::floating(std::vector<double>(target.depth(), 0.0));
    ProbeResult r;
    for (std::size_t k = 0;; ++k) {
        double t = static_cast<double>(k) * h;
        if (t > T_max) break;
        ++r.samples;
        double d = product_metric(w, flow(fv, origin, t), target).value;
        if (d < eps) return {true, t, d, r.samples};
    }
    return r;
}

/// nu . Theta(t) is constant mod 1 (theta-check units) at every sampled time.
inline bool resonance_witness(const FrequencyVector& fv, const IntVecFin& nu, const TorusPoint& theta0,
                              const std::vector<Rational>& times) {
    if (nu.is_zero() || !is_resonance(fv, nu))
        throw DomainError("vector " + nu.to_string() + " is not a resonance of the flow");
    Rational start = frac(nu.dot(theta0.theta_check()));
    for (const auto& s : times)
        if (frac(nu.dot(flow(fv, theta0, ExactTime{s}).theta_check())) != start) return false;
    return true;
}

} // namespace kronecker
