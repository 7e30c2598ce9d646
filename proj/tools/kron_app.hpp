#pragma once

// The kron command line: argument handling and report emission. Kept apart
// from main() so the tests can drive it with in-memory streams.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "kronecker/kronecker.hpp"

namespace kron_app {

using namespace kronecker;
using kronecker::json::Json;

inline constexpr const char* version = "kron 1.0.0";

inline Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open input file \"" + path + "\"");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path + ": invalid JSON (" + std::string(e.what()) + ")");
    }
}

/// Inline JSON when the argument starts with '{', otherwise a file path.
inline Json inline_or_file(const std::string& arg) {
    if (!arg.empty() && arg.front() == '{') {
        try {
            return Json::parse(arg);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("inline JSON: " + std::string(e.what()));
        }
    }
    return load_json(arg);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

inline IntVecFin parse_nu(const std::string& text, const std::string& flag) {
    std::vector<Integer> v;
    for (const auto& part : split(text, ',')) {
        Integer x;
        if (part.empty() || x.set_str(part, 10) != 0) throw ParseError(flag + ": \"" + part + "\" is not an integer");
        v.push_back(x);
    }
    if (v.empty()) throw ParseError(flag + ": empty vector");
    return IntVecFin::from_dense(v);
}

inline std::vector<Rational> parse_rationals(const std::string& text, const std::string& flag) {
    std::vector<Rational> v;
    for (const auto& part : split(text, ',')) {
        try {
            v.push_back(kronecker::parse_rational(part));
        } catch (const ParseError& e) {
            throw ParseError(flag + ": " + e.what());
        }
    }
    return v;
}

inline void emit(std::ostream& out, const Json& j) { out << j.dump(2) << "\n"; }

inline std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void check_depth(std::size_t depth, std::size_t min = 1) {
    if (depth < min) throw ValidationError("--depth must be at least " + std::to_string(min));
}

// ---------------------------------------------------------------- subcommands

struct Options {
    std::string spec, spec2, poly, out, a, point, tau, digits, theta0;
    std::size_t depth = 16;
    double t0 = 0, t1 = 10;
    std::size_t steps = 100;
    std::vector<double> Ts;
    std::vector<std::string> nus;
    std::string nu;
};

inline std::vector<double> t_grid(const Options& o) {
    std::vector<double> Ts = o.Ts.empty() ? std::vector<double>{1e2, 1e3, 1e4} : o.Ts;
    for (double T : Ts)
        if (!(T > 0)) throw ValidationError("--T: averaging times must be positive, got " + fmt(T));
    return Ts;
}

inline TorusPoint start_point(const Options& o, std::size_t depth) {
    if (o.theta0.empty()) return TorusPoint::origin(depth);
    auto v = parse_rationals(o.theta0, "--theta0");
    if (v.size() != depth)
        throw ValidationError("--theta0 has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(depth));
    return TorusPoint::exact(std::move(v));
}

inline int cmd_classify(const Options& o, std::ostream& out) {
    check_depth(o.depth);
    emit(out, json::classification_report(decompose_module(json::parse_frequency_spec(load_json(o.spec)), o.depth)));
    return 0;
}

inline int cmd_resonance(const Options& o, std::ostream& out) {
    check_depth(o.depth);
    emit(out, json::to_json(resonance_basis(json::parse_frequency_spec(load_json(o.spec)), o.depth)));
    return 0;
}

inline int cmd_reduce(const Options& o, std::ostream& out) {
    emit(out, json::to_json(reduce_vector(parse_nu(o.nu, "--nu"))));
    return 0;
}

inline int cmd_reduce_flow(const Options& o, std::ostream& out) {
    check_depth(o.depth);
    emit(out, json::to_json(reduce_flow(json::parse_frequency_spec(load_json(o.spec)), o.depth)));
    return 0;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
    check_depth(o.depth);
    if (o.steps == 0) throw ValidationError("--steps must be at least 1");
    if (!(o.t1 >= o.t0)) throw ValidationError("--t1 must not be smaller than --t0");
    auto fv = json::parse_frequency_spec(load_json(o.spec));
    std::size_t n = fv.effective_depth(o.depth);
    auto theta0 = start_point(o, n);
    std::ostringstream csv;
    csv << "t";
    for (std::size_t j = 1; j <= n; ++j) csv << ",theta_" << j;
    csv << "\n";
    for (std::size_t k = 0; k <= o.steps; ++k) {
        double t = o.t0 + (o.t1 - o.t0) * static_cast<double>(k) / static_cast<double>(o.steps);
        auto p = flow(fv, theta0, t);
        csv << fmt(t);
        for (double x : p.angles()) csv << "," << fmt(wrap_angle(x));
        csv << "\n";
    }
    if (o.out.empty()) {
        out << csv.str();
    } else {
        std::ofstream f(o.out);
        if (!f) throw ValidationError("cannot write --out file \"" + o.out + "\"");
        f << csv.str();
        emit(out, Json{{"rows", o.steps + 1}, {"depth", n}, {"out", o.out}});
    }
    return 0;
}

inline int cmd_average(const Options& o, std::ostream& out) {
    auto fv = json::parse_frequency_spec(load_json(o.spec));
    auto p = json::parse_trig_polynomial(load_json(o.poly));
    std::size_t n = std::max<std::size_t>(1, p.max_index());
    auto theta0 = start_point(o, n);
    // the T -> infinity limit: constant term plus the frozen resonant terms
    std::complex<double> limit = 0;
    Json resonant = Json::array();
    for (const auto& [nu, a] : p.coefficients()) {
        if (nu.is_zero()) {
            limit += a.to_complex();
        } else if (is_resonance(fv, nu)) {
            limit += a.to_complex() * std::polar(1.0, initial_phase(nu, theta0));
            resonant.push_back(json::to_json(nu));
        }
    }
    Json rows = Json::array();
    for (double T : t_grid(o)) {
        auto v = time_average(fv, p, theta0, T);
        double bound = 0;
        for (const auto& [nu, a] : p.coefficients())
            if (!nu.is_zero() && !is_resonance(fv, nu))
                bound += std::abs(a.to_complex()) * 2 / (T * std::fabs(pairing(fv, nu).to_double()));
        double dev = std::abs(v - limit);
        rows.push_back(Json{{"T", T},
                            {"value", v.real()},
                            {"imag", v.imag()},
                            {"deviation", dev},
                            {"bound", bound},
                            {"pass", dev <= bound + equidistribution_slack}});
    }
    emit(out, Json{{"haar", json::to_json(haar_average(p))},
                   {"limit", limit.real()},
                   {"resonant_terms", resonant},
                   {"rows", rows}});
    return 0;
}

inline int cmd_equidistribution(const Options& o, std::ostream& out) {
    auto fv = json::parse_frequency_spec(load_json(o.spec));
    std::vector<IntVecFin> nus;
    std::size_t n = 1;
    for (const auto& s : o.nus) {
        nus.push_back(parse_nu(s, "--nu"));
        n = std::max(n, nus.back().max_index());
    }
    auto rows = equidistribution_report(fv, nus, t_grid(o), start_point(o, n));
    bool all = true;
    for (const auto& r : rows) all = all && (r.pass || r.flag != "ok");
    emit(out, Json{{"rows", json::to_json(rows)}, {"all_pass", all}});
    return 0;
}

inline int cmd_solenoid(const std::string& action, const Options& o, std::ostream& out) {
    auto a = json::parse_sequence(inline_or_file(o.a), "a");
    if (action == "times") {
        SolenoidCoords c{o.tau.empty() ? Rational(0) : kronecker::parse_rational(o.tau), {}};
        for (const auto& d : split(o.digits, ',')) {
            Integer x;
            if (x.set_str(d, 10) != 0) throw ParseError("--digits: \"" + d + "\" is not an integer");
            c.digits.push_back(x);
        }
        if (c.digits.empty()) throw ValidationError("--digits: solenoid commands need depth >= 2 (at least one digit)");
        auto times = approximating_times(a, c);
        Json ts = Json::array();
        for (const auto& t : times) ts.push_back(json::to_json(t));
        emit(out, Json{{"times", ts}, {"target", json::to_json(from_coordinates(a, c))}});
        return 0;
    }
    auto pt = TorusPoint::exact(parse_rationals(o.point, "--point"));
    if (pt.depth() < 2) throw ValidationError("--point: solenoid commands need depth >= 2");
    if (action == "member") {
        emit(out, Json{{"member", is_member(a, pt)}, {"depth", pt.depth()}});
    } else {
        auto c = to_coordinates(a, pt);
        emit(out, json::to_json(c));
    }
    return 0;
}

inline int cmd_bo(const Options& o, std::ostream& out) {
    check_depth(o.depth);
    auto spec = json::parse_bo_spec(load_json(o.spec));
    auto rep = bo_tail_module(spec, o.depth);
    bool full = spec.s.infinite_support();
    for (const auto& s : spec.s.prefix()) full = full && s > 0;
    Json j = json::to_json(rep, spec.beta.name);
    j["full_support"] = full;
    if (!full) j["note"] = "some actions vanish; classified by the same module computation outside the full-support hypothesis";
    emit(out, j);
    return 0;
}

inline int cmd_iso(const Options& o, std::ostream& out) {
    auto a = json::parse_frequency_spec(load_json(o.spec));
    auto b = json::parse_frequency_spec(load_json(o.spec2));
    auto ma = decompose_module(a, o.depth), mb = decompose_module(b, o.depth);
    emit(out, Json{{"modules_isomorphic", modules_isomorphic(ma, mb)},
                   {"closures_homeomorphic", closures_homeomorphic(a, b, o.depth)},
                   {"closure_1", closure_of(ma).to_string()},
                   {"closure_2", closure_of(mb).to_string()}});
    return 0;
}

// ---------------------------------------------------------------- entry point

/// Runs one command; args excludes the program name. Returns the exit status.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Kronecker flows on the infinite torus: resonances, classification, dynamics"};
    app.set_version_flag("--version", version);
    app.require_subcommand(1);
    Options o;

    auto* classify = app.add_subcommand("classify", "frequency module and orbit closure");
    classify->add_option("spec", o.spec, "frequency spec JSON")->required();
    classify->add_option("--depth", o.depth, "truncation depth");

    auto* resonance = app.add_subcommand("resonance", "basis of the resonance module at a depth");
    resonance->add_option("spec", o.spec)->required();
    resonance->add_option("--depth", o.depth);

    auto* reduce = app.add_subcommand("reduce", "reduce an integer vector to (gcd, 0, ...)");
    reduce->add_option("--nu", o.nu, "comma-separated integers")->required()->allow_extra_args(false);

    auto* reduce_flow_cmd = app.add_subcommand("reduce-flow", "conjugate the flow to its reduced form");
    reduce_flow_cmd->add_option("spec", o.spec)->required();
    reduce_flow_cmd->add_option("--depth", o.depth);

    auto* simulate = app.add_subcommand("simulate", "sample a trajectory as CSV");
    simulate->add_option("spec", o.spec)->required();
    simulate->add_option("--t0", o.t0);
    simulate->add_option("--t1", o.t1);
    simulate->add_option("--steps", o.steps);
    simulate->add_option("--depth", o.depth);
    simulate->add_option("--theta0", o.theta0, "starting point, comma-separated rationals (fractions of 2 pi)");
    simulate->add_option("--out", o.out, "CSV output path (stdout if absent)");

    auto* average = app.add_subcommand("average", "closed-form time averages of a trigonometric polynomial");
    average->add_option("spec", o.spec)->required();
    average->add_option("--poly", o.poly, "polynomial JSON")->required();
    average->add_option("--T", o.Ts, "averaging times")->delimiter(',');
    average->add_option("--theta0", o.theta0);

    auto* equi = app.add_subcommand("equidistribution", "decay of exponential averages against 2/(T|w.nu|)");
    equi->add_option("spec", o.spec)->required();
    equi->add_option("--nu", o.nus, "frequency vector, repeatable")->required()->allow_extra_args(false);
    equi->add_option("--T", o.Ts)->delimiter(',');
    equi->add_option("--theta0", o.theta0);

    auto* solenoid = app.add_subcommand("solenoid", "solenoid membership, coordinates and approximating times");
    std::string action;
    solenoid->add_option("action", action, "member | coords | times")->required()->check(CLI::IsMember({"member", "coords", "times"}));
    solenoid->add_option("--a", o.a, "sequence JSON (inline or path)")->required();
    solenoid->add_option("--point", o.point, "comma-separated rationals");
    solenoid->add_option("--tau", o.tau);
    solenoid->add_option("--digits", o.digits, "comma-separated digits n_2, n_3, ...");

    auto* bo = app.add_subcommand("bo", "Benjamin-Ono frequency module report");
    bo->add_option("spec", o.spec)->required();
    bo->add_option("--depth", o.depth);

    auto* iso = app.add_subcommand("iso", "compare two frequency vectors");
    iso->add_option("spec1", o.spec)->required();
    iso->add_option("spec2", o.spec2)->required();
    iso->add_option("--depth", o.depth);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        working_precision();
        if (classify->parsed()) return cmd_classify(o, out);
        if (resonance->parsed()) return cmd_resonance(o, out);
        if (reduce->parsed()) return cmd_reduce(o, out);
        if (reduce_flow_cmd->parsed()) return cmd_reduce_flow(o, out);
        if (simulate->parsed()) return cmd_simulate(o, out);
        if (average->parsed()) return cmd_average(o, out);
        if (equi->parsed()) return cmd_equidistribution(o, out);
        if (solenoid->parsed()) return cmd_solenoid(action, o, out);
        if (bo->parsed()) return cmd_bo(o, out);
        if (iso->parsed()) return cmd_iso(o, out);
    } catch (const UnsupportedStructure& e) {
        err << "unsupported structure: " << e.what() << "\n";
        return 2;
    } catch (const ValidationError& e) {
        err << "validation error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        err << "domain error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace kron_app
