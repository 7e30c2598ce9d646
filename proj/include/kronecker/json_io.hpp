#pragma once

// JSON input documents and report serialization.

#include <json.hpp>

#include <string>
#include <vector>

#include "kronecker/benjamin_ono.hpp"
#include "kronecker/classification.hpp"
#include "kronecker/dynamics.hpp"
#include "kronecker/resonance.hpp"
#include "kronecker/solenoid.hpp"

namespace kronecker::json {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------- parsing helpers

namespace detail {

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

inline const Json& field(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing field");
    return *it;
}

inline std::uint64_t positive_int(const Json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) fail(path, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

inline std::string str(const Json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

} // namespace detail

/// "p/q", "p" or a JSON integer.
inline Rational parse_rational(const Json& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(Integer(static_cast<long>(j.get<long long>())));
    if (!j.is_string()) detail::fail(path, "expected a rational string \"p/q\"");
    try {
        return kronecker::parse_rational(j.get<std::string>());
    } catch (const ParseError& e) {
        detail::fail(path, e.what());
    }
}

inline Exponent parse_exponent(const Json& j, const std::string& path) {
    if (j.is_string() && j.get<std::string>() == "inf") return Exponent::infinity();
    return Exponent(static_cast<unsigned long>(detail::positive_int(j, path)));
}

inline SupernaturalNumber parse_lambda(const Json& j, const std::string& path) {
    const auto& pairs = detail::field(j, "pairs", path);
    if (!pairs.is_array()) detail::fail(path + ".pairs", "expected an array");
    std::vector<SupernaturalNumber::Pair> out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        std::string p = path + ".pairs[" + std::to_string(k) + "]";
        const auto& ps = detail::field(pairs[k], "primes", p);
        PrimeSet set;
        auto list = [&](const Json& arr, const std::string& where) {
            std::set<std::uint64_t> s;
            if (!arr.is_array()) detail::fail(where, "expected an array of primes");
            for (std::size_t i = 0; i < arr.size(); ++i)
                s.insert(detail::positive_int(arr[i], where + "[" + std::to_string(i) + "]"));
            return s;
        };
        if (ps.is_string()) {
            auto name = ps.get<std::string>();
            if (name == "all")
                set = PrimeSet::all();
            else if (name == "odd_indexed")
                set = PrimeSet::odd_indexed();
            else if (name == "even_indexed")
                set = PrimeSet::even_indexed();
            else
                detail::fail(p + ".primes", "unknown prime class \"" + name + "\"");
        } else if (ps.is_object()) {
            set = PrimeSet::cofinite(list(detail::field(ps, "cofinite", p + ".primes"), p + ".primes.cofinite"));
        } else {
            set = PrimeSet::finite(list(ps, p + ".primes"));
        }
        out.push_back({set, parse_exponent(detail::field(pairs[k], "exp", p), p + ".exp")});
    }
    return SupernaturalNumber::from_pairs(out);
}

inline BaerType parse_baer(const Json& j, const std::string& path) {
    Integer i = 1;
    if (j.contains("i")) i = Integer(static_cast<unsigned long>(detail::positive_int(j["i"], path + ".i")));
    return BaerType(i, parse_lambda(detail::field(j, "lambda", path), path + ".lambda"));
}

inline SigmaSequence parse_sequence(const Json& j, const std::string& path) {
    const auto& pre = detail::field(j, "prefix", path);
    if (!pre.is_array()) detail::fail(path + ".prefix", "expected an array");
    std::vector<std::uint64_t> prefix;
    for (std::size_t k = 0; k < pre.size(); ++k)
        prefix.push_back(detail::positive_int(pre[k], path + ".prefix[" + std::to_string(k) + "]"));
    const auto& t = detail::field(j, "tail", path);
    std::string tp = path + ".tail";
    SigmaTail tail;
    if (t.is_string()) {
        auto name = t.get<std::string>();
        if (name == "increment")
            tail = IncrementTail{};
        else if (name == "odd_indexed_primes")
            tail = OddIndexedPrimesTail{};
        else
            detail::fail(tp, "unknown tail \"" + name + "\"");
    } else if (t.is_object() && t.contains("constant")) {
        tail = ConstantTail{detail::positive_int(t["constant"], tp + ".constant")};
    } else if (t.is_object() && t.contains("periodic")) {
        const auto& per = t["periodic"];
        if (!per.is_array()) detail::fail(tp + ".periodic", "expected an array");
        PeriodicTail pt;
        for (std::size_t k = 0; k < per.size(); ++k)
            pt.period.push_back(detail::positive_int(per[k], tp + ".periodic[" + std::to_string(k) + "]"));
        tail = pt;
    } else if (t.is_object() && t.contains("prime_powers")) {
        tail = PrimePowersTail{parse_lambda(t["prime_powers"], tp + ".prime_powers")};
    } else {
        detail::fail(tp, "expected \"increment\", \"odd_indexed_primes\", {constant}, {periodic} or {prime_powers}");
    }
    return SigmaSequence(std::move(prefix), std::move(tail));
}

inline RationalSequenceSpec parse_action_profile(const Json& j, const std::string& path) {
    std::vector<Rational> prefix;
    if (j.contains("prefix")) {
        const auto& pre = j["prefix"];
        if (!pre.is_array()) detail::fail(path + ".prefix", "expected an array");
        for (std::size_t k = 0; k < pre.size(); ++k)
            prefix.push_back(parse_rational(pre[k], path + ".prefix[" + std::to_string(k) + "]"));
    }
    std::optional<GeometricTail> tail;
    if (j.contains("tail") && !j["tail"].is_null()) {
        const auto& t = j["tail"];
        tail = GeometricTail{parse_rational(detail::field(t, "c", path + ".tail"), path + ".tail.c"),
                             parse_rational(detail::field(t, "r", path + ".tail"), path + ".tail.r")};
    }
    return RationalSequenceSpec(std::move(prefix), tail);
}

inline Generator parse_generator(const Json& j, const std::string& path) {
    auto name = detail::str(detail::field(j, "name", path), path + ".name");
    auto kind = detail::str(detail::field(j, "kind", path), path + ".kind");
    if (kind == "rational_unit") {
        if (name != "1") detail::fail(path + ".name", "the rational unit generator must be named \"1\"");
        return Generator::one();
    }
    if (kind == "sqrt_prime" || kind == "pi_power") {
        auto param = detail::positive_int(detail::field(j, "param", path), path + ".param");
        Generator g = kind == "sqrt_prime" ? Generator::sqrt_prime(param) : Generator::pi_power(param);
        g.name = name;
        return g;
    }
    if (kind == "opaque") return Generator::opaque(name, detail::str(detail::field(j, "value", path), path + ".value"));
    detail::fail(path + ".kind", "unknown generator kind \"" + kind + "\"");
}

/// Generators named "1", "sqrtP", "sqrt(P)", "pi" or "pi^K" need no declaration.
inline std::optional<Generator> implicit_generator(const std::string& name) {
    auto number = [](const std::string& s) -> std::optional<std::uint64_t> {
        if (s.empty() || s.size() > 12 || !std::all_of(s.begin(), s.end(), ::isdigit)) return std::nullopt;
        return std::stoull(s);
    };
    Generator g;
    if (name == "1") return Generator::one();
    if (name == "pi") return Generator::pi_power(1);
    if (name.rfind("pi^", 0) == 0) {
        if (auto k = number(name.substr(3)); k && *k > 0) g = Generator::pi_power(*k);
        else return std::nullopt;
    } else if (name.rfind("sqrt(", 0) == 0 && name.back() == ')') {
        auto p = number(name.substr(5, name.size() - 6));
        if (!p || !primes::is_prime(*p)) return std::nullopt;
        g = Generator::sqrt_prime(*p);
    } else if (name.rfind("sqrt", 0) == 0) {
        auto p = number(name.substr(4));
        if (!p || !primes::is_prime(*p)) return std::nullopt;
        g = Generator::sqrt_prime(*p);
    } else {
        return std::nullopt;
    }
    g.name = name;
    return g;
}

namespace detail {

struct GeneratorTable {
    std::vector<Generator> list;

    const Generator& resolve(const std::string& name, const std::string& path) {
        for (const auto& g : list)
            if (g.name == name) return g;
        auto g = implicit_generator(name);
        if (!g) fail(path, "unknown generator \"" + name + "\"");
        list.push_back(*g);
        return list.back();
    }
};

inline GeneratorTable declared_generators(const Json& j) {
    GeneratorTable t;
    if (!j.contains("generators")) return t;
    const auto& gs = j["generators"];
    if (!gs.is_array()) fail("generators", "expected an array");
    for (std::size_t k = 0; k < gs.size(); ++k) t.list.push_back(parse_generator(gs[k], "generators[" + std::to_string(k) + "]"));
    return t;
}

inline std::string generator_ref(const Json& j, const std::string& key, const std::string& fallback) {
    if (!j.contains(key)) return fallback;
    return str(j[key], key);
}

} // namespace detail

inline FrequencyVector parse_frequency_spec(const Json& j) {
    if (!j.is_object()) throw ParseError("document: expected a JSON object");
    auto kind = detail::str(detail::field(j, "kind", "document"), "kind");
    auto gens = detail::declared_generators(j);
    if (kind == "finite") {
        const auto& terms = detail::field(j, "terms", "document");
        if (!terms.is_array()) detail::fail("terms", "expected an array");
        std::vector<Coordinates> out;
        for (std::size_t k = 0; k < terms.size(); ++k) {
            std::string p = "terms[" + std::to_string(k) + "]";
            if (!terms[k].is_object()) detail::fail(p, "expected an object of generator -> rational");
            Coordinates c;
            for (const auto& [name, v] : terms[k].items()) {
                gens.resolve(name, p + "." + name);
                Rational q = parse_rational(v, p + "." + name);
                if (q != 0) c[name] = q;
            }
            out.push_back(std::move(c));
        }
        return FrequencyVector(gens.list, FiniteFrequencies{std::move(out)});
    }
    if (kind == "solenoid") {
        auto g = gens.resolve(detail::generator_ref(j, "generator", "1"), "generator");
        return FrequencyVector(gens.list, SolenoidRule{g.name, parse_sequence(detail::field(j, "a", "document"), "a")});
    }
    if (kind == "sequence") {
        auto g = gens.resolve(detail::generator_ref(j, "generator", "1"), "generator");
        auto rule = detail::str(detail::field(j, "rule", "document"), "rule");
        SequenceRule::Kind k;
        if (rule == "harmonic")
            k = SequenceRule::Kind::Harmonic;
        else if (rule == "prime_ratio")
            k = SequenceRule::Kind::PrimeRatio;
        else
            detail::fail("rule", "unknown rule \"" + rule + "\" (expected harmonic or prime_ratio)");
        return FrequencyVector(gens.list, SequenceRule{g.name, k});
    }
    if (kind == "bo") {
        auto g = gens.resolve(detail::str(detail::field(j, "beta", "document"), "beta"), "beta");
        return FrequencyVector(gens.list, BoRule{g.name, parse_action_profile(detail::field(j, "s", "document"), "s")});
    }
    if (kind == "product") {
        const auto& comps = detail::field(j, "components", "document");
        if (!comps.is_array()) detail::fail("components", "expected an array");
        std::vector<SubgroupOfQSpec> out;
        for (std::size_t k = 0; k < comps.size(); ++k) {
            std::string p = "components[" + std::to_string(k) + "]";
            const auto& c = comps[k];
            if (c.is_string() && c.get<std::string>() == "free")
                out.emplace_back(FreeSubgroup{});
            else if (c.is_object() && c.contains("a"))
                out.emplace_back(parse_sequence(c["a"], p + ".a"));
            else if (c.is_object() && c.contains("baer")) {
                auto t = parse_baer(c["baer"], p + ".baer");
                if (is_free(t))
                    out.emplace_back(FreeSubgroup{});
                else
                    out.emplace_back(baer_to_qa(t));
            } else
                detail::fail(p, "expected \"free\", {\"a\": sequence} or {\"baer\": type}");
        }
        if (out.empty()) throw DomainError("components: product construction needs at least one group");
        return FrequencyVector(gens.list, ProductConstruction{std::move(out)});
    }
    detail::fail("kind", "unknown kind \"" + kind + "\"");
}

inline BoActionSpec parse_bo_spec(const Json& j) {
    if (!j.is_object()) throw ParseError("document: expected a JSON object");
    auto gens = detail::declared_generators(j);
    const auto& b = detail::field(j, "beta", "document");
    Generator beta = b.is_object() ? parse_generator(b, "beta") : gens.resolve(detail::str(b, "beta"), "beta");
    if (beta.is_rational()) throw ValidationError("beta: must be an irrational generator");
    return {beta, parse_action_profile(detail::field(j, "s", "document"), "s")};
}

inline IntVecFin parse_int_vector(const Json& j, const std::string& path) {
    if (!j.is_array()) detail::fail(path, "expected an integer array");
    std::vector<Integer> v;
    for (std::size_t k = 0; k < j.size(); ++k) {
        if (!j[k].is_number_integer()) detail::fail(path + "[" + std::to_string(k) + "]", "expected an integer");
        v.emplace_back(static_cast<long>(j[k].get<long long>()));
    }
    return IntVecFin::from_dense(v);
}

/// {"constant": r, "cos": [{"nu": [...], "amp": r}], "sin": [...],
///  "terms": [{"nu": [...], "re": r, "im": r}]}
inline TrigPolynomial parse_trig_polynomial(const Json& j) {
    if (!j.is_object()) throw ParseError("polynomial: expected a JSON object");
    TrigPolynomial p;
    if (j.contains("constant")) p = p + TrigPolynomial::constant(parse_rational(j["constant"], "constant"));
    for (const char* key : {"cos", "sin"}) {
        if (!j.contains(key)) continue;
        const auto& arr = j[key];
        if (!arr.is_array()) detail::fail(key, "expected an array");
        for (std::size_t k = 0; k < arr.size(); ++k) {
            std::string path = std::string(key) + "[" + std::to_string(k) + "]";
            auto nu = parse_int_vector(detail::field(arr[k], "nu", path), path + ".nu");
            auto amp = parse_rational(detail::field(arr[k], "amp", path), path + ".amp");
            p = p + (key[0] == 'c' ? TrigPolynomial::cosine(nu, amp) : TrigPolynomial::sine(nu, amp));
        }
    }
    if (j.contains("terms")) {
        const auto& arr = j["terms"];
        if (!arr.is_array()) detail::fail("terms", "expected an array");
        std::map<IntVecFin, ExactComplex> c;
        for (std::size_t k = 0; k < arr.size(); ++k) {
            std::string path = "terms[" + std::to_string(k) + "]";
            auto nu = parse_int_vector(detail::field(arr[k], "nu", path), path + ".nu");
            ExactComplex a{parse_rational(detail::field(arr[k], "re", path), path + ".re"),
                           arr[k].contains("im") ? parse_rational(arr[k]["im"], path + ".im") : Rational(0)};
            c[nu] = a;
        }
        p = p + TrigPolynomial(std::move(c));
    }
    return p;
}

inline TorusPoint parse_exact_point(const Json& j, const std::string& path) {
    if (!j.is_array()) detail::fail(path, "expected an array of rationals");
    std::vector<Rational> v;
    for (std::size_t k = 0; k < j.size(); ++k) v.push_back(parse_rational(j[k], path + "[" + std::to_string(k) + "]"));
    return TorusPoint::exact(std::move(v));
}

// ---------------------------------------------------------------- serialization

inline Json to_json(const Rational& q) { return to_string(q); }

/// Dense up to index max(n, last nonzero).
inline Json to_json(const IntVecFin& v, std::size_t n = 0) {
    Json a = Json::array();
    for (const auto& x : v.to_dense(std::max(n, v.max_index()))) a.push_back(Json::parse(x.get_str()));
    return a;
}

inline Json to_json(const SupernaturalNumber& s) {
    Json pairs = Json::array();
    for (const auto& pr : s.pairs()) {
        Json primes;
        switch (pr.primes.kind) {
        case PrimeSet::Kind::All: primes = "all"; break;
        case PrimeSet::Kind::OddIndexed: primes = "odd_indexed"; break;
        case PrimeSet::Kind::EvenIndexed: primes = "even_indexed"; break;
        case PrimeSet::Kind::Cofinite: primes = Json{{"cofinite", pr.primes.primes}}; break;
        case PrimeSet::Kind::Finite: primes = pr.primes.primes; break;
        }
        Json e = pr.exponent.is_infinite() ? Json("inf") : Json(pr.exponent.value());
        pairs.push_back(Json{{"primes", primes}, {"exp", e}});
    }
    return Json{{"pairs", pairs}};
}

inline Json to_json(const BaerType& t) { return Json{{"i", t.i.get_str()}, {"lambda", to_json(t.lambda)}}; }

inline Json to_json(const ClosureDescriptor& c) {
    Json a = Json::array();
    for (const auto& f : c.factors) {
        if (std::holds_alternative<Circle>(f))
            a.push_back("circle");
        else
            a.push_back(Json{{"solenoid", to_json(std::get<Solenoid>(f).lambda)}});
    }
    return a;
}

inline Json to_json(const ModuleDescriptor& md) {
    Json comps = Json::array();
    for (const auto& c : md.components)
        comps.push_back(Json{{"generator", c.generator}, {"baer", to_json(c.type)}, {"free", is_free(c.type)}});
    return Json{{"components", comps}};
}

inline Json classification_report(const ModuleDescriptor& md) {
    return Json{{"module", to_json(md)},
                {"closure", to_json(closure_of(md))},
                {"closure_text", closure_of(md).to_string()},
                {"rank", module_rank(md)},
                {"free_rank", md.free_rank()},
                {"free", md.is_free_module()}};
}

inline Json to_json(const ResonanceBasis& b) {
    Json vs = Json::array();
    for (const auto& v : b.vectors) vs.push_back(to_json(v));
    return Json{{"depth", b.depth}, {"rank", b.rank()}, {"vectors", vs}};
}

/// {row: {col: value}} over the active block, 1-based.
inline Json matrix_to_json(const std::vector<IntVecFin>& rows) {
    Json m = Json::object();
    for (std::size_t i = 1; i <= rows.size(); ++i) {
        Json r = Json::object();
        for (const auto& [j, x] : rows[i - 1].entries()) r[std::to_string(j)] = Json::parse(x.get_str());
        m[std::to_string(i)] = r;
    }
    return m;
}

inline Json to_json(const RowFiniteIntMatrix& a) {
    return Json{{"dimension", a.dimension()},
                {"rows", matrix_to_json(a.rows())},
                {"inverse_rows", matrix_to_json(a.inverse_rows())}};
}

inline Json to_json(const ReductionCertificate& c) {
    Json steps = Json::array();
    for (const auto& s : c.steps) {
        Json step{{"pass", s.pass}, {"op", s.kind_name()}, {"target", s.target}};
        if (s.kind != ReductionStep::Kind::Negate) step["source"] = s.source;
        steps.push_back(step);
    }
    Json sums = Json::array();
    for (const auto& s : c.pass_sums) sums.push_back(Json::parse(s.get_str()));
    std::size_t n = c.input.max_index();
    return Json{{"input", to_json(c.input, n)},
                {"result", to_json(c.result, n)},
                {"gcd", gcd_of_vector(c.input).get_str()},
                {"transform", to_json(c.transform)},
                {"pass_sums", sums},
                {"steps", steps}};
}

inline Json coordinates_to_json(const Coordinates& c) {
    Json o = Json::object();
    for (const auto& [g, q] : c) o[g] = to_json(q);
    return o;
}

inline Json to_json(const FlowReduction& r) {
    Json reduced = Json::array();
    for (const auto& c : r.reduced.coordinates_upto(r.depth)) reduced.push_back(coordinates_to_json(c));
    Json elim = Json::array();
    for (const auto& v : r.eliminated) elim.push_back(to_json(v));
    return Json{{"depth", r.depth},
                {"zero_block", r.zero_block},
                {"nonzero_block_independent", r.nonzero_block_independent},
                {"global", r.global},
                {"transform", to_json(r.transform)},
                {"reduced", reduced},
                {"eliminated", elim}};
}

inline Json to_json(const SolenoidCoords& c) {
    Json d = Json::array();
    for (const auto& x : c.digits) d.push_back(Json::parse(x.get_str()));
    return Json{{"tau", to_json(c.tau)}, {"digits", d}};
}

inline Json to_json(const TorusPoint& p) {
    Json a = Json::array();
    if (p.is_exact())
        for (const auto& q : p.theta_check()) a.push_back(to_json(q));
    else
        for (double x : p.angles()) a.push_back(x);
    return a;
}

inline Json to_json(const BoModuleReport& r, const std::string& beta = "beta") {
    Json sig = Json::array(), tails = Json::array();
    for (const auto& s : r.sigma_values) sig.push_back(to_json(s));
    for (const auto& g : r.tail_sums) tails.push_back(to_json(g));
    ModuleDescriptor md{{{"1", BaerType(1, SupernaturalNumber())}}};
    if (r.r_type) md.components.push_back({beta, *r.r_type});
    return Json{{"sigma", sig},
                {"tail_sums", tails},
                {"R", r.r_type ? to_json(*r.r_type) : Json(nullptr)},
                {"infinite_support", r.infinite_support},
                {"classification", classification_report(md)}};
}

inline Json to_json(const std::vector<EquidistributionRow>& rows) {
    Json a = Json::array();
    for (const auto& r : rows)
        a.push_back(Json{{"nu", to_json(r.nu)},
                         {"T", r.T},
                         {"value", r.value},
                         {"bound", r.bound ? Json(*r.bound) : Json(nullptr)},
                         {"pass", r.pass},
                         {"flag", r.flag}});
    return a;
}

} // namespace kronecker::json
