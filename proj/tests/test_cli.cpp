#include <gtest/gtest.h>

#include <filesystem>

#include "kron_app.hpp"

using kron_app::Json;

namespace {

std::string data(const std::string& name) { return std::string(KRON_DATA_DIR) + "/" + name; }

struct Result {
    int code;
    std::string out, err;
    Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = kron_app::run(args, out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, Classify) {
    auto r = run({"classify", data("product_z_z2.json")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["closure_text"], "Circle x Solenoid(2^inf)");
    EXPECT_EQ(r.json()["rank"], 2);
    EXPECT_EQ(r.json()["free"], false);

    auto h = run({"classify", data("harmonic.json")}).json();
    EXPECT_EQ(h["module"]["components"][0]["baer"]["lambda"]["pairs"][0]["primes"], "all");
    EXPECT_EQ(h["module"]["components"][0]["baer"]["lambda"]["pairs"][0]["exp"], "inf");
}

TEST(Cli, Reduce) {
    auto r = run({"reduce", "--nu", "4,6,10"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["result"], Json::parse("[2,0,0]"));
    EXPECT_EQ(r.json()["gcd"], "2");
    EXPECT_EQ(run({"reduce", "--nu", "0,0"}).code, 1);
    auto bad = run({"reduce", "--nu", "4,x"});
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("--nu"), std::string::npos);
}

TEST(Cli, ResonanceAndReduceFlow) {
    auto r = run({"resonance", data("thirds.json"), "--depth", "3"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["rank"], 2);
    auto f = run({"reduce-flow", data("thirds.json"), "--depth", "3"});
    ASSERT_EQ(f.code, 0) << f.err;
    EXPECT_EQ(f.json()["zero_block"], 2);
    auto last = f.json()["reduced"][2]["1"].get<std::string>();
    EXPECT_TRUE(last == "1/6" || last == "-1/6");
}

TEST(Cli, SimulateCsv) {
    auto r = run({"simulate", data("one_sqrt2.json"), "--t0", "0", "--t1", "1", "--steps", "2"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "t,theta_1,theta_2");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);

    auto path = (std::filesystem::temp_directory_path() / "kron_traj_test.csv").string();
    auto w = run({"simulate", data("factorial.json"), "--t1", "100", "--steps", "50", "--depth", "5", "--out", path});
    ASSERT_EQ(w.code, 0) << w.err;
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "t,theta_1,theta_2,theta_3,theta_4,theta_5");
    std::string line;
    while (std::getline(in, line)) {
        auto cells = kron_app::split(line, ',');
        ASSERT_EQ(cells.size(), 6u);
        for (std::size_t k = 1; k < cells.size(); ++k) {
            double x = std::stod(cells[k]);
            EXPECT_GE(x, 0);
            EXPECT_LT(x, kronecker::two_pi);
        }
    }
    std::filesystem::remove(path);
}

TEST(Cli, Average) {
    auto r = run({"average", data("one_sqrt2.json"), "--poly", data("cos_diff.json"), "--T", "1000"});
    ASSERT_EQ(r.code, 0) << r.err;
    auto row = r.json()["rows"][0];
    EXPECT_NEAR(row["bound"].get<double>(), 2 / (1000 * (std::sqrt(2.0) - 1)), 1e-15);
    EXPECT_EQ(row["pass"], true);
    EXPECT_EQ(r.json()["haar"], "0");

    auto res = run({"average", data("one_one.json"), "--poly", data("cos_diff.json")}).json();
    ASSERT_EQ(res["rows"].size(), 3u);
    for (const auto& row2 : res["rows"]) EXPECT_DOUBLE_EQ(row2["value"].get<double>(), 1.0);
}

TEST(Cli, Equidistribution) {
    auto r = run({"equidistribution", data("one_sqrt2_sqrt3.json"), "--nu=1,-1,0", "--nu=2,0,-1", "--T", "100,1000,10000"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.json()["rows"].size(), 6u);
    EXPECT_EQ(r.json()["all_pass"], true);
    auto res = run({"equidistribution", data("one_one.json"), "--nu=1,-1"}).json();
    EXPECT_EQ(res["rows"][0]["flag"], "resonant");
}

TEST(Cli, Solenoid) {
    std::string a = R"({"prefix":[1],"tail":{"constant":2}})";
    EXPECT_EQ(run({"solenoid", "member", "--a", a, "--point", "1/4,5/8,5/16"}).json()["member"], true);
    EXPECT_EQ(run({"solenoid", "member", "--a", a, "--point", "1/4,1/2,1/4"}).json()["member"], false);
    auto c = run({"solenoid", "coords", "--a", a, "--point", "1/4,5/8"}).json();
    EXPECT_EQ(c["tau"], "1/4");
    EXPECT_EQ(c["digits"], Json::parse("[1]"));
    auto t = run({"solenoid", "times", "--a", R"({"prefix":[1,2,3],"tail":{"constant":3}})", "--tau", "1/2", "--digits", "1,2"});
    EXPECT_EQ(t.json()["target"], Json::parse(R"(["1/2","3/4","11/12"])"));
    auto shallow = run({"solenoid", "member", "--a", a, "--point", "1/4"});
    EXPECT_EQ(shallow.code, 1);
    EXPECT_NE(shallow.err.find("depth >= 2"), std::string::npos);
    EXPECT_EQ(run({"solenoid", "member", "--a", R"({"prefix":[3],"tail":{"constant":2}})", "--point", "0,0"}).code, 1);
}

TEST(Cli, BenjaminOno) {
    auto d = run({"bo", data("bo_dyadic.json")});
    ASSERT_EQ(d.code, 0) << d.err;
    EXPECT_EQ(d.json()["classification"]["closure_text"], "Circle x Solenoid(2^inf)");
    EXPECT_EQ(d.json()["classification"]["module"]["components"][1]["generator"], "sqrt2");
    EXPECT_EQ(d.json()["full_support"], true);
    auto z = run({"bo", data("bo_zero.json")}).json();
    EXPECT_EQ(z["classification"]["closure_text"], "Circle");
    EXPECT_EQ(z["R"], nullptr);
    auto p = run({"bo", data("bo_prefix.json")}).json();
    EXPECT_EQ(p["classification"]["closure_text"], "Circle x Circle");
    EXPECT_TRUE(p.contains("note"));
}

TEST(Cli, Iso) {
    auto same = run({"iso", data("factorial.json"), data("harmonic.json")}).json();
    EXPECT_EQ(same["modules_isomorphic"], true);
    auto diff = run({"iso", data("factorial.json"), data("prime_ratio.json")}).json();
    EXPECT_EQ(diff["modules_isomorphic"], false);
    EXPECT_EQ(diff["closures_homeomorphic"], false);
}

TEST(Cli, ExitCodesNameTheProblem) {
    auto kind = run({"classify", data("bad_kind.json")});
    EXPECT_EQ(kind.code, 1);
    EXPECT_NE(kind.err.find("kind"), std::string::npos);
    auto seq = run({"classify", data("bad_sequence.json")});
    EXPECT_EQ(seq.code, 1);
    EXPECT_NE(seq.err.find("a_1"), std::string::npos);
    auto missing = run({"classify", data("no_such_file.json")});
    EXPECT_EQ(missing.code, 1);
    EXPECT_NE(missing.err.find("no_such_file.json"), std::string::npos);
    auto big = run({"classify", data("large_denominator.json")});
    EXPECT_EQ(big.code, 2);
    EXPECT_NE(big.err.find("100000000000000000039"), std::string::npos);
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"classify"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
    EXPECT_EQ(run({"classify", data("thirds.json"), "--depth", "0"}).code, 1);
}

TEST(Cli, PrecisionEnvironment) {
    setenv("KRON_PRECISION", "32", 1);
    auto low = run({"reduce", "--nu", "1,2"});
    EXPECT_EQ(low.code, 1);
    EXPECT_NE(low.err.find("KRON_PRECISION"), std::string::npos);
    setenv("KRON_PRECISION", "256", 1);
    EXPECT_EQ(run({"average", data("one_sqrt2.json"), "--poly", data("cos_diff.json")}).code, 0);
    unsetenv("KRON_PRECISION");
}

TEST(Cli, OutputIsDeterministic) {
    std::vector<std::vector<std::string>> cmds{
        {"classify", data("prime_ratio.json")},
        {"reduce-flow", data("thirds.json"), "--depth", "3"},
        {"equidistribution", data("one_sqrt2.json"), "--nu=1,-1"},
        {"simulate", data("one_sqrt2_sqrt3.json"), "--steps", "20"},
        {"bo", data("bo_dyadic.json")},
    };
    for (const auto& c : cmds) EXPECT_EQ(run(c).out, run(c).out);
}
