#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"

using namespace kronecker;
using json::Json;

namespace {

FrequencyVector parse(const char* text) { return json::parse_frequency_spec(Json::parse(text)); }

FrequencyVector one_sqrt2() {
    return FrequencyVector::finite({{{"1", Rational(1)}}, {{"sqrt2", Rational(1)}}}, {Generator::sqrt_prime(2)});
}

} // namespace

TEST(ParseFrequencySpec, SolenoidConstantTail) {
    auto fv = parse(R"({"kind":"solenoid","generator":"1","a":{"prefix":[1,2],"tail":{"constant":2}}})");
    for (std::size_t j = 1; j <= 10; ++j) {
        Rational expected(Integer(1), Integer(1) << static_cast<unsigned>(j - 1));
        EXPECT_EQ(fv.coordinates(j), (Coordinates{{"1", expected}}));
    }
}

TEST(ParseFrequencySpec, FiniteTerms) {
    auto fv = parse(R"({"kind":"finite","terms":[{"1":"1"},{"1":"1/2"},{"1":"2/6"}]})");
    ASSERT_EQ(fv.dimension(), 3u);
    EXPECT_EQ(fv.coordinates(3).at("1"), Rational(1, 3));
}

TEST(ParseFrequencySpec, IncrementTailIsInverseFactorial) {
    auto fv = parse(R"({"kind":"solenoid","a":{"prefix":[1],"tail":"increment"}})");
    Integer fact = 1;
    for (unsigned long j = 1; j <= 12; ++j) {
        fact *= j;
        EXPECT_EQ(fv.coordinates(j).at("1"), Rational(Integer(1), fact));
    }
}

TEST(ParseFrequencySpec, Errors) {
    EXPECT_THROW(parse(R"({"kind":"solenoid","a":{"prefix":[2],"tail":"increment"}})"), ValidationError);
    EXPECT_THROW(parse(R"({"kind":"torus"})"), ParseError);
    EXPECT_THROW(parse(R"({"kind":"finite"})"), ParseError);
    EXPECT_THROW(parse(R"({"kind":"finite","terms":[{"zeta":"1"}]})"), ParseError);
    EXPECT_THROW(parse(R"({"kind":"finite","terms":[{"1":"1/0"}]})"), ParseError);
    EXPECT_THROW(parse(R"({"kind":"solenoid","a":{"prefix":[1],"tail":{"constant":1}}})"), ValidationError);
    try {
        parse(R"({"kind":"solenoid","a":{"prefix":[1],"tail":"squares"}})");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("a.tail"), std::string::npos);
    }
}

TEST(ParseFrequencySpec, DeclaredGenerators) {
    auto fv = parse(R"({"kind":"finite","generators":[{"name":"b","kind":"sqrt_prime","param":3}],
                        "terms":[{"1":"1","b":"-2/3"},{"pi^2":"5"}]})");
    EXPECT_NEAR(fv.evaluate_double(1), 1 - 2 * std::sqrt(3.0) / 3, 1e-15);
    EXPECT_NEAR(fv.evaluate_double(2), 5 * M_PI * M_PI, 1e-12);
    EXPECT_THROW(parse(R"({"kind":"finite","generators":[{"name":"b","kind":"sqrt_prime","param":4}],"terms":[{"b":"1"}]})"),
                 ValidationError);
}

TEST(Coordinates, Examples) {
    auto sol = FrequencyVector::solenoid(SigmaSequence::constant(2));
    EXPECT_EQ(sol.coordinates(3), (Coordinates{{"1", Rational(1, 4)}}));
    EXPECT_EQ(one_sqrt2().coordinates(2), (Coordinates{{"sqrt2", Rational(1)}}));
    auto beta = Generator::sqrt_prime(2);
    auto bo = FrequencyVector::benjamin_ono(beta, RationalSequenceSpec::geometric(Rational(1, 2)));
    // sigma_2 = 1/2 + 2 * (1/4 + 1/8 + ...) = 3/2, by the partial-sum oracle
    EXPECT_EQ(oracle::sigma_partial(RationalSequenceSpec::geometric(Rational(1, 2)), 2, 200) +
                  Rational(Integer(1), Integer(1) << 199),
              Rational(3, 2));
    EXPECT_EQ(bo.coordinates(2), (Coordinates{{"1", Rational(4)}, {"sqrt2", Rational(-3)}}));
    EXPECT_THROW(sol.coordinates(0), DomainError);
}

TEST(EvaluateFloat, Examples) {
    EXPECT_NEAR(FrequencyVector::rationals({1, Rational(1, 2), Rational(1, 3)}).evaluate_double(3), 1.0 / 3, 1e-16);
    EXPECT_NEAR(FrequencyVector::solenoid(SigmaSequence::factorial()).evaluate_double(4), 1.0 / 24, 1e-17);
    EXPECT_NEAR(one_sqrt2().evaluate_double(2), 1.4142135623730951, 1e-15);
    // at least 30 significant digits of sqrt(2)
    EXPECT_EQ(one_sqrt2().evaluate(2).to_string(40).substr(0, 31), "1.41421356237309504880168872420");
}

TEST(EvaluateFloat, RelativeErrorAgainstExactCoordinates) {
    auto g = oracle::rng(3);
    auto gens = std::vector<Generator>{Generator::sqrt_prime(2), Generator::sqrt_prime(5), Generator::pi_power(1)};
    for (int trial = 0; trial < 200; ++trial) {
        Coordinates c;
        for (const auto& gen : {"1", "sqrt2", "sqrt5", "pi"}) {
            Rational q = oracle::random_rational(g, 1000000);
            if (q != 0) c[gen] = q;
        }
        auto fv = FrequencyVector::finite({c}, gens);
        // reference at 512 bits
        double ref = fv.evaluate(1, 512).to_double();
        if (std::fabs(ref) < 1e-6) continue;
        EXPECT_LT(std::fabs(fv.evaluate_double(1) - ref) / std::fabs(ref), std::ldexp(1.0, -50));
    }
}

TEST(Truncate, Examples) {
    auto t = truncate(FrequencyVector::solenoid(SigmaSequence::constant(2)), 3);
    EXPECT_EQ(t.dimension(), 3u);
    EXPECT_EQ(t.coordinates(3).at("1"), Rational(1, 4));

    auto zero = truncate(FrequencyVector::benjamin_ono(Generator::sqrt_prime(2), RationalSequenceSpec()), 3);
    for (unsigned long j = 1; j <= 3; ++j) EXPECT_EQ(zero.coordinates(j), (Coordinates{{"1", Rational(j * j)}}));

    // a non-free component at position 1 owns the indices 2^N
    auto pc = truncate(FrequencyVector::product({SigmaSequence::constant(2)}), 4);
    EXPECT_TRUE(pc.coordinates(1).empty());
    EXPECT_EQ(pc.coordinates(2), (Coordinates{{"sqrt2", Rational(1)}}));
    EXPECT_TRUE(pc.coordinates(3).empty());
    EXPECT_EQ(pc.coordinates(4), (Coordinates{{"sqrt2", Rational(1, 2)}}));
}

TEST(Truncate, AgreesWithRule) {
    std::vector<FrequencyVector> rules{
        FrequencyVector::solenoid(SigmaSequence::factorial()),
        FrequencyVector::solenoid(SigmaSequence({1, 3}, PeriodicTail{{2, 5}}), Generator::sqrt_prime(7)),
        FrequencyVector::sequence(SequenceRule::Kind::PrimeRatio),
        FrequencyVector::benjamin_ono(Generator::pi_power(1), RationalSequenceSpec({Rational(1, 3)}, GeometricTail{2, Rational(1, 3)})),
        FrequencyVector::product({FreeSubgroup{}, SigmaSequence::constant(3), FreeSubgroup{}}),
    };
    for (const auto& fv : rules) {
        auto t = truncate(fv, 12);
        for (std::size_t j = 1; j <= 12; ++j) EXPECT_EQ(t.coordinates(j), fv.coordinates(j));
    }
}

TEST(SolenoidRule, DefiningRelation) {
    for (const auto& a : {SigmaSequence::constant(2), SigmaSequence::factorial(), SigmaSequence::odd_indexed_primes(),
                          SigmaSequence({1, 3}, PeriodicTail{{5, 4}})}) {
        auto fv = FrequencyVector::solenoid(a);
        for (std::size_t j = 1; j < 20; ++j)
            EXPECT_EQ(Rational(a.at(j + 1)) * fv.coordinates(j + 1).at("1"), fv.coordinates(j).at("1"));
    }
}

TEST(ProductConstruction, FreeComponentsFillUnreservedIndices) {
    auto fv = FrequencyVector::product({FreeSubgroup{}, SigmaSequence::constant(3), FreeSubgroup{}});
    // component 2 (prime 3) owns 3, 9, 27, ...; pi and pi^3 take indices 1 and 2
    EXPECT_EQ(fv.coordinates(1), (Coordinates{{"pi", Rational(1)}}));
    EXPECT_EQ(fv.coordinates(2), (Coordinates{{"pi^3", Rational(1)}}));
    EXPECT_EQ(fv.coordinates(3), (Coordinates{{"sqrt3", Rational(1)}}));
    EXPECT_TRUE(fv.coordinates(4).empty());
    EXPECT_EQ(fv.coordinates(9), (Coordinates{{"sqrt3", Rational(1, 3)}}));
    EXPECT_THROW(FrequencyVector::product({}), DomainError);
}

TEST(FiniteVector, DepthIsClamped) {
    auto fv = FrequencyVector::rationals({1, 2});
    EXPECT_EQ(fv.effective_depth(16), 2u);
    EXPECT_THROW(fv.coordinates(3), DomainError);
    EXPECT_THROW(fv.effective_depth(0), DomainError);
}

TEST(Precision, EnvironmentOverride) {
    setenv("KRON_PRECISION", "40", 1);
    EXPECT_THROW(working_precision(), ValidationError);
    setenv("KRON_PRECISION", "256", 1);
    EXPECT_EQ(working_precision(), 256);
    unsetenv("KRON_PRECISION");
    EXPECT_EQ(working_precision(), 128);
}
