#include <waldgame/embedding.hpp>
#include <waldgame/games.hpp>
#include <waldgame/literals.hpp>
#include <waldgame/payoff.hpp>

#include "generators.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace waldgame;
using namespace waldgame::games;
using measures::fs_measure;
using measures::Side;

namespace {
Rational frac(std::int64_t a, std::int64_t b) { return Rational(Integer(a), Integer(b)); }
}  // namespace

TEST(WaldPayoff, Examples) {
    EXPECT_EQ(wald_payoff(3, 2), 1);
    EXPECT_EQ(wald_payoff(7, 7), 0);
    EXPECT_EQ(wald_payoff(0, 9), -1);
    EXPECT_THROW(wald_payoff(-1, 0), std::invalid_argument);
}

TEST(WaldPayoff, ZeroSumAntisymmetry) {
    for (std::int64_t s = 0; s <= 1000; ++s)
        for (std::int64_t t = 0; t <= 1000; ++t) ASSERT_EQ(wald_payoff(s, t), -wald_payoff(t, s));
}

TEST(OpGamePayoff, WaldInstance) {
    const auto g = OperationGame::wald();
    EXPECT_EQ(opgame_payoff(g, 5, -3), 1);
    EXPECT_EQ(opgame_payoff(g, 4, -4), 0);
    EXPECT_EQ(opgame_payoff(g, 1, -6), -1);
    EXPECT_THROW(opgame_payoff(g, 0, -1), StrategyOutOfSet);
    EXPECT_THROW(opgame_payoff(g, 2, 1), StrategyOutOfSet);
}

TEST(OpGamePayoff, ThreeCasesPartitionOutcomes) {
    const auto g = OperationGame::wald();
    for (std::int64_t x = 1; x <= 40; ++x)
        for (std::int64_t y = -40; y <= -1; ++y) {
            const std::int64_t z = x + y;
            EXPECT_EQ(opgame_payoff(g, x, y), z > 0 ? 1 : (z == 0 ? 0 : -1));
        }
}

TEST(AffineMap, LiteralsRoundTrip) {
    EXPECT_EQ(literals::parse_affine("x+1"), AffineMap(1, 1));
    EXPECT_EQ(literals::parse_affine("-x-1"), AffineMap(-1, -1));
    EXPECT_EQ(literals::parse_affine(" -1*x + 4"), AffineMap(-1, 4));
    EXPECT_EQ(literals::parse_affine("1*x"), AffineMap(1, 0));
    EXPECT_EQ(literals::parse_affine("x").to_string(), "x");
    EXPECT_EQ(AffineMap(-1, -7).to_string(), "-x-7");
    EXPECT_THROW(literals::parse_affine("2*x+1"), ParseError);
    EXPECT_THROW(literals::parse_affine("x+"), ParseError);
    EXPECT_THROW(AffineMap(0, 1), std::invalid_argument);
}

TEST(PushForward, Examples) {
    EXPECT_EQ(push_forward(AffineMap(-1, 0), measures::FiniteSupportMeasure::point_mass(3)),
              measures::FiniteSupportMeasure::point_mass(-3));
    EXPECT_EQ(push_forward(AffineMap(1, 1), measures::FiniteSupportMeasure::uniform(0, 1)),
              measures::FiniteSupportMeasure::uniform(1, 2));
    EXPECT_EQ(push_forward(AffineMap(-1, -1), fs_measure({{0, frac(1, 3)}, {5, frac(2, 3)}})),
              fs_measure({{-1, frac(1, 3)}, {-6, frac(2, 3)}}));
}

TEST(PushForward, PreservesMassAndCommutesWithMixtures) {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        const AffineMap f(i % 2 ? 1 : -1, testgen::uniform_int(rng, -50, 50));
        const auto mu = testgen::random_measure(rng, -30, 30);
        const auto nu = testgen::random_measure(rng, -30, 30);
        const Rational alpha = frac(testgen::uniform_int(rng, 0, 9), 9);
        EXPECT_EQ(push_forward(f, mu).total_mass(), 1);
        const auto lhs = push_forward(f, measures::FiniteSupportMeasure::mixture({{alpha, mu}, {1 - alpha, nu}}));
        const auto rhs = measures::FiniteSupportMeasure::mixture(
            {{alpha, push_forward(f, mu)}, {1 - alpha, push_forward(f, nu)}});
        EXPECT_EQ(lhs, rhs);
        for (const auto& [x, w] : mu.points()) EXPECT_EQ(push_forward(f, mu).weight(f(x)), w);
    }
}

TEST(VerifyEmbedding, CanonicalMapsPassExhaustively) {
    const auto report = verify_embedding(GameEmbedding::canonical(), 2000, 100, 7);
    EXPECT_TRUE(report.passed);
    EXPECT_EQ(report.pure_checks, 2001 * 2001);
    EXPECT_TRUE(report.injective);
    EXPECT_TRUE(report.bijective_on_truncation);
    EXPECT_EQ(report.mixed_trials, 100);
    EXPECT_FALSE(report.pure_counterexample);
    EXPECT_FALSE(report.mixed_counterexample);
}

TEST(VerifyEmbedding, SmallestTruncation) {
    EXPECT_TRUE(verify_embedding(GameEmbedding::canonical(), 1, 10, 0).passed);
}

TEST(VerifyEmbedding, BrokenMapYieldsFirstCounterexample) {
    GameEmbedding e = GameEmbedding::canonical();
    e.f1 = AffineMap(1, 2);
    const auto report = verify_embedding(e, 10, 0, 0);
    EXPECT_FALSE(report.passed);
    ASSERT_TRUE(report.pure_counterexample);
    // (0,0) is already a mismatch: the tie maps to outcome 2 − 1 = 1.
    EXPECT_EQ(report.pure_counterexample->s, 0);
    EXPECT_EQ(report.pure_counterexample->t, 0);
    EXPECT_EQ(report.pure_counterexample->source_payoff, 0);
    EXPECT_EQ(report.pure_counterexample->target_payoff, 1);
    EXPECT_FALSE(report.bijective_on_truncation);
    // The profile (0,1) is a mismatch too: 0 vs −1.
    EXPECT_EQ(wald_payoff(0, 1), -1);
    EXPECT_EQ(opgame_payoff(e.target, e.f1(0), e.f2(1)), 0);
}

TEST(VerifyEmbedding, MapsLeavingTheStrategySetFail) {
    GameEmbedding e = GameEmbedding::canonical();
    e.f1 = AffineMap(1, 0);  // sends 0 to 0, outside N
    e.f2 = AffineMap(-1, 0);
    const auto report = verify_embedding(e, 5, 0, 0);
    EXPECT_FALSE(report.passed);
    ASSERT_TRUE(report.pure_counterexample);
    EXPECT_FALSE(report.pure_counterexample->target_payoff);
}

TEST(VerifyEmbedding, CounterexampleIndependentOfWorkers) {
    GameEmbedding e = GameEmbedding::canonical();
    e.f2 = AffineMap(-1, -3);
    const auto one = verify_embedding(e, 300, 0, 0, 1);
    for (unsigned w : {2u, 3u, 7u}) {
        const auto many = verify_embedding(e, 300, 0, 0, w);
        ASSERT_TRUE(many.pure_counterexample);
        EXPECT_EQ(many.pure_counterexample->s, one.pure_counterexample->s);
        EXPECT_EQ(many.pure_counterexample->t, one.pure_counterexample->t);
    }
}

TEST(VerifyEmbedding, MixedProfileExample) {
    const auto p = measures::FiniteSupportMeasure::uniform(0, 1);
    const auto q = measures::FiniteSupportMeasure::point_mass(0);
    const auto e = GameEmbedding::canonical();
    const Rational source = detail::wald_expected_payoff(p, q);
    const Rational target = analysis::expected_payoff_exact(e.target, push_forward(e.f1, p), push_forward(e.f2, q));
    EXPECT_EQ(source, frac(1, 2));
    EXPECT_EQ(target, frac(1, 2));
}

TEST(VerifyEmbedding, InvariantUnderOutcomePreservingRelabeling) {
    for (std::int64_t c : {0, 1, 5, 100}) {
        GameEmbedding e = GameEmbedding::canonical();
        e.f1 = AffineMap(1, 1 + c);
        e.f2 = AffineMap(-1, -1 - c);
        // The relabeled maps still land inside N and −N and keep x + y fixed.
        e.claimed_bijective = c == 0;
        const auto report = verify_embedding(e, 200, 20, static_cast<std::uint64_t>(c));
        EXPECT_TRUE(report.passed) << c;
    }
}

TEST(Exploit, Examples) {
    const auto a = exploit_best_response(measures::FiniteSupportMeasure::uniform(-3, -1), Side::Player1);
    EXPECT_EQ(a.strategy, 4);
    EXPECT_EQ(a.payoff, 1);
    const auto b = exploit_best_response(measures::FiniteSupportMeasure::point_mass(5), Side::Player2);
    EXPECT_EQ(b.strategy, -6);
    EXPECT_EQ(b.payoff, -1);
    const auto c = exploit_best_response(measures::FiniteSupportMeasure::point_mass(-1), Side::Player1);
    EXPECT_EQ(c.strategy, 2);
    EXPECT_EQ(c.payoff, 1);
    EXPECT_THROW(exploit_best_response(measures::FiniteSupportMeasure::point_mass(2), Side::Player1),
                 measures::SupportOnWrongSide);
    EXPECT_THROW(exploit_best_response(measures::FiniteSupportMeasure::point_mass(-2), Side::Player2),
                 measures::SupportOnWrongSide);
}

TEST(Exploit, PayoffIsExactlyPlusMinusOne) {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 300; ++i) {
        const auto q = testgen::random_measure(rng, -500, -1);
        EXPECT_EQ(exploit_best_response(q, Side::Player1).payoff, 1);
        EXPECT_EQ(exploit_best_response(q.negated(), Side::Player2).payoff, -1);
    }
}
