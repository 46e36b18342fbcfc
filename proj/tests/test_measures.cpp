#include <waldgame/literals.hpp>
#include <waldgame/loading.hpp>
#include <waldgame/measure.hpp>

#include "generators.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace waldgame;
using namespace waldgame::measures;
using intsets::IntSet;

namespace {

Rational frac(std::int64_t a, std::int64_t b) { return Rational(Integer(a), Integer(b)); }

// Brute-force oracle for a window density: test each point of the window.
Rational brute_density(const IntSet& a, std::int64_t lo, std::int64_t hi) {
    std::int64_t hits = 0;
    for (std::int64_t x = lo; x <= hi; ++x) hits += a.contains(x) ? 1 : 0;
    return frac(hits, hi - lo + 1);
}

}  // namespace

TEST(FsMeasure, PointMassAndUniform) {
    const auto delta = fs_measure({{3, Rational(1)}});
    EXPECT_EQ(delta, FiniteSupportMeasure::point_mass(3));
    EXPECT_EQ(delta.weight(3), 1);
    EXPECT_EQ(delta.weight(2), 0);

    const auto u = fs_measure({{1, frac(1, 2)}, {2, frac(1, 2)}});
    EXPECT_EQ(u, FiniteSupportMeasure::uniform(1, 2));
    EXPECT_EQ(u.support_size(), 2);
}

TEST(FsMeasure, MergesDuplicatesAndDropsZeros) {
    const auto mu = fs_measure({{1, frac(1, 3)}, {1, frac(1, 3)}, {2, frac(1, 3)}, {9, Rational(0)}});
    EXPECT_EQ(mu.weight(1), frac(2, 3));
    EXPECT_EQ(mu.weight(2), frac(1, 3));
    EXPECT_EQ(mu.support_size(), 2);
    EXPECT_EQ(mu.max_point(), 2);
}

TEST(FsMeasure, Errors) {
    EXPECT_THROW(fs_measure({{1, frac(1, 2)}}), NotNormalized);
    EXPECT_THROW(fs_measure({{1, frac(3, 2)}, {2, frac(-1, 2)}}), NegativeWeight);
    EXPECT_THROW(fs_measure({}), EmptySupport);
    EXPECT_THROW(fs_measure({{4, Rational(0)}}), EmptySupport);
}

TEST(FsMeasure, RunsAreCanonical) {
    // Same measure built point by point and as one run compares equal.
    std::vector<std::pair<std::int64_t, Rational>> pts;
    for (int x = -3; x <= 6; ++x) pts.emplace_back(x, frac(1, 10));
    EXPECT_EQ(fs_measure(pts), FiniteSupportMeasure::uniform(-3, 6));
    EXPECT_EQ(FiniteSupportMeasure::uniform(-3, 6).segments().size(), 1u);
}

TEST(FsMeasure, MixtureMatchesPointwiseSum) {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = testgen::random_measure(rng, -30, 30);
        const auto b = FiniteSupportMeasure::uniform(testgen::uniform_int(rng, -40, 0), testgen::uniform_int(rng, 0, 40));
        const Rational alpha = frac(testgen::uniform_int(rng, 0, 7), 7);
        const auto mix = FiniteSupportMeasure::mixture({{alpha, a}, {1 - alpha, b}});
        EXPECT_EQ(mix.total_mass(), 1);
        for (std::int64_t x = -45; x <= 45; ++x) EXPECT_EQ(mix.weight(x), alpha * a.weight(x) + (1 - alpha) * b.weight(x));
    }
}

TEST(DensityAt, Examples) {
    EXPECT_EQ(density_at(IntSet::naturals(), WindowFamily::dk(1), 100), frac(100, 201));
    for (std::int64_t n : {1, 5, 77, 4096}) EXPECT_EQ(density_at(IntSet::integers(), WindowFamily::dk(3), n), 1);
    EXPECT_EQ(density_at(IntSet::naturals(), WindowFamily::mirror_dk(2), 100), frac(200, 301));
    EXPECT_EQ(density_at(IntSet::naturals(), WindowFamily::mirror_dk(2), 100), brute_density(IntSet::naturals(), -100, 200));
}

TEST(DensityAt, DkDenominatorIsKPlusOneTimesNPlusOne) {
    for (std::int64_t k = 1; k <= 6; ++k)
        for (std::int64_t n : {1, 3, 64, 1000}) {
            EXPECT_EQ(WindowFamily::dk(k).window(n).cardinality(), (k + 1) * n + 1);
            EXPECT_EQ(density_at(IntSet::naturals(), WindowFamily::dk(k), n), frac(n, (k + 1) * n + 1));
        }
}

TEST(DensityAt, MatchesBruteForceOnRandomSets) {
    std::mt19937_64 rng(8);
    const WindowFamily families[] = {WindowFamily::dk(1), WindowFamily::dk(4), WindowFamily::mirror_dk(3),
                                     WindowFamily::symmetric()};
    for (int i = 0; i < 200; ++i) {
        const IntSet a = testgen::random_set(rng);
        const auto& fam = families[i % 4];
        const std::int64_t n = testgen::uniform_int(rng, 1, 300);
        const auto w = fam.window(n);
        EXPECT_EQ(density_at(a, fam, n), brute_density(a, w.lo(), w.hi())) << a.to_string();
    }
}

TEST(DensityLimit, KDensityOfNaturals) {
    const auto est = density_limit(IntSet::naturals(), WindowFamily::dk(3), 64, 1 << 20, 1e-6);
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.estimate_value(), 0.25, 1e-6);
    EXPECT_EQ(est.history.front().level, 64);
    EXPECT_EQ(est.history.back().level, 1 << 20);
    EXPECT_EQ(est.history.size(), 15u);
}

TEST(DensityLimit, MirroredFamily) {
    const auto est = density_limit(IntSet::naturals(), WindowFamily::mirror_dk(9), 64, 1 << 20, 1e-6);
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.estimate_value(), 0.9, 1e-6);
}

TEST(DensityLimit, FiniteSetsVanish) {
    const auto est = density_limit(IntSet::finite({5, 17}), WindowFamily::symmetric(), 64, 1 << 20, 1e-6);
    EXPECT_TRUE(est.converged);
    EXPECT_NEAR(est.estimate_value(), 0.0, 1e-6);
}

TEST(DensityLimit, ReportsNonConvergenceInFlag) {
    const auto est = density_limit(IntSet::naturals(), WindowFamily::dk(1), 1, 4, 1e-9);
    EXPECT_FALSE(est.converged);
    EXPECT_EQ(est.history.size(), 3u);
    EXPECT_THROW(density_limit(IntSet::naturals(), WindowFamily::dk(1), 8, 4, 1e-6), std::invalid_argument);
}

TEST(DensityLimit, WorkerCountDoesNotChangeHistory) {
    const IntSet a = IntSet::complement(IntSet::progression(2, 5));
    const auto one = density_limit(a, WindowFamily::dk(2), 3, 1 << 16, 1e-6, 1);
    const auto four = density_limit(a, WindowFamily::dk(2), 3, 1 << 16, 1e-6, 4);
    ASSERT_EQ(one.history.size(), four.history.size());
    for (std::size_t i = 0; i < one.history.size(); ++i) EXPECT_EQ(one.history[i].value, four.history[i].value);
}

TEST(LimitHint, ClosedForms) {
    EXPECT_EQ(limit_density_hint(IntSet::naturals(), WindowFamily::dk(3)), frac(1, 4));
    EXPECT_EQ(limit_density_hint(IntSet::naturals(), WindowFamily::mirror_dk(9)), frac(9, 10));
    EXPECT_EQ(limit_density_hint(IntSet::negate(IntSet::naturals()), WindowFamily::dk(3)), frac(3, 4));
    EXPECT_EQ(limit_density_hint(IntSet::progression(4, 3), WindowFamily::symmetric()), frac(1, 3));
    EXPECT_EQ(limit_density_hint(IntSet::complement(IntSet::finite({1, 2})), WindowFamily::dk(2)), 1);
    EXPECT_FALSE(limit_density_hint(IntSet::unite(IntSet::naturals(), IntSet::evens()), WindowFamily::dk(2)));
}

TEST(LimitHint, AgreesWithDeepLevels) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 100; ++i) {
        const IntSet a = testgen::random_structured_set(rng, 3);
        const auto fam = i % 2 ? WindowFamily::dk(1 + i % 5) : WindowFamily::mirror_dk(1 + i % 4);
        const auto hint = limit_density_hint(a, fam);
        ASSERT_TRUE(hint);
        // Boundary effects are O(shift + literal span) / n.
        EXPECT_NEAR(to_double(density_at(a, fam, 1 << 22)), to_double(*hint), 1e-3) << a.to_string();
    }
}

TEST(LoadingForTarget, OneHalf) {
    const auto t = loading_for_target(frac(1, 2));
    EXPECT_EQ(t.k, 2);
    EXPECT_EQ(t.lambda, frac(1, 2));
    EXPECT_EQ(t.loading, Loading({{frac(1, 2), WindowFamily::mirror_dk(2)}, {frac(1, 2), WindowFamily::dk(2)}}));
}

TEST(LoadingForTarget, ThreeTenths) {
    const auto t = loading_for_target(frac(3, 10));
    EXPECT_EQ(t.k, 3);
    EXPECT_EQ(t.lambda, frac(1, 10));
    EXPECT_EQ(t.lambda * frac(3, 4) + (1 - t.lambda) * frac(1, 4), frac(3, 10));
    const auto est = density_limit(IntSet::naturals(), t.loading, 64, 1 << 20, 1e-6);
    EXPECT_NEAR(est.estimate_value(), 0.3, 1e-6);
}

TEST(LoadingForTarget, QuarterDegeneratesToPureDk) {
    const auto t = loading_for_target(frac(1, 4));
    EXPECT_EQ(t.k, 3);
    EXPECT_EQ(t.lambda, 0);
    EXPECT_EQ(t.loading, Loading(WindowFamily::dk(3)));
}

TEST(LoadingForTarget, IdentityOnRationalGrid) {
    for (std::int64_t den = 2; den <= 40; ++den)
        for (std::int64_t num = 1; num < den; ++num) {
            const Rational s = frac(num, den);
            const auto t = loading_for_target(s);
            EXPECT_GE(t.lambda, 0);
            EXPECT_LE(t.lambda, 1);
            EXPECT_LE(frac(1, t.k + 1), s);
            EXPECT_LE(s, frac(t.k, t.k + 1));
            EXPECT_EQ(t.lambda * frac(t.k, t.k + 1) + (1 - t.lambda) * frac(1, t.k + 1), s);
            EXPECT_EQ(*limit_density_hint(IntSet::naturals(), t.loading), s);
            // K is the smallest admissible value above 1.
            if (t.k > 2) EXPECT_FALSE(frac(1, t.k) <= s && s <= frac(t.k - 1, t.k)) << s;
        }
}

TEST(LoadingForTarget, EndpointsRejected) {
    EXPECT_THROW(loading_for_target(0), TargetOutOfRange);
    EXPECT_THROW(loading_for_target(1), TargetOutOfRange);
    EXPECT_THROW(loading_for_target(frac(-1, 3)), TargetOutOfRange);
    EXPECT_THROW(loading_for_target(frac(4, 3)), TargetOutOfRange);
}

TEST(LoadingEvaluate, NormalizationAndBounds) {
    std::mt19937_64 rng(4);
    const Loading loadings[] = {Loading(WindowFamily::symmetric()), loading_for_target(frac(3, 10)).loading,
                                literals::parse_loading("mix(1/3*dk:2, 1/6*mdk:5, 1/2*sym)")};
    for (const auto& l : loadings)
        for (std::int64_t n : {1, 2, 17, 500}) {
            EXPECT_EQ(l.evaluate(IntSet::integers(), n), 1);
            EXPECT_EQ(l.evaluate(IntSet::empty(), n), 0);
            for (int i = 0; i < 20; ++i) {
                const auto v = l.evaluate(testgen::random_set(rng), n);
                EXPECT_GE(v, 0);
                EXPECT_LE(v, 1);
            }
        }
}

TEST(LoadingEvaluate, AdditiveOnDisjointSets) {
    std::mt19937_64 rng(14);
    const Loading l = literals::parse_loading("mix(1/4*dk:3,3/4*mdk:2)");
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        const IntSet a = testgen::random_set(rng, 2);
        const IntSet b = testgen::random_set(rng, 2);
        const std::int64_t n = testgen::uniform_int(rng, 1, 200);
        bool disjoint = true;
        for (const auto& c : l.components()) disjoint = disjoint && IntSet::intersect(a, b).count(c.family.window(n)) == 0;
        if (!disjoint) continue;
        ++checked;
        EXPECT_EQ(l.evaluate(IntSet::unite(a, b), n), l.evaluate(a, n) + l.evaluate(b, n));
    }
    EXPECT_GT(checked, 20);
}

TEST(LoadingRepresentative, IsTheMixtureOfWindowUniforms) {
    const Loading l = literals::parse_loading("mix(1/10*mdk:3,9/10*dk:3)");
    const std::int64_t n = 7;
    const auto rep = l.representative(n);
    for (std::int64_t x = -25; x <= 25; ++x) {
        Rational expected = 0;
        if (-7 <= x && x <= 21) expected += frac(1, 10) * frac(1, 29);
        if (-21 <= x && x <= 7) expected += frac(9, 10) * frac(1, 29);
        EXPECT_EQ(rep.weight(x), expected) << x;
    }
}

TEST(InvarianceDefect, Examples) {
    const Rational d = invariance_defect(Loading(WindowFamily::dk(1)), IntSet::naturals(), 5, 1000);
    EXPECT_LE(d, frac(10, 2001));
    EXPECT_EQ(invariance_bound(Loading(WindowFamily::dk(1)), 5, 1000), frac(10, 2001));
    for (std::int64_t t : {-40, 3, 100})
        EXPECT_EQ(invariance_defect(literals::parse_loading("mix(1/2*dk:2,1/2*sym)"), IntSet::integers(), t, 64), 0);
    EXPECT_EQ(invariance_defect(Loading(WindowFamily::symmetric()), IntSet::evens(), 2, 512), 0);
    EXPECT_EQ(invariance_defect(Loading(WindowFamily::symmetric()), IntSet::progression(0, 2), 2, 512), 0);
}

TEST(InvarianceDefect, ShiftTooLargeRejected) {
    EXPECT_THROW(invariance_defect(Loading(WindowFamily::symmetric()), IntSet::naturals(), 3, 1), std::invalid_argument);
}

TEST(InvarianceDefect, BoundHoldsOnRandomCorpus) {
    std::mt19937_64 rng(31);
    const Loading loadings[] = {Loading(WindowFamily::dk(1)), Loading(WindowFamily::mirror_dk(4)),
                                Loading(WindowFamily::symmetric()), loading_for_target(frac(2, 3)).loading,
                                loading_for_target(frac(1, 7)).loading};
    for (int i = 0; i < 300; ++i) {
        const auto& l = loadings[i % 5];
        const IntSet a = testgen::random_set(rng, 2);
        const std::int64_t n = testgen::uniform_int(rng, 60, 400);
        const std::int64_t t = testgen::uniform_int(rng, -100, 100);
        EXPECT_LE(invariance_defect(l, a, t, n), invariance_bound(l, t, n)) << a.to_string() << " t=" << t;
    }
}

TEST(ReflectMeasure, PointMass) {
    const auto r = reflect_measure(FiniteSupportMeasure::point_mass(1), Side::Player1);
    EXPECT_EQ(r, fs_measure({{1, frac(1, 2)}, {0, frac(1, 2)}}));
}

TEST(ReflectMeasure, UniformOnTwoPoints) {
    const auto r = reflect_measure(FiniteSupportMeasure::uniform(1, 2), Side::Player1);
    EXPECT_EQ(r, fs_measure({{1, frac(1, 4)}, {2, frac(1, 4)}, {0, frac(1, 4)}, {-1, frac(1, 4)}}));
}

TEST(ReflectMeasure, PlayerTwoSideMirrorsThroughMinusOneHalf) {
    const auto r = reflect_measure(fs_measure({{-1, frac(1, 3)}, {-4, frac(2, 3)}}), Side::Player2);
    EXPECT_EQ(r, fs_measure({{-1, frac(1, 6)}, {0, frac(1, 6)}, {-4, frac(1, 3)}, {3, frac(1, 3)}}));
}

TEST(ReflectMeasure, WrongSide) {
    EXPECT_THROW(reflect_measure(FiniteSupportMeasure::point_mass(0), Side::Player1), SupportOnWrongSide);
    EXPECT_THROW(reflect_measure(FiniteSupportMeasure::point_mass(2), Side::Player2), SupportOnWrongSide);
}

TEST(ReflectMeasure, NormalizedAndSymmetric) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 200; ++i) {
        const auto mu = testgen::random_measure(rng, 1, 60);
        const auto r = reflect_measure(mu, Side::Player1);
        EXPECT_EQ(r.total_mass(), 1);
        EXPECT_EQ(r.interval_mass(1, 60), frac(1, 2));
        for (std::int64_t x = -70; x <= 70; ++x) EXPECT_EQ(r.weight(x), r.weight(1 - x));
        const auto r2 = reflect_measure(mu.negated(), Side::Player2);
        EXPECT_EQ(r2, r.negated());
    }
}

TEST(InducedProfile, LevelThree) {
    const auto [p, q] = induced_optimal_profile(Loading(WindowFamily::symmetric()), 3);
    EXPECT_EQ(p, FiniteSupportMeasure::uniform(1, 3));
    EXPECT_EQ(q, FiniteSupportMeasure::uniform(-3, -1));
}

TEST(InducedProfile, MirrorIdentity) {
    const Loading l = literals::parse_loading("mix(1/3*sym,2/3*sym)");
    for (std::int64_t n : {1, 10, 333}) {
        const auto [p, q] = induced_optimal_profile(l, n);
        for (std::int64_t x = 1; x <= n; ++x) EXPECT_EQ(q.weight(-x) - p.weight(x), 0);
        EXPECT_EQ(p, FiniteSupportMeasure::uniform(1, n));
    }
}

TEST(InducedProfile, AsymmetricLoadingRejected) {
    EXPECT_THROW(induced_optimal_profile(Loading(WindowFamily::dk(1)), 5), AsymmetricLoading);
    EXPECT_THROW(induced_optimal_profile(literals::parse_loading("mix(1/2*sym,1/2*mdk:1)"), 5), AsymmetricLoading);
}

TEST(InducedProfile, FoldedMassOfPositiveEvens) {
    // ℓ̌₁(evens ∩ N) = ℓ(evens⁺) + ℓ(−evens⁺) → 1/4 + 1/4.
    const Loading l(WindowFamily::symmetric());
    const IntSet positive_evens = IntSet::intersect(IntSet::evens(), IntSet::naturals());
    const IntSet mirrored = IntSet::negate(positive_evens);
    for (std::int64_t n : {100, 1000, 100000}) {
        const Rational v = l.evaluate(positive_evens, n) + l.evaluate(mirrored, n);
        EXPECT_EQ(v, frac(2 * (n / 2), 2 * n + 1));
    }
    const Rational deep = l.evaluate(positive_evens, 1'000'000) + l.evaluate(mirrored, 1'000'000);
    EXPECT_NEAR(to_double(deep), 0.5, 1e-6);
}
