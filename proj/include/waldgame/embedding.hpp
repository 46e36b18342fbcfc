#pragma once

#include <waldgame/games.hpp>
#include <waldgame/payoff.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace waldgame::games {

/// Wald's game mapped into an operation game by strategy relabelings f1, f2.
struct GameEmbedding {
    OperationGame target = OperationGame::wald();
    AffineMap f1 = AffineMap(1, 1);    // s ↦ s + 1
    AffineMap f2 = AffineMap(-1, -1);  // t ↦ −(t + 1)
    bool claimed_bijective = true;

    /// Payoff-preserving isomorphism onto G(N, −N, Z, N, ·) with N = {1, 2, ...}.
    static GameEmbedding canonical() { return {}; }
};

struct PureCounterexample {
    std::int64_t s;
    std::int64_t t;
    int source_payoff;
    std::optional<int> target_payoff;  // empty when the image left S1 or S2
    std::string reason;
};

struct MixedCounterexample {
    int trial;
    FiniteSupportMeasure p;
    FiniteSupportMeasure q;
    Rational source_payoff;
    std::optional<Rational> target_payoff;
    std::string reason;
};

struct EmbeddingReport {
    bool passed = false;
    std::int64_t truncation = 0;
    std::int64_t pure_checks = 0;
    bool injective = false;
    bool bijective_on_truncation = false;
    int mixed_trials = 0;
    std::optional<PureCounterexample> pure_counterexample;
    std::optional<MixedCounterexample> mixed_counterexample;
};

namespace detail {

inline std::optional<PureCounterexample> check_pure_row(const GameEmbedding& e, std::int64_t s, std::int64_t n) {
    for (std::int64_t t = 0; t <= n; ++t) {
        const int source = wald_payoff(s, t);
        const std::int64_t x = e.f1(s);
        const std::int64_t y = e.f2(t);
        if (!e.target.player1_strategies().contains(x))
            return PureCounterexample{s, t, source, std::nullopt, "f1 image outside player-1 strategy set"};
        if (!e.target.player2_strategies().contains(y))
            return PureCounterexample{s, t, source, std::nullopt, "f2 image outside player-2 strategy set"};
        const int target = e.target.outcome_payoff(x + y);
        if (target != source) return PureCounterexample{s, t, source, target, "payoff mismatch"};
    }
    return std::nullopt;
}

// Row-major scan of [0, n]²; rows are split into contiguous blocks and the
// earliest block with a hit wins, so the answer is independent of `workers`.
inline std::optional<PureCounterexample> scan_pure_profiles(const GameEmbedding& e, std::int64_t n,
                                                            unsigned workers) {
    const std::int64_t rows = n + 1;
    const std::int64_t blocks = std::max<std::int64_t>(1, std::min<std::int64_t>(workers, rows));
    std::vector<std::optional<PureCounterexample>> found(static_cast<std::size_t>(blocks));
    auto run_block = [&](std::int64_t b) {
        const std::int64_t begin = rows * b / blocks;
        const std::int64_t end = rows * (b + 1) / blocks;
        for (std::int64_t s = begin; s < end; ++s) {
            if (auto hit = check_pure_row(e, s, n)) {
                found[static_cast<std::size_t>(b)] = std::move(hit);
                return;
            }
        }
    };
    if (blocks == 1) {
        run_block(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::int64_t b = 0; b < blocks; ++b) pool.emplace_back(run_block, b);
    }
    for (auto& hit : found)
        if (hit) return hit;
    return std::nullopt;
}

inline bool injective_on(const AffineMap& f, std::int64_t n) {
    std::vector<std::int64_t> images;
    images.reserve(static_cast<std::size_t>(n + 1));
    for (std::int64_t s = 0; s <= n; ++s) images.push_back(f(s));
    std::sort(images.begin(), images.end());
    return std::adjacent_find(images.begin(), images.end()) == images.end();
}

// Images of 0..n fill the strategy set from its boundary: no point of the
// set is skipped inside the image hull, and the set ends just before f(0).
inline bool onto_initial_segment(const AffineMap& f, const intsets::IntSet& set, std::int64_t n) {
    const std::int64_t lo = std::min(f(0), f(n));
    const std::int64_t hi = std::max(f(0), f(n));
    return set.count(intsets::Window(lo, hi)) == n + 1 && !set.contains(f(0) - f.sign());
}

inline FiniteSupportMeasure random_measure(std::mt19937_64& rng, std::int64_t n) {
    const std::size_t size = 1 + rng() % 8;
    std::vector<std::pair<std::int64_t, Rational>> raw;
    std::vector<std::uint64_t> weights;
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < size; ++i) {
        weights.push_back(1 + rng() % 16);
        total += weights.back();
    }
    for (std::size_t i = 0; i < size; ++i) {
        const auto point = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(n + 1));
        raw.emplace_back(point, Rational(Integer(weights[i]), Integer(total)));
    }
    return FiniteSupportMeasure::from_points(raw);
}

inline Rational wald_expected_payoff(const FiniteSupportMeasure& p, const FiniteSupportMeasure& q) {
    Rational total = 0;
    for (const auto& [s, ps] : p.points())
        for (const auto& [t, qt] : q.points()) total += ps * qt * wald_payoff(s, t);
    return total;
}

}  // namespace detail

/// Checks that relabeling preserves payoffs: exhaustively on pure profiles in
/// [0, n]², then on `mixed_trials` seeded random finite-support profiles
/// (exact rational comparison after push-forward).
inline EmbeddingReport verify_embedding(const GameEmbedding& e, std::int64_t n, int mixed_trials,
                                        std::uint64_t seed, unsigned workers = 1) {
    if (n < 1) throw std::invalid_argument("truncation must be at least 1");
    EmbeddingReport report;
    report.truncation = n;
    report.pure_checks = (n + 1) * (n + 1);
    report.pure_counterexample = detail::scan_pure_profiles(e, n, workers);
    report.injective = detail::injective_on(e.f1, n) && detail::injective_on(e.f2, n);
    report.bijective_on_truncation = detail::onto_initial_segment(e.f1, e.target.player1_strategies(), n) &&
                                     detail::onto_initial_segment(e.f2, e.target.player2_strategies(), n);

    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < mixed_trials; ++trial) {
        FiniteSupportMeasure p = detail::random_measure(rng, n);
        FiniteSupportMeasure q = detail::random_measure(rng, n);
        ++report.mixed_trials;
        const Rational source = detail::wald_expected_payoff(p, q);
        try {
            const Rational target =
                analysis::expected_payoff_exact(e.target, push_forward(e.f1, p), push_forward(e.f2, q));
            if (target != source) {
                report.mixed_counterexample = MixedCounterexample{trial, p, q, source, target, "payoff mismatch"};
                break;
            }
        } catch (const StrategyOutOfSet& err) {
            report.mixed_counterexample = MixedCounterexample{trial, p, q, source, std::nullopt, err.what()};
            break;
        }
    }

    report.passed = !report.pure_counterexample && !report.mixed_counterexample && report.injective &&
                    (!e.claimed_bijective || report.bijective_on_truncation);
    return report;
}

}  // namespace waldgame::games
