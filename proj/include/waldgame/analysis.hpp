#pragma once

// Limits of expected payoffs for diffuse strategies represented as
// level-indexed finite-support measures. Three semantics are exposed:
// player-1 integrated first, player-2 integrated first, and the diagonal
// (both players at the same level).

#include <waldgame/games.hpp>
#include <waldgame/limit.hpp>
#include <waldgame/loading.hpp>
#include <waldgame/measure.hpp>
#include <waldgame/payoff.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace waldgame::analysis {

using intsets::IntSet;
using measures::Loading;

enum class StrategySide { Player1, Player2, FullLine };

/// A diffuse strategy seen through its level-n finite-support approximants.
struct SequenceStrategy {
    std::function<FiniteSupportMeasure(std::int64_t)> generator;
    StrategySide side = StrategySide::FullLine;
    std::string label;

    FiniteSupportMeasure at(std::int64_t n) const { return generator(n); }

    /// uniform{1..n}
    static SequenceStrategy uniform_positive() {
        return {[](std::int64_t n) { return FiniteSupportMeasure::uniform(1, n); }, StrategySide::Player1,
                "uniform{1..n}"};
    }
    /// uniform{-n..-1}
    static SequenceStrategy uniform_negative() {
        return {[](std::int64_t n) { return FiniteSupportMeasure::uniform(-n, -1); }, StrategySide::Player2,
                "uniform{-n..-1}"};
    }
    static SequenceStrategy constant(FiniteSupportMeasure mu, StrategySide side, std::string label) {
        return {[mu = std::move(mu)](std::int64_t) { return mu; }, side, std::move(label)};
    }
    /// The loading's level-n mixture of window-uniform laws on Z.
    static SequenceStrategy loading_representative(const Loading& loading) {
        return {[loading](std::int64_t n) { return loading.representative(n); }, StrategySide::FullLine,
                loading.to_string()};
    }
};

enum class InnerPlayer { Player1, Player2 };

/// Outer levels m = m0, 2·m0, ... while inner_level(m) <= n_max (at least m0).
struct IteratedSchedule {
    std::int64_t m0 = 1;
    std::int64_t n_max = std::int64_t{1} << 20;
    std::function<std::int64_t(std::int64_t)> inner_level = [](std::int64_t m) { return 64 * m * m; };

    std::vector<std::int64_t> outer_levels() const {
        std::vector<std::int64_t> levels{m0};
        for (std::int64_t m = 2 * m0; inner_level(m) <= n_max; m *= 2) levels.push_back(m);
        return levels;
    }
};

inline constexpr double kDensityTolerance = 1e-6;
inline constexpr double kIteratedTolerance = 1e-3;

/// Approximates lim_m lim_n E[h] with the named player integrated innermost:
/// at outer level m the inner player sits at level inner_level(m).
inline LimitEstimate iterated_payoff(const OperationGame& game, const SequenceStrategy& player1,
                                     const SequenceStrategy& player2, InnerPlayer inner,
                                     const IteratedSchedule& schedule, double tol, unsigned workers = 1) {
    return estimate_limit(
        schedule.outer_levels(),
        [&](std::int64_t m) {
            const std::int64_t n = schedule.inner_level(m);
            if (inner == InnerPlayer::Player1) return expected_payoff_exact(game, player1.at(n), player2.at(m));
            return expected_payoff_exact(game, player1.at(m), player2.at(n));
        },
        tol, workers);
}

/// lim_n E[h] with both players at level n.
inline LimitEstimate diagonal_payoff(const OperationGame& game, const SequenceStrategy& player1,
                                     const SequenceStrategy& player2, std::int64_t n0, std::int64_t n_max,
                                     double tol, unsigned workers = 1) {
    return estimate_limit(
        doubling_schedule(n0, n_max),
        [&](std::int64_t n) { return expected_payoff_exact(game, player1.at(n), player2.at(n)); }, tol, workers);
}

struct IteratedResult {
    LimitEstimate inner_first_p1;
    LimitEstimate inner_first_p2;
    LimitEstimate diagonal;
    double fubini_defect = 0.0;
};

struct AsymmetryOptions {
    std::int64_t n0 = 64;
    std::int64_t n_max = std::int64_t{1} << 20;
    double tol = kIteratedTolerance;
    unsigned workers = 1;
};

inline IteratedResult asymmetry_experiment(const OperationGame& game, const SequenceStrategy& player1,
                                           const SequenceStrategy& player2, const AsymmetryOptions& opt) {
    IteratedSchedule schedule;
    schedule.n_max = opt.n_max;
    IteratedResult out{
        iterated_payoff(game, player1, player2, InnerPlayer::Player1, schedule, opt.tol, opt.workers),
        iterated_payoff(game, player1, player2, InnerPlayer::Player2, schedule, opt.tol, opt.workers),
        diagonal_payoff(game, player1, player2, std::min(opt.n0, opt.n_max), opt.n_max, opt.tol, opt.workers),
        0.0};
    out.fubini_defect = std::fabs(out.inner_first_p1.estimate_value() - out.inner_first_p2.estimate_value());
    return out;
}

/// The relabeled Wald game with uniform{1..n} against uniform{−n..−1}.
inline IteratedResult asymmetry_experiment(const AsymmetryOptions& opt = {}) {
    return asymmetry_experiment(OperationGame::wald(), SequenceStrategy::uniform_positive(),
                                SequenceStrategy::uniform_negative(), opt);
}

struct GameValue {
    LimitEstimate density_n;    // ℓ(N)
    LimitEstimate value;        // 2ℓ(N) − 1, level by level
    LimitEstimate inner_first_p1;
    LimitEstimate inner_first_p2;
    double cross_check_tolerance = 0.0;
    bool cross_check_passed = false;
};

struct ValueOptions {
    std::int64_t n0 = 64;
    std::int64_t n_max = std::int64_t{1} << 20;
    double tol = kDensityTolerance;
    double iterated_tol = kIteratedTolerance;
    unsigned workers = 1;
};

/// Value 2ℓ(N) − 1 of the full-line game G(Z, N, h) under loading ℓ,
/// cross-checked by playing the loading's own representatives against each
/// other in both integration orders.
inline GameValue full_game_value(const Loading& loading, const ValueOptions& opt = {}) {
    GameValue out;
    out.density_n = measures::density_limit(IntSet::naturals(), loading, opt.n0, opt.n_max, opt.tol, opt.workers);
    out.value = out.density_n;
    for (auto& entry : out.value.history) entry.value = 2 * entry.value - 1;
    out.value.estimate = out.value.history.back().value;

    const OperationGame game = OperationGame::full_line();
    const SequenceStrategy rep = SequenceStrategy::loading_representative(loading);
    IteratedSchedule schedule;
    schedule.n_max = opt.n_max;
    out.inner_first_p1 = iterated_payoff(game, rep, rep, InnerPlayer::Player1, schedule, opt.iterated_tol, opt.workers);
    out.inner_first_p2 = iterated_payoff(game, rep, rep, InnerPlayer::Player2, schedule, opt.iterated_tol, opt.workers);
    out.cross_check_tolerance = 3 * opt.iterated_tol;
    const double v = out.value.estimate_value();
    out.cross_check_passed = std::fabs(out.inner_first_p1.estimate_value() - v) <= out.cross_check_tolerance &&
                             std::fabs(out.inner_first_p2.estimate_value() - v) <= out.cross_check_tolerance;
    return out;
}

struct SecurityEntry {
    measures::Side opponent_side;
    LimitEstimate payoff;  // to player 1
    bool secure;
};

/// Plays the induced half-line profile of a symmetric loading against each
/// fixed finite-support opponent and checks the limit never falls below the
/// value 0 (player 1 responding) or rises above it (player 2 responding).
/// The opponent's side is read from its support.
inline std::vector<SecurityEntry> security_check(const Loading& loading,
                                                 const std::vector<FiniteSupportMeasure>& opponents,
                                                 std::int64_t n0, std::int64_t n_max, double tol,
                                                 unsigned workers = 1) {
    if (!loading.is_symmetric()) throw measures::AsymmetricLoading();
    const OperationGame game = OperationGame::wald();
    std::vector<SecurityEntry> out;
    for (const auto& opponent : opponents) {
        if (opponent.max_point() <= -1) {
            auto limit = estimate_limit(
                doubling_schedule(n0, n_max),
                [&](std::int64_t n) {
                    return expected_payoff_exact(game, measures::induced_optimal_profile(loading, n).first, opponent);
                },
                tol, workers);
            const bool secure = limit.estimate_value() >= -tol;
            out.push_back({measures::Side::Player2, std::move(limit), secure});
        } else if (opponent.min_point() >= 1) {
            auto limit = estimate_limit(
                doubling_schedule(n0, n_max),
                [&](std::int64_t n) {
                    return expected_payoff_exact(game, opponent, measures::induced_optimal_profile(loading, n).second);
                },
                tol, workers);
            const bool secure = limit.estimate_value() <= tol;
            out.push_back({measures::Side::Player1, std::move(limit), secure});
        } else {
            throw measures::SupportOnWrongSide("opponent support must lie inside N or inside -N");
        }
    }
    return out;
}

}  // namespace waldgame::analysis
