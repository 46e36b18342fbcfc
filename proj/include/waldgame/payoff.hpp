#pragma once

// Exact expected payoffs of operation games under finite-support mixed
// strategies. Measures are stored as runs of equal weight, so each pair of
// runs contributes a lattice-point count in a rectangle cut by a line.

#include <waldgame/games.hpp>
#include <waldgame/measure.hpp>
#include <waldgame/rational.hpp>

#include <cstdint>
#include <utility>

namespace waldgame::analysis {

using games::OperationGame;
using measures::FiniteSupportMeasure;
using measures::Segment;

namespace detail {

// Σ_{z=1}^{u} min(z, cap), zero for u <= 0.
inline Integer clamped_prefix(const Integer& u, const Integer& cap) {
    if (u <= 0) return 0;
    if (u <= cap) return u * (u + 1) / 2;
    return cap * (cap + 1) / 2 + (u - cap) * cap;
}

// |{(x, y) ∈ [a, b] × [c, d] : x + y >= t}|, summing over x the number of admissible y.
inline Integer pairs_at_least(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t t) {
    const Integer cap = Integer(d) - c + 1;
    const Integer shift = Integer(d) - t + 1;
    return clamped_prefix(Integer(b) + shift, cap) - clamped_prefix(Integer(a) + shift - 1, cap);
}

inline Integer pairs_at_most(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d, std::int64_t t) {
    return pairs_at_least(-b, -a, -d, -c, -t);
}

// Σ over the run rectangle of h(x + y), unweighted. `x_run` is summed outermost.
inline Integer run_payoff_sum(const OperationGame& game, const Segment& x_run, const Segment& y_run) {
    if (game.wins_on_naturals()) {
        const Integer wins = pairs_at_least(x_run.lo, x_run.hi, y_run.lo, y_run.hi, 1);
        const Integer losses = pairs_at_most(x_run.lo, x_run.hi, y_run.lo, y_run.hi, -1);
        return wins - losses;
    }
    const std::int64_t lo = x_run.lo + y_run.lo;
    const std::int64_t hi = x_run.hi + y_run.hi;
    if (hi - lo + 1 > intsets::kScanCap) throw intsets::WindowTooLarge(hi - lo + 1);
    Integer total = 0;
    for (std::int64_t z = lo; z <= hi; ++z) {
        const int h = game.outcome_payoff(z);
        if (h == 0) continue;
        const Integer multiplicity = pairs_at_most(x_run.lo, x_run.hi, y_run.lo, y_run.hi, z) -
                                     pairs_at_most(x_run.lo, x_run.hi, y_run.lo, y_run.hi, z - 1);
        total += h * multiplicity;
    }
    return total;
}

inline void require_support(const intsets::IntSet& allowed, const FiniteSupportMeasure& mu, const char* who) {
    for (const auto& s : mu.segments()) {
        if (allowed.count(intsets::Window(s.lo, s.hi)) != s.length())
            throw games::StrategyOutOfSet(std::string(who) + " strategy has support outside its strategy set");
    }
}

}  // namespace detail

/// Σₓ Σᵧ p(x) q(y) h(x + y), exact.
inline Rational expected_payoff_exact(const OperationGame& game, const FiniteSupportMeasure& p,
                                      const FiniteSupportMeasure& q) {
    detail::require_support(game.player1_strategies(), p, "player-1");
    detail::require_support(game.player2_strategies(), q, "player-2");
    Rational total = 0;
    for (const auto& x_run : p.segments()) {
        Rational inner = 0;
        for (const auto& y_run : q.segments()) inner += y_run.weight * detail::run_payoff_sum(game, x_run, y_run);
        total += x_run.weight * inner;
    }
    return total;
}

/// Both iterated sums, each computed on its own: the p-outer order sums y
/// inside x, the q-outer order sums x inside y.
struct FubiniCheck {
    Rational p_outer;
    Rational q_outer;
    Rational defect() const { return abs_rational(p_outer - q_outer); }
};

inline FubiniCheck fubini_orders(const OperationGame& game, const FiniteSupportMeasure& p,
                                 const FiniteSupportMeasure& q) {
    FubiniCheck out{expected_payoff_exact(game, p, q), 0};
    // Swapping the roles of the runs turns x + y into y + x; the outcome is the
    // same but the lattice count is taken over the other coordinate.
    for (const auto& y_run : q.segments()) {
        Rational inner = 0;
        for (const auto& x_run : p.segments()) inner += x_run.weight * detail::run_payoff_sum(game, y_run, x_run);
        out.q_outer += y_run.weight * inner;
    }
    return out;
}

inline Rational fubini_defect_exact(const OperationGame& game, const FiniteSupportMeasure& p,
                                    const FiniteSupportMeasure& q) {
    return fubini_orders(game, p, q).defect();
}

}  // namespace waldgame::analysis

namespace waldgame::games {

struct BestResponse {
    std::int64_t strategy;
    Rational payoff;  // to player 1
};

/// Against a finite-support strategy in the relabeled Wald game, the pure
/// strategy one step beyond the opponent's support wins surely.
inline BestResponse exploit_best_response(const FiniteSupportMeasure& opponent, measures::Side responder) {
    const OperationGame game = OperationGame::wald();
    if (responder == measures::Side::Player1) {
        if (opponent.max_point() > -1)
            throw measures::SupportOnWrongSide("player-2 strategy must be supported on -N");
        const std::int64_t s = -opponent.min_point() + 1;
        return {s, analysis::expected_payoff_exact(game, FiniteSupportMeasure::point_mass(s), opponent)};
    }
    if (opponent.min_point() < 1) throw measures::SupportOnWrongSide("player-1 strategy must be supported on N");
    const std::int64_t t = -(opponent.max_point() + 1);
    return {t, analysis::expected_payoff_exact(game, opponent, FiniteSupportMeasure::point_mass(t))};
}

}  // namespace waldgame::games
