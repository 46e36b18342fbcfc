#pragma once

#include <waldgame/intset.hpp>
#include <waldgame/measure.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace waldgame::games {

using intsets::IntSet;
using measures::FiniteSupportMeasure;

/// "Pick the bigger integer": pure strategies 0, 1, 2, ... for both players.
inline int wald_payoff(std::int64_t s, std::int64_t t) {
    if (s < 0 || t < 0) throw std::invalid_argument("Wald strategies are non-negative integers");
    return (s > t) - (s < t);
}

class StrategyOutOfSet : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Two-player zero-sum game over (Z, +): player 1 picks x ∈ S1, player 2
/// picks y ∈ S2, and player 1 receives h(x + y) where h is +1 on W, 0 at 0
/// and −1 elsewhere.
class OperationGame {
public:
    OperationGame(IntSet s1, IntSet s2, IntSet win) : s1_(std::move(s1)), s2_(std::move(s2)), win_(std::move(win)) {}

    /// G(N, −N, Z, N, χ_N − χ_{Z∖N}), the relabeled Wald game.
    static OperationGame wald() {
        return {IntSet::naturals(), IntSet::negative_naturals(), IntSet::naturals()};
    }

    /// Both players range over all of Z; player 1 wins on N.
    static OperationGame full_line() { return {IntSet::integers(), IntSet::integers(), IntSet::naturals()}; }

    const IntSet& player1_strategies() const noexcept { return s1_; }
    const IntSet& player2_strategies() const noexcept { return s2_; }
    const IntSet& win_set() const noexcept { return win_; }

    int outcome_payoff(std::int64_t z) const {
        if (win_.contains(z)) return 1;
        return z == 0 ? 0 : -1;
    }

    /// True when W = N, where mixed payoffs have a closed form.
    bool wins_on_naturals() const { return win_ == IntSet::naturals(); }

private:
    IntSet s1_;
    IntSet s2_;
    IntSet win_;
};

inline int opgame_payoff(const OperationGame& game, std::int64_t x, std::int64_t y) {
    if (!game.player1_strategies().contains(x))
        throw StrategyOutOfSet("player-1 strategy " + std::to_string(x) + " is outside S1");
    if (!game.player2_strategies().contains(y))
        throw StrategyOutOfSet("player-2 strategy " + std::to_string(y) + " is outside S2");
    return game.outcome_payoff(x + y);
}

/// Integer map x ↦ sign·x + offset with sign ∈ {−1, +1}; always injective.
class AffineMap {
public:
    AffineMap(int sign, std::int64_t offset) : sign_(sign), offset_(offset) {
        if (sign != 1 && sign != -1) throw std::invalid_argument("affine strategy maps need slope +1 or -1");
    }

    static AffineMap identity() { return {1, 0}; }

    int sign() const noexcept { return sign_; }
    std::int64_t offset() const noexcept { return offset_; }

    std::int64_t operator()(std::int64_t x) const noexcept { return sign_ * x + offset_; }

    /// Canonical literal: "x", "-x", "x+1", "-x-1", ...
    std::string to_string() const {
        std::string out = sign_ == 1 ? "x" : "-x";
        if (offset_ > 0) out += "+" + std::to_string(offset_);
        if (offset_ < 0) out += std::to_string(offset_);
        return out;
    }

    friend bool operator==(const AffineMap&, const AffineMap&) = default;

private:
    int sign_;
    std::int64_t offset_;
};

/// (f⋆μ)(B) = μ(f⁻¹(B)).
inline FiniteSupportMeasure push_forward(const AffineMap& f, const FiniteSupportMeasure& mu) {
    return mu.relabeled(f.sign(), f.offset());
}

}  // namespace waldgame::games
