#pragma once

#include <waldgame/rational.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace waldgame::measures {

class NotNormalized : public std::invalid_argument {
public:
    explicit NotNormalized(const Rational& total)
        : std::invalid_argument("weights sum to " + to_fraction_string(total) + ", expected 1") {}
};

class NegativeWeight : public std::invalid_argument {
public:
    explicit NegativeWeight(std::int64_t point)
        : std::invalid_argument("negative weight at point " + std::to_string(point)) {}
};

class EmptySupport : public std::invalid_argument {
public:
    EmptySupport() : std::invalid_argument("measure has empty support") {}
};

class SupportOnWrongSide : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Run of consecutive points [lo, hi] each carrying `weight`.
struct Segment {
    std::int64_t lo;
    std::int64_t hi;
    Rational weight;

    std::int64_t length() const noexcept { return hi - lo + 1; }
    Rational mass() const { return weight * length(); }

    friend bool operator==(const Segment&, const Segment&) = default;
};

/// Exact probability measure on Z with finite support.
///
/// Stored as sorted, disjoint runs of equal point weight, so uniform laws on
/// long windows cost O(1) memory. Adjacent runs with equal weight are always
/// merged, which makes the representation canonical and `==` measure equality.
class FiniteSupportMeasure {
public:
    /// Merges duplicate points, drops zero weights and requires total mass exactly 1.
    static FiniteSupportMeasure from_points(const std::vector<std::pair<std::int64_t, Rational>>& points) {
        std::map<std::int64_t, Rational> merged;
        for (const auto& [x, w] : points) {
            if (w < 0) throw NegativeWeight(x);
            merged[x] += w;
        }
        std::vector<Segment> segments;
        for (const auto& [x, w] : merged)
            if (w != 0) segments.push_back({x, x, w});
        return FiniteSupportMeasure(std::move(segments));
    }

    static FiniteSupportMeasure point_mass(std::int64_t x) { return FiniteSupportMeasure({{x, x, Rational(1)}}); }

    /// Uniform law on the integers of [lo, hi].
    static FiniteSupportMeasure uniform(std::int64_t lo, std::int64_t hi) {
        if (lo > hi) throw EmptySupport();
        return FiniteSupportMeasure({{lo, hi, Rational(Integer(1), Integer(hi - lo + 1))}});
    }

    /// Convex combination Σ αᵢ μᵢ; the αᵢ must be non-negative and sum to 1.
    static FiniteSupportMeasure mixture(const std::vector<std::pair<Rational, FiniteSupportMeasure>>& parts) {
        // Sweep over run boundaries; density changes only at lo and hi + 1.
        std::map<std::int64_t, Rational> delta;
        for (const auto& [alpha, mu] : parts) {
            if (alpha < 0) throw std::invalid_argument("negative mixture weight");
            if (alpha == 0) continue;
            for (const auto& s : mu.segments_) {
                delta[s.lo] += alpha * s.weight;
                delta[s.hi + 1] -= alpha * s.weight;
            }
        }
        std::vector<Segment> segments;
        Rational density = 0;
        for (auto it = delta.begin(); it != delta.end(); ++it) {
            density += it->second;
            auto next = std::next(it);
            if (next == delta.end()) break;
            if (density != 0) segments.push_back({it->first, next->first - 1, density});
        }
        return FiniteSupportMeasure(std::move(segments));
    }

    const std::vector<Segment>& segments() const noexcept { return segments_; }

    std::int64_t min_point() const noexcept { return segments_.front().lo; }
    std::int64_t max_point() const noexcept { return segments_.back().hi; }

    /// Number of support points.
    std::int64_t support_size() const noexcept {
        std::int64_t n = 0;
        for (const auto& s : segments_) n += s.length();
        return n;
    }

    Rational weight(std::int64_t x) const {
        auto it = std::upper_bound(segments_.begin(), segments_.end(), x,
                                   [](std::int64_t v, const Segment& s) { return v < s.lo; });
        if (it == segments_.begin()) return 0;
        --it;
        return x <= it->hi ? it->weight : Rational(0);
    }

    Rational total_mass() const {
        Rational total = 0;
        for (const auto& s : segments_) total += s.mass();
        return total;
    }

    /// Mass of the closed interval [lo, hi].
    Rational interval_mass(std::int64_t lo, std::int64_t hi) const {
        Rational total = 0;
        for (const auto& s : segments_) {
            const std::int64_t a = std::max(lo, s.lo);
            const std::int64_t b = std::min(hi, s.hi);
            if (a <= b) total += s.weight * (b - a + 1);
        }
        return total;
    }

    /// Expanded (point, weight) list in increasing point order.
    std::vector<std::pair<std::int64_t, Rational>> points() const {
        std::vector<std::pair<std::int64_t, Rational>> out;
        for (const auto& s : segments_)
            for (std::int64_t x = s.lo; x <= s.hi; ++x) out.emplace_back(x, s.weight);
        return out;
    }

    /// Image under x ↦ sign·x + offset, sign ∈ {−1, +1}.
    FiniteSupportMeasure relabeled(int sign, std::int64_t offset) const {
        if (sign != 1 && sign != -1) throw std::invalid_argument("relabeling sign must be +1 or -1");
        std::vector<Segment> out;
        out.reserve(segments_.size());
        for (const auto& s : segments_) {
            if (sign == 1)
                out.push_back({s.lo + offset, s.hi + offset, s.weight});
            else
                out.push_back({offset - s.hi, offset - s.lo, s.weight});
        }
        if (sign == -1) std::reverse(out.begin(), out.end());
        return FiniteSupportMeasure(std::move(out));
    }

    FiniteSupportMeasure negated() const { return relabeled(-1, 0); }

    friend bool operator==(const FiniteSupportMeasure&, const FiniteSupportMeasure&) = default;

private:
    explicit FiniteSupportMeasure(std::vector<Segment> segments) : segments_(std::move(segments)) {
        if (segments_.empty()) throw EmptySupport();
        Rational total = 0;
        for (const auto& s : segments_) {
            if (s.weight < 0) throw NegativeWeight(s.lo);
            if (s.weight == 0 || s.lo > s.hi) throw std::logic_error("degenerate segment");
            total += s.mass();
        }
        if (total != 1) throw NotNormalized(total);
        coalesce();
    }

    void coalesce() {
        std::vector<Segment> out;
        for (auto& s : segments_) {
            if (!out.empty() && out.back().hi + 1 == s.lo && out.back().weight == s.weight)
                out.back().hi = s.hi;
            else
                out.push_back(std::move(s));
        }
        segments_ = std::move(out);
    }

    std::vector<Segment> segments_;
};

inline FiniteSupportMeasure fs_measure(const std::vector<std::pair<std::int64_t, Rational>>& points) {
    return FiniteSupportMeasure::from_points(points);
}

enum class Side { Player1, Player2 };

/// Extends a half-line measure to Z by splitting each point's weight evenly
/// between x and its mirror partner. Player-1 measures live on N and pair
/// x with 1 − x (1↔0, 2↔−1, ...); player-2 measures live on −N and pair
/// y with −1 − y (−1↔0, −2↔1, ...).
inline FiniteSupportMeasure reflect_measure(const FiniteSupportMeasure& mu, Side side) {
    const Rational half(Integer(1), Integer(2));
    if (side == Side::Player1) {
        if (mu.min_point() < 1) throw SupportOnWrongSide("player-1 measure must be supported on N");
        return FiniteSupportMeasure::mixture({{half, mu}, {half, mu.relabeled(-1, 1)}});
    }
    if (mu.max_point() > -1) throw SupportOnWrongSide("player-2 measure must be supported on -N");
    return FiniteSupportMeasure::mixture({{half, mu}, {half, mu.relabeled(-1, -1)}});
}

}  // namespace waldgame::measures
