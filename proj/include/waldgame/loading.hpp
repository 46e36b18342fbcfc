#pragma once

// Window-density functionals on Z. A level-n evaluation averages a set over
// one integer window per component; as n grows the windows form a Følner
// sequence, so limits are translation invariant.

#include <waldgame/intset.hpp>
#include <waldgame/limit.hpp>
#include <waldgame/measure.hpp>
#include <waldgame/rational.hpp>

#include <cstdint>
#include <algorithm>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace waldgame::measures {

using intsets::IntSet;
using intsets::Window;

enum class FamilyKind { Dk, MirrorDk, Symmetric };

/// Level-indexed windows [−left·n, right·n].
class WindowFamily {
public:
    /// Windows [−k·n, n].
    static WindowFamily dk(std::int64_t k) { return WindowFamily(FamilyKind::Dk, k); }
    /// Windows [−n, k·n].
    static WindowFamily mirror_dk(std::int64_t k) { return WindowFamily(FamilyKind::MirrorDk, k); }
    /// Windows [−n, n].
    static WindowFamily symmetric() { return WindowFamily(FamilyKind::Symmetric, 1); }

    FamilyKind kind() const noexcept { return kind_; }
    std::int64_t k() const noexcept { return k_; }

    std::int64_t left() const noexcept { return kind_ == FamilyKind::Dk ? k_ : 1; }
    std::int64_t right() const noexcept { return kind_ == FamilyKind::MirrorDk ? k_ : 1; }

    Window window(std::int64_t n) const {
        if (n < 1) throw std::invalid_argument("window level must be positive");
        return {-left() * n, right() * n};
    }

    /// The family whose windows are the negations of this family's windows.
    WindowFamily mirrored() const {
        switch (kind_) {
            case FamilyKind::Dk: return mirror_dk(k_);
            case FamilyKind::MirrorDk: return dk(k_);
            case FamilyKind::Symmetric: return symmetric();
        }
        return *this;
    }

    std::string to_string() const {
        switch (kind_) {
            case FamilyKind::Dk: return "dk:" + std::to_string(k_);
            case FamilyKind::MirrorDk: return "mdk:" + std::to_string(k_);
            case FamilyKind::Symmetric: return "sym";
        }
        return "?";
    }

    friend bool operator==(const WindowFamily&, const WindowFamily&) = default;

private:
    WindowFamily(FamilyKind kind, std::int64_t k) : kind_(kind), k_(k) {
        if (k < 1) throw std::invalid_argument("window family parameter k must be >= 1");
    }

    FamilyKind kind_;
    std::int64_t k_;
};

class AsymmetricLoading : public std::invalid_argument {
public:
    AsymmetricLoading() : std::invalid_argument("loading has a component that is not the symmetric window family") {}
};

class TargetOutOfRange : public std::out_of_range {
public:
    explicit TargetOutOfRange(const Rational& s)
        : std::out_of_range("target " + to_fraction_string(s) + " must lie strictly between 0 and 1") {}
};

/// Convex combination of window-density functionals.
class Loading {
public:
    struct Component {
        Rational weight;
        WindowFamily family;

        friend bool operator==(const Component&, const Component&) = default;
    };

    explicit Loading(WindowFamily family) : components_{{Rational(1), family}} {}

    /// Zero-weight components are dropped; the rest must be positive and sum to 1.
    explicit Loading(std::vector<Component> components) {
        Rational total = 0;
        for (auto& c : components) {
            if (c.weight < 0) throw std::invalid_argument("loading weights must be non-negative");
            if (c.weight == 0) continue;
            total += c.weight;
            components_.push_back(std::move(c));
        }
        if (components_.empty()) throw std::invalid_argument("loading needs at least one component");
        if (total != 1) throw NotNormalized(total);
    }

    const std::vector<Component>& components() const noexcept { return components_; }

    bool is_symmetric() const {
        for (const auto& c : components_)
            if (c.family.kind() != FamilyKind::Symmetric) return false;
        return true;
    }

    /// Σ weightᵢ · |A ∩ Wᵢ(n)| / |Wᵢ(n)|.
    Rational evaluate(const IntSet& set, std::int64_t n) const {
        Rational total = 0;
        for (const auto& c : components_) {
            const Window w = c.family.window(n);
            total += c.weight * Rational(Integer(set.count(w)), Integer(w.cardinality()));
        }
        return total;
    }

    std::int64_t min_window_cardinality(std::int64_t n) const {
        std::int64_t smallest = std::numeric_limits<std::int64_t>::max();
        for (const auto& c : components_) smallest = std::min(smallest, c.family.window(n).cardinality());
        return smallest;
    }

    /// The level-n loading played as a mixed strategy on Z: the same mixture of
    /// uniform laws on the component windows.
    FiniteSupportMeasure representative(std::int64_t n) const {
        std::vector<std::pair<Rational, FiniteSupportMeasure>> parts;
        for (const auto& c : components_) {
            const Window w = c.family.window(n);
            parts.emplace_back(c.weight, FiniteSupportMeasure::uniform(w.lo(), w.hi()));
        }
        return FiniteSupportMeasure::mixture(parts);
    }

    std::string to_string() const {
        if (components_.size() == 1) return components_.front().family.to_string();
        std::string out = "mix(";
        for (std::size_t i = 0; i < components_.size(); ++i) {
            if (i) out += ",";
            const auto& c = components_[i];
            out += to_fraction_string(c.weight) + "*" + c.family.to_string();
        }
        return out + ")";
    }

    friend bool operator==(const Loading&, const Loading&) = default;

private:
    std::vector<Component> components_;
};

/// |A ∩ W(n)| / |W(n)|; for dk(k) the denominator is (k+1)n + 1.
inline Rational density_at(const IntSet& set, const WindowFamily& family, std::int64_t n) {
    return Loading(family).evaluate(set, n);
}

inline LimitEstimate density_limit(const IntSet& set, const Loading& loading, std::int64_t n0, std::int64_t n_max,
                                   double tol, unsigned workers = 1) {
    return estimate_limit(
        doubling_schedule(n0, n_max), [&](std::int64_t n) { return loading.evaluate(set, n); }, tol, workers);
}

inline LimitEstimate density_limit(const IntSet& set, const WindowFamily& family, std::int64_t n0,
                                   std::int64_t n_max, double tol, unsigned workers = 1) {
    return density_limit(set, Loading(family), n0, n_max, tol, workers);
}

/// Exact limiting density for sets built from closed-form pieces, if known.
inline std::optional<Rational> limit_density_hint(const IntSet& set, const WindowFamily& family) {
    using namespace intsets;
    return std::visit(
        [&family](const auto& n) -> std::optional<Rational> {
            using T = std::decay_t<decltype(n)>;
            const Integer left = family.left();
            const Integer right = family.right();
            if constexpr (std::is_same_v<T, node::NamedSet>) {
                switch (n.which) {
                    case Named::N: return Rational(right, left + right);
                    case Named::NegN: return Rational(left, left + right);
                    case Named::Z: return Rational(1);
                    case Named::Empty: return Rational(0);
                    case Named::Evens:
                    case Named::Odds: return Rational(Integer(1), Integer(2));
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, node::Finite>) {
                return Rational(0);
            } else if constexpr (std::is_same_v<T, node::ArithProg>) {
                return Rational(Integer(1), Integer(n.step));
            } else if constexpr (std::is_same_v<T, node::Shift>) {
                return limit_density_hint(*n.child, family);
            } else if constexpr (std::is_same_v<T, node::Negate>) {
                return limit_density_hint(*n.child, family.mirrored());
            } else if constexpr (std::is_same_v<T, node::Complement>) {
                auto inner = limit_density_hint(*n.child, family);
                if (!inner) return std::nullopt;
                return Rational(1 - *inner);
            } else {
                return std::nullopt;
            }
        },
        set.node());
}

inline std::optional<Rational> limit_density_hint(const IntSet& set, const Loading& loading) {
    Rational total = 0;
    for (const auto& c : loading.components()) {
        auto part = limit_density_hint(set, c.family);
        if (!part) return std::nullopt;
        total += c.weight * *part;
    }
    return total;
}

/// λ·mdk(K) + (1 − λ)·dk(K) whose limiting mass on N is `target`.
struct TargetLoading {
    std::int64_t k;
    Rational lambda;
    Loading loading;
};

inline TargetLoading loading_for_target(const Rational& s) {
    if (s <= 0 || s >= 1) throw TargetOutOfRange(s);
    // 1/(K+1) <= s  <=>  K >= 1/s − 1;   s <= K/(K+1)  <=>  K >= s/(1 − s).
    const Rational bound = std::max(Rational(1 / s - 1), Rational(s / (1 - s)));
    const std::int64_t k = std::max<std::int64_t>(2, ceil_rational(bound).convert_to<std::int64_t>());
    const Rational lambda = (s * (k + 1) - 1) / (k - 1);
    Loading loading({{lambda, WindowFamily::mirror_dk(k)}, {1 - lambda, WindowFamily::dk(k)}});
    return {k, lambda, std::move(loading)};
}

/// |ℓₙ(A + t) − ℓₙ(A)|.
inline Rational invariance_defect(const Loading& loading, const IntSet& set, std::int64_t t, std::int64_t n) {
    const std::int64_t magnitude = t < 0 ? -t : t;
    if (magnitude >= loading.min_window_cardinality(n))
        throw std::invalid_argument("shift must be smaller than every window at this level");
    return abs_rational(loading.evaluate(IntSet::shift(set, t), n) - loading.evaluate(set, n));
}

/// 2|t| / (smallest window cardinality at level n).
inline Rational invariance_bound(const Loading& loading, std::int64_t t, std::int64_t n) {
    const std::int64_t magnitude = t < 0 ? -t : t;
    return Rational(Integer(2 * magnitude), Integer(loading.min_window_cardinality(n)));
}

/// Level-n representatives of the half-line strategies ℓ̌₁(A) = ℓ(A) + ℓ(−A)
/// on N and its mirror image on −N.
inline std::pair<FiniteSupportMeasure, FiniteSupportMeasure> induced_optimal_profile(const Loading& loading,
                                                                                    std::int64_t n) {
    if (!loading.is_symmetric()) throw AsymmetricLoading();
    const FiniteSupportMeasure rep = loading.representative(n);
    const Rational half(Integer(1), Integer(2));
    const FiniteSupportMeasure folded = FiniteSupportMeasure::mixture({{half, rep}, {half, rep.negated()}});
    const Rational mass = folded.interval_mass(1, n);
    std::vector<Segment> pieces;
    for (const auto& seg : folded.segments()) {
        const std::int64_t lo = std::max<std::int64_t>(1, seg.lo);
        const std::int64_t hi = std::min(n, seg.hi);
        if (lo <= hi) pieces.push_back({lo, hi, seg.weight / mass});
    }
    std::vector<std::pair<Rational, FiniteSupportMeasure>> parts;
    for (const auto& piece : pieces)
        parts.emplace_back(piece.mass(), FiniteSupportMeasure::uniform(piece.lo, piece.hi));
    FiniteSupportMeasure p = FiniteSupportMeasure::mixture(parts);
    FiniteSupportMeasure q = p.negated();
    return {std::move(p), std::move(q)};
}

}  // namespace waldgame::measures
