#pragma once

// Symbolic subsets of the integers: membership, exact window counting and a
// canonical textual form.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace waldgame::intsets {

/// Largest window that may be counted by scanning membership point by point.
inline constexpr std::int64_t kScanCap = 10'000'000;
/// Largest number of elements accepted in a `fin{...}` literal.
inline constexpr std::size_t kFiniteLiteralCap = 10'000;

class WindowTooLarge : public std::runtime_error {
public:
    explicit WindowTooLarge(std::int64_t cardinality)
        : std::runtime_error("window of " + std::to_string(cardinality) +
                             " points needs a membership scan; cap is " + std::to_string(kScanCap)) {}
};

/// Closed integer interval [lo, hi], never empty.
class Window {
public:
    Window(std::int64_t lo, std::int64_t hi) : lo_(lo), hi_(hi) {
        if (lo > hi) throw std::invalid_argument("window requires lo <= hi");
    }

    std::int64_t lo() const noexcept { return lo_; }
    std::int64_t hi() const noexcept { return hi_; }
    std::int64_t cardinality() const noexcept { return hi_ - lo_ + 1; }
    bool contains(std::int64_t x) const noexcept { return lo_ <= x && x <= hi_; }

    Window shifted(std::int64_t t) const { return {lo_ + t, hi_ + t}; }
    Window negated() const { return {-hi_, -lo_}; }

    friend bool operator==(const Window&, const Window&) = default;

private:
    std::int64_t lo_;
    std::int64_t hi_;
};

enum class Named { N, NegN, Z, Empty, Evens, Odds };

class IntSet;

namespace node {
struct NamedSet { Named which; };
struct Finite { std::vector<std::int64_t> elements; };  // sorted, unique
struct ArithProg { std::int64_t base; std::int64_t step; };
struct Shift { std::shared_ptr<const IntSet> child; std::int64_t offset; };
struct Negate { std::shared_ptr<const IntSet> child; };
struct Complement { std::shared_ptr<const IntSet> child; };
struct Union { std::shared_ptr<const IntSet> left, right; };
struct Intersect { std::shared_ptr<const IntSet> left, right; };
struct Difference { std::shared_ptr<const IntSet> left, right; };
}  // namespace node

using Node = std::variant<node::NamedSet, node::Finite, node::ArithProg, node::Shift, node::Negate,
                          node::Complement, node::Union, node::Intersect, node::Difference>;

namespace detail {
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// |{k : lo <= base + step*k <= hi}| for step > 0.
inline std::int64_t count_progression(std::int64_t base, std::int64_t step, const Window& w) {
    const std::int64_t first = -floor_div(-(w.lo() - base), step);
    const std::int64_t last = floor_div(w.hi() - base, step);
    return std::max<std::int64_t>(0, last - first + 1);
}

inline std::int64_t count_interval(std::int64_t lo, std::int64_t hi, const Window& w) {
    const std::int64_t a = std::max(lo, w.lo());
    const std::int64_t b = std::min(hi, w.hi());
    return a > b ? 0 : b - a + 1;
}
}  // namespace detail

/// Immutable expression tree describing a computable subset of Z.
/// N is {1,2,3,...} and negN is {-1,-2,-3,...}; 0 lies in neither.
class IntSet {
public:
    explicit IntSet(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

    static IntSet named(Named which) { return IntSet(node::NamedSet{which}); }
    static IntSet naturals() { return named(Named::N); }
    static IntSet negative_naturals() { return named(Named::NegN); }
    static IntSet integers() { return named(Named::Z); }
    static IntSet empty() { return named(Named::Empty); }
    static IntSet evens() { return named(Named::Evens); }
    static IntSet odds() { return named(Named::Odds); }

    static IntSet finite(std::vector<std::int64_t> elements) {
        if (elements.size() > kFiniteLiteralCap)
            throw std::invalid_argument("finite literal exceeds " + std::to_string(kFiniteLiteralCap) + " elements");
        std::sort(elements.begin(), elements.end());
        elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
        return IntSet(node::Finite{std::move(elements)});
    }

    static IntSet progression(std::int64_t base, std::int64_t step) {
        if (step <= 0) throw std::invalid_argument("progression step must be positive");
        return IntSet(node::ArithProg{base, step});
    }

    static IntSet shift(IntSet child, std::int64_t offset) {
        return IntSet(node::Shift{std::make_shared<const IntSet>(std::move(child)), offset});
    }
    static IntSet negate(IntSet child) { return IntSet(node::Negate{std::make_shared<const IntSet>(std::move(child))}); }
    static IntSet complement(IntSet child) {
        return IntSet(node::Complement{std::make_shared<const IntSet>(std::move(child))});
    }
    static IntSet unite(IntSet a, IntSet b) {
        return IntSet(node::Union{std::make_shared<const IntSet>(std::move(a)), std::make_shared<const IntSet>(std::move(b))});
    }
    static IntSet intersect(IntSet a, IntSet b) {
        return IntSet(
            node::Intersect{std::make_shared<const IntSet>(std::move(a)), std::make_shared<const IntSet>(std::move(b))});
    }
    static IntSet difference(IntSet a, IntSet b) {
        return IntSet(
            node::Difference{std::make_shared<const IntSet>(std::move(a)), std::make_shared<const IntSet>(std::move(b))});
    }

    const Node& node() const noexcept { return *node_; }

    bool contains(std::int64_t x) const;

    /// True when window counts are available without scanning.
    bool has_closed_form() const;

    /// Exact |A ∩ w|. Falls back to a membership scan, capped at kScanCap points.
    std::int64_t count(const Window& w) const;

    /// Canonical text in the expression grammar.
    std::string to_string() const;

    friend bool operator==(const IntSet& a, const IntSet& b);

private:
    std::optional<std::int64_t> closed_count(const Window& w) const;

    std::shared_ptr<const Node> node_;
};

inline bool IntSet::contains(std::int64_t x) const {
    return std::visit(
        [x](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::NamedSet>) {
                switch (n.which) {
                    case Named::N: return x >= 1;
                    case Named::NegN: return x <= -1;
                    case Named::Z: return true;
                    case Named::Empty: return false;
                    case Named::Evens: return x % 2 == 0;
                    case Named::Odds: return x % 2 != 0;
                }
                return false;
            } else if constexpr (std::is_same_v<T, node::Finite>) {
                return std::binary_search(n.elements.begin(), n.elements.end(), x);
            } else if constexpr (std::is_same_v<T, node::ArithProg>) {
                return ((x - n.base) % n.step) == 0;
            } else if constexpr (std::is_same_v<T, node::Shift>) {
                return n.child->contains(x - n.offset);
            } else if constexpr (std::is_same_v<T, node::Negate>) {
                return n.child->contains(-x);
            } else if constexpr (std::is_same_v<T, node::Complement>) {
                return !n.child->contains(x);
            } else if constexpr (std::is_same_v<T, node::Union>) {
                return n.left->contains(x) || n.right->contains(x);
            } else if constexpr (std::is_same_v<T, node::Intersect>) {
                return n.left->contains(x) && n.right->contains(x);
            } else {
                return n.left->contains(x) && !n.right->contains(x);
            }
        },
        *node_);
}

inline bool IntSet::has_closed_form() const {
    return std::visit(
        [](const auto& n) -> bool {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::NamedSet> || std::is_same_v<T, node::Finite> ||
                          std::is_same_v<T, node::ArithProg>) {
                return true;
            } else if constexpr (std::is_same_v<T, node::Shift> || std::is_same_v<T, node::Negate> ||
                                 std::is_same_v<T, node::Complement>) {
                return n.child->has_closed_form();
            } else {
                return false;
            }
        },
        *node_);
}

inline std::optional<std::int64_t> IntSet::closed_count(const Window& w) const {
    return std::visit(
        [&w](const auto& n) -> std::optional<std::int64_t> {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::NamedSet>) {
                constexpr auto lo = std::numeric_limits<std::int64_t>::min();
                constexpr auto hi = std::numeric_limits<std::int64_t>::max();
                switch (n.which) {
                    case Named::N: return detail::count_interval(1, hi, w);
                    case Named::NegN: return detail::count_interval(lo, -1, w);
                    case Named::Z: return w.cardinality();
                    case Named::Empty: return 0;
                    case Named::Evens: return detail::count_progression(0, 2, w);
                    case Named::Odds: return detail::count_progression(1, 2, w);
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, node::Finite>) {
                auto first = std::lower_bound(n.elements.begin(), n.elements.end(), w.lo());
                auto last = std::upper_bound(n.elements.begin(), n.elements.end(), w.hi());
                return static_cast<std::int64_t>(last - first);
            } else if constexpr (std::is_same_v<T, node::ArithProg>) {
                return detail::count_progression(n.base, n.step, w);
            } else if constexpr (std::is_same_v<T, node::Shift>) {
                return n.child->closed_count(w.shifted(-n.offset));
            } else if constexpr (std::is_same_v<T, node::Negate>) {
                return n.child->closed_count(w.negated());
            } else if constexpr (std::is_same_v<T, node::Complement>) {
                auto inner = n.child->closed_count(w);
                if (!inner) return std::nullopt;
                return w.cardinality() - *inner;
            } else {
                return std::nullopt;
            }
        },
        *node_);
}

inline std::int64_t IntSet::count(const Window& w) const {
    if (auto c = closed_count(w)) return *c;
    if (w.cardinality() > kScanCap) throw WindowTooLarge(w.cardinality());
    std::int64_t total = 0;
    for (std::int64_t x = w.lo(); x <= w.hi(); ++x)
        if (contains(x)) ++total;
    return total;
}

inline std::string IntSet::to_string() const {
    return std::visit(
        [](const auto& n) -> std::string {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, node::NamedSet>) {
                switch (n.which) {
                    case Named::N: return "N";
                    case Named::NegN: return "negN";
                    case Named::Z: return "Z";
                    case Named::Empty: return "empty";
                    case Named::Evens: return "evens";
                    case Named::Odds: return "odds";
                }
                return "?";
            } else if constexpr (std::is_same_v<T, node::Finite>) {
                std::string out = "fin{";
                for (std::size_t i = 0; i < n.elements.size(); ++i) {
                    if (i) out += ',';
                    out += std::to_string(n.elements[i]);
                }
                return out + "}";
            } else if constexpr (std::is_same_v<T, node::ArithProg>) {
                return "ap(" + std::to_string(n.base) + "," + std::to_string(n.step) + ")";
            } else if constexpr (std::is_same_v<T, node::Shift>) {
                return "shift(" + n.child->to_string() + "," + std::to_string(n.offset) + ")";
            } else if constexpr (std::is_same_v<T, node::Negate>) {
                return "neg(" + n.child->to_string() + ")";
            } else if constexpr (std::is_same_v<T, node::Complement>) {
                return "compl(" + n.child->to_string() + ")";
            } else if constexpr (std::is_same_v<T, node::Union>) {
                return "union(" + n.left->to_string() + "," + n.right->to_string() + ")";
            } else if constexpr (std::is_same_v<T, node::Intersect>) {
                return "inter(" + n.left->to_string() + "," + n.right->to_string() + ")";
            } else {
                return "diff(" + n.left->to_string() + "," + n.right->to_string() + ")";
            }
        },
        *node_);
}

inline bool operator==(const IntSet& a, const IntSet& b) {
    if (a.node_->index() != b.node_->index()) return false;
    return std::visit(
        [&b](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(*b.node_);
            if constexpr (std::is_same_v<T, node::NamedSet>) {
                return x.which == y.which;
            } else if constexpr (std::is_same_v<T, node::Finite>) {
                return x.elements == y.elements;
            } else if constexpr (std::is_same_v<T, node::ArithProg>) {
                return x.base == y.base && x.step == y.step;
            } else if constexpr (std::is_same_v<T, node::Shift>) {
                return x.offset == y.offset && *x.child == *y.child;
            } else if constexpr (std::is_same_v<T, node::Negate> || std::is_same_v<T, node::Complement>) {
                return *x.child == *y.child;
            } else {
                return *x.left == *y.left && *x.right == *y.right;
            }
        },
        *a.node_);
}

}  // namespace waldgame::intsets
