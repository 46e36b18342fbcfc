#pragma once

// Text forms used on the command line:
//   measure  {point:weight,...}            e.g. {1:1/2,2:1/2}
//   loading  dk:K | mdk:K | sym | mix(w*family,...)
//   map      [-]x[(+|-)b] or a*x+b with a ∈ {1,-1}
// All parsers ignore whitespace and report byte offsets on failure.

#include <waldgame/games.hpp>
#include <waldgame/loading.hpp>
#include <waldgame/measure.hpp>
#include <waldgame/rational.hpp>

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace waldgame::literals {

namespace detail {

class Cursor {
public:
    explicit Cursor(std::string_view text) : text_(text) {}

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c) {
        if (!peek(c)) return false;
        ++pos_;
        return true;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    bool accept_word(std::string_view word) {
        skip_ws();
        if (text_.substr(pos_, word.size()) != word) return false;
        pos_ += word.size();
        return true;
    }

    void finish() {
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
    }

    std::int64_t integer() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        const std::size_t digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (pos_ == digits) {
            pos_ = start;
            fail("expected integer");
        }
        try {
            return std::stoll(std::string(text_.substr(start, pos_ - start)));
        } catch (const std::out_of_range&) {
            pos_ = start;
            fail("integer out of range");
        }
    }

    Rational rational() {
        skip_ws();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && text_[pos_] == '-') ++pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/'))
            ++pos_;
        if (pos_ == start) fail("expected rational");
        return parse_rational(text_.substr(start, pos_ - start), start);
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
};

inline measures::WindowFamily family(Cursor& in) {
    if (in.accept_word("sym")) return measures::WindowFamily::symmetric();
    const bool mirror = in.accept_word("mdk");
    if (!mirror && !in.accept_word("dk")) in.fail("expected window family dk:K, mdk:K or sym");
    in.expect(':');
    const std::int64_t k = in.integer();
    if (k < 1) in.fail("family parameter K must be >= 1");
    return mirror ? measures::WindowFamily::mirror_dk(k) : measures::WindowFamily::dk(k);
}

}  // namespace detail

inline measures::FiniteSupportMeasure parse_measure(std::string_view text) {
    detail::Cursor in(text);
    in.expect('{');
    std::vector<std::pair<std::int64_t, Rational>> points;
    if (!in.peek('}')) {
        do {
            const std::int64_t x = in.integer();
            in.expect(':');
            points.emplace_back(x, in.rational());
        } while (in.accept(','));
    }
    in.expect('}');
    in.finish();
    return measures::FiniteSupportMeasure::from_points(points);
}

inline measures::Loading parse_loading(std::string_view text) {
    detail::Cursor in(text);
    if (in.accept_word("mix")) {
        in.expect('(');
        std::vector<measures::Loading::Component> parts;
        do {
            Rational w = in.rational();
            in.expect('*');
            parts.push_back({std::move(w), detail::family(in)});
        } while (in.accept(','));
        in.expect(')');
        in.finish();
        return measures::Loading(std::move(parts));
    }
    measures::Loading single(detail::family(in));
    in.finish();
    return single;
}

inline games::AffineMap parse_affine(std::string_view text) {
    detail::Cursor in(text);
    int sign = 1;
    if (in.accept('-')) sign = -1;
    if (!in.peek('x')) {
        if (in.integer() != 1) in.fail("slope must be 1 or -1");
        in.expect('*');
    }
    in.expect('x');
    std::int64_t offset = 0;
    if (in.accept('+')) {
        offset = in.integer();
    } else if (in.peek('-')) {
        offset = in.integer();
    }
    in.finish();
    return {sign, offset};
}

}  // namespace waldgame::literals

namespace waldgame::literals {

/// Canonical measure literal, points in increasing order.
inline std::string to_literal(const measures::FiniteSupportMeasure& mu) {
    std::string out = "{";
    bool first = true;
    for (const auto& [x, w] : mu.points()) {
        if (!first) out += ",";
        first = false;
        out += std::to_string(x) + ":" + numerator_of(w).str();
        if (denominator_of(w) != 1) out += "/" + denominator_of(w).str();
    }
    return out + "}";
}

}  // namespace waldgame::literals
