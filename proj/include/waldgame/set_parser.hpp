#pragma once

// Recursive-descent parser for the integer-set expression grammar:
//
//   expr   := "N" | "negN" | "Z" | "empty" | "evens" | "odds"
//           | "fin{" int ("," int)* "}"
//           | "ap(" int "," posint ")"
//           | "shift(" expr "," int ")" | "neg(" expr ")" | "compl(" expr ")"
//           | "union(" expr "," expr ")" | "inter(" expr "," expr ")" | "diff(" expr "," expr ")"
//   int    := ["-"] digit+
//
// Whitespace between tokens is ignored.

#include <waldgame/intset.hpp>
#include <waldgame/rational.hpp>

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace waldgame::intsets {

namespace detail {

class SetParser {
public:
    explicit SetParser(std::string_view text) : text_(text) {}

    IntSet parse() {
        IntSet result = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("expected end of input");
        return result;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::string identifier() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    std::int64_t integer() {
        skip_ws();
        const std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
        }
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected integer");
        // Accumulate as a negative magnitude so INT64_MIN is representable.
        std::int64_t value = 0;
        constexpr auto lowest = std::numeric_limits<std::int64_t>::min();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            const int digit = text_[pos_] - '0';
            if (value < (lowest + digit) / 10) {
                pos_ = start;
                fail("integer out of range");
            }
            value = value * 10 - digit;
            ++pos_;
        }
        if (!negative) {
            if (value == lowest) {
                pos_ = start;
                fail("integer out of range");
            }
            value = -value;
        }
        return value;
    }

    IntSet expr() {
        skip_ws();
        const std::size_t start = pos_;
        const std::string word = identifier();
        if (word == "N") return IntSet::naturals();
        if (word == "negN") return IntSet::negative_naturals();
        if (word == "Z") return IntSet::integers();
        if (word == "empty") return IntSet::empty();
        if (word == "evens") return IntSet::evens();
        if (word == "odds") return IntSet::odds();
        if (word == "fin") {
            expect('{');
            std::vector<std::int64_t> elements{integer()};
            for (skip_ws(); pos_ < text_.size() && text_[pos_] == ','; skip_ws()) {
                ++pos_;
                elements.push_back(integer());
                if (elements.size() > kFiniteLiteralCap)
                    fail("finite literal exceeds " + std::to_string(kFiniteLiteralCap) + " elements");
            }
            expect('}');
            return IntSet::finite(std::move(elements));
        }
        if (word == "ap") {
            expect('(');
            const std::int64_t base = integer();
            expect(',');
            skip_ws();
            const std::size_t step_at = pos_;
            const std::int64_t step = integer();
            if (step <= 0) {
                pos_ = step_at;
                fail("progression step must be a positive integer");
            }
            expect(')');
            return IntSet::progression(base, step);
        }
        if (word == "shift") {
            expect('(');
            IntSet child = expr();
            expect(',');
            const std::int64_t offset = integer();
            expect(')');
            return IntSet::shift(std::move(child), offset);
        }
        if (word == "neg" || word == "compl") {
            expect('(');
            IntSet child = expr();
            expect(')');
            return word == "neg" ? IntSet::negate(std::move(child)) : IntSet::complement(std::move(child));
        }
        if (word == "union" || word == "inter" || word == "diff") {
            expect('(');
            IntSet left = expr();
            expect(',');
            IntSet right = expr();
            expect(')');
            if (word == "union") return IntSet::unite(std::move(left), std::move(right));
            if (word == "inter") return IntSet::intersect(std::move(left), std::move(right));
            return IntSet::difference(std::move(left), std::move(right));
        }
        pos_ = start;
        fail(word.empty() ? "expected set expression"
                          : "unknown set name '" + word +
                                "', expected one of N, negN, Z, empty, evens, odds, fin, ap, shift, neg, compl, "
                                "union, inter, diff");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline IntSet parse_set_expr(std::string_view text) { return detail::SetParser(text).parse(); }

}  // namespace waldgame::intsets
