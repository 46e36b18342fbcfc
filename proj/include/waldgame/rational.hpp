#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace waldgame {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a textual literal does not follow its grammar.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, const std::string& message)
        : std::runtime_error("parse error at byte " + std::to_string(offset) + ": " + message),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
    return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline Rational abs_rational(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Always "a/b" with b >= 1, including integers ("1/1", "0/1").
inline std::string to_fraction_string(const Rational& r) {
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline Integer floor_div(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline Integer ceil_rational(const Rational& r) {
    return -floor_div(-numerator_of(r), denominator_of(r));
}

/// Parses `a/b` or a plain integer, optionally signed. Zero denominators are rejected.
inline Rational parse_rational(std::string_view text, std::size_t base_offset = 0) {
    auto parse_int = [&](std::string_view s, std::size_t off) {
        std::size_t i = 0;
        bool negative = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
            negative = s[i] == '-';
            ++i;
        }
        if (i == s.size()) throw ParseError(base_offset + off + i, "expected digit");
        Integer value = 0;
        for (; i < s.size(); ++i) {
            if (s[i] < '0' || s[i] > '9') throw ParseError(base_offset + off + i, "expected digit");
            value = value * 10 + (s[i] - '0');
        }
        return negative ? Integer(-value) : value;
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return Rational(parse_int(text, 0));
    Integer num = parse_int(text.substr(0, slash), 0);
    Integer den = parse_int(text.substr(slash + 1), slash + 1);
    if (den == 0) throw ParseError(base_offset + slash + 1, "zero denominator");
    return Rational(num, den);
}

}  // namespace waldgame
