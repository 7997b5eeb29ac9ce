#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace phragmen {

using BigInt = boost::multiprecision::cpp_int;

/// Exact fraction with arbitrary-precision numerator and denominator.
/// Always stored in lowest terms with positive denominator; all rule
/// computation in this library goes through this type, never floating point.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

/// Renders "p/q", or just "p" for integers.
inline std::string format_rational(const Rational& r) {
    if (denominator_of(r) == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Renders "p/q" unconditionally (load-distribution serialization format).
inline std::string format_fraction(const Rational& r) {
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

/// Accepts "p", "p/q", and plain decimals like "-3.25".
/// Throws std::invalid_argument on malformed input.
inline Rational parse_rational(const std::string& text) {
    auto bad = [&]() -> Rational {
        throw std::invalid_argument("not a rational: '" + text + "'");
    };
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = text[pos] == '-';
        ++pos;
    }
    if (pos >= text.size()) return bad();

    BigInt num = 0;
    BigInt den = 1;
    bool sawDigit = false;
    while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
        num = num * 10 + (text[pos] - '0');
        sawDigit = true;
        ++pos;
    }
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            num = num * 10 + (text[pos] - '0');
            den *= 10;
            sawDigit = true;
            ++pos;
        }
    } else if (pos < text.size() && text[pos] == '/') {
        ++pos;
        BigInt d = 0;
        bool sawDen = false;
        while (pos < text.size() && text[pos] >= '0' && text[pos] <= '9') {
            d = d * 10 + (text[pos] - '0');
            sawDen = true;
            ++pos;
        }
        if (!sawDen || d == 0) return bad();
        den = d;
    }
    if (!sawDigit || pos != text.size()) return bad();
    if (negative) num = -num;
    return Rational(num, den);
}

/// Exact decimal expansion, or nullopt when the expansion does not terminate.
inline std::optional<std::string> exact_decimal(const Rational& r) {
    BigInt den = denominator_of(r);
    int twos = 0, fives = 0;
    while (den % 2 == 0) { den /= 2; ++twos; }
    while (den % 5 == 0) { den /= 5; ++fives; }
    if (den != 1) return std::nullopt;
    int digits = twos > fives ? twos : fives;
    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;
    BigInt scaled = numerator_of(r) * scale / denominator_of(r);
    bool neg = scaled < 0;
    if (neg) scaled = -scaled;
    std::string s = scaled.str();
    std::string out;
    if (digits == 0) {
        out = s;
    } else {
        while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
        out = s.substr(0, s.size() - digits) + "." + s.substr(s.size() - digits);
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

/// Decimal rendering with the given number of significant digits (round half
/// away from zero). Only used when an exact expansion is unavailable.
inline std::string approx_decimal(const Rational& r, int significant = 15) {
    if (r == 0) return "0";
    BigInt num = numerator_of(r);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt den = denominator_of(r);
    // scale into [10^(sig-1), 10^sig)
    int exp10 = 0;
    BigInt lo = 1;
    for (int i = 1; i < significant; ++i) lo *= 10;
    BigInt hi = lo * 10;
    while (num / den >= hi) { den *= 10; ++exp10; }
    while (num / den < lo) { num *= 10; --exp10; }
    BigInt q = num / den;
    BigInt rem = num - q * den;
    if (rem * 2 >= den) ++q;
    if (q == hi) { q /= 10; ++exp10; }
    std::string digitsStr = q.str();
    // exponent of the leading digit
    int lead = exp10 + significant - 1;
    std::string out;
    if (lead >= 0 && lead < significant + 3) {
        if (lead + 1 >= static_cast<int>(digitsStr.size())) {
            out = digitsStr + std::string(lead + 1 - digitsStr.size(), '0');
        } else {
            out = digitsStr.substr(0, lead + 1) + "." + digitsStr.substr(lead + 1);
        }
    } else if (lead < 0 && lead > -5) {
        out = "0." + std::string(-lead - 1, '0') + digitsStr;
    } else {
        out = digitsStr.substr(0, 1) + "." + digitsStr.substr(1) + "e" + std::to_string(lead);
    }
    // trim trailing zeros of a fractional part
    if (out.find('.') != std::string::npos && out.find('e') == std::string::npos) {
        while (out.back() == '0') out.pop_back();
        if (out.back() == '.') out.pop_back();
    }
    return neg ? "-" + out : out;
}

/// Rounds to three decimal places (ties away from zero) and trims trailing
/// zeros, e.g. 1/20 -> "0.05", 161/520 -> "0.31", 13/80 -> "0.163".
inline std::string decimal3(const Rational& r) {
    Rational scaled = r * 1000;
    BigInt num = numerator_of(scaled);
    BigInt den = denominator_of(scaled);
    bool neg = num < 0;
    if (neg) num = -num;
    BigInt q = num / den;
    BigInt rem = num - q * den;
    if (rem * 2 >= den) ++q;
    BigInt whole = q / 1000;
    BigInt frac = q % 1000;
    std::string fs = frac.str();
    while (fs.size() < 3) fs.insert(fs.begin(), '0');
    while (!fs.empty() && fs.back() == '0') fs.pop_back();
    std::string out = whole.str();
    if (!fs.empty()) out += "." + fs;
    if (neg && (whole != 0 || !fs.empty())) out.insert(out.begin(), '-');
    return out;
}

} // namespace phragmen
