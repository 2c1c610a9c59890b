#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coverkit {

/// Exact rational number. Every non-integral quantity in the library is one of these.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline Rational make_rational(std::int64_t num, std::int64_t den = 1)
{
    if (den == 0) throw std::domain_error("zero denominator");
    return Rational(BigInt(num), BigInt(den));
}

inline BigInt floor_div(const BigInt& a, const BigInt& b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline BigInt floor(const Rational& r)
{
    return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline bool is_integer(const Rational& r) { return boost::multiprecision::denominator(r) == 1; }

/// Fractional part in [0, 1).
inline Rational frac(const Rational& r) { return r - Rational(floor(r)); }

inline std::int64_t to_int64(const BigInt& v)
{
    if (v > BigInt(INT64_MAX) || v < BigInt(INT64_MIN)) throw std::overflow_error("integer does not fit in 64 bits");
    return v.convert_to<std::int64_t>();
}

inline std::int64_t to_int64(const Rational& r)
{
    if (!is_integer(r)) throw std::domain_error("rational is not an integer");
    return to_int64(boost::multiprecision::numerator(r));
}

/// Renders as `p/q`, or `p` for integers.
inline std::string to_string(const Rational& r)
{
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Accepts `p`, `-p`, `p/q`.
inline Rational parse_rational(const std::string& text)
{
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(text));
        BigInt num(text.substr(0, slash));
        BigInt den(text.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        throw std::invalid_argument("not a rational number: '" + text + "'");
    }
}

}  // namespace coverkit
