#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace halo {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Malformed input or a violated operation precondition. Mathematical checks
// that merely *fail* are reported as data, not thrown.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Parses a decimal literal ("3", "-0.25", "10.") into an exact rational.
// Comparisons throughout the library are exact; no floating point is used.
inline Rational parse_decimal(const std::string& text)
{
    std::size_t pos = 0;
    bool negative = false;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        negative = (text[pos] == '-');
        ++pos;
    }
    std::string digits;
    std::size_t frac_digits = 0;
    bool seen_dot = false;
    for (; pos < text.size(); ++pos) {
        char ch = text[pos];
        if (ch == '.') {
            if (seen_dot)
                throw InputError("malformed decimal '" + text + "'");
            seen_dot = true;
        } else if (ch >= '0' && ch <= '9') {
            digits.push_back(ch);
            if (seen_dot)
                ++frac_digits;
        } else {
            throw InputError("malformed decimal '" + text + "'");
        }
    }
    if (digits.empty())
        throw InputError("malformed decimal '" + text + "'");
    BigInt numerator = 0; // digit by digit; a leading zero must not mean octal
    for (char ch : digits)
        numerator = numerator * 10 + (ch - '0');
    if (negative)
        numerator = -numerator;
    BigInt denominator = 1;
    for (std::size_t i = 0; i < frac_digits; ++i)
        denominator *= 10;
    return Rational(numerator, denominator);
}

// Exact text form: a plain decimal whenever the reduced denominator divides a
// power of ten, "p/q" otherwise. parse_decimal round-trips the decimal form.
inline std::string format_rational(const Rational& value)
{
    BigInt num = boost::multiprecision::numerator(value);
    BigInt den = boost::multiprecision::denominator(value);
    if (den == 1)
        return num.str();

    BigInt rest = den;
    unsigned twos = 0, fives = 0;
    while (rest % 2 == 0) {
        rest /= 2;
        ++twos;
    }
    while (rest % 5 == 0) {
        rest /= 5;
        ++fives;
    }
    if (rest != 1)
        return num.str() + "/" + den.str();

    const unsigned k = std::max(twos, fives);
    BigInt ten_k = 1;
    for (unsigned i = 0; i < k; ++i)
        ten_k *= 10;
    BigInt scaled = num * (ten_k / den);
    const bool negative = scaled < 0;
    if (negative)
        scaled = -scaled;
    BigInt whole = scaled / ten_k;
    std::string frac = BigInt(scaled % ten_k).str();
    frac.insert(frac.begin(), k - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0')
        frac.pop_back();
    std::string out = negative ? "-" : "";
    out += whole.str();
    if (!frac.empty()) {
        out += '.';
        out += frac;
    }
    return out;
}

} // namespace halo
