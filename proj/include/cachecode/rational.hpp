#pragma once

#include <cstdint>
#include <string>

#include <boost/rational.hpp>

namespace cachecode {

using Rational = boost::rational<std::int64_t>;

// "p/q", or "p" when the denominator is 1.
std::string to_exact_string(const Rational& r);

// Decimal rendering with 12 significant digits.
std::string to_decimal_string(const Rational& r);

double to_double(const Rational& r);

// Parses "p", "p/q" or a finite decimal such as "0.25".
Rational parse_rational(const std::string& text);

std::int64_t ceil_div(std::int64_t num, std::int64_t den);

// Binomial coefficient; zero when n < k or n < 0. Throws SizeLimitExceeded on
// int64 overflow.
std::int64_t binomial(std::int64_t n, std::int64_t k);

}  // namespace cachecode
