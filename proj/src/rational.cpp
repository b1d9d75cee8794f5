#include "cachecode/rational.hpp"

#include <charconv>
#include <cstdio>
#include <numeric>

#include "cachecode/errors.hpp"

namespace cachecode {

std::string to_exact_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_decimal_string(const Rational& r) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", to_double(r));
  return buf;
}

namespace {

std::int64_t parse_int(std::string_view text) {
  std::int64_t value = 0;
  const char* first = text.data();
  const char* last = first + text.size();
  if (!text.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw InstanceError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string_view view(text);
  if (const auto slash = view.find('/'); slash != std::string_view::npos) {
    const auto den = parse_int(view.substr(slash + 1));
    if (den == 0) throw InstanceError("zero denominator in '" + text + "'");
    return Rational(parse_int(view.substr(0, slash)), den);
  }
  if (const auto dot = view.find('.'); dot != std::string_view::npos) {
    const auto whole = view.substr(0, dot);
    const auto frac = view.substr(dot + 1);
    if (frac.size() > 15) throw InstanceError("too many decimals in '" + text + "'");
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const bool negative = !whole.empty() && whole.front() == '-';
    const std::int64_t w = (whole.empty() || whole == "-" || whole == "+") ? 0 : parse_int(whole);
    const std::int64_t f = frac.empty() ? 0 : parse_int(frac);
    const std::int64_t mag = (w < 0 ? -w : w) * scale + f;
    return Rational(negative ? -mag : mag, scale);
  }
  return Rational(parse_int(view));
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && ((num < 0) == (den < 0))) ++q;
  return q;
}

std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || n < k) return 0;
  if (k > n - k) k = n - k;
  std::int64_t result = 1;
  for (std::int64_t j = 1; j <= k; ++j) {
    // result * (n - k + j) / j is integral, so j / g divides n - k + j.
    const std::int64_t g = std::gcd(result, j);
    const std::int64_t factor = (n - k + j) / (j / g);
    if (__builtin_mul_overflow(result / g, factor, &result)) {
      throw SizeLimitExceeded("binomial(" + std::to_string(n) + ", " +
                              std::to_string(k) + ") overflows int64");
    }
  }
  return result;
}

}  // namespace cachecode
