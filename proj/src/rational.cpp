#include "strathive/rational.hpp"

#include <charconv>
#include <limits>
#include <stdexcept>

namespace strathive {
namespace {

std::int64_t parse_digits(std::string_view digits, std::string_view whole) {
  if (digits.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  }
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw std::invalid_argument("malformed number '" + std::string(whole) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view rest = text;
  bool negative = false;
  if (!rest.empty() && (rest.front() == '-' || rest.front() == '+')) {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }
  Rational value;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    const std::int64_t num = parse_digits(rest.substr(0, slash), text);
    const std::int64_t den = parse_digits(rest.substr(slash + 1), text);
    if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(num, den);
  } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = rest.substr(0, dot);
    std::string_view frac_part = rest.substr(dot + 1);
    if (frac_part.empty() || frac_part.size() > 15) {
      throw std::invalid_argument("malformed number '" + std::string(text) + "'");
    }
    const std::int64_t whole = int_part.empty() ? 0 : parse_digits(int_part, text);
    const std::int64_t frac = parse_digits(frac_part, text);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    if (whole > std::numeric_limits<std::int64_t>::max() / scale - 1) {
      throw std::invalid_argument("number out of range '" + std::string(text) + "'");
    }
    value = Rational(whole * scale + frac, scale);
  } else {
    value = Rational(parse_digits(rest, text));
  }
  return negative ? -value : value;
}

std::string format_rational(const Rational& q) {
  const std::int64_t num = q.numerator();
  const std::int64_t den = q.denominator();
  if (den == 1) return std::to_string(num);

  std::int64_t rest = den;
  int twos = 0;
  int fives = 0;
  while (rest % 2 == 0) { rest /= 2; ++twos; }
  while (rest % 5 == 0) { rest /= 5; ++fives; }
  if (rest != 1 || std::max(twos, fives) > 15) {
    return std::to_string(num) + "/" + std::to_string(den);
  }

  const int digits = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // den divides scale, so the scaled numerator is exact.
  const std::int64_t scaled = (num < 0 ? -num : num) * (scale / den);
  std::string frac = std::to_string(scaled % scale);
  frac.insert(0, static_cast<std::size_t>(digits) - frac.size(), '0');
  while (!frac.empty() && frac.back() == '0') frac.pop_back();
  std::string out = num < 0 ? "-" : "";
  out += std::to_string(scaled / scale);
  out += '.';
  out += frac;
  return out;
}

}  // namespace strathive
