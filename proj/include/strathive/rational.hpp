#ifndef STRATHIVE_RATIONAL_HPP
#define STRATHIVE_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace strathive {

using Rational = boost::rational<std::int64_t>;

// Accepts "-2", "0.5", "+3", "1/3". Throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Exact decimal when the denominator has only factors 2 and 5, otherwise
// "p/q". parse_rational(format_rational(q)) == q for every q.
std::string format_rational(const Rational& q);

inline double to_double(const Rational& q) {
  return boost::rational_cast<double>(q);
}

}  // namespace strathive

#endif  // STRATHIVE_RATIONAL_HPP
