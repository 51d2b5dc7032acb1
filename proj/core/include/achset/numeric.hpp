#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace achset {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Relative slack applied to floating-point lower/upper bounds in lieu of
// directed rounding; exact-rational code paths carry no slack.
inline constexpr double kBoundSlack = 0x1p-40;
// Absolute floor so the slack stays effective in the denormal range.
inline constexpr double kBoundSlackFloor = 0x1p-1000;

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(double x) { return x; }

// Parses "7", "3/4" or a plain decimal like "0.125" into an exact rational.
Rational parse_rational(std::string_view text);

// Renders a rational as "numerator/denominator" ("p" when the denominator is 1).
std::string rational_string(const Rational& q);

// Shortest-width %.17g rendering; round-trips through strtod.
std::string double_string(double v);

// base^e by repeated squaring; deterministic for both scalar types.
template <class S>
S pow_n(S base, std::size_t e) {
  S result(1);
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

inline double scalar_pow(double base, double exponent) { return std::pow(base, exponent); }

// Rational x^r is defined only for non-negative integer exponents.
Rational scalar_pow(const Rational& base, const Rational& exponent);

inline double lower_bound_slack(double v) {
  double s = v * (1.0 - kBoundSlack) - kBoundSlackFloor;
  return s > 0.0 ? s : 0.0;
}
inline double upper_bound_slack(double v) { return v * (1.0 + kBoundSlack) + kBoundSlackFloor; }
inline Rational lower_bound_slack(Rational v) { return v; }
inline Rational upper_bound_slack(Rational v) { return v; }

namespace detail {

// Plain accumulator for exact scalars, compensated (Kahan) for double.
template <class S>
struct SumAccumulator {
  S total{};
  void add(const S& v) { total += v; }
  const S& value() const { return total; }
};

template <>
struct SumAccumulator<double> {
  double total = 0.0;
  double comp = 0.0;
  void add(double v) {
    double y = v - comp;
    double t = total + y;
    comp = (t - total) - y;
    total = t;
  }
  double value() const { return total; }
};

}  // namespace detail

}  // namespace achset
