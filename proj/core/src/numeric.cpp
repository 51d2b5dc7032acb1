#include "achset/numeric.hpp"

#include <cctype>
#include <cstdio>

namespace achset {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = text;
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  bool negative = false;
  if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) throw std::invalid_argument("empty rational literal: '" + std::string(text) + "'");

  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw std::invalid_argument("malformed rational literal: '" + std::string(text) + "'");
    BigInt d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(num)), d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if ((whole.empty() && frac.empty()) || (!whole.empty() && !all_digits(whole)) ||
        (!frac.empty() && !all_digits(frac)))
      throw std::invalid_argument("malformed decimal literal: '" + std::string(text) + "'");
    BigInt scaled = whole.empty() ? BigInt(0) : BigInt(std::string(whole));
    BigInt denom(1);
    for (char c : frac) {
      scaled = scaled * 10 + (c - '0');
      denom *= 10;
    }
    value = Rational(scaled, denom);
  } else {
    if (!all_digits(s))
      throw std::invalid_argument("malformed rational literal: '" + std::string(text) + "'");
    value = Rational(BigInt(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

std::string rational_string(const Rational& q) {
  std::string s = numerator(q).str();
  if (denominator(q) != 1) {
    s += '/';
    s += denominator(q).str();
  }
  return s;
}

std::string double_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Rational scalar_pow(const Rational& base, const Rational& exponent) {
  if (denominator(exponent) != 1 || exponent < 0)
    throw std::domain_error("exact mode requires a non-negative integer exponent, got " +
                            rational_string(exponent));
  BigInt e = numerator(exponent);
  if (e > 4096) throw std::domain_error("exact exponent too large: " + e.str());
  return pow_n(base, e.convert_to<std::size_t>());
}

}  // namespace achset
