#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "achset/function_model.hpp"
#include "achset/numeric.hpp"

namespace achset {

/// Non-increasing positive weights k_1 >= ... >= k_m > 0 with the derived
/// total K, suffix sums U_j = sum_{i>j} k_i and prefix sums L_j = sum_{i<=j} k_i.
template <class S>
class CoefficientsT {
 public:
  static CoefficientsT from(std::vector<S> values) {
    if (values.empty()) throw std::invalid_argument("coefficients: need at least one value");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(values[i] > S(0))) throw std::invalid_argument("coefficients: values must be positive");
      if (i > 0 && values[i] > values[i - 1])
        throw std::invalid_argument("coefficients: values must be non-increasing");
    }
    CoefficientsT c;
    c.k_ = std::move(values);
    const std::size_t m = c.k_.size();
    c.suffix_.assign(m + 1, S(0));
    c.prefix_.assign(m + 1, S(0));
    for (std::size_t j = m; j-- > 0;) c.suffix_[j] = c.suffix_[j + 1] + c.k_[j];
    for (std::size_t j = 0; j < m; ++j) c.prefix_[j + 1] = c.prefix_[j] + c.k_[j];
    c.total_ = c.prefix_[m];
    return c;
  }

  std::size_t size() const { return k_.size(); }  // m
  const std::vector<S>& values() const { return k_; }
  const S& k(std::size_t j) const { return k_.at(j - 1); }            // 1-based
  const S& total() const { return total_; }                           // K
  const S& suffix_sum(std::size_t j) const { return suffix_.at(j); }  // U_j, j in [0, m]
  const S& prefix_sum(std::size_t j) const { return prefix_.at(j); }  // L_j, j in [0, m]

 private:
  CoefficientsT() = default;
  std::vector<S> k_;
  std::vector<S> suffix_, prefix_;
  S total_{};
};

using Coefficients = CoefficientsT<double>;
using ExactCoefficients = CoefficientsT<Rational>;

// Cycle position of term n: 1 + (n-1) mod m.
inline std::size_t cycle_index(std::size_t m, std::size_t n) { return 1 + (n - 1) % m; }

// Exponent of the block containing term n: floor((m+n-1)/m).
inline std::size_t block_exponent(std::size_t m, std::size_t n) { return (m + n - 1) / m; }

template <class S>
struct TailBracketT {
  S lower{};
  S upper{};
};
using TailBracket = TailBracketT<double>;
using ExactTailBracket = TailBracketT<Rational>;

namespace detail {

template <class S>
void check_series_argument(const S& x, const S& epsilon) {
  if (!(x >= S(0)) || x > epsilon)
    throw std::domain_error("series argument outside [0, epsilon]");
}

template <class S>
void check_tail_argument(const S& x, const S& epsilon) {
  check_series_argument(x, epsilon);
  if (x >= S(1)) throw std::domain_error("tail bounds require x < 1");
}

// w_n(x) = k_{g(n)} f(x^{block(n)}).
template <class S, class F>
S term_impl(const CoefficientsT<S>& coeffs, F&& f, std::size_t n, const S& x) {
  if (n == 0) throw std::invalid_argument("term index starts at 1");
  const std::size_t m = coeffs.size();
  return coeffs.k(cycle_index(m, n)) * f(pow_n(x, block_exponent(m, n)));
}

template <class S, class F>
S partial_sum_impl(const CoefficientsT<S>& coeffs, F&& f, std::size_t count, const S& x) {
  SumAccumulator<S> acc;
  const std::size_t m = coeffs.size();
  std::size_t n = 1;
  while (n <= count) {
    // One block at a time: all terms of a block share f(x^p).
    const S fp = f(pow_n(x, block_exponent(m, n)));
    const std::size_t block_end = std::min(count, n + (m - (n - 1) % m) - 1);
    for (; n <= block_end; ++n) acc.add(coeffs.k(cycle_index(m, n)) * fp);
  }
  return acc.value();
}

// Envelope weight R of the remainder beyond `truncation`:
//   a*R <= sum_{n > truncation} w_n(x) <= b*R
// with R = U_{j0-1} * (x^r)^{p0} + K * (x^r)^{p0+1} / (1 - x^r), where term
// truncation+1 sits at cycle position j0 inside block p0. Requires x < 1.
template <class S>
S remainder_envelope_weight(const CoefficientsT<S>& coeffs, const S& r, std::size_t truncation,
                            const S& x) {
  if (x == S(0)) return S(0);
  const std::size_t m = coeffs.size();
  const std::size_t j0 = cycle_index(m, truncation + 1);
  const std::size_t p0 = block_exponent(m, truncation + 1);
  const S xr = scalar_pow(x, r);
  const S xr_p0 = pow_n(xr, p0);
  return coeffs.suffix_sum(j0 - 1) * xr_p0 + coeffs.total() * xr_p0 * xr / (S(1) - xr);
}

template <class S, class F>
TailBracketT<S> tail_bracket_impl(const CoefficientsT<S>& coeffs, F&& f, const S& b, const S& r,
                                  std::size_t ell, const S& x, std::size_t truncation) {
  if (truncation < ell) throw std::invalid_argument("tail bracket: truncation must be >= ell");
  if (x == S(0)) return TailBracketT<S>{S(0), S(0)};
  SumAccumulator<S> acc;
  for (std::size_t n = ell + 1; n <= truncation; ++n) acc.add(term_impl(coeffs, f, n, x));
  const S finite = acc.value();
  const S rem = remainder_envelope_weight(coeffs, r, truncation, x);
  return TailBracketT<S>{lower_bound_slack(finite), upper_bound_slack(finite + b * rem)};
}

}  // namespace detail

// ---- floating-point mode (any FunctionSpec with an evaluator) ----

inline double term(const Coefficients& coeffs, const FunctionSpec& spec, std::size_t n, double x) {
  detail::check_series_argument(x, spec.envelope.epsilon);
  return detail::term_impl(coeffs, [&](double v) { return evaluate(spec, v); }, n, x);
}

inline double partial_sum(const Coefficients& coeffs, const FunctionSpec& spec, std::size_t count,
                          double x) {
  detail::check_series_argument(x, spec.envelope.epsilon);
  return detail::partial_sum_impl(coeffs, [&](double v) { return evaluate(spec, v); }, count, x);
}

inline std::size_t default_tail_truncation(const Coefficients& coeffs, std::size_t ell) {
  return ell + 8 * coeffs.size();
}

/// Certified bracket of the tail W_ell(x) = sum_{n > ell} w_n(x): the lower
/// bound is the plain truncated sum, the upper bound adds the envelope bound
/// of everything beyond the truncation. Floating bounds carry directed slack.
inline TailBracket tail_bracket(const Coefficients& coeffs, const FunctionSpec& spec,
                                std::size_t ell, double x, std::size_t truncation) {
  detail::check_tail_argument(x, spec.envelope.epsilon);
  return detail::tail_bracket_impl(coeffs, [&](double v) { return evaluate(spec, v); },
                                   spec.envelope.b, spec.envelope.r, ell, x, truncation);
}

inline TailBracket tail_bracket(const Coefficients& coeffs, const FunctionSpec& spec,
                                std::size_t ell, double x) {
  return tail_bracket(coeffs, spec, ell, x, default_tail_truncation(coeffs, ell));
}

// ---- exact-rational mode (f = identity) ----

inline Rational exact_term(const ExactCoefficients& coeffs, std::size_t n, const Rational& x) {
  detail::check_series_argument(x, Rational(1));
  return detail::term_impl(coeffs, [](const Rational& v) { return v; }, n, x);
}

inline Rational exact_partial_sum(const ExactCoefficients& coeffs, std::size_t count,
                                  const Rational& x) {
  detail::check_series_argument(x, Rational(1));
  return detail::partial_sum_impl(coeffs, [](const Rational& v) { return v; }, count, x);
}

inline ExactTailBracket exact_tail_bracket(const ExactCoefficients& coeffs, std::size_t ell,
                                           const Rational& x, std::size_t truncation) {
  detail::check_tail_argument(x, Rational(1));
  return detail::tail_bracket_impl(coeffs, [](const Rational& v) { return v; }, Rational(1),
                                   Rational(1), ell, x, truncation);
}

}  // namespace achset
