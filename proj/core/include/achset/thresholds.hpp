#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "achset/sequence.hpp"

namespace achset {

/// Sorted unique subsums of the coefficients: every sum_{i} c_i * k_i with
/// c_i in {0, 1}. Always contains 0 and K and is symmetric about K/2.
template <class S>
struct SubsumAlphabetT {
  std::vector<S> values;
};
using SubsumAlphabet = SubsumAlphabetT<double>;
using ExactSubsumAlphabet = SubsumAlphabetT<Rational>;

/// Longest arithmetic progression mu, mu+lambda, ..., mu+s*lambda inside the
/// alphabet. `mu_is_zero` records whether the zero-start convention produced
/// the result.
template <class S>
struct APResultT {
  S mu{};
  S lambda{};
  unsigned s = 0;
  bool mu_is_zero = false;
};
using APResult = APResultT<double>;
using ExactAPResult = APResultT<Rational>;

template <class S>
struct ThresholdSetT {
  // Radicands of the five thresholds, each ratio clamped at 0; the threshold
  // itself is radicand^(1/r). d_CI is absent when no progression with s >= 1
  // exists.
  S d_i_radicand{}, d_im_radicand{}, d_ni_radicand{}, d_c_radicand{};
  std::optional<S> d_ci_radicand;
  double d_i = 0, d_im = 0, d_ni = 0, d_c = 0;
  std::optional<double> d_ci;
  std::optional<APResultT<S>> ap;

  bool has_cantorval_window() const { return d_ci_radicand && *d_ci_radicand < d_ni_radicand; }
  // [d_CI, d_NI) when nonempty.
  std::optional<std::pair<double, double>> cantorval_window() const {
    if (!has_cantorval_window()) return std::nullopt;
    return std::make_pair(*d_ci, d_ni);
  }
};
using ThresholdSet = ThresholdSetT<double>;
using ExactThresholdSet = ThresholdSetT<Rational>;

enum class RegionLabel { Interval, Cantorval, Cantor, NotFiniteUnion, Indeterminate };
const char* to_string(RegionLabel label);
RegionLabel region_label_from_string(std::string_view name);

struct Justification {
  std::string criterion;
  std::string comparison;
};

struct RegionVerdict {
  RegionLabel label = RegionLabel::Indeterminate;
  std::vector<Justification> justifications;
};

inline constexpr std::size_t kAlphabetCoefficientCap = 20;
inline constexpr std::size_t kApAlphabetCap = 4096;

namespace detail {

// Index of the alphabet value within `tol` of target, or -1. Prefers the
// closer of the two bracketing values.
template <class S>
std::ptrdiff_t find_near(const std::vector<S>& vals, const S& target, const S& tol) {
  auto it = std::lower_bound(vals.begin(), vals.end(), target);
  std::ptrdiff_t best = -1;
  S best_err{};
  auto consider = [&](typename std::vector<S>::const_iterator iter) {
    if (iter == vals.end()) return;
    S err = *iter >= target ? S(*iter - target) : S(target - *iter);
    if (err <= tol && (best < 0 || err < best_err)) {
      best = iter - vals.begin();
      best_err = err;
    }
  };
  consider(it);
  if (it != vals.begin()) consider(std::prev(it));
  return best;
}

template <class S>
S alphabet_tolerance(const CoefficientsT<S>& coeffs);

template <>
inline double alphabet_tolerance(const CoefficientsT<double>& coeffs) {
  return coeffs.total() * 0x1p-30;
}
template <>
inline Rational alphabet_tolerance(const CoefficientsT<Rational>&) {
  return Rational(0);
}

// Sorted-merge of `points` with `points + shift`, deduplicated by chaining:
// a value is kept only if it exceeds the last kept value by more than tol.
template <class S>
std::vector<S> merge_shifted(const std::vector<S>& points, const S& shift, const S& tol) {
  std::vector<S> out;
  out.reserve(points.size() * 2);
  std::size_t i = 0, j = 0;
  const std::size_t n = points.size();
  auto push = [&](const S& v) {
    if (out.empty() || v - out.back() > tol) out.push_back(v);
  };
  while (i < n && j < n) {
    const S shifted = points[j] + shift;
    if (points[i] <= shifted) {
      push(points[i]);
      ++i;
    } else {
      push(shifted);
      ++j;
    }
  }
  for (; i < n; ++i) push(points[i]);
  for (; j < n; ++j) push(points[j] + shift);
  return out;
}

}  // namespace detail

template <class S>
SubsumAlphabetT<S> subsum_alphabet(const CoefficientsT<S>& coeffs,
                                   std::size_t coefficient_cap = kAlphabetCoefficientCap) {
  if (coeffs.size() > coefficient_cap)
    throw std::length_error("subsum_alphabet: coefficient count " + std::to_string(coeffs.size()) +
                            " exceeds cap " + std::to_string(coefficient_cap));
  const S tol = detail::alphabet_tolerance(coeffs) / S(2);
  std::vector<S> values{S(0)};
  for (const S& k : coeffs.values()) values = detail::merge_shifted(values, k, tol);
  return SubsumAlphabetT<S>{std::move(values)};
}

/// Longest arithmetic progression contained in the alphabet, maximizing s,
/// ties broken by smaller lambda then smaller mu. With `allow_mu_zero` off,
/// progressions starting at 0 lose their head instead. Dynamic program over
/// ending pairs; alphabets beyond kApAlphabetCap are rejected.
template <class S>
APResultT<S> ap_search(const SubsumAlphabetT<S>& alphabet, bool allow_mu_zero = true) {
  const std::vector<S>& vals = alphabet.values;
  if (vals.empty()) throw std::invalid_argument("ap_search: empty alphabet");
  const std::size_t n = vals.size();
  if (n > kApAlphabetCap)
    throw std::length_error("ap_search: alphabet size " + std::to_string(n) + " exceeds cap " +
                            std::to_string(kApAlphabetCap));

  const S total = vals.back();
  S tol{};
  if constexpr (std::is_same_v<S, double>) tol = total * 0x1p-30;

  APResultT<S> best;
  best.s = 0;
  best.lambda = total > S(0) ? total : S(1);
  bool best_valid = false;
  auto better = [](const APResultT<S>& a, const APResultT<S>& b) {
    if (a.s != b.s) return a.s > b.s;
    if (a.lambda != b.lambda) return a.lambda < b.lambda;
    return a.mu < b.mu;
  };
  auto consider = [&](APResultT<S> cand) {
    cand.mu_is_zero = cand.mu == S(0);
    if (cand.mu_is_zero && !allow_mu_zero) return;
    if (!best_valid || better(cand, best)) {
      best = cand;
      best_valid = true;
    }
  };

  // Degenerate one-term progression; only relevant when every longer
  // progression is excluded by the mu > 0 requirement.
  if (allow_mu_zero) {
    consider({vals.front(), best.lambda, 0, false});
  } else {
    auto pos = std::find_if(vals.begin(), vals.end(), [](const S& v) { return v > S(0); });
    if (pos != vals.end()) consider({*pos, best.lambda, 0, false});
  }

  if (n >= 2) {
    // len[i*n+j]: terms in the longest progression ending with (vals[i], vals[j]);
    // first[i*n+j]: index of that progression's first element.
    std::vector<std::uint16_t> len(n * n, 0), first(n * n, 0);
    for (std::size_t j = 1; j < n; ++j) {
      for (std::size_t i = 0; i < j; ++i) {
        const S lambda = vals[j] - vals[i];
        std::uint16_t count = 2;
        std::uint16_t head = static_cast<std::uint16_t>(i);
        const S target = vals[i] - lambda;
        if (target >= S(0) - tol) {
          const std::ptrdiff_t h = detail::find_near(vals, target, tol);
          if (h >= 0 && static_cast<std::size_t>(h) < i) {
            count = static_cast<std::uint16_t>(len[h * n + i] + 1);
            head = first[h * n + i];
          }
        }
        len[i * n + j] = count;
        first[i * n + j] = head;

        const unsigned s = count - 1;
        const S mu = vals[head];
        consider({mu, lambda, s, false});
        if (mu == S(0) && s >= 1) {
          // Same progression without its zero head.
          S next = mu + lambda;
          if (const std::ptrdiff_t idx = detail::find_near(vals, next, tol); idx >= 0)
            next = vals[idx];
          consider({next, lambda, s - 1, false});
        }
      }
    }
  }

  if (!best_valid) throw std::domain_error("ap_search: alphabet has no positive value");
  return best;
}

template <class S>
ThresholdSetT<S> compute_thresholds(const CoefficientsT<S>& coeffs, const PowerEnvelopeT<S>& env,
                                    bool allow_mu_zero = true) {
  const std::size_t m = coeffs.size();
  const S& a = env.a;
  const S& b = env.b;
  auto clamp0 = [](S v) { return v > S(0) ? v : S(0); };

  ThresholdSetT<S> th;
  bool have = false;
  for (std::size_t j = 1; j <= m; ++j) {
    const S& kj = coeffs.k(j);
    const S& uj = coeffs.suffix_sum(j);
    const S& lj = coeffs.prefix_sum(j);
    const S ratio_i = clamp0((b * kj - a * uj) / (b * kj + a * lj));
    const S ratio_c = clamp0((a * kj - b * uj) / (a * kj + b * lj));
    if (!have) {
      th.d_i_radicand = ratio_i;
      th.d_c_radicand = ratio_c;
      have = true;
    } else {
      if (ratio_i > th.d_i_radicand) th.d_i_radicand = ratio_i;
      if (ratio_c < th.d_c_radicand) th.d_c_radicand = ratio_c;
    }
  }
  th.d_im_radicand = b / (a + b);
  th.d_ni_radicand = a * coeffs.k(m) / (b * coeffs.total() + a * coeffs.k(m));

  th.ap = ap_search(subsum_alphabet(coeffs), allow_mu_zero);
  if (th.ap->s >= 1) th.d_ci_radicand = b / (S(th.ap->s) * a + b);

  const double inv_r = 1.0 / to_double(env.r);
  auto root = [inv_r](const S& radicand) { return std::pow(to_double(radicand), inv_r); };
  th.d_i = root(th.d_i_radicand);
  th.d_im = root(th.d_im_radicand);
  th.d_ni = root(th.d_ni_radicand);
  th.d_c = root(th.d_c_radicand);
  if (th.d_ci_radicand) th.d_ci = root(*th.d_ci_radicand);
  return th;
}

// Necessary condition for a nonempty Cantorval window: b < a*sqrt(s*k_m/K),
// compared squared to stay exact. Failure guarantees d_CI >= d_NI.
template <class S>
bool cantorval_necessary_check(const CoefficientsT<S>& coeffs, const PowerEnvelopeT<S>& env,
                               unsigned s) {
  return env.b * env.b * coeffs.total() < env.a * env.a * S(s) * coeffs.k(coeffs.size());
}

/// Region verdict at x by theorem precedence. Threshold comparisons are made
/// on the radicand scale (x^r against each radicand), which is exact in
/// rational mode. Justifications list every satisfied criterion.
template <class S>
RegionVerdict classify(const CoefficientsT<S>& coeffs, const PowerEnvelopeT<S>& env, const S& x,
                       bool allow_mu_zero = true) {
  if (!(x > S(0)) || !(x < S(1)))
    throw std::domain_error("classify requires 0 < x < 1, got x = " + double_string(to_double(x)));
  const ThresholdSetT<S> th = compute_thresholds(coeffs, env, allow_mu_zero);
  const S xr = scalar_pow(x, env.r);

  const bool interval_ok = xr >= th.d_i_radicand && x <= env.epsilon;
  const bool cantorval_ok = th.has_cantorval_window() && xr >= *th.d_ci_radicand &&
                            xr < th.d_ni_radicand && x < env.epsilon;
  const bool cantor_ok = th.d_c_radicand > S(0) && xr < th.d_c_radicand && x < env.epsilon;
  const bool nfu_ok = xr < th.d_ni_radicand && x < env.epsilon;

  RegionVerdict verdict;
  if (interval_ok) {
    verdict.justifications.push_back({"interval", "d_I <= x <= epsilon"});
    if (x == env.epsilon)
      verdict.justifications.push_back(
          {"interval-endpoint",
           "x equals epsilon: the certified interval region is stated closed at epsilon, its "
           "limiting argument is open there"});
  }
  if (cantorval_ok) verdict.justifications.push_back({"cantorval", "d_CI <= x < min(d_NI, epsilon)"});
  if (cantor_ok) verdict.justifications.push_back({"cantor", "0 < x < min(epsilon, d_C), d_C > 0"});
  if (nfu_ok) verdict.justifications.push_back({"not-finite-union", "0 < x < min(epsilon, d_NI)"});

  if (interval_ok)
    verdict.label = RegionLabel::Interval;
  else if (cantorval_ok)
    verdict.label = RegionLabel::Cantorval;
  else if (cantor_ok)
    verdict.label = RegionLabel::Cantor;
  else if (nfu_ok)
    verdict.label = RegionLabel::NotFiniteUnion;
  else
    verdict.label = RegionLabel::Indeterminate;
  return verdict;
}

}  // namespace achset
