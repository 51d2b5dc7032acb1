#pragma once

#include <optional>
#include <string>
#include <vector>

#include "achset/sequence.hpp"

namespace achset {

enum class TermVerdict { LE, GT, Undecided };
const char* to_string(TermVerdict verdict);

/// One term-vs-tail comparison w_n(x) against a certified bracket of W_n(x).
/// LE means w_n <= bracket lower bound, GT means w_n > bracket upper bound;
/// anything straddling the bracket stays Undecided.
template <class S>
struct TermComparisonT {
  std::size_t n = 0;
  S w_n{};
  TailBracketT<S> tail;
  TermVerdict verdict = TermVerdict::Undecided;
};
using TermComparison = TermComparisonT<double>;
using ExactTermComparison = TermComparisonT<Rational>;

enum class ResidueVerdict { LEAllN, GTAllN, Undecided };
const char* to_string(ResidueVerdict verdict);

/// Per-cycle-position certificates: position j verdict LEAllN certifies
/// w_n <= W_n for every n with g(n) = j at once, GTAllN certifies w_n > W_n
/// for all of them.
template <class S>
struct ResidueCertificateT {
  std::vector<ResidueVerdict> per_j;  // index 0 holds j = 1

  bool all_le() const {
    for (ResidueVerdict v : per_j)
      if (v != ResidueVerdict::LEAllN) return false;
    return true;
  }
  bool all_gt() const {
    for (ResidueVerdict v : per_j)
      if (v != ResidueVerdict::GTAllN) return false;
    return true;
  }
  bool any_gt() const {
    for (ResidueVerdict v : per_j)
      if (v == ResidueVerdict::GTAllN) return true;
    return false;
  }
};
using ResidueCertificate = ResidueCertificateT<double>;
using ExactResidueCertificate = ResidueCertificateT<Rational>;

namespace detail {

// Bracket of W_n built from the truncated sum plus envelope bounds of the
// remainder: [finite + a*R, finite + b*R]. Sharper than the plain tail
// bracket on the lower side, which is what equality cases need.
template <class S, class F>
TailBracketT<S> enveloped_tail_bracket(const CoefficientsT<S>& coeffs, F&& f,
                                       const PowerEnvelopeT<S>& env, std::size_t n, const S& x,
                                       std::size_t truncation) {
  if (truncation < n) throw std::invalid_argument("compare_term: truncation must be >= n");
  SumAccumulator<S> acc;
  for (std::size_t i = n + 1; i <= truncation; ++i) acc.add(term_impl(coeffs, f, i, x));
  const S finite = acc.value();
  const S rem = remainder_envelope_weight(coeffs, env.r, truncation, x);
  return TailBracketT<S>{lower_bound_slack(finite + env.a * rem),
                         upper_bound_slack(finite + env.b * rem)};
}

template <class S, class F>
TermComparisonT<S> compare_term_impl(const CoefficientsT<S>& coeffs, F&& f,
                                     const PowerEnvelopeT<S>& env, std::size_t n, const S& x,
                                     std::size_t truncation) {
  if (n == 0) throw std::invalid_argument("compare_term: n starts at 1");
  check_tail_argument(x, env.epsilon);
  if (!(x > S(0))) throw std::domain_error("compare_term requires x > 0");
  TermComparisonT<S> cmp;
  cmp.n = n;
  cmp.w_n = term_impl(coeffs, f, n, x);
  cmp.tail = enveloped_tail_bracket(coeffs, f, env, n, x, truncation);
  if (cmp.w_n <= cmp.tail.lower)
    cmp.verdict = TermVerdict::LE;
  else if (cmp.w_n > cmp.tail.upper)
    cmp.verdict = TermVerdict::GT;
  else
    cmp.verdict = TermVerdict::Undecided;
  return cmp;
}

}  // namespace detail

inline TermComparison compare_term(const Coefficients& coeffs, const FunctionSpec& spec,
                                   std::size_t n, double x, std::size_t truncation) {
  return detail::compare_term_impl(coeffs, [&](double v) { return evaluate(spec, v); },
                                   spec.envelope, n, x, truncation);
}

inline ExactTermComparison exact_compare_term(const ExactCoefficients& coeffs, std::size_t n,
                                              const Rational& x, std::size_t truncation) {
  return detail::compare_term_impl(coeffs, [](const Rational& v) { return v; },
                                   exact_identity_envelope(), n, x, truncation);
}

/// Uniform certificates from the envelope form of the term/tail inequality:
/// position j is LEAllN when b*k_j <= a*(U_j + K*x^r/(1-x^r)) and GTAllN when
/// a*k_j > b*(U_j + K*x^r/(1-x^r)); the common factor x^{block*r} cancels, so
/// one check covers every n in the class.
template <class S>
ResidueCertificateT<S> residue_certificate(const CoefficientsT<S>& coeffs,
                                           const PowerEnvelopeT<S>& env, const S& x) {
  if (!(x > S(0)) || !(x < S(1)))
    throw std::domain_error("residue_certificate requires 0 < x < 1");
  const S xr = scalar_pow(x, env.r);
  const S geometric = coeffs.total() * xr / (S(1) - xr);
  ResidueCertificateT<S> cert;
  cert.per_j.reserve(coeffs.size());
  for (std::size_t j = 1; j <= coeffs.size(); ++j) {
    const S weight = coeffs.suffix_sum(j) + geometric;
    if (env.b * coeffs.k(j) <= env.a * weight)
      cert.per_j.push_back(ResidueVerdict::LEAllN);
    else if (env.a * coeffs.k(j) > env.b * weight)
      cert.per_j.push_back(ResidueVerdict::GTAllN);
    else
      cert.per_j.push_back(ResidueVerdict::Undecided);
  }
  return cert;
}

inline constexpr std::size_t kScanTruncationCap = 1u << 14;

/// Aggregate of per-term comparisons (with escalating truncation) and the
/// residue certificate over n = 1..n_max. The `certified` field names what
/// the residue certificate alone establishes for all n; finite-scan counts
/// are evidence, never a certificate.
struct KhmScanSummary {
  double x = 0;
  std::size_t n_max = 0;
  std::vector<TermComparison> terms;
  ResidueCertificate residue;
  std::size_t le_count = 0, gt_count = 0, undecided_count = 0;
  std::optional<std::size_t> first_gt;
  std::string pattern;    // one of L/G/U per cycle position, from the scan
  std::string certified;  // "compact-interval", "cantor", "not-finite-union", "none"
};

KhmScanSummary khm_scan(const Coefficients& coeffs, const FunctionSpec& spec, double x,
                        std::size_t n_max);

}  // namespace achset
