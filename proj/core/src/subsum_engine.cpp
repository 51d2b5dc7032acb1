#include "achset/subsum_engine.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "achset/thresholds.hpp"

namespace achset {

namespace {

template <class S>
void check_enumeration_argument(const S& x, const S& epsilon) {
  if (!(x > S(0)) || x > epsilon || x >= S(1))
    throw std::domain_error("enumeration requires 0 < x <= epsilon and x < 1");
}

void check_depth(std::size_t depth, std::size_t cap) {
  if (depth > cap)
    throw std::length_error("depth " + std::to_string(depth) + " exceeds cap " +
                            std::to_string(cap));
}

template <class S>
std::vector<S> accumulate_points(const std::vector<S>& terms, const S& tol) {
  std::vector<S> points{S(0)};
  for (const S& w : terms) {
    if (points.size() * 2 > kPointBudget)
      throw std::length_error("enumeration exceeds the point budget");
    points = detail::merge_shifted(points, w, tol);
  }
  return points;
}

// Cover kernel: closed components [p - fuzz, p + radius + fuzz] clamped at 0,
// merged when they touch.
template <class P>
IntervalCoverT<P> cover_impl(const std::vector<P>& points, const P& radius, const P& fuzz) {
  IntervalCoverT<P> out;
  if (points.empty()) return out;
  auto low = [&](const P& p) { return p > fuzz ? P(p - fuzz) : P(0); };
  P lo = low(points.front());
  P hi = points.front() + radius + fuzz;
  for (std::size_t i = 1; i < points.size(); ++i) {
    if (low(points[i]) <= hi) {
      hi = points[i] + radius + fuzz;
    } else {
      out.total_length += hi - lo;
      out.components.emplace_back(lo, hi);
      lo = low(points[i]);
      hi = points[i] + radius + fuzz;
    }
  }
  out.total_length += hi - lo;
  out.components.emplace_back(lo, hi);
  return out;
}

template <class P>
GapReportT<P> gap_report_impl(const IntervalCoverT<P>& cov) {
  GapReportT<P> report;
  for (std::size_t i = 1; i < cov.components.size(); ++i) {
    const P start = cov.components[i - 1].second;
    const P length = cov.components[i].first - start;
    report.gaps.emplace_back(start, length);
    if (!report.largest || length > report.largest->second)
      report.largest = report.gaps.back();
  }
  return report;
}

double cover_fuzz(const SubsumCloud& cloud) { return 2.0 * cloud.merge_tol; }

}  // namespace

SubsumCloud enumerate(const Coefficients& coeffs, const FunctionSpec& spec, double x,
                      std::size_t depth, double merge_tol, std::size_t depth_cap) {
  if (spec.envelope_only())
    throw std::domain_error("enumeration needs an evaluatable function, '" + spec.name +
                            "' is envelope-only");
  check_enumeration_argument(x, spec.envelope.epsilon);
  check_depth(depth, depth_cap);

  std::vector<double> terms(depth);
  for (std::size_t n = 1; n <= depth; ++n) terms[n - 1] = term(coeffs, spec, n, x);

  SubsumCloud cloud;
  cloud.x = x;
  cloud.depth = depth;
  if (merge_tol < 0) {
    detail::SumAccumulator<double> acc;
    for (double w : terms) acc.add(w);
    merge_tol = acc.value() * 0x1p-40;
  }
  cloud.merge_tol = merge_tol;
  cloud.points = accumulate_points(terms, merge_tol);
  cloud.tail_radius = tail_bracket(coeffs, spec, depth, x).upper;
  return cloud;
}

ExactSubsumCloud exact_enumerate(const ExactCoefficients& coeffs, const Rational& x,
                                 std::size_t depth, std::size_t depth_cap) {
  check_enumeration_argument(x, Rational(1));
  check_depth(depth, depth_cap);
  const std::size_t m = coeffs.size();

  // Everything at depth N is an integer multiple of 1/(lcm of coefficient
  // denominators * q^B), so enumerate integer numerators.
  BigInt coeff_lcm = 1;
  for (const Rational& k : coeffs.values())
    coeff_lcm = boost::multiprecision::lcm(coeff_lcm, denominator(k));
  const std::size_t max_block = depth == 0 ? 0 : block_exponent(m, depth);
  const BigInt p = numerator(x);
  const BigInt q = denominator(x);
  const BigInt denom = coeff_lcm * pow_n(q, max_block);

  std::vector<BigInt> terms(depth);
  for (std::size_t n = 1; n <= depth; ++n) {
    const Rational& k = coeffs.k(cycle_index(m, n));
    const std::size_t block = block_exponent(m, n);
    terms[n - 1] =
        numerator(k) * (coeff_lcm / denominator(k)) * pow_n(p, block) * pow_n(q, max_block - block);
  }

  const std::vector<BigInt> numerators = accumulate_points(terms, BigInt(0));
  ExactSubsumCloud cloud;
  cloud.x = x;
  cloud.depth = depth;
  cloud.points.reserve(numerators.size());
  for (const BigInt& num : numerators) cloud.points.emplace_back(num, denom);
  // Exact tail of the identity series: the envelope weight with a = b = 1.
  cloud.tail_radius = detail::remainder_envelope_weight(coeffs, Rational(1), depth, x);
  return cloud;
}

IntervalCover cover(const SubsumCloud& cloud) {
  return cover_impl(cloud.points, cloud.tail_radius, cover_fuzz(cloud));
}

ExactIntervalCover cover(const ExactSubsumCloud& cloud) {
  return cover_impl(cloud.points, cloud.tail_radius, Rational(0));
}

GapReport gap_report(const SubsumCloud& cloud) { return gap_report_impl(cover(cloud)); }

ExactGapReport gap_report(const ExactSubsumCloud& cloud) { return gap_report_impl(cover(cloud)); }

SubsumCloud minkowski_sum(const SubsumCloud& a, const SubsumCloud& b) {
  if (a.x != b.x) throw std::invalid_argument("minkowski_sum: clouds evaluated at different x");
  if (a.points.size() > kPointBudget / std::max<std::size_t>(b.points.size(), 1))
    throw std::length_error("minkowski_sum: pairwise size exceeds the point budget");
  SubsumCloud out;
  out.x = a.x;
  out.depth = a.depth + b.depth;
  out.tail_radius = a.tail_radius + b.tail_radius;
  out.merge_tol = std::max(a.merge_tol, b.merge_tol);
  std::vector<double> sums;
  sums.reserve(a.points.size() * b.points.size());
  for (double pa : a.points)
    for (double pb : b.points) sums.push_back(pa + pb);
  std::sort(sums.begin(), sums.end());
  out.points.reserve(sums.size());
  for (double v : sums) {
    if (out.points.empty() || v - out.points.back() > out.merge_tol) out.points.push_back(v);
  }
  return out;
}

namespace {

// Dense path: result values live on one integer grid of limited span, so the
// sum set is an OR of shifted bitmaps.
std::vector<Rational> dense_integer_minkowski(const std::vector<BigInt>& a,
                                              const std::vector<BigInt>& b, const BigInt& denom,
                                              std::size_t span) {
  const std::size_t b_span = b.back().convert_to<std::size_t>() + 1;
  const std::size_t b_words = (b_span + 63) / 64;
  std::vector<std::uint64_t> b_bits(b_words, 0);
  for (const BigInt& v : b) {
    const std::size_t idx = v.convert_to<std::size_t>();
    b_bits[idx / 64] |= std::uint64_t(1) << (idx % 64);
  }
  // One spare word absorbs the carry of the highest shifted write.
  const std::size_t out_words = (span + 63) / 64 + 1;
  std::vector<std::uint64_t> out_bits(out_words, 0);
  for (const BigInt& v : a) {
    const std::size_t shift = v.convert_to<std::size_t>();
    const std::size_t word = shift / 64;
    const unsigned bit = shift % 64;
    if (bit == 0) {
      for (std::size_t w = 0; w < b_words; ++w) out_bits[word + w] |= b_bits[w];
    } else {
      for (std::size_t w = 0; w < b_words; ++w) {
        out_bits[word + w] |= b_bits[w] << bit;
        out_bits[word + w + 1] |= b_bits[w] >> (64 - bit);
      }
    }
  }
  std::vector<Rational> points;
  for (std::size_t w = 0; w < out_words; ++w) {
    std::uint64_t bits = out_bits[w];
    while (bits) {
      const unsigned tz = std::countr_zero(bits);
      points.emplace_back(BigInt(w * 64 + tz), denom);
      bits &= bits - 1;
    }
  }
  return points;
}

std::vector<BigInt> scaled_numerators(const std::vector<Rational>& points, const BigInt& denom) {
  std::vector<BigInt> out;
  out.reserve(points.size());
  for (const Rational& p : points) out.push_back(numerator(p) * (denom / denominator(p)));
  return out;
}

}  // namespace

ExactSubsumCloud minkowski_sum(const ExactSubsumCloud& a, const ExactSubsumCloud& b) {
  if (a.x != b.x) throw std::invalid_argument("minkowski_sum: clouds evaluated at different x");
  ExactSubsumCloud out;
  out.x = a.x;
  out.depth = a.depth + b.depth;
  out.tail_radius = a.tail_radius + b.tail_radius;

  BigInt denom = 1;
  for (const Rational& p : a.points) denom = boost::multiprecision::lcm(denom, denominator(p));
  for (const Rational& p : b.points) denom = boost::multiprecision::lcm(denom, denominator(p));
  const std::vector<BigInt> na = scaled_numerators(a.points, denom);
  const std::vector<BigInt> nb = scaled_numerators(b.points, denom);

  const BigInt range = na.back() + nb.back() + 1;
  if (range <= BigInt(std::size_t(1) << 27)) {
    out.points = dense_integer_minkowski(na, nb, denom, range.convert_to<std::size_t>());
    return out;
  }
  if (a.points.size() > kPointBudget / std::max<std::size_t>(b.points.size(), 1))
    throw std::length_error("minkowski_sum: pairwise size exceeds the point budget");
  std::vector<BigInt> sums;
  sums.reserve(na.size() * nb.size());
  for (const BigInt& pa : na)
    for (const BigInt& pb : nb) sums.push_back(pa + pb);
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  out.points.reserve(sums.size());
  for (const BigInt& v : sums) out.points.emplace_back(v, denom);
  return out;
}

EvidenceReport trichotomy_evidence(const Coefficients& coeffs, const FunctionSpec& spec, double x,
                                   const std::vector<std::size_t>& depths, std::size_t depth_cap) {
  if (depths.empty()) throw std::invalid_argument("trichotomy_evidence: need at least one depth");
  for (std::size_t i = 1; i < depths.size(); ++i) {
    if (depths[i] <= depths[i - 1])
      throw std::invalid_argument("trichotomy_evidence: depths must be strictly increasing");
  }
  if (spec.envelope_only())
    throw std::domain_error("trichotomy_evidence needs an evaluatable function");
  check_enumeration_argument(x, spec.envelope.epsilon);
  check_depth(depths.back(), depth_cap);

  const std::size_t max_depth = depths.back();
  std::vector<double> terms(max_depth);
  detail::SumAccumulator<double> total;
  for (std::size_t n = 1; n <= max_depth; ++n) {
    terms[n - 1] = term(coeffs, spec, n, x);
    total.add(terms[n - 1]);
  }
  const double merge_tol = total.value() * 0x1p-40;

  EvidenceReport report;
  std::vector<double> points{0.0};
  std::size_t next = 0;
  auto snapshot = [&](std::size_t depth) {
    const double radius = tail_bracket(coeffs, spec, depth, x).upper;
    const IntervalCover cov = cover_impl(points, radius, 2.0 * merge_tol);
    const GapReport gaps = gap_report_impl(cov);
    report.rows.push_back({depth, cov.components.size(), cov.total_length,
                           gaps.largest ? gaps.largest->second : 0.0});
  };
  if (depths[next] == 0) snapshot(depths[next++]);
  for (std::size_t n = 1; n <= max_depth; ++n) {
    if (points.size() * 2 > kPointBudget)
      throw std::length_error("enumeration exceeds the point budget");
    points = detail::merge_shifted(points, terms[n - 1], merge_tol);
    if (next < depths.size() && depths[next] == n) snapshot(depths[next++]);
  }
  report.reference_sum =
      total.value() + tail_bracket(coeffs, spec, max_depth, x).upper;

  const EvidenceRow& front = report.rows.front();
  const EvidenceRow& back = report.rows.back();
  const bool all_single = std::all_of(report.rows.begin(), report.rows.end(),
                                      [](const EvidenceRow& r) { return r.components == 1; });
  const bool growing = back.components > front.components;
  double min_length = report.rows.front().total_length;
  for (const EvidenceRow& r : report.rows) min_length = std::min(min_length, r.total_length);

  if (all_single)
    report.trend = "interval-like";
  else if (growing && min_length > 0.1 * report.reference_sum)
    report.trend = "cantorval-like";
  else if (growing && back.total_length <= 0.1 * report.reference_sum &&
           back.total_length <= 0.5 * front.total_length)
    report.trend = "cantor-like";
  else
    report.trend = "inconclusive";
  return report;
}

}  // namespace achset
