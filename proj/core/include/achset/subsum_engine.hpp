#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "achset/sequence.hpp"

namespace achset {

inline constexpr std::size_t kFloatDepthCap = 24;
inline constexpr std::size_t kExactDepthCap = 20;
inline constexpr std::size_t kPointBudget = std::size_t(1) << 26;

/// Finite-depth enumeration of subsums sum_{n<=depth} c_n w_n(x) together
/// with a certified tail radius: every true subsum of the full series lies
/// within tail_radius above some enumerated point.
struct SubsumCloud {
  double x = 0;
  std::size_t depth = 0;
  std::vector<double> points;  // sorted, deduplicated at merge_tol
  double tail_radius = 0;      // certified upper bound on W_depth(x)
  double merge_tol = 0;
};

struct ExactSubsumCloud {
  Rational x;
  std::size_t depth = 0;
  std::vector<Rational> points;  // sorted, exact
  Rational tail_radius;          // exact W_depth(x)
};

// Iterated sorted-merge enumeration (S then S union S+w_n), deduplicating at
// merge_tol; merge_tol < 0 selects the default 2^-40 * partial_sum(depth).
SubsumCloud enumerate(const Coefficients& coeffs, const FunctionSpec& spec, double x,
                      std::size_t depth, double merge_tol = -1.0,
                      std::size_t depth_cap = kFloatDepthCap);

// Exact-rational enumeration of the multigeometric case f(x) = x. Points are
// kept as integer numerators over one common denominator internally, so
// coefficient collisions cost nothing.
ExactSubsumCloud exact_enumerate(const ExactCoefficients& coeffs, const Rational& x,
                                 std::size_t depth, std::size_t depth_cap = kExactDepthCap);

/// Outer cover of the achievement set at this depth: the union of
/// [p, p + tail_radius] over cloud points, merged into disjoint closed
/// components. Components are "no gap detected here", never "filled".
template <class P>
struct IntervalCoverT {
  std::vector<std::pair<P, P>> components;
  P total_length{};
};
using IntervalCover = IntervalCoverT<double>;
using ExactIntervalCover = IntervalCoverT<Rational>;

/// Open intervals between cover components; these are certified disjoint
/// from the full achievement set.
template <class P>
struct GapReportT {
  std::vector<std::pair<P, P>> gaps;  // (start, length)
  std::optional<std::pair<P, P>> largest;
};
using GapReport = GapReportT<double>;
using ExactGapReport = GapReportT<Rational>;

IntervalCover cover(const SubsumCloud& cloud);
ExactIntervalCover cover(const ExactSubsumCloud& cloud);
GapReport gap_report(const SubsumCloud& cloud);
ExactGapReport gap_report(const ExactSubsumCloud& cloud);

// {a + b : a in A, b in B}; requires equal x and mode. The result keeps
// x, adds depths and tail radii.
SubsumCloud minkowski_sum(const SubsumCloud& a, const SubsumCloud& b);
ExactSubsumCloud minkowski_sum(const ExactSubsumCloud& a, const ExactSubsumCloud& b);

struct EvidenceRow {
  std::size_t depth = 0;
  std::size_t components = 0;
  double total_length = 0;
  double largest_gap = 0;
};

/// Depth-by-depth cover statistics with a trend label. Heuristic evidence
/// only: the label describes the finite data and certifies nothing.
struct EvidenceReport {
  std::vector<EvidenceRow> rows;
  std::string trend;  // "interval-like", "cantor-like", "cantorval-like", "inconclusive"
  double reference_sum = 0;
};

EvidenceReport trichotomy_evidence(const Coefficients& coeffs, const FunctionSpec& spec, double x,
                                   const std::vector<std::size_t>& depths,
                                   std::size_t depth_cap = kFloatDepthCap);

}  // namespace achset
