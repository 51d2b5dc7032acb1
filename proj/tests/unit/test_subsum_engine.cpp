#include <doctest.h>

#include <random>

#include "achset/subsum_engine.hpp"
#include "achset/thresholds.hpp"
#include "testutil.hpp"

using namespace achset;

namespace {

ExactCoefficients exact_coeffs(std::initializer_list<int> values) {
  std::vector<Rational> k;
  for (int v : values) k.emplace_back(v);
  return ExactCoefficients::from(std::move(k));
}

std::vector<Rational> exact_term_list(const ExactCoefficients& coeffs, const Rational& x,
                                      std::size_t depth) {
  std::vector<Rational> terms;
  for (std::size_t n = 1; n <= depth; ++n) terms.push_back(exact_term(coeffs, n, x));
  return terms;
}

}  // namespace

TEST_CASE("enumerate produces the documented small clouds") {
  const FunctionSpec& id = builtin("identity");

  const SubsumCloud middle_third = enumerate(Coefficients::from({2.0}), id, 1.0 / 3.0, 2);
  REQUIRE(middle_third.points.size() == 4);
  CHECK(middle_third.points[0] == 0.0);
  CHECK(middle_third.points[1] == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK(middle_third.points[2] == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(middle_third.points[3] == doctest::Approx(8.0 / 9.0).epsilon(1e-14));

  const SubsumCloud gn = enumerate(Coefficients::from({3, 2}), id, 0.25, 2);
  REQUIRE(gn.points.size() == 4);
  CHECK(gn.points[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(gn.points[2] == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(gn.points[3] == doctest::Approx(1.25).epsilon(1e-15));

  const SubsumCloud root = enumerate(Coefficients::from({2.0}), id, 1.0 / 3.0, 0);
  CHECK(root.points == std::vector<double>{0.0});
  CHECK(root.tail_radius >= 1.0);  // full sum of the middle-third series

  CHECK_THROWS_AS(enumerate(Coefficients::from({1.0}), id, 0.5, 30), std::length_error);
  CHECK_THROWS_AS(
      enumerate(Coefficients::from({1.0}), envelope_only_spec(id.envelope), 0.5, 4),
      std::domain_error);
  CHECK_THROWS_AS(enumerate(Coefficients::from({1.0}), id, 0.0, 4), std::domain_error);
}

TEST_CASE("exact enumeration matches the bitmask oracle") {
  std::mt19937_64 rng(60221023);
  std::uniform_int_distribution<int> q_dist(2, 7);
  for (int trial = 0; trial < 60; ++trial) {
    const auto k = testutil::random_rational_coefficients(rng, 4);
    const ExactCoefficients coeffs = ExactCoefficients::from(k);
    const Rational x(1, q_dist(rng));
    const std::size_t depth = 1 + (trial % 10);
    const ExactSubsumCloud cloud = exact_enumerate(coeffs, x, depth);
    CHECK(cloud.points == testutil::bitmask_subsums(exact_term_list(coeffs, x, depth)));
  }
}

TEST_CASE("float enumeration matches the bitmask oracle") {
  std::mt19937_64 rng(8086);
  std::uniform_real_distribution<double> x_dist(0.05, 0.6);
  for (int trial = 0; trial < 40; ++trial) {
    const Coefficients coeffs = Coefficients::from(testutil::random_coefficients(rng, 3));
    const double x = x_dist(rng);
    const std::size_t depth = 1 + (trial % 9);
    const FunctionSpec& spec = builtin(trial % 2 == 0 ? "identity" : "sin");
    const SubsumCloud cloud = enumerate(coeffs, spec, x, depth);
    std::vector<double> terms;
    for (std::size_t n = 1; n <= depth; ++n) terms.push_back(term(coeffs, spec, n, x));
    const std::vector<double> oracle = testutil::bitmask_subsums(terms);
    // Every oracle sum lies within the dedup tolerance of a cloud point.
    for (double v : oracle) {
      auto it = std::lower_bound(cloud.points.begin(), cloud.points.end(), v);
      double err = 1e300;
      if (it != cloud.points.end()) err = std::min(err, std::abs(*it - v));
      if (it != cloud.points.begin()) err = std::min(err, std::abs(*std::prev(it) - v));
      CHECK(err <= 2 * cloud.merge_tol + 1e-12);
    }
    CHECK(cloud.points.size() <= oracle.size());
  }
}

TEST_CASE("cloud invariants: extremes, symmetry, refinement") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<int> q_dist(2, 6);
  for (int trial = 0; trial < 50; ++trial) {
    const auto k = testutil::random_rational_coefficients(rng, 4);
    const ExactCoefficients coeffs = ExactCoefficients::from(k);
    const Rational x(1, q_dist(rng));
    const std::size_t depth = 1 + (trial % 8);
    const ExactSubsumCloud cloud = exact_enumerate(coeffs, x, depth);

    CHECK(cloud.points.size() <= (std::size_t(1) << depth));
    CHECK(cloud.points.front() == 0);
    const Rational max = exact_partial_sum(coeffs, depth, x);
    CHECK(cloud.points.back() == max);
    for (const Rational& p : cloud.points) {
      CHECK(std::binary_search(cloud.points.begin(), cloud.points.end(), Rational(max - p)));
    }

    const ExactSubsumCloud deeper = exact_enumerate(coeffs, x, depth + 1);
    for (const Rational& p : cloud.points) {
      CHECK(std::binary_search(deeper.points.begin(), deeper.points.end(), p));
    }
  }
}

TEST_CASE("exact tail radius is the exact series tail") {
  // Block-aligned: k=(3,2), x=1/4, N=2 has T = 5/12; the depth-1 truncation
  // rounds up through the rest of block one.
  const ExactCoefficients gn = exact_coeffs({3, 2});
  CHECK(exact_enumerate(gn, Rational(1, 4), 2).tail_radius == Rational(5, 12));
  CHECK(exact_enumerate(gn, Rational(1, 4), 1).tail_radius == Rational(2, 4) + Rational(5, 12));
  CHECK(exact_enumerate(gn, Rational(1, 4), 0).tail_radius == Rational(5, 3));
  const ExactSubsumCloud gn2 = exact_enumerate(gn, Rational(1, 4), 2);
  CHECK(gn2.points == std::vector<Rational>{Rational(0), Rational(1, 2), Rational(3, 4),
                                            Rational(5, 4)});
}

TEST_CASE("covers and gaps of the classic fixtures") {
  // Middle-third step 1: cover [0,1/3] and [2/3,1], gap (1/3, 2/3).
  const ExactSubsumCloud c3 = exact_enumerate(exact_coeffs({2}), Rational(1, 3), 1);
  const ExactIntervalCover cov = cover(c3);
  REQUIRE(cov.components.size() == 2);
  CHECK(cov.components[0] == std::make_pair(Rational(0), Rational(1, 3)));
  CHECK(cov.components[1] == std::make_pair(Rational(2, 3), Rational(1)));
  CHECK(cov.total_length == Rational(2, 3));
  const ExactGapReport gaps = gap_report(c3);
  REQUIRE(gaps.gaps.size() == 1);
  CHECK(gaps.gaps[0] == std::make_pair(Rational(1, 3), Rational(1, 3)));
  REQUIRE(gaps.largest.has_value());
  CHECK(gaps.largest->second == Rational(1, 3));

  // Dyadic points at x = 1/2 tile the unit interval exactly.
  const ExactSubsumCloud dyadic = exact_enumerate(exact_coeffs({1}), Rational(1, 2), 10);
  CHECK(dyadic.points.size() == 1024);
  const ExactIntervalCover dyadic_cover = cover(dyadic);
  REQUIRE(dyadic_cover.components.size() == 1);
  CHECK(dyadic_cover.components[0] == std::make_pair(Rational(0), Rational(1)));
  CHECK(gap_report(dyadic).gaps.empty());

  // Float rendition of the dyadic fixture.
  const SubsumCloud dyadic_float = enumerate(Coefficients::from({1.0}), builtin("identity"), 0.5, 4);
  const IntervalCover fc = cover(dyadic_float);
  REQUIRE(fc.components.size() == 1);
  CHECK(fc.components[0].first == 0.0);
  CHECK(fc.components[0].second == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("interval region clouds have no gaps, small-x clouds do") {
  const FunctionSpec& id = builtin("identity");
  for (std::size_t depth : {4u, 8u, 12u}) {
    CHECK(gap_report(enumerate(Coefficients::from({1.0}), id, 0.6, depth)).gaps.empty());
  }
  const GapReport gaps = gap_report(enumerate(Coefficients::from({3, 2}), id, 0.2, 12));
  CHECK_FALSE(gaps.gaps.empty());
}

TEST_CASE("frozen regression: Guthrie-Nymann cover at depth 8") {
  const ExactSubsumCloud cloud = exact_enumerate(exact_coeffs({3, 2}), Rational(1, 4), 8);
  const ExactIntervalCover cov = cover(cloud);
  CHECK(cloud.points.size() == 256);
  CHECK(cov.components.size() == 81);
  CHECK(cov.total_length == Rational(155, 128));
  const ExactGapReport gaps = gap_report(cloud);
  CHECK(gaps.gaps.size() == 80);
  REQUIRE(gaps.largest.has_value());
  CHECK(gaps.largest->first == Rational(5, 12));
  CHECK(gaps.largest->second == Rational(1, 12));
}

TEST_CASE("minkowski sum identities") {
  const ExactCoefficients gn = exact_coeffs({3, 2});
  const Rational x(1, 4);

  // {0} is the identity element.
  const ExactSubsumCloud cloud = exact_enumerate(gn, x, 6);
  const ExactSubsumCloud zero = exact_enumerate(gn, x, 0);
  const ExactSubsumCloud same = minkowski_sum(zero, cloud);
  CHECK(same.points == cloud.points);
  CHECK(same.tail_radius == zero.tail_radius + cloud.tail_radius);

  // Partition identity at six full blocks: E(3,2) = E(3) + E(2).
  const std::size_t blocks = 6;
  const ExactSubsumCloud full = exact_enumerate(gn, x, 2 * blocks);
  const ExactSubsumCloud left = exact_enumerate(exact_coeffs({3}), x, blocks);
  const ExactSubsumCloud right = exact_enumerate(exact_coeffs({2}), x, blocks);
  const ExactSubsumCloud sum = minkowski_sum(left, right);
  CHECK(sum.points == full.points);
  CHECK(sum.tail_radius == full.tail_radius);

  // The sum of symmetric sets is symmetric about the summed midpoints.
  const Rational max = sum.points.back();
  for (const Rational& p : sum.points)
    CHECK(std::binary_search(sum.points.begin(), sum.points.end(), Rational(max - p)));

  ExactSubsumCloud other = cloud;
  other.x = Rational(1, 3);
  CHECK_THROWS_AS(minkowski_sum(cloud, other), std::invalid_argument);
}

TEST_CASE("float minkowski sum matches pairwise sums") {
  const FunctionSpec& id = builtin("identity");
  const SubsumCloud a = enumerate(Coefficients::from({3.0}), id, 0.25, 5);
  const SubsumCloud b = enumerate(Coefficients::from({2.0}), id, 0.25, 5);
  const SubsumCloud sum = minkowski_sum(a, b);
  const SubsumCloud full = enumerate(Coefficients::from({3, 2}), id, 0.25, 10);
  REQUIRE(sum.points.size() == full.points.size());
  for (std::size_t i = 0; i < sum.points.size(); ++i)
    CHECK(sum.points[i] == doctest::Approx(full.points[i]).epsilon(1e-12));
  CHECK(sum.tail_radius == doctest::Approx(a.tail_radius + b.tail_radius));
}

TEST_CASE("exact and float enumerations of rational inputs agree") {
  const ExactCoefficients gn_exact = exact_coeffs({3, 2});
  const Coefficients gn_float = Coefficients::from({3, 2});
  const FunctionSpec& id = builtin("identity");
  for (std::size_t depth : {4u, 8u, 12u}) {
    const ExactSubsumCloud exact = exact_enumerate(gn_exact, Rational(1, 4), depth);
    const SubsumCloud approx = enumerate(gn_float, id, 0.25, depth);
    REQUIRE(approx.points.size() == exact.points.size());
    for (std::size_t i = 0; i < exact.points.size(); ++i)
      CHECK(approx.points[i] ==
            doctest::Approx(to_double(exact.points[i])).epsilon(1e-12));

    // Every certified exact gap longer than 4 tolerances shows up in float mode.
    const ExactGapReport exact_gaps = gap_report(exact);
    const GapReport float_gaps = gap_report(approx);
    std::size_t found = 0;
    for (const auto& [start, len] : exact_gaps.gaps) {
      if (to_double(len) <= 4 * approx.merge_tol) continue;
      bool hit = false;
      for (const auto& [fstart, flen] : float_gaps.gaps)
        hit = hit || std::abs(fstart - to_double(start)) < 1e-9;
      CHECK(hit);
      ++found;
    }
    CHECK(found == exact_gaps.gaps.size());
  }
}

TEST_CASE("enumeration is deterministic") {
  const FunctionSpec& spec = builtin("sin");
  const Coefficients c = Coefficients::from({2.5, 2.5, 1.0});
  const SubsumCloud first = enumerate(c, spec, 0.31, 9);
  const SubsumCloud second = enumerate(c, spec, 0.31, 9);
  CHECK(first.points == second.points);
  CHECK(first.tail_radius == second.tail_radius);
}

TEST_CASE("trichotomy evidence trends") {
  const FunctionSpec& id = builtin("identity");

  const EvidenceReport interval =
      trichotomy_evidence(Coefficients::from({1.0}), id, 0.6, {4, 8, 12, 16});
  CHECK(interval.trend == "interval-like");
  for (const EvidenceRow& row : interval.rows) CHECK(row.components == 1);

  const EvidenceReport cantor =
      trichotomy_evidence(Coefficients::from({2.0}), id, 1.0 / 3.0, {2, 4, 6, 8, 10, 12});
  CHECK(cantor.trend == "cantor-like");
  // Cover length follows the construction measure (2/3)^N; the reference sum
  // for this series is 1.
  for (const EvidenceRow& row : cantor.rows)
    CHECK(row.total_length ==
          doctest::Approx(std::pow(2.0 / 3.0, static_cast<double>(row.depth))).epsilon(1e-6));

  const EvidenceReport cantorval =
      trichotomy_evidence(Coefficients::from({4, 3, 2, 2}), id, 0.13, {4, 8, 12, 16, 20});
  CHECK(cantorval.trend == "cantorval-like");
  CHECK(cantorval.rows.back().components > cantorval.rows.front().components);

  CHECK_THROWS_AS(trichotomy_evidence(Coefficients::from({1.0}), id, 0.5, {4, 4}),
                  std::invalid_argument);
  CHECK_THROWS_AS(trichotomy_evidence(Coefficients::from({1.0}), id, 0.5, {}),
                  std::invalid_argument);
}
