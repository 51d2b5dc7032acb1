#include "achset/export.hpp"

#include <ostream>

namespace achset {

namespace {

using nlohmann::json;

json ap_json(const APResult& ap) {
  return {{"mu", ap.mu}, {"lambda", ap.lambda}, {"s", ap.s}, {"mu_is_zero", ap.mu_is_zero}};
}

json ap_json(const ExactAPResult& ap) {
  return {{"mu", rational_string(ap.mu)},
          {"lambda", rational_string(ap.lambda)},
          {"s", ap.s},
          {"mu_is_zero", ap.mu_is_zero}};
}

template <class S>
json thresholds_json_impl(const ThresholdSetT<S>& th, bool exact) {
  auto radicand = [exact](const S& v) -> json {
    if (exact) {
      if constexpr (std::is_same_v<S, Rational>) return rational_string(v);
    }
    return to_double(v);
  };
  json j{{"d_I", th.d_i}, {"d_IM", th.d_im}, {"d_NI", th.d_ni}, {"d_C", th.d_c}};
  j["d_CI"] = th.d_ci ? json(*th.d_ci) : json(nullptr);
  j["radicands"] = {{"d_I", radicand(th.d_i_radicand)},
                    {"d_IM", radicand(th.d_im_radicand)},
                    {"d_NI", radicand(th.d_ni_radicand)},
                    {"d_C", radicand(th.d_c_radicand)},
                    {"d_CI", th.d_ci_radicand ? radicand(*th.d_ci_radicand) : json(nullptr)}};
  j["ap"] = th.ap ? ap_json(*th.ap) : json(nullptr);
  if (auto window = th.cantorval_window()) {
    j["cantorval_window"] = {{"lower", window->first}, {"upper", window->second}};
  } else {
    j["cantorval_window"] = nullptr;
  }
  return j;
}

template <class Cloud, class PointOut>
json cloud_json_impl(const Cloud& cloud, const std::string& mode, PointOut&& point_out) {
  const auto cov = cover(cloud);
  const auto gaps = gap_report(cloud);
  json j;
  j["mode"] = mode;
  j["x"] = point_out(cloud.x);
  j["depth"] = cloud.depth;
  j["tail_radius"] = point_out(cloud.tail_radius);
  j["point_count"] = cloud.points.size();
  json points = json::array();
  for (const auto& p : cloud.points) points.push_back(point_out(p));
  j["points"] = std::move(points);
  json components = json::array();
  for (const auto& [lo, hi] : cov.components)
    components.push_back({point_out(lo), point_out(hi)});
  j["cover"] = {{"components", std::move(components)},
                {"count", cov.components.size()},
                {"total_length", point_out(cov.total_length)}};
  json gap_list = json::array();
  for (const auto& [start, length] : gaps.gaps) gap_list.push_back({point_out(start), point_out(length)});
  j["gaps"] = {{"list", std::move(gap_list)},
               {"largest", gaps.largest
                               ? json({point_out(gaps.largest->first), point_out(gaps.largest->second)})
                               : json(nullptr)}};
  return j;
}

}  // namespace

json to_json(const PowerEnvelope& env) {
  return {{"a", env.a}, {"b", env.b}, {"r", env.r}, {"epsilon", env.epsilon}};
}

json to_json(const EnvelopeReport& report) {
  return {{"pass", report.pass},
          {"slack", report.slack},
          {"grid_points", report.grid_points},
          {"worst_lower_margin", report.worst_lower_margin},
          {"worst_lower_x", report.worst_lower_x},
          {"worst_upper_margin", report.worst_upper_margin},
          {"worst_upper_x", report.worst_upper_x},
          {"worst_step", report.worst_step},
          {"worst_step_x", report.worst_step_x}};
}

json to_json(const ThresholdSet& th) { return thresholds_json_impl(th, false); }
json to_json(const ExactThresholdSet& th) { return thresholds_json_impl(th, true); }

json to_json(const RegionVerdict& verdict) {
  json just = json::array();
  for (const Justification& j : verdict.justifications)
    just.push_back({{"criterion", j.criterion}, {"comparison", j.comparison}});
  return {{"label", to_string(verdict.label)}, {"justifications", std::move(just)}};
}

json to_json(const ResidueCertificate& cert) {
  json per_j = json::array();
  for (std::size_t j = 0; j < cert.per_j.size(); ++j)
    per_j.push_back({{"j", j + 1}, {"verdict", to_string(cert.per_j[j])}});
  return {{"per_j", std::move(per_j)},
          {"all_le", cert.all_le()},
          {"all_gt", cert.all_gt()},
          {"any_gt", cert.any_gt()}};
}

json to_json(const KhmScanSummary& summary) {
  json terms = json::array();
  for (const TermComparison& t : summary.terms) {
    terms.push_back({{"n", t.n},
                     {"w_n", t.w_n},
                     {"tail_lower", t.tail.lower},
                     {"tail_upper", t.tail.upper},
                     {"verdict", to_string(t.verdict)}});
  }
  return {{"x", summary.x},
          {"n_max", summary.n_max},
          {"residue", to_json(summary.residue)},
          {"le_count", summary.le_count},
          {"gt_count", summary.gt_count},
          {"undecided_count", summary.undecided_count},
          {"first_gt", summary.first_gt ? json(*summary.first_gt) : json(nullptr)},
          {"pattern", summary.pattern},
          {"certified", summary.certified},
          {"terms", std::move(terms)}};
}

json to_json(const EvidenceReport& report) {
  json rows = json::array();
  for (const EvidenceRow& r : report.rows) {
    rows.push_back({{"depth", r.depth},
                    {"components", r.components},
                    {"total_length", r.total_length},
                    {"largest_gap", r.largest_gap}});
  }
  return {{"heuristic", true},
          {"trend", report.trend},
          {"reference_sum", report.reference_sum},
          {"rows", std::move(rows)}};
}

json cloud_json(const SubsumCloud& cloud) {
  json j = cloud_json_impl(cloud, "float", [](double v) { return json(v); });
  j["merge_tol"] = cloud.merge_tol;
  return j;
}

json cloud_json(const ExactSubsumCloud& cloud) {
  return cloud_json_impl(cloud, "exact",
                         [](const Rational& v) { return json(rational_string(v)); });
}

void write_points_csv(std::ostream& os, const SubsumCloud& cloud) {
  os << "point\n";
  for (double p : cloud.points) os << double_string(p) << '\n';
}

void write_points_csv(std::ostream& os, const ExactSubsumCloud& cloud) {
  os << "point\n";
  for (const Rational& p : cloud.points) os << rational_string(p) << '\n';
}

}  // namespace achset
