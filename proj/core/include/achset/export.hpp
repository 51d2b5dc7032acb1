#pragma once

#include <json.hpp>

#include <iosfwd>

#include "achset/function_model.hpp"
#include "achset/kakeya.hpp"
#include "achset/subsum_engine.hpp"
#include "achset/thresholds.hpp"

namespace achset {

// JSON builders for the library value types. Exact rationals are serialized
// as "numerator/denominator" strings, doubles as plain numbers.

nlohmann::json to_json(const PowerEnvelope& env);
nlohmann::json to_json(const EnvelopeReport& report);
nlohmann::json to_json(const ThresholdSet& th);
nlohmann::json to_json(const ExactThresholdSet& th);
nlohmann::json to_json(const RegionVerdict& verdict);
nlohmann::json to_json(const ResidueCertificate& cert);
nlohmann::json to_json(const KhmScanSummary& summary);
nlohmann::json to_json(const EvidenceReport& report);

// Cloud export: metadata + points + cover + gaps.
nlohmann::json cloud_json(const SubsumCloud& cloud);
nlohmann::json cloud_json(const ExactSubsumCloud& cloud);

// Cloud export: one point per row under a "point" header.
void write_points_csv(std::ostream& os, const SubsumCloud& cloud);
void write_points_csv(std::ostream& os, const ExactSubsumCloud& cloud);

}  // namespace achset
