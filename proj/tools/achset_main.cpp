// Command-line front-end: thresholds, classify, sweep, enumerate, kakeya,
// ap-search and minkowski-check over generalized multigeometric series.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "achset/export.hpp"
#include "achset/kakeya.hpp"
#include "achset/subsum_engine.hpp"
#include "achset/thresholds.hpp"
#include "achset/version.hpp"

namespace {

using achset::Rational;
using nlohmann::json;

constexpr const char* kDepthCapEnv = "ACHSET_DEPTH_CAP";

struct CommonOptions {
  std::string function;
  std::string envelope;
  std::string coeffs;
  std::string mode = "float";
  std::string format;
  std::string out;
  bool allow_mu_zero = true;
};

struct ScalarOptions {
  std::string x;
  std::size_t depth = 12;
  std::size_t n_max = 64;
  double x_min = 0.01;
  double x_max = 0.99;
  std::size_t steps = 50;
  std::size_t blocks = 6;
  double merge_tol = -1.0;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  return parts;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = std::stod(text, &used);
  if (used != text.size()) throw std::invalid_argument("malformed number: '" + text + "'");
  return v;
}

std::map<std::string, std::string> parse_key_values(const std::string& text) {
  std::map<std::string, std::string> kv;
  for (const std::string& part : split(text, ',')) {
    auto eq = part.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("expected key=value in envelope spec, got '" + part + "'");
    kv[part.substr(0, eq)] = part.substr(eq + 1);
  }
  return kv;
}

bool is_exact(const CommonOptions& common) {
  if (common.mode == "exact") return true;
  if (common.mode == "float") return false;
  throw std::invalid_argument("mode must be 'float' or 'exact', got '" + common.mode + "'");
}

std::size_t depth_cap(std::size_t fallback) {
  if (const char* env = std::getenv(kDepthCapEnv)) {
    const long v = std::strtol(env, nullptr, 10);
    if (v <= 0) throw std::invalid_argument(std::string(kDepthCapEnv) + " must be positive");
    return static_cast<std::size_t>(v);
  }
  return fallback;
}

// Inputs resolved from --function/--envelope/--coeffs for both modes.
struct ResolvedInputs {
  achset::FunctionSpec spec;  // float evaluator + envelope
  achset::Coefficients coeffs = achset::Coefficients::from({1.0});
  std::optional<achset::ExactCoefficients> exact_coeffs;
  std::optional<achset::ExactPowerEnvelope> exact_envelope;
  json config_function;
  json config_envelope;
  json config_coeffs;
};

ResolvedInputs resolve_inputs(const CommonOptions& common, bool need_function) {
  if (common.coeffs.empty()) throw std::invalid_argument("--coeffs is required");
  const bool has_function = !common.function.empty();
  const bool has_envelope = !common.envelope.empty();
  if (need_function && has_function == has_envelope)
    throw std::invalid_argument("supply exactly one of --function or --envelope");
  const bool exact = is_exact(common);

  ResolvedInputs in;
  if (has_envelope) {
    auto kv = parse_key_values(common.envelope);
    auto take = [&](const char* key, const char* alt) -> std::string {
      auto it = kv.find(key);
      if (it == kv.end() && alt) it = kv.find(alt);
      if (it == kv.end())
        throw std::invalid_argument(std::string("envelope spec is missing '") + key + "'");
      return it->second;
    };
    const std::string a = take("a", nullptr), b = take("b", nullptr), r = take("r", nullptr),
                      eps = take("eps", "epsilon");
    in.spec = achset::envelope_only_spec(achset::PowerEnvelope::checked(
        parse_double(a), parse_double(b), parse_double(r), parse_double(eps)));
    if (exact)
      in.exact_envelope = achset::ExactPowerEnvelope::checked(
          achset::parse_rational(a), achset::parse_rational(b), achset::parse_rational(r),
          achset::parse_rational(eps));
    in.config_function = nullptr;
    in.config_envelope = achset::to_json(in.spec.envelope);
  } else {
    const std::string name = has_function ? common.function : "identity";
    in.spec = achset::builtin(name);
    if (exact) {
      if (in.spec.name != "identity")
        throw std::invalid_argument("exact mode supports --function identity only");
      in.exact_envelope = achset::exact_identity_envelope();
    }
    in.config_function = in.spec.name;
    in.config_envelope = achset::to_json(in.spec.envelope);
  }

  std::vector<double> kf;
  std::vector<Rational> kq;
  json coeff_list = json::array();
  for (const std::string& item : split(common.coeffs, ',')) {
    if (exact) {
      kq.push_back(achset::parse_rational(item));
      coeff_list.push_back(achset::rational_string(kq.back()));
      kf.push_back(achset::to_double(kq.back()));
    } else {
      kf.push_back(parse_double(item));
      coeff_list.push_back(kf.back());
    }
  }
  in.coeffs = achset::Coefficients::from(std::move(kf));
  if (exact) in.exact_coeffs = achset::ExactCoefficients::from(std::move(kq));
  in.config_coeffs = std::move(coeff_list);
  return in;
}

json base_config(const char* command, const CommonOptions& common, const ResolvedInputs& in) {
  return {{"command", command},
          {"function", in.config_function},
          {"envelope", in.config_envelope},
          {"coefficients", in.config_coeffs},
          {"mode", is_exact(common) ? "exact" : "float"},
          {"allow_mu_zero", common.allow_mu_zero},
          {"format", common.format},
          {"out", common.out.empty() ? json(nullptr) : json(common.out)}};
}

json document(const char* schema, json config, json result) {
  return {{"schema", schema},
          {"tool", {{"name", "achset"}, {"version", std::string(achset::kVersion)}}},
          {"config", std::move(config)},
          {"result", std::move(result)}};
}

void emit(const CommonOptions& common, const std::string& text) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream os(common.out, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file '" + common.out + "'");
  os << text;
}

void emit_json(const CommonOptions& common, const json& doc) {
  if (!common.format.empty() && common.format != "json")
    throw std::invalid_argument("this command emits JSON only");
  emit(common, doc.dump(2) + "\n");
}

Rational parse_x_exact(const std::string& text) {
  const Rational x = achset::parse_rational(text);
  if (!(x > 0) || !(x < 1)) throw std::invalid_argument("x must satisfy 0 < x < 1");
  return x;
}

double parse_x_float(const std::string& text) {
  const double x = parse_double(text);
  if (!(x > 0.0) || !(x < 1.0)) throw std::invalid_argument("x must satisfy 0 < x < 1");
  return x;
}

// ---- commands ----

int cmd_thresholds(const CommonOptions& common) {
  ResolvedInputs in = resolve_inputs(common, true);
  json result;
  if (is_exact(common)) {
    result = achset::to_json(
        achset::compute_thresholds(*in.exact_coeffs, *in.exact_envelope, common.allow_mu_zero));
  } else {
    result = achset::to_json(
        achset::compute_thresholds(in.coeffs, in.spec.envelope, common.allow_mu_zero));
  }
  emit_json(common, document("achset.thresholds/1", base_config("thresholds", common, in),
                             std::move(result)));
  return 0;
}

int cmd_classify(const CommonOptions& common, const ScalarOptions& scalar) {
  ResolvedInputs in = resolve_inputs(common, true);
  json config = base_config("classify", common, in);
  json result;
  if (is_exact(common)) {
    const Rational x = parse_x_exact(scalar.x);
    if (x > in.exact_envelope->epsilon)
      throw std::invalid_argument("x exceeds the envelope epsilon");
    config["x"] = achset::rational_string(x);
    result["x"] = achset::rational_string(x);
    result["verdict"] =
        achset::to_json(achset::classify(*in.exact_coeffs, *in.exact_envelope, x, common.allow_mu_zero));
    result["thresholds"] = achset::to_json(
        achset::compute_thresholds(*in.exact_coeffs, *in.exact_envelope, common.allow_mu_zero));
  } else {
    const double x = parse_x_float(scalar.x);
    if (x > in.spec.envelope.epsilon) throw std::invalid_argument("x exceeds the envelope epsilon");
    config["x"] = x;
    result["x"] = x;
    result["verdict"] =
        achset::to_json(achset::classify(in.coeffs, in.spec.envelope, x, common.allow_mu_zero));
    result["thresholds"] = achset::to_json(
        achset::compute_thresholds(in.coeffs, in.spec.envelope, common.allow_mu_zero));
  }
  emit_json(common, document("achset.classify/1", std::move(config), std::move(result)));
  return 0;
}

int cmd_sweep(const CommonOptions& common, const ScalarOptions& scalar) {
  if (is_exact(common)) throw std::invalid_argument("sweep runs in float mode only");
  ResolvedInputs in = resolve_inputs(common, true);
  if (!(scalar.x_min > 0.0) || !(scalar.x_max < 1.0) || !(scalar.x_min <= scalar.x_max))
    throw std::invalid_argument("sweep range must satisfy 0 < x-min <= x-max < 1");
  if (scalar.steps < 2) throw std::invalid_argument("sweep needs at least 2 steps");

  const achset::ThresholdSet th =
      achset::compute_thresholds(in.coeffs, in.spec.envelope, common.allow_mu_zero);

  // Grid rows plus one explicit row per threshold crossing inside the range.
  std::map<double, std::string> rows;
  for (std::size_t i = 0; i < scalar.steps; ++i) {
    const double x = scalar.x_min + (scalar.x_max - scalar.x_min) * static_cast<double>(i) /
                                        static_cast<double>(scalar.steps - 1);
    rows.emplace(x, "");
  }
  auto mark = [&](std::optional<double> value, const char* name) {
    if (!value || *value < scalar.x_min || *value > scalar.x_max) return;
    std::string& tag = rows[*value];
    if (!tag.empty()) tag += '|';
    tag += name;
  };
  mark(th.d_i, "d_I");
  mark(th.d_im, "d_IM");
  mark(th.d_ni, "d_NI");
  mark(th.d_ci, "d_CI");
  mark(th.d_c > 0.0 ? std::optional<double>(th.d_c) : std::nullopt, "d_C");

  auto fmt = achset::double_string;
  auto ci_text = [&]() { return th.d_ci ? fmt(*th.d_ci) : std::string(); };
  const std::string format = common.format.empty() ? "csv" : common.format;
  if (format == "csv") {
    std::ostringstream os;
    os << "# achset " << achset::kVersion << "\n";
    os << "x,label,at_threshold,d_I,d_IM,d_NI,d_CI,d_C\n";
    for (const auto& [x, tag] : rows) {
      const achset::RegionVerdict verdict =
          achset::classify(in.coeffs, in.spec.envelope, x, common.allow_mu_zero);
      os << fmt(x) << ',' << achset::to_string(verdict.label) << ',' << tag << ',' << fmt(th.d_i)
         << ',' << fmt(th.d_im) << ',' << fmt(th.d_ni) << ',' << ci_text() << ',' << fmt(th.d_c)
         << "\n";
    }
    emit(common, os.str());
  } else if (format == "json") {
    json out_rows = json::array();
    for (const auto& [x, tag] : rows) {
      const achset::RegionVerdict verdict =
          achset::classify(in.coeffs, in.spec.envelope, x, common.allow_mu_zero);
      out_rows.push_back(
          {{"x", x}, {"label", achset::to_string(verdict.label)}, {"at_threshold", tag}});
    }
    json config = base_config("sweep", common, in);
    config["x_min"] = scalar.x_min;
    config["x_max"] = scalar.x_max;
    config["steps"] = scalar.steps;
    emit_json(common, document("achset.sweep/1", std::move(config),
                               {{"thresholds", achset::to_json(th)}, {"rows", std::move(out_rows)}}));
  } else {
    throw std::invalid_argument("format must be 'csv' or 'json'");
  }
  return 0;
}

int cmd_enumerate(const CommonOptions& common, const ScalarOptions& scalar) {
  ResolvedInputs in = resolve_inputs(common, true);
  json config = base_config("enumerate", common, in);
  config["depth"] = scalar.depth;

  std::string csv;
  json result;
  if (is_exact(common)) {
    const std::size_t cap = depth_cap(achset::kExactDepthCap);
    config["depth_cap"] = cap;
    const Rational x = parse_x_exact(scalar.x);
    config["x"] = achset::rational_string(x);
    const achset::ExactSubsumCloud cloud =
        achset::exact_enumerate(*in.exact_coeffs, x, scalar.depth, cap);
    result = achset::cloud_json(cloud);
    std::ostringstream os;
    achset::write_points_csv(os, cloud);
    csv = os.str();
  } else {
    const std::size_t cap = depth_cap(achset::kFloatDepthCap);
    config["depth_cap"] = cap;
    config["merge_tol"] = scalar.merge_tol < 0 ? json("auto") : json(scalar.merge_tol);
    const double x = parse_x_float(scalar.x);
    config["x"] = x;
    const achset::SubsumCloud cloud =
        achset::enumerate(in.coeffs, in.spec, x, scalar.depth, scalar.merge_tol, cap);
    result = achset::cloud_json(cloud);
    std::ostringstream os;
    achset::write_points_csv(os, cloud);
    csv = os.str();
  }

  const std::string format = common.format.empty() ? "json" : common.format;
  if (format == "csv") {
    emit(common, "# achset " + std::string(achset::kVersion) + "\n" + csv);
  } else if (format == "json") {
    emit_json(common, document("achset.enumerate/1", std::move(config), std::move(result)));
  } else {
    throw std::invalid_argument("format must be 'csv' or 'json'");
  }
  return 0;
}

int cmd_kakeya(const CommonOptions& common, const ScalarOptions& scalar) {
  if (is_exact(common)) throw std::invalid_argument("kakeya scan runs in float mode only");
  ResolvedInputs in = resolve_inputs(common, true);
  if (in.spec.envelope_only())
    throw std::invalid_argument("kakeya scan needs an evaluatable --function");
  const double x = parse_x_float(scalar.x);
  if (x > in.spec.envelope.epsilon) throw std::invalid_argument("x exceeds the envelope epsilon");
  json config = base_config("kakeya", common, in);
  config["x"] = x;
  config["n_max"] = scalar.n_max;
  const achset::KhmScanSummary summary = achset::khm_scan(in.coeffs, in.spec, x, scalar.n_max);
  emit_json(common, document("achset.kakeya/1", std::move(config), achset::to_json(summary)));
  return 0;
}

int cmd_ap_search(const CommonOptions& common) {
  CommonOptions opts = common;
  if (opts.function.empty() && opts.envelope.empty()) opts.function = "identity";
  ResolvedInputs in = resolve_inputs(opts, false);
  json config = base_config("ap-search", common, in);
  json result;
  if (is_exact(common)) {
    const auto alphabet = achset::subsum_alphabet(*in.exact_coeffs);
    const auto ap = achset::ap_search(alphabet, common.allow_mu_zero);
    json values = json::array();
    for (const Rational& v : alphabet.values) values.push_back(achset::rational_string(v));
    result = {{"alphabet", std::move(values)},
              {"alphabet_size", alphabet.values.size()},
              {"mu", achset::rational_string(ap.mu)},
              {"lambda", achset::rational_string(ap.lambda)},
              {"s", ap.s},
              {"mu_is_zero", ap.mu_is_zero}};
  } else {
    const auto alphabet = achset::subsum_alphabet(in.coeffs);
    const auto ap = achset::ap_search(alphabet, common.allow_mu_zero);
    result = {{"alphabet", alphabet.values},
              {"alphabet_size", alphabet.values.size()},
              {"mu", ap.mu},
              {"lambda", ap.lambda},
              {"s", ap.s},
              {"mu_is_zero", ap.mu_is_zero}};
  }
  emit_json(common, document("achset.ap_search/1", std::move(config), std::move(result)));
  return 0;
}

int cmd_minkowski_check(const CommonOptions& common, const ScalarOptions& scalar) {
  CommonOptions opts = common;
  opts.mode = "exact";
  if (opts.function.empty() && opts.envelope.empty()) opts.function = "identity";
  ResolvedInputs in = resolve_inputs(opts, false);
  if (!in.exact_coeffs) throw std::invalid_argument("minkowski-check requires rational inputs");
  const Rational x = parse_x_exact(scalar.x);
  const std::size_t m = in.exact_coeffs->size();
  if (m < 2) throw std::invalid_argument("minkowski-check needs at least two coefficients");
  const std::size_t depth = scalar.blocks * m;
  // The explicit --blocks request widens the depth cap; the point budget
  // still bounds memory.
  const std::size_t cap = std::max(depth_cap(achset::kExactDepthCap), depth);

  json config = base_config("minkowski-check", common, in);
  config["x"] = achset::rational_string(x);
  config["blocks"] = scalar.blocks;
  config["depth"] = depth;

  const achset::ExactSubsumCloud full =
      achset::exact_enumerate(*in.exact_coeffs, x, depth, cap);

  bool all_equal = true;
  json partitions = json::array();
  const std::vector<Rational>& k = in.exact_coeffs->values();
  for (std::size_t mask = 1; mask + 1 < (std::size_t(1) << m); ++mask) {
    if ((mask & 1) == 0) continue;  // canonical side: part containing k_1
    std::vector<Rational> left, right;
    for (std::size_t i = 0; i < m; ++i) ((mask >> i) & 1 ? left : right).push_back(k[i]);
    const auto left_cloud = achset::exact_enumerate(achset::ExactCoefficients::from(left), x,
                                                    scalar.blocks * left.size(), cap);
    const auto right_cloud = achset::exact_enumerate(achset::ExactCoefficients::from(right), x,
                                                     scalar.blocks * right.size(), cap);
    const auto sum = achset::minkowski_sum(left_cloud, right_cloud);
    const bool equal = sum.points == full.points;
    all_equal = all_equal && equal;
    json left_json = json::array(), right_json = json::array();
    for (const Rational& v : left) left_json.push_back(achset::rational_string(v));
    for (const Rational& v : right) right_json.push_back(achset::rational_string(v));
    partitions.push_back({{"left", std::move(left_json)},
                          {"right", std::move(right_json)},
                          {"left_size", left_cloud.points.size()},
                          {"right_size", right_cloud.points.size()},
                          {"sum_size", sum.points.size()},
                          {"equal", equal}});
  }

  emit_json(common, document("achset.minkowski_check/1", std::move(config),
                             {{"full_size", full.points.size()},
                              {"partitions", std::move(partitions)},
                              {"all_equal", all_equal}}));
  // An unequal partition contradicts the partition identity: internal error.
  return all_equal ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOptions& common, bool with_format) {
  cmd->add_option("--function", common.function, "built-in function name");
  cmd->add_option("--envelope", common.envelope, "envelope constants a=..,b=..,r=..,eps=..");
  cmd->add_option("--coeffs", common.coeffs, "comma-separated coefficients, non-increasing")
      ->required();
  cmd->add_option("--mode", common.mode, "float or exact");
  cmd->add_flag("--allow-mu-zero,!--no-allow-mu-zero", common.allow_mu_zero,
                "admit progressions starting at 0 (default on)");
  if (with_format) cmd->add_option("--format", common.format, "json or csv");
  cmd->add_option("--out", common.out, "output file (default stdout)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"achievement-set classifier for generalized multigeometric series"};
  app.set_version_flag("--version", std::string(achset::kVersion));
  app.require_subcommand(1);

  CommonOptions common;
  ScalarOptions scalar;

  CLI::App* thresholds = app.add_subcommand("thresholds", "classification thresholds");
  add_common(thresholds, common, true);

  CLI::App* classify = app.add_subcommand("classify", "region verdict at one x");
  add_common(classify, common, true);
  classify->add_option("--x", scalar.x, "series argument in (0, 1)")->required();

  CLI::App* sweep = app.add_subcommand("sweep", "verdict sweep over an x range");
  add_common(sweep, common, true);
  sweep->add_option("--x-min", scalar.x_min, "sweep start (inclusive)");
  sweep->add_option("--x-max", scalar.x_max, "sweep end (inclusive)");
  sweep->add_option("--steps", scalar.steps, "number of grid points");

  CLI::App* enumerate = app.add_subcommand("enumerate", "finite-depth subsum cloud");
  add_common(enumerate, common, true);
  enumerate->add_option("--x", scalar.x, "series argument in (0, 1)")->required();
  enumerate->add_option("--depth", scalar.depth, "number of terms");
  enumerate->add_option("--merge-tol", scalar.merge_tol, "float dedup tolerance (default auto)");

  CLI::App* kakeya = app.add_subcommand("kakeya", "term-vs-tail scan summary");
  add_common(kakeya, common, true);
  kakeya->add_option("--x", scalar.x, "series argument in (0, 1)")->required();
  kakeya->add_option("--n-max", scalar.n_max, "terms to scan");

  CLI::App* ap = app.add_subcommand("ap-search", "longest progression in the subsum alphabet");
  add_common(ap, common, true);

  CLI::App* minkowski = app.add_subcommand("minkowski-check", "partition identity check");
  add_common(minkowski, common, true);
  minkowski->add_option("--x", scalar.x, "rational series argument in (0, 1)")->required();
  minkowski->add_option("--blocks", scalar.blocks, "block-aligned depth in blocks");

  try {
    app.parse(argc, argv);
    if (thresholds->parsed()) return cmd_thresholds(common);
    if (classify->parsed()) return cmd_classify(common, scalar);
    if (sweep->parsed()) return cmd_sweep(common, scalar);
    if (enumerate->parsed()) return cmd_enumerate(common, scalar);
    if (kakeya->parsed()) return cmd_kakeya(common, scalar);
    if (ap->parsed()) return cmd_ap_search(common);
    if (minkowski->parsed()) return cmd_minkowski_check(common, scalar);
    return 2;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
