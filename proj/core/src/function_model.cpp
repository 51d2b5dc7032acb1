#include "achset/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace achset {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<FunctionSpec> make_registry() {
  std::vector<FunctionSpec> specs;
  specs.push_back({"identity", [](double x) { return x; },
                   PowerEnvelope::checked(1.0, 1.0, 1.0, 1.0)});
  // Jordan inequality 2x/pi <= sin x <= x on [0, pi/2]; epsilon caps to 1.
  specs.push_back({"sin", [](double x) { return std::sin(x); },
                   PowerEnvelope::checked(2.0 / kPi, 1.0, 1.0, kPi / 2.0)});
  specs.push_back({"tan", [](double x) { return std::tan(x); },
                   PowerEnvelope::checked(1.0, 1.0 / (std::cos(1.0) * std::cos(1.0)), 1.0, 1.0)});
  specs.push_back({"xln1p", [](double x) { return x * std::log1p(x); },
                   PowerEnvelope::checked(3.0 / 8.0, 1.0, 2.0, 1.0)});
  specs.push_back({"expm1m", [](double x) { return std::expm1(x) - x; },
                   PowerEnvelope::checked(0.5, std::exp(1.0) / 2.0, 2.0, 1.0)});
  return specs;
}

const std::vector<FunctionSpec>& registry() {
  static const std::vector<FunctionSpec> specs = make_registry();
  return specs;
}

}  // namespace

const FunctionSpec& builtin(std::string_view name) {
  for (const FunctionSpec& spec : registry()) {
    if (spec.name == name) return spec;
  }
  throw std::invalid_argument("unknown built-in function: '" + std::string(name) + "'");
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const FunctionSpec& spec : registry()) out.push_back(spec.name);
    return out;
  }();
  return names;
}

FunctionSpec envelope_only_spec(PowerEnvelope envelope) {
  return FunctionSpec{"envelope-only", nullptr, envelope};
}

double evaluate(const FunctionSpec& spec, double x) {
  if (spec.envelope_only())
    throw std::domain_error("function '" + spec.name + "' has no evaluator (envelope-only)");
  if (!(x >= 0.0) || x > spec.envelope.epsilon)
    throw std::domain_error("evaluate: x = " + double_string(x) + " outside [0, " +
                            double_string(spec.envelope.epsilon) + "]");
  return spec.fn(x);
}

EnvelopeReport verify_envelope(const FunctionSpec& spec, std::size_t grid_points) {
  if (spec.envelope_only())
    throw std::domain_error("verify_envelope needs an evaluatable function");
  if (grid_points < 2) throw std::invalid_argument("verify_envelope: need at least 2 grid points");

  const PowerEnvelope& env = spec.envelope;
  EnvelopeReport report;
  report.grid_points = grid_points;
  const double scale = std::max(1.0, env.b * std::pow(env.epsilon, env.r));
  report.slack = 16.0 * std::numeric_limits<double>::epsilon() * scale;

  report.worst_lower_margin = std::numeric_limits<double>::infinity();
  report.worst_upper_margin = std::numeric_limits<double>::infinity();
  report.worst_step = std::numeric_limits<double>::infinity();

  double prev_f = 0.0;
  double prev_x = 0.0;
  const double h = env.epsilon / static_cast<double>(grid_points - 1);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = (i + 1 == grid_points) ? env.epsilon : static_cast<double>(i) * h;
    const double fx = spec.fn(x);
    const double xr = std::pow(x, env.r);
    if (const double m = fx - env.a * xr; m < report.worst_lower_margin) {
      report.worst_lower_margin = m;
      report.worst_lower_x = x;
    }
    if (const double m = env.b * xr - fx; m < report.worst_upper_margin) {
      report.worst_upper_margin = m;
      report.worst_upper_x = x;
    }
    if (i > 0) {
      if (const double step = fx - prev_f; step < report.worst_step) {
        report.worst_step = step;
        report.worst_step_x = prev_x;
      }
    }
    prev_f = fx;
    prev_x = x;
  }

  report.pass = report.worst_lower_margin >= -report.slack &&
                report.worst_upper_margin >= -report.slack && report.worst_step >= -report.slack;
  return report;
}

PowerEnvelope derive_power_bounds(const std::function<double(double)>& rth_derivative, unsigned r,
                                  double epsilon, std::size_t grid_points) {
  if (!rth_derivative) throw std::invalid_argument("derive_power_bounds: missing derivative");
  if (r == 0) throw std::invalid_argument("derive_power_bounds: r must be a positive integer");
  if (!(epsilon > 0.0)) throw std::invalid_argument("derive_power_bounds: epsilon must be positive");
  if (grid_points < 3) throw std::invalid_argument("derive_power_bounds: need at least 3 grid points");
  epsilon = std::min(epsilon, 1.0);

  double factorial = 1.0;
  for (unsigned i = 2; i <= r; ++i) factorial *= static_cast<double>(i);
  if (!std::isfinite(factorial)) throw std::invalid_argument("derive_power_bounds: r too large");

  const double h = epsilon / static_cast<double>(grid_points - 1);
  std::vector<double> samples(grid_points);
  for (std::size_t i = 0; i < grid_points; ++i) {
    const double x = (i + 1 == grid_points) ? epsilon : static_cast<double>(i) * h;
    const double d = rth_derivative(x);
    if (!(d > 0.0))
      throw std::domain_error("derive_power_bounds: r-th derivative not strictly positive at x = " +
                              double_string(x));
    samples[i] = d / factorial;
  }

  const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
  // Between-node extremum bound: if (f^(r))' is Lipschitz then the dip below
  // the sampled minimum is at most L*h^2/8, with L estimated from second
  // differences (|second diff| ~ L*h^2) and a 4x safety factor.
  double max_second_diff = 0.0;
  for (std::size_t i = 1; i + 1 < grid_points; ++i) {
    max_second_diff =
        std::max(max_second_diff, std::abs(samples[i + 1] - 2.0 * samples[i] + samples[i - 1]));
  }
  const double margin = 4.0 * max_second_diff / 8.0;

  const double a = *lo_it - margin;
  const double b = *hi_it + margin;
  if (!(a > 0.0))
    throw std::domain_error("derive_power_bounds: sampled minimum too close to zero for a certified "
                            "lower constant");
  return PowerEnvelope::checked(a, b, static_cast<double>(r), epsilon);
}

}  // namespace achset
