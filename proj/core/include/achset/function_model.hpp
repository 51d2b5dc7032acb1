#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "achset/numeric.hpp"

namespace achset {

/// Constants (a, b, r, epsilon) certifying a*x^r <= f(x) <= b*x^r together
/// with monotone growth of f on [0, epsilon].
template <class S>
struct PowerEnvelopeT {
  S a;
  S b;
  S r;
  S epsilon;

  // Validates 0 < a <= b and r > 0. The series argument is always a power
  // x^n with x < 1, so epsilon above 1 certifies nothing extra and is
  // capped to 1; epsilon must be positive.
  static PowerEnvelopeT checked(S a, S b, S r, S epsilon) {
    if (!(a > S(0))) throw std::invalid_argument("envelope: a must be positive");
    if (!(a <= b)) throw std::invalid_argument("envelope: need a <= b");
    if (!(r > S(0))) throw std::invalid_argument("envelope: r must be positive");
    if (!(epsilon > S(0))) throw std::invalid_argument("envelope: epsilon must be positive");
    if (epsilon > S(1)) epsilon = S(1);
    return PowerEnvelopeT{std::move(a), std::move(b), std::move(r), std::move(epsilon)};
  }
};

using PowerEnvelope = PowerEnvelopeT<double>;
using ExactPowerEnvelope = PowerEnvelopeT<Rational>;

// Envelope of f(x) = x: a = b = r = 1, valid on all of [0, 1].
inline ExactPowerEnvelope exact_identity_envelope() {
  return ExactPowerEnvelope{Rational(1), Rational(1), Rational(1), Rational(1)};
}

/// A named evaluatable function paired with its power envelope. An empty
/// evaluator declares an "envelope-only" spec: threshold computations work,
/// anything that must sample f (enumeration, term comparisons) does not.
struct FunctionSpec {
  std::string name;
  std::function<double(double)> fn;
  PowerEnvelope envelope;

  bool envelope_only() const { return !static_cast<bool>(fn); }
};

// Built-in registry: "identity", "sin", "tan", "xln1p", "expm1m".
const FunctionSpec& builtin(std::string_view name);
const std::vector<std::string>& builtin_names();

// Makes an envelope-only spec from the four constants.
FunctionSpec envelope_only_spec(PowerEnvelope envelope);

// Evaluates spec.fn at x; domain error outside [0, epsilon] or when the
// spec carries no evaluator.
double evaluate(const FunctionSpec& spec, double x);

/// Outcome of the sampled envelope/monotonicity check. Margins are signed:
/// negative means the corresponding inequality failed at the recorded x.
struct EnvelopeReport {
  bool pass = false;
  double slack = 0.0;  // absolute slack granted to every sampled inequality
  std::size_t grid_points = 0;
  double worst_lower_margin = 0.0;  // min over grid of f(x) - a*x^r
  double worst_lower_x = 0.0;
  double worst_upper_margin = 0.0;  // min over grid of b*x^r - f(x)
  double worst_upper_x = 0.0;
  double worst_step = 0.0;  // min over grid of f(x_{i+1}) - f(x_i)
  double worst_step_x = 0.0;
};

// Samples both envelope inequalities and monotonicity on a uniform grid of
// [0, epsilon] with the stated slack. Failure is a report outcome, not an
// error.
EnvelopeReport verify_envelope(const FunctionSpec& spec, std::size_t grid_points = 10'000);

// Envelope constants from a user-supplied r-th derivative sampled over
// [0, epsilon]: a = min f^(r)/r!, b = max f^(r)/r!, widened by a margin that
// covers between-node extrema assuming the derivative of f^(r) is Lipschitz
// with a constant estimated from second differences. Rejects derivatives
// that are not strictly positive on the grid.
PowerEnvelope derive_power_bounds(const std::function<double(double)>& rth_derivative, unsigned r,
                                  double epsilon, std::size_t grid_points = 10'000);

}  // namespace achset
