#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace crossing {

/// Thrown when a parameter record violates a model assumption. Carries the
/// offending field and the constraint it broke, machine-readably.
class InvalidParam : public std::runtime_error {
 public:
  InvalidParam(std::string field, std::string constraint)
      : std::runtime_error(field + ": violates " + constraint),
        field_(std::move(field)),
        constraint_(std::move(constraint)) {}

  const std::string& field() const { return field_; }
  const std::string& constraint() const { return constraint_; }

 private:
  std::string field_;
  std::string constraint_;
};

/// Model parameters, SI units throughout.
///
/// The control law is derived under two regime assumptions that validate()
/// enforces: the one-way latency is shorter than a coordination step
/// (theta < delta), and the speed-tracking uncertainty is within the
/// per-step regulating capacity (epsilon <= a_max * delta).
struct ModelParams {
  double delta = 0.1;             // coordination step size [s]
  double theta = 0.0;             // one-way communication latency [s]
  double epsilon = 0.0;           // speed-tracking half-width [m/s]
  double a_max = 3.0;             // max acceleration magnitude [m/s^2]
  double v_max = 15.0;            // max allowable speed [m/s]
  double h = 1.0;                 // same-route time headway [s]
  double h_bar = 1.0;             // cross-route time headway [s]
  double zone_radius = 300.0;     // neighborhood radius L [m]
  double conflict_radius = 30.0;  // interference-region radius R [m]

  // Max speed change per step [m/s].
  double accel_step() const { return a_max * delta; }
};

/// Validates a raw parameter record. Returns it unchanged if every invariant
/// holds; throws InvalidParam naming the first violated one.
inline ModelParams validate(const ModelParams& raw) {
  const auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(raw.delta) || !finite(raw.theta) || !finite(raw.epsilon) ||
      !finite(raw.a_max) || !finite(raw.v_max) || !finite(raw.h) ||
      !finite(raw.h_bar) || !finite(raw.zone_radius) ||
      !finite(raw.conflict_radius)) {
    throw InvalidParam("params", "all fields finite");
  }
  if (!(raw.delta > 0)) throw InvalidParam("delta", "delta > 0");
  if (!(raw.theta >= 0)) throw InvalidParam("theta", "theta >= 0");
  if (!(raw.theta < raw.delta)) throw InvalidParam("theta", "theta < delta");
  if (!(raw.epsilon >= 0)) throw InvalidParam("epsilon", "epsilon >= 0");
  if (!(raw.a_max > 0)) throw InvalidParam("a_max", "a_max > 0");
  if (!(raw.epsilon <= raw.a_max * raw.delta)) {
    throw InvalidParam("epsilon", "epsilon <= a_max*delta");
  }
  if (!(raw.v_max > 0)) throw InvalidParam("v_max", "v_max > 0");
  if (!(raw.h > 0)) throw InvalidParam("h", "h > 0");
  if (!(raw.h_bar >= raw.h)) throw InvalidParam("h_bar", "h_bar >= h");
  if (!(raw.conflict_radius > 0)) throw InvalidParam("R", "R > 0");
  if (!(raw.zone_radius > raw.conflict_radius)) {
    throw InvalidParam("L", "L > R");
  }
  return raw;
}

}  // namespace crossing
