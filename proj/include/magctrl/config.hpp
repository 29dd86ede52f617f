#pragma once

#include <array>
#include <optional>
#include <string>

#include "magctrl/model.hpp"

namespace magctrl {

/// Numerical settings with their documented defaults.
struct NumericsConfig {
  double rank_tol = 1e-8;
  int steps_per_orbit = 10000;
  int gramian_nodes = 4001;
};

/// Analysis configuration as read from a JSON file.
///
/// Schema:
///   {
///     "inertia": [j11, j22, j33],                 // kg*m^2, required
///     "orbit": {
///       "omega0": <rad/s>,                        // optional, derived
///                                                 // from the semi-major
///                                                 // axis when omitted
///       "semi_major_axis": <m>,                   // required
///       "inclination_mag": <rad>,                 // required
///       "dipole_strength": <Wb*m>                 // default 7.9e15
///     },
///     "numerics": {                               // optional
///       "rank_tol": 1e-8,
///       "steps_per_orbit": 10000,
///       "gramian_nodes": 4001
///     }
///   }
///
/// Unknown keys anywhere are rejected. Loading materializes every default,
/// so load -> save -> load is idempotent.
struct AnalysisConfig {
  std::array<double, 3> inertia{};
  double omega0 = 0.0;
  double semi_major_axis = 0.0;
  double inclination_mag = 0.0;
  double dipole_strength = kDefaultDipoleStrength;
  NumericsConfig numerics;

  InertiaTensor inertia_tensor() const;
  OrbitConfig orbit() const;
};

/// Parses and validates a config document. Throws std::invalid_argument
/// with a field path in the message on schema violations.
AnalysisConfig load_config_string(const std::string& text);
AnalysisConfig load_config_file(const std::string& path);

/// Serializes with all defaults materialized.
std::string config_to_json(const AnalysisConfig& config);

}  // namespace magctrl
