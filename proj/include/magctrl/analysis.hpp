#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "magctrl/config.hpp"
#include "magctrl/controllability.hpp"
#include "magctrl/maneuver.hpp"

namespace magctrl {

/// Full controllability assessment at the critical time w0 tc = pi/2:
/// analytic condition residuals, equatorial check, rank test, determinant
/// chain, one-orbit Gramian spectrum, and the verdict.
ControllabilityReport run_check(const AnalysisConfig& config);

/// Machine-readable form of the report (JSON text, one field per report
/// member).
std::string report_to_json(const ControllabilityReport& report);

/// Human-readable summary.
std::string report_to_text(const ControllabilityReport& report);

/// Dipole field samples over `orbits` periods, `samples` per orbit.
/// Columns: t,b1,b2,b3. Writes samples*orbits + 1 rows plus a header.
void write_field_csv(std::ostream& out, const AnalysisConfig& config,
                     int samples, int orbits);

/// Singular values and rank of [K0|K1|K2] either at one time or swept over
/// one orbit. Columns: t,sigma1..sigma6,rank.
void write_kmatrices_csv(std::ostream& out, const AnalysisConfig& config,
                         std::optional<double> time, std::optional<int> sweep);

/// One-orbit (or `orbits`-orbit) Gramian: matrix, eigenvalues, and
/// conditioning, as JSON.
std::string gramian_to_json(const AnalysisConfig& config, int orbits);

/// Minimum-energy steering of x0 to the origin over one orbit.
/// Columns: t,q1,q2,q3,w1,w2,w3,m1,m2,m3, then a trailing summary line
/// `# final_norm_ratio=... energy=...`.
ManeuverResult write_steer_csv(std::ostream& out, const AnalysisConfig& config,
                               const Vector6d& x0);

}  // namespace magctrl
