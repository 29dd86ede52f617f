#include "magctrl/analysis.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace magctrl {

namespace {

using nlohmann::json;

// Full-precision decimal formatting so CSV output survives a round trip.
std::string fmt(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

ControllabilityReport run_check(const AnalysisConfig& config) {
  const InertiaTensor j = config.inertia_tensor();
  const OrbitConfig orbit = config.orbit();

  ControllabilityReport report;
  std::tie(report.cond1_residual, report.cond2_residual) =
      analytic_conditions(j);
  report.equatorial = orbit.is_equatorial();

  const double tc = 0.5 * std::numbers::pi / orbit.omega0;
  report.k_rank = rank_test(k_matrices(j, orbit, tc), config.numerics.rank_tol);

  // The determinant chain degenerates identically when sin(i_m) cos(i_m)
  // vanishes; the limiting determinant value there is zero.
  const double si = std::sin(orbit.inclination_mag);
  const double ci = std::cos(orbit.inclination_mag);
  if (std::abs(si * ci) >= 1e-12) {
    report.submatrix_det = submatrix_determinant(j, orbit).first;
  } else {
    report.submatrix_det = 0.0;
  }
  report.closed_form_det_factor = closed_form_combination(j, orbit);

  const GramianResult g =
      gramian(j, orbit, 0.0, orbit.period(), config.numerics.gramian_nodes);
  for (int i = 0; i < 6; ++i) {
    report.gramian_eigs[static_cast<std::size_t>(i)] = g.eigenvalues(i);
  }

  const double j_max = std::max({j.j11, j.j22, j.j33});
  const bool cond1_holds = std::abs(report.cond1_residual) > 1e-12 * j_max;
  const bool cond2_holds =
      std::abs(report.cond2_residual) > 1e-12 * j_max * j_max;
  if (report.equatorial) {
    report.verdict = Verdict::NotControllableEquatorial;
  } else if (cond1_holds && cond2_holds) {
    report.verdict = report.k_rank.rank == 6 ? Verdict::Controllable
                                             : Verdict::ConditionsViolated;
  } else {
    report.verdict = Verdict::Inconclusive;
  }
  return report;
}

std::string report_to_json(const ControllabilityReport& report) {
  json doc;
  doc["cond1_residual"] = report.cond1_residual;
  doc["cond2_residual"] = report.cond2_residual;
  doc["equatorial"] = report.equatorial;
  doc["k_rank"] = {{"rank", report.k_rank.rank},
                   {"singular_values", report.k_rank.singular_values},
                   {"tolerance_used", report.k_rank.tolerance_used}};
  doc["submatrix_det"] = report.submatrix_det;
  doc["closed_form_det_factor"] = report.closed_form_det_factor;
  doc["gramian_eigs"] = report.gramian_eigs;
  doc["verdict"] = to_string(report.verdict);
  return doc.dump(2);
}

std::string report_to_text(const ControllabilityReport& report) {
  std::ostringstream out;
  out << "verdict: " << to_string(report.verdict) << "\n";
  out << "  condition 1 (J33 - J22):                     "
      << fmt(report.cond1_residual) << "\n";
  out << "  condition 2 (J22(J11-J22+J33) - 6J33(J33-J11)): "
      << fmt(report.cond2_residual) << "\n";
  out << "  equatorial orbit:                            "
      << (report.equatorial ? "yes" : "no") << "\n";
  out << "  rank [K0|K1|K2] at w0*tc = pi/2:             "
      << report.k_rank.rank << "\n";
  out << "  6x6 submatrix determinant:                   "
      << fmt(report.submatrix_det) << "\n";
  out << "  closed-form bracket term:                    "
      << fmt(report.closed_form_det_factor) << "\n";
  out << "  one-orbit Gramian eigenvalues:              ";
  for (double e : report.gramian_eigs) out << " " << fmt(e);
  out << "\n";
  return out.str();
}

void write_field_csv(std::ostream& out, const AnalysisConfig& config,
                     int samples, int orbits) {
  if (samples < 2) {
    throw std::invalid_argument("field command requires samples >= 2");
  }
  if (orbits < 1) {
    throw std::invalid_argument("field command requires orbits >= 1");
  }
  const OrbitConfig orbit = config.orbit();
  const double period = orbit.period();
  out << "t,b1,b2,b3\n";
  for (int i = 0; i <= samples * orbits; ++i) {
    const double t = period * i / samples;
    const FieldSample b = magnetic_field(orbit, t);
    out << fmt(t) << "," << fmt(b.b1) << "," << fmt(b.b2) << "," << fmt(b.b3)
        << "\n";
  }
}

void write_kmatrices_csv(std::ostream& out, const AnalysisConfig& config,
                         std::optional<double> time,
                         std::optional<int> sweep) {
  if (time.has_value() == sweep.has_value()) {
    throw std::invalid_argument(
        "kmatrices command requires exactly one of --time and --sweep");
  }
  const InertiaTensor j = config.inertia_tensor();
  const OrbitConfig orbit = config.orbit();

  std::vector<double> times;
  if (time.has_value()) {
    times.push_back(*time);
  } else {
    if (*sweep < 1) {
      throw std::invalid_argument("kmatrices sweep must be >= 1");
    }
    const double period = orbit.period();
    for (int i = 0; i <= *sweep; ++i) {
      times.push_back(period * i / *sweep);
    }
  }

  out << "t,sigma1,sigma2,sigma3,sigma4,sigma5,sigma6,rank\n";
  for (double t : times) {
    const RankResult r =
        rank_test(k_matrices(j, orbit, t), config.numerics.rank_tol);
    out << fmt(t);
    for (double s : r.singular_values) out << "," << fmt(s);
    out << "," << r.rank << "\n";
  }
}

std::string gramian_to_json(const AnalysisConfig& config, int orbits) {
  if (orbits < 1) {
    throw std::invalid_argument("gramian command requires orbits >= 1");
  }
  const InertiaTensor j = config.inertia_tensor();
  const OrbitConfig orbit = config.orbit();
  const double tf = orbit.period() * orbits;
  const GramianResult g =
      gramian(j, orbit, 0.0, tf, config.numerics.gramian_nodes);

  json doc;
  doc["t0"] = 0.0;
  doc["tf"] = tf;
  doc["nodes"] = config.numerics.gramian_nodes;
  std::vector<double> eigs(g.eigenvalues.data(), g.eigenvalues.data() + 6);
  doc["eigenvalues"] = eigs;
  doc["min_over_max"] = g.eigenvalues(5) / g.eigenvalues(0);
  std::vector<std::vector<double>> rows;
  for (int r = 0; r < 6; ++r) {
    rows.emplace_back();
    for (int c = 0; c < 6; ++c) rows.back().push_back(g.matrix(r, c));
  }
  doc["matrix"] = rows;
  return doc.dump(2);
}

ManeuverResult write_steer_csv(std::ostream& out, const AnalysisConfig& config,
                               const Vector6d& x0) {
  const InertiaTensor j = config.inertia_tensor();
  const OrbitConfig orbit = config.orbit();
  const ManeuverResult result = simulate_maneuver(
      j, orbit, x0, 0.0, orbit.period(), config.numerics.steps_per_orbit,
      config.numerics.gramian_nodes);

  out << "t,q1,q2,q3,w1,w2,w3,m1,m2,m3\n";
  for (std::size_t i = 0; i < result.times.size(); ++i) {
    const StateVector& s = result.states[i];
    const Eigen::Vector3d& m = result.controls[i];
    out << fmt(result.times[i]) << "," << fmt(s.q1) << "," << fmt(s.q2) << ","
        << fmt(s.q3) << "," << fmt(s.w1) << "," << fmt(s.w2) << ","
        << fmt(s.w3) << "," << fmt(m(0)) << "," << fmt(m(1)) << ","
        << fmt(m(2)) << "\n";
  }
  out << "# final_norm_ratio=" << fmt(result.final_norm_ratio)
      << " energy=" << fmt(result.energy) << "\n";
  return result;
}

}  // namespace magctrl
