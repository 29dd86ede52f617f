#include "magctrl/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace magctrl {

namespace {

void require_finite_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(std::string(name) +
                                " must be finite and positive, got " +
                                std::to_string(value));
  }
}

}  // namespace

InertiaTensor::InertiaTensor(double j11_, double j22_, double j33_)
    : j11(j11_), j22(j22_), j33(j33_) {
  require_finite_positive(j11, "j11");
  require_finite_positive(j22, "j22");
  require_finite_positive(j33, "j33");
}

Eigen::Matrix3d InertiaTensor::matrix() const {
  return Eigen::Vector3d(j11, j22, j33).asDiagonal();
}

OrbitConfig::OrbitConfig(double omega0_, double semi_major_axis_,
                         double inclination_mag_, double dipole_strength_)
    : omega0(omega0_),
      semi_major_axis(semi_major_axis_),
      inclination_mag(inclination_mag_),
      dipole_strength(dipole_strength_) {
  require_finite_positive(omega0, "omega0");
  require_finite_positive(semi_major_axis, "semi_major_axis");
  require_finite_positive(dipole_strength, "dipole_strength");
  if (!std::isfinite(inclination_mag) || inclination_mag < 0.0 ||
      inclination_mag > std::numbers::pi) {
    throw std::invalid_argument("inclination_mag must lie in [0, pi], got " +
                                std::to_string(inclination_mag));
  }
}

OrbitConfig OrbitConfig::from_semi_major_axis(double semi_major_axis,
                                              double inclination_mag,
                                              double dipole_strength) {
  require_finite_positive(semi_major_axis, "semi_major_axis");
  const double rate =
      std::sqrt(kEarthMu / (semi_major_axis * semi_major_axis * semi_major_axis));
  return OrbitConfig(rate, semi_major_axis, inclination_mag, dipole_strength);
}

double OrbitConfig::period() const { return 2.0 * std::numbers::pi / omega0; }

double OrbitConfig::field_scale() const {
  return dipole_strength /
         (semi_major_axis * semi_major_axis * semi_major_axis);
}

bool OrbitConfig::is_equatorial() const {
  return std::abs(std::sin(inclination_mag)) < 1e-12;
}

GravityGradientCoefficients gravity_coefficients(const InertiaTensor& j,
                                                 double omega0) {
  require_finite_positive(omega0, "omega0");
  const double w2 = omega0 * omega0;
  GravityGradientCoefficients f;
  f.f41 = 8.0 * (j.j33 - j.j22) * w2 / j.j11;
  f.f46 = (-j.j11 + j.j22 - j.j33) * omega0 / j.j11;
  f.f64 = (j.j11 - j.j22 + j.j33) * omega0 / j.j33;
  f.f52 = 6.0 * (j.j33 - j.j11) * w2 / j.j22;
  f.f63 = 2.0 * (j.j11 - j.j22) * w2 / j.j33;
  return f;
}

SystemMatrices system_matrix(const InertiaTensor& j, double omega0) {
  const GravityGradientCoefficients f = gravity_coefficients(j, omega0);
  SystemMatrices s;
  s.lambda1 = Eigen::Vector3d(f.f41, f.f52, f.f63).asDiagonal();
  s.sigma1.setZero();
  s.sigma1(0, 2) = f.f46;
  s.sigma1(2, 0) = f.f64;
  s.a_matrix.setZero();
  s.a_matrix.block<3, 3>(0, 3) = 0.5 * Eigen::Matrix3d::Identity();
  s.a_matrix.block<3, 3>(3, 0) = s.lambda1;
  s.a_matrix.block<3, 3>(3, 3) = s.sigma1;
  return s;
}

FieldSample magnetic_field(const OrbitConfig& orbit, double t) {
  const double scale = orbit.field_scale();
  const double si = std::sin(orbit.inclination_mag);
  const double ci = std::cos(orbit.inclination_mag);
  const double phase = orbit.omega0 * t;
  return FieldSample{scale * std::cos(phase) * si, -scale * ci,
                     2.0 * scale * std::sin(phase) * si};
}

InfluenceMatrices influence_matrix(const InertiaTensor& j,
                                   const OrbitConfig& orbit, double t) {
  const double scale = orbit.field_scale();
  const double w0 = orbit.omega0;
  const double si = std::sin(orbit.inclination_mag);
  const double ci = std::cos(orbit.inclination_mag);
  const double st = std::sin(w0 * t);
  const double ct = std::cos(w0 * t);

  const double b42 = 2.0 * scale * si * st / j.j11;
  const double b43 = scale * ci / j.j11;
  const double b53 = scale * si * ct / j.j22;
  const double b51 = -2.0 * scale * si * st / j.j22;
  const double b61 = -scale * ci / j.j33;
  const double b62 = -scale * si * ct / j.j33;

  // First and second time derivatives of the entries above. b43 and b61
  // carry no time dependence, so their derivatives vanish identically.
  const double b42_d = 2.0 * scale * w0 * si * ct / j.j11;
  const double b53_d = -scale * w0 * si * st / j.j22;
  const double b51_d = -2.0 * scale * w0 * si * ct / j.j22;
  const double b62_d = scale * w0 * si * st / j.j33;

  const double w02 = w0 * w0;
  const double b42_dd = -2.0 * scale * w02 * si * st / j.j11;
  const double b53_dd = -scale * w02 * si * ct / j.j22;
  const double b51_dd = 2.0 * scale * w02 * si * st / j.j22;
  const double b62_dd = scale * w02 * si * ct / j.j33;

  InfluenceMatrices infl;
  infl.b2_matrix << 0.0, b42, b43, b51, 0.0, b53, b61, b62, 0.0;
  infl.b2_dot << 0.0, b42_d, 0.0, b51_d, 0.0, b53_d, 0.0, b62_d, 0.0;
  infl.b2_ddot << 0.0, b42_dd, 0.0, b51_dd, 0.0, b53_dd, 0.0, b62_dd, 0.0;
  return infl;
}

Matrix63d full_input_matrix(const InfluenceMatrices& infl) {
  Matrix63d b = Matrix63d::Zero();
  b.block<3, 3>(3, 0) = infl.b2_matrix;
  return b;
}

Eigen::Vector3d magnetic_torque(const Eigen::Vector3d& moment,
                                const FieldSample& b) {
  if (!moment.allFinite()) {
    throw std::invalid_argument("magnetic moment must be finite");
  }
  return moment.cross(b.vec());
}

Vector6d StateVector::vec() const {
  Vector6d x;
  x << q1, q2, q3, w1, w2, w3;
  return x;
}

StateVector StateVector::from_vec(const Vector6d& x) {
  return StateVector{x(0), x(1), x(2), x(3), x(4), x(5)};
}

Eigen::Vector3d reduced_kinematics(const StateVector& x) {
  const Eigen::Vector3d q = x.quaternion_vec();
  const double norm2 = q.squaredNorm();
  if (norm2 > 1.0 + 1e-12) {
    throw std::domain_error(
        "quaternion vector norm exceeds 1: |q|^2 = " + std::to_string(norm2));
  }
  const double q0 = std::sqrt(std::max(0.0, 1.0 - norm2));
  Eigen::Matrix3d m;
  m << q0, -x.q3, x.q2,  //
      x.q3, q0, -x.q1,   //
      -x.q2, x.q1, q0;
  return 0.5 * m * x.rate_vec();
}

}  // namespace magctrl
