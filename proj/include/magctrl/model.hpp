#pragma once

#include <Eigen/Dense>

namespace magctrl {

using Matrix6d = Eigen::Matrix<double, 6, 6>;
using Matrix63d = Eigen::Matrix<double, 6, 3>;
using Vector6d = Eigen::Matrix<double, 6, 1>;

/// Earth's gravitational parameter, m^3/s^2.
inline constexpr double kEarthMu = 3.986004418e14;

/// Default geomagnetic dipole strength, Wb*m.
inline constexpr double kDefaultDipoleStrength = 7.9e15;

/// Principal moments of inertia of a rigid spacecraft, kg*m^2.
/// The body frame is assumed aligned with the principal axes, so the
/// inertia matrix is diagonal.
struct InertiaTensor {
  double j11;
  double j22;
  double j33;

  /// Throws std::invalid_argument unless all moments are finite and > 0.
  InertiaTensor(double j11, double j22, double j33);

  Eigen::Matrix3d matrix() const;
};

/// Circular-orbit and dipole-field parameters.
///
/// omega0 is the orbit (and LVLH frame) rate in rad/s, semi_major_axis in
/// meters, inclination_mag the orbit inclination with respect to the
/// magnetic equator in radians, dipole_strength in Wb*m.
struct OrbitConfig {
  double omega0;
  double semi_major_axis;
  double inclination_mag;
  double dipole_strength;

  OrbitConfig(double omega0, double semi_major_axis, double inclination_mag,
              double dipole_strength = kDefaultDipoleStrength);

  /// Derives omega0 = sqrt(mu_earth / a^3) for a circular orbit.
  static OrbitConfig from_semi_major_axis(
      double semi_major_axis, double inclination_mag,
      double dipole_strength = kDefaultDipoleStrength);

  /// Orbital period 2*pi/omega0, s.
  double period() const;

  /// Field magnitude scale mu_f / a^3, Tesla.
  double field_scale() const;

  /// True when the orbit lies in the magnetic equator plane
  /// (|sin(i_m)| below 1e-12).
  bool is_equatorial() const;
};

/// Coefficients of the linearized rate dynamics with gravity gradient
/// torque. f41, f52, f63 are 1/s^2; f46, f64 are 1/s.
struct GravityGradientCoefficients {
  double f41;
  double f46;
  double f64;
  double f52;
  double f63;
};

GravityGradientCoefficients gravity_coefficients(const InertiaTensor& j,
                                                 double omega0);

/// Constant system matrix of the linearized nadir-pointing model together
/// with its lower blocks: a_matrix = [0  I/2; lambda1  sigma1].
struct SystemMatrices {
  Matrix6d a_matrix;
  Eigen::Matrix3d lambda1;  // diag(f41, f52, f63)
  Eigen::Matrix3d sigma1;   // f46 at (0,2), f64 at (2,0)
};

SystemMatrices system_matrix(const InertiaTensor& j, double omega0);

/// Geomagnetic dipole field sample along the orbit, Tesla, in LVLH axes.
struct FieldSample {
  double b1;
  double b2;
  double b3;

  Eigen::Vector3d vec() const { return {b1, b2, b3}; }
};

/// Dipole field at time t since the ascending-node crossing of the
/// magnetic equator:
///   b(t) = mu_f/a^3 * [cos(w0 t) sin(i_m), -cos(i_m), 2 sin(w0 t) sin(i_m)].
FieldSample magnetic_field(const OrbitConfig& orbit, double t);

/// Magnetic-moment influence matrix B2(t) of the rate dynamics and its
/// first two time derivatives. All diagonals are identically zero.
struct InfluenceMatrices {
  Eigen::Matrix3d b2_matrix;
  Eigen::Matrix3d b2_dot;
  Eigen::Matrix3d b2_ddot;
};

/// Entries per the closed forms; derivatives are the hand-differentiated
/// analytic expressions, not finite differences.
InfluenceMatrices influence_matrix(const InertiaTensor& j,
                                   const OrbitConfig& orbit, double t);

/// Stacks [0_3; B2(t)] into the 6x3 input matrix of the state equation.
Matrix63d full_input_matrix(const InfluenceMatrices& infl);

/// Torque from a coil moment m (A*m^2) in the ambient field: u = m x b, N*m.
Eigen::Vector3d magnetic_torque(const Eigen::Vector3d& moment,
                                const FieldSample& b);

/// Reduced attitude state: vector quaternion part (dimensionless) and body
/// rate with respect to the LVLH frame (rad/s). The scalar quaternion part
/// is reconstructed as sqrt(1 - |q|^2), never stored.
struct StateVector {
  double q1 = 0.0;
  double q2 = 0.0;
  double q3 = 0.0;
  double w1 = 0.0;
  double w2 = 0.0;
  double w3 = 0.0;

  Eigen::Vector3d quaternion_vec() const { return {q1, q2, q3}; }
  Eigen::Vector3d rate_vec() const { return {w1, w2, w3}; }
  Vector6d vec() const;
  static StateVector from_vec(const Vector6d& x);
};

/// Nonlinear reduced kinematics qdot = 0.5 * M(q) * w with the scalar part
/// reconstructed. Throws std::domain_error when |q|^2 exceeds 1 beyond a
/// 1e-12 tolerance.
Eigen::Vector3d reduced_kinematics(const StateVector& x);

}  // namespace magctrl
