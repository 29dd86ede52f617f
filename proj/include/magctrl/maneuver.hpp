#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "magctrl/model.hpp"

namespace magctrl {

/// Raised when the controllability Gramian over the requested window has
/// an eigenvalue below the invertibility cutoff (1e-10 of the largest).
/// Signals practical uncontrollability rather than being regularized away.
class SingularGramianError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Open-loop minimum-energy control sampled on a uniform node grid:
///   m(tau) = -B(tau)^T Phi(t0,tau)^T W^-1 x0,
/// which steers the linear system from x0 at t0 to the origin at tf.
struct ControlSamples {
  std::vector<double> times;
  std::vector<Eigen::Vector3d> moments;  // A*m^2
};

ControlSamples min_energy_control(const InertiaTensor& j,
                                  const OrbitConfig& orbit, const Vector6d& x0,
                                  double t0, double tf, int nodes = 4001);

struct ManeuverResult {
  std::vector<double> times;
  std::vector<StateVector> states;
  std::vector<Eigen::Vector3d> controls;
  double final_norm_ratio = 0.0;  // |x(tf)| / |x0|
  double energy = 0.0;            // integral of |m|^2 dt, A^2 m^4 s
};

/// Propagates the linear time-varying system under the sampled
/// minimum-energy control, with piecewise-cubic interpolation between
/// control nodes.
ManeuverResult simulate_maneuver(const InertiaTensor& j,
                                 const OrbitConfig& orbit, const Vector6d& x0,
                                 double t0, double tf, int steps = 10000,
                                 int gramian_nodes = 4001);

/// Propagates the system under an arbitrary control (zero control gives
/// the homogeneous solution). Shares the integration path with
/// simulate_maneuver.
ManeuverResult simulate_with_control(
    const InertiaTensor& j, const OrbitConfig& orbit, const Vector6d& x0,
    const std::function<Eigen::Vector3d(double)>& control, double t0,
    double tf, int steps);

/// Re-propagates the quaternion through the nonlinear reduced kinematics
/// using the maneuver's rate history and returns the largest deviation
/// from the linear trajectory, max_t |q_nonlinear - q_linear|.
///
/// Guards linearization validity: requires max|q_i| <= 0.1 and
/// max|w_i| <= 0.25 * w0 along the trajectory (std::domain_error
/// otherwise).
double nonlinear_consistency(const InertiaTensor& j, const OrbitConfig& orbit,
                             const ManeuverResult& result);

}  // namespace magctrl
