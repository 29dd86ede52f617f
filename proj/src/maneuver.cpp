#include "magctrl/maneuver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "magctrl/controllability.hpp"
#include "magctrl/numerics.hpp"

namespace magctrl {

namespace {

constexpr double kGramianCutoffRatio = 1e-10;

// Cubic Hermite interpolant on a uniform grid with centered-difference
// slopes (one-sided second-order stencils at the ends).
class CubicHermite {
 public:
  CubicHermite(std::vector<double> times, std::vector<Eigen::Vector3d> values)
      : times_(std::move(times)), values_(std::move(values)) {
    const std::size_t n = values_.size();
    if (n < 2 || times_.size() != n) {
      throw std::invalid_argument("interpolation needs >= 2 samples");
    }
    h_ = times_[1] - times_[0];
    slopes_.resize(n);
    slopes_[0] =
        (-3.0 * values_[0] + 4.0 * values_[1] - values_[2]) / (2.0 * h_);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      slopes_[i] = (values_[i + 1] - values_[i - 1]) / (2.0 * h_);
    }
    slopes_[n - 1] = (3.0 * values_[n - 1] - 4.0 * values_[n - 2] +
                      values_[n - 3]) /
                     (2.0 * h_);
  }

  Eigen::Vector3d operator()(double t) const {
    const double t_clamped = std::clamp(t, times_.front(), times_.back());
    auto i = static_cast<std::size_t>((t_clamped - times_.front()) / h_);
    i = std::min(i, values_.size() - 2);
    const double s = (t_clamped - times_[i]) / h_;
    const double s2 = s * s;
    const double s3 = s2 * s;
    return (2.0 * s3 - 3.0 * s2 + 1.0) * values_[i] +
           (s3 - 2.0 * s2 + s) * h_ * slopes_[i] +
           (-2.0 * s3 + 3.0 * s2) * values_[i + 1] +
           (s3 - s2) * h_ * slopes_[i + 1];
  }

 private:
  std::vector<double> times_;
  std::vector<Eigen::Vector3d> values_;
  std::vector<Eigen::Vector3d> slopes_;
  double h_ = 0.0;
};

// integral of f dt on a uniform grid: composite Simpson, with a trapezoid
// closeout when the interval count is odd.
double integrate_samples(const std::vector<double>& values, double h) {
  const std::size_t n = values.size();
  if (n < 2) return 0.0;
  std::size_t last = n - 1;
  double extra = 0.0;
  if (last % 2 == 1) {
    extra = 0.5 * h * (values[last - 1] + values[last]);
    --last;
  }
  if (last == 0) return extra;
  double sum = values[0] + values[last];
  for (std::size_t i = 1; i < last; ++i) {
    sum += ((i % 2 == 1) ? 4.0 : 2.0) * values[i];
  }
  return h / 3.0 * sum + extra;
}

Matrix6d inverse_from_spectrum(const GramianResult& g) {
  Eigen::SelfAdjointEigenSolver<Matrix6d> eig(g.matrix);
  const Vector6d values = eig.eigenvalues();
  const double cutoff = kGramianCutoffRatio * values.maxCoeff();
  if (values.minCoeff() <= cutoff) {
    throw SingularGramianError(
        "controllability Gramian is numerically singular over this window "
        "(min/max eigenvalue ratio below 1e-10); the state is not "
        "practically steerable");
  }
  return eig.eigenvectors() * values.cwiseInverse().asDiagonal() *
         eig.eigenvectors().transpose();
}

}  // namespace

ControlSamples min_energy_control(const InertiaTensor& j,
                                  const OrbitConfig& orbit, const Vector6d& x0,
                                  double t0, double tf, int nodes) {
  const GramianResult g = gramian(j, orbit, t0, tf, nodes);
  const Matrix6d w_inv = inverse_from_spectrum(g);
  const Vector6d eta = w_inv * x0;
  const SystemMatrices sys = system_matrix(j, orbit.omega0);

  ControlSamples samples;
  samples.times.resize(nodes);
  samples.moments.resize(nodes);
  const double h = (tf - t0) / (nodes - 1);
  for (int i = 0; i < nodes; ++i) {
    const double tau = (i + 1 == nodes) ? tf : t0 + i * h;
    const Matrix6d phi = expm(sys.a_matrix, t0 - tau);
    const Matrix63d b = full_input_matrix(influence_matrix(j, orbit, tau));
    samples.times[i] = tau;
    samples.moments[i] = -(b.transpose() * phi.transpose() * eta);
  }
  return samples;
}

ManeuverResult simulate_with_control(
    const InertiaTensor& j, const OrbitConfig& orbit, const Vector6d& x0,
    const std::function<Eigen::Vector3d(double)>& control, double t0,
    double tf, int steps) {
  const SystemMatrices sys = system_matrix(j, orbit.omega0);
  const auto input_fn = [&](double t) {
    return full_input_matrix(influence_matrix(j, orbit, t));
  };
  const Trajectory traj =
      propagate_ltv(sys.a_matrix, input_fn, control, x0, t0, tf, steps);

  ManeuverResult result;
  result.times = traj.times;
  result.states.reserve(traj.states.size());
  result.controls.reserve(traj.states.size());
  std::vector<double> m_squared(traj.times.size());
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    result.states.push_back(StateVector::from_vec(traj.states[i]));
    result.controls.push_back(control(traj.times[i]));
    m_squared[i] = result.controls.back().squaredNorm();
  }
  result.energy = integrate_samples(m_squared, (tf - t0) / steps);
  const double x0_norm = x0.norm();
  result.final_norm_ratio =
      x0_norm > 0.0 ? traj.states.back().norm() / x0_norm : 0.0;
  return result;
}

ManeuverResult simulate_maneuver(const InertiaTensor& j,
                                 const OrbitConfig& orbit, const Vector6d& x0,
                                 double t0, double tf, int steps,
                                 int gramian_nodes) {
  const ControlSamples samples =
      min_energy_control(j, orbit, x0, t0, tf, gramian_nodes);
  const CubicHermite interp(samples.times, samples.moments);
  return simulate_with_control(
      j, orbit, x0, [&interp](double t) { return interp(t); }, t0, tf, steps);
}

double nonlinear_consistency(const InertiaTensor& j, const OrbitConfig& orbit,
                             const ManeuverResult& result) {
  if (result.times.size() < 3) {
    throw std::invalid_argument("nonlinear_consistency needs a trajectory");
  }
  double q_max = 0.0;
  double w_max = 0.0;
  std::vector<Eigen::Vector3d> rates;
  rates.reserve(result.states.size());
  for (const StateVector& s : result.states) {
    q_max = std::max(q_max, s.quaternion_vec().cwiseAbs().maxCoeff());
    w_max = std::max(w_max, s.rate_vec().cwiseAbs().maxCoeff());
    rates.push_back(s.rate_vec());
  }
  if (q_max > 0.1 || w_max > 0.25 * orbit.omega0) {
    throw std::domain_error(
        "trajectory leaves the linearization validity region "
        "(max|q_i| <= 0.1, max|w_i| <= 0.25 w0)");
  }

  const CubicHermite rate_interp(result.times, rates);
  const auto q_dot = [&](double t, const Eigen::Vector3d& q) {
    StateVector s;
    s.q1 = q(0);
    s.q2 = q(1);
    s.q3 = q(2);
    const Eigen::Vector3d w = rate_interp(t);
    s.w1 = w(0);
    s.w2 = w(1);
    s.w3 = w(2);
    return reduced_kinematics(s);
  };

  Eigen::Vector3d q = result.states.front().quaternion_vec();
  double deviation = 0.0;
  for (std::size_t i = 0; i + 1 < result.times.size(); ++i) {
    const double t = result.times[i];
    const double h = result.times[i + 1] - t;
    const Eigen::Vector3d k1 = q_dot(t, q);
    const Eigen::Vector3d k2 = q_dot(t + 0.5 * h, q + 0.5 * h * k1);
    const Eigen::Vector3d k3 = q_dot(t + 0.5 * h, q + 0.5 * h * k2);
    const Eigen::Vector3d k4 = q_dot(t + h, q + h * k3);
    q += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    deviation = std::max(
        deviation,
        (q - result.states[i + 1].quaternion_vec()).norm());
  }
  return deviation;
}

}  // namespace magctrl
