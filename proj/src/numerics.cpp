#include "magctrl/numerics.hpp"

#include <cmath>
#include <stdexcept>

namespace magctrl {

namespace {

// Pade [13/13] numerator coefficients (Higham's scaling-and-squaring).
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};
constexpr double kPadeTheta13 = 5.371920351148152;

}  // namespace

Eigen::MatrixXd expm(const Eigen::MatrixXd& a, double dt) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("expm requires a square matrix");
  }
  Eigen::MatrixXd m = a * dt;
  if (!m.allFinite()) {
    throw std::invalid_argument("expm input has non-finite entries");
  }
  const Eigen::Index n = m.rows();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);

  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int squarings = 0;
  if (norm > kPadeTheta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / kPadeTheta13)));
    m /= std::pow(2.0, squarings);
  }

  const Eigen::MatrixXd m2 = m * m;
  const Eigen::MatrixXd m4 = m2 * m2;
  const Eigen::MatrixXd m6 = m2 * m4;
  const Eigen::MatrixXd u =
      m * (m6 * (kPade13[13] * m6 + kPade13[11] * m4 + kPade13[9] * m2) +
           kPade13[7] * m6 + kPade13[5] * m4 + kPade13[3] * m2 +
           kPade13[1] * identity);
  const Eigen::MatrixXd v =
      m6 * (kPade13[12] * m6 + kPade13[10] * m4 + kPade13[8] * m2) +
      kPade13[6] * m6 + kPade13[4] * m4 + kPade13[2] * m2 +
      kPade13[0] * identity;

  Eigen::MatrixXd result = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; ++i) {
    result = result * result;
  }
  if (!result.allFinite()) {
    throw std::overflow_error("expm overflowed; input norm too large");
  }
  return result;
}

RankResult svd_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw std::invalid_argument("svd_rank rel_tol must lie in (0, 1)");
  }
  if (!m.allFinite()) {
    throw std::invalid_argument("svd_rank input has non-finite entries");
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const Eigen::VectorXd sigma = svd.singularValues();

  RankResult result;
  result.singular_values.assign(sigma.data(), sigma.data() + sigma.size());
  const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
  result.tolerance_used = sigma_max > 0.0 ? rel_tol * sigma_max : 1e-300;
  for (double s : result.singular_values) {
    if (s > result.tolerance_used) ++result.rank;
  }
  return result;
}

Trajectory propagate_ltv(const Matrix6d& a, const InputMatrixFn& input_fn,
                         const ControlFn& control_fn, const Vector6d& x0,
                         double t0, double tf, int steps) {
  if (steps < 1) {
    throw std::invalid_argument("propagate_ltv requires steps >= 1");
  }
  if (!(tf > t0)) {
    throw std::invalid_argument("propagate_ltv requires tf > t0");
  }
  const double h = (tf - t0) / steps;
  const auto deriv = [&](double t, const Vector6d& x) -> Vector6d {
    return a * x + input_fn(t) * control_fn(t);
  };

  Trajectory traj;
  traj.times.reserve(steps + 1);
  traj.states.reserve(steps + 1);
  Vector6d x = x0;
  traj.times.push_back(t0);
  traj.states.push_back(x);
  for (int i = 0; i < steps; ++i) {
    const double t = t0 + i * h;
    const Vector6d k1 = deriv(t, x);
    const Vector6d k2 = deriv(t + 0.5 * h, x + 0.5 * h * k1);
    const Vector6d k3 = deriv(t + 0.5 * h, x + 0.5 * h * k2);
    const Vector6d k4 = deriv(t + h, x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!x.allFinite()) {
      throw std::runtime_error("propagate_ltv: state became non-finite at t=" +
                               std::to_string(t + h));
    }
    traj.times.push_back(i + 1 == steps ? tf : t + h);
    traj.states.push_back(x);
  }
  return traj;
}

Eigen::MatrixXd finite_diff(const std::function<Eigen::MatrixXd(double)>& f,
                            double t, double h, int order) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("finite_diff requires h > 0");
  }
  const Eigen::MatrixXd f2m = f(t - 2.0 * h);
  const Eigen::MatrixXd f1m = f(t - h);
  const Eigen::MatrixXd f1p = f(t + h);
  const Eigen::MatrixXd f2p = f(t + 2.0 * h);
  switch (order) {
    case 1:
      return (-f2p + 8.0 * f1p - 8.0 * f1m + f2m) / (12.0 * h);
    case 2: {
      const Eigen::MatrixXd f0 = f(t);
      return (-f2p + 16.0 * f1p - 30.0 * f0 + 16.0 * f1m - f2m) /
             (12.0 * h * h);
    }
    default:
      throw std::invalid_argument("finite_diff order must be 1 or 2");
  }
}

Matrix6d gramian_quadrature(const std::function<Matrix6d(double)>& integrand,
                            double t0, double tf, int nodes) {
  if (nodes < 3 || nodes % 2 == 0) {
    throw std::invalid_argument(
        "gramian_quadrature requires an odd node count >= 3");
  }
  const double h = (tf - t0) / (nodes - 1);
  Matrix6d sum = integrand(t0) + integrand(tf);
  for (int i = 1; i < nodes - 1; ++i) {
    const double weight = (i % 2 == 1) ? 4.0 : 2.0;
    sum += weight * integrand(t0 + i * h);
  }
  const Matrix6d w = (h / 3.0) * sum;
  return 0.5 * (w + w.transpose());
}

}  // namespace magctrl
