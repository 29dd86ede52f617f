#pragma once

#include <Eigen/Dense>
#include <functional>
#include <utility>
#include <vector>

#include "magctrl/model.hpp"

namespace magctrl {

/// Matrix exponential e^(a * dt) by scaling-and-squaring with a Pade
/// rational core. Accurate to ~1e-13 relative in operator norm for
/// |a * dt| <= 10.
Eigen::MatrixXd expm(const Eigen::MatrixXd& a, double dt = 1.0);

/// Numerical rank of a matrix from its singular value spectrum.
struct RankResult {
  int rank = 0;
  std::vector<double> singular_values;  // descending
  double tolerance_used = 0.0;
};

/// Counts singular values above rel_tol * sigma_max (absolute 1e-300 when
/// the matrix is zero). rel_tol must lie in (0, 1).
RankResult svd_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-8);

using InputMatrixFn = std::function<Matrix63d(double)>;
using ControlFn = std::function<Eigen::Vector3d(double)>;

struct Trajectory {
  std::vector<double> times;
  std::vector<Vector6d> states;
};

/// Fixed-step classical RK4 integration of xdot = a x + b(t) m(t) over
/// [t0, tf]. Returns steps+1 samples including both endpoints. Throws
/// std::runtime_error if the state leaves the finite range.
Trajectory propagate_ltv(const Matrix6d& a, const InputMatrixFn& input_fn,
                         const ControlFn& control_fn, const Vector6d& x0,
                         double t0, double tf, int steps);

/// 4th-order central finite difference of a matrix-valued function.
/// order 1 gives f', order 2 gives f''.
Eigen::MatrixXd finite_diff(const std::function<Eigen::MatrixXd(double)>& f,
                            double t, double h, int order);

/// Composite Simpson integration of a symmetric-matrix-valued integrand.
/// nodes must be odd and >= 3; the result is symmetrized.
Matrix6d gramian_quadrature(const std::function<Matrix6d(double)>& integrand,
                            double t0, double tf, int nodes);

}  // namespace magctrl
