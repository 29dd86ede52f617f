#include "magctrl/controllability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace magctrl {

namespace {

constexpr double kBlockMatchTol = 1e-12;

double max_abs(const Eigen::Ref<const Eigen::MatrixXd>& m) {
  return m.cwiseAbs().maxCoeff();
}

struct SystemAtTime {
  SystemMatrices sys;
  InfluenceMatrices infl;
  Matrix63d b;
  Matrix63d b_dot;
  Matrix63d b_ddot;
};

SystemAtTime assemble(const InertiaTensor& j, const OrbitConfig& orbit,
                      double t) {
  SystemAtTime s;
  s.sys = system_matrix(j, orbit.omega0);
  s.infl = influence_matrix(j, orbit, t);
  s.b = full_input_matrix(s.infl);
  s.b_dot.setZero();
  s.b_dot.block<3, 3>(3, 0) = s.infl.b2_dot;
  s.b_ddot.setZero();
  s.b_ddot.block<3, 3>(3, 0) = s.infl.b2_ddot;
  return s;
}

double critical_time(const OrbitConfig& orbit) {
  return 0.5 * std::numbers::pi / orbit.omega0;
}

}  // namespace

KMatrices k_matrices_block_form(const InertiaTensor& j,
                                const OrbitConfig& orbit, double t) {
  const SystemAtTime s = assemble(j, orbit, t);
  const Eigen::Matrix3d& sig = s.sys.sigma1;
  const Eigen::Matrix3d& lam = s.sys.lambda1;
  const Eigen::Matrix3d& b2 = s.infl.b2_matrix;
  const Eigen::Matrix3d& b2d = s.infl.b2_dot;
  const Eigen::Matrix3d& b2dd = s.infl.b2_ddot;

  KMatrices k;
  k.t = t;
  k.k0 = s.b;
  k.k1.block<3, 3>(0, 0) = -0.5 * b2;
  k.k1.block<3, 3>(3, 0) = -sig * b2 + b2d;
  k.k2.block<3, 3>(0, 0) = 0.5 * sig * b2 - b2d;
  k.k2.block<3, 3>(3, 0) =
      0.5 * lam * b2 + sig * sig * b2 - 2.0 * sig * b2d + b2dd;
  return k;
}

KMatrices k_matrices(const InertiaTensor& j, const OrbitConfig& orbit,
                     double t) {
  const SystemAtTime s = assemble(j, orbit, t);
  const Matrix6d& a = s.sys.a_matrix;

  KMatrices k;
  k.t = t;
  k.k0 = s.b;
  k.k1 = -a * s.b + s.b_dot;
  k.k2 = a * a * s.b - 2.0 * a * s.b_dot + s.b_ddot;

  // The block expansions must reproduce the matrix products entrywise.
  const KMatrices blocks = k_matrices_block_form(j, orbit, t);
  const double scale =
      std::max({max_abs(k.k0), max_abs(k.k1), max_abs(k.k2), 1e-300});
  if (max_abs(k.k1 - blocks.k1) > kBlockMatchTol * scale ||
      max_abs(k.k2 - blocks.k2) > kBlockMatchTol * scale) {
    throw std::logic_error(
        "K-matrix block expansion disagrees with the matrix-product form");
  }
  return k;
}

Eigen::Matrix<double, 6, 9> k_concatenation(const KMatrices& k) {
  Eigen::Matrix<double, 6, 9> m;
  m << k.k0, k.k1, k.k2;
  return m;
}

RankResult rank_test(const KMatrices& k, double rel_tol) {
  return svd_rank(k_concatenation(k), rel_tol);
}

bool row_reduction_identity(const KMatrices& k,
                            const Eigen::Matrix3d& sigma1) {
  const Eigen::Matrix<double, 6, 9> m = k_concatenation(k);

  Matrix6d transform = Matrix6d::Identity();
  transform.block<3, 3>(3, 0) = -2.0 * sigma1;
  const Eigen::Matrix<double, 6, 9> reduced = transform * m;

  // Unit lower-triangular left factor: the rank must be unchanged.
  const RankResult before = svd_rank(m);
  const RankResult after = svd_rank(reduced);
  if (before.rank != after.rank) return false;

  const Eigen::Matrix3d b2 = k.k0.block<3, 3>(3, 0);
  const double scale = std::max(max_abs(m), 1e-300);

  // Column block 2: -2 Sigma1 (-B2/2) + (-Sigma1 B2 + B2') = B2'.
  const Eigen::Matrix3d b2_dot = k.k1.block<3, 3>(3, 0) + sigma1 * b2;
  if (max_abs(reduced.block<3, 3>(3, 3) - b2_dot) > kBlockMatchTol * scale) {
    return false;
  }

  // Column block 3 collapses to Lambda1 B2 / 2 + B2''.
  const Eigen::Matrix3d expected = k.k2.block<3, 3>(3, 0) +
                                   2.0 * sigma1 * k.k1.block<3, 3>(3, 0) +
                                   sigma1 * sigma1 * b2;
  return max_abs(reduced.block<3, 3>(3, 6) - expected) <=
         kBlockMatchTol * scale;
}

bool equatorial_degeneracy(const InertiaTensor& j, const OrbitConfig& orbit) {
  if (!orbit.is_equatorial()) {
    throw std::invalid_argument(
        "equatorial_degeneracy requires an equatorial orbit (i_m = 0)");
  }
  const SystemAtTime s = assemble(j, orbit, 0.0);

  Eigen::Matrix<double, 6, 18> ctrb;
  Matrix63d block = s.b;
  for (int p = 0; p < 6; ++p) {
    ctrb.block<6, 3>(0, 3 * p) = block;
    block = s.sys.a_matrix * block;
  }

  const double pitch_row = ctrb.row(1).cwiseAbs().maxCoeff();
  const bool second_row_zero = pitch_row <= 1e-14 * max_abs(ctrb);
  const bool rank_deficient = svd_rank(ctrb).rank <= 5;
  return second_row_zero && rank_deficient;
}

std::pair<double, double> analytic_conditions(const InertiaTensor& j) {
  const double cond1 = j.j33 - j.j22;
  const double cond2 =
      j.j22 * (j.j11 - j.j22 + j.j33) - 6.0 * j.j33 * (j.j33 - j.j11);
  return {cond1, cond2};
}

std::pair<double, double> submatrix_determinant(const InertiaTensor& j,
                                                const OrbitConfig& orbit) {
  const double si = std::sin(orbit.inclination_mag);
  const double ci = std::cos(orbit.inclination_mag);
  if (std::abs(si * ci) < 1e-12) {
    throw std::domain_error(
        "submatrix determinant degenerates when sin(i_m) cos(i_m) = 0");
  }
  const double tc = critical_time(orbit);
  const SystemAtTime s = assemble(j, orbit, tc);
  const GravityGradientCoefficients f = gravity_coefficients(j, orbit.omega0);

  // Row-reduced concatenation with rows 1-3 rescaled by 2:
  //   [ 0 | -B2 | Sigma1 B2 - 2 B2' ; B2 | B2' | Lambda1 B2 / 2 + B2'' ].
  const Eigen::Matrix3d& b2 = s.infl.b2_matrix;
  const Eigen::Matrix3d& b2d = s.infl.b2_dot;
  const Eigen::Matrix3d& b2dd = s.infl.b2_ddot;
  Eigen::Matrix<double, 6, 9> reduced;
  reduced.setZero();
  reduced.block<3, 3>(0, 3) = -b2;
  reduced.block<3, 3>(0, 6) = s.sys.sigma1 * b2 - 2.0 * b2d;
  reduced.block<3, 3>(3, 0) = b2;
  reduced.block<3, 3>(3, 3) = b2d;
  reduced.block<3, 3>(3, 6) = 0.5 * s.sys.lambda1 * b2 + b2dd;

  Matrix6d sub;
  const int cols[6] = {0, 1, 3, 4, 6, 7};
  for (int c = 0; c < 6; ++c) {
    sub.col(c) = reduced.col(cols[c]);
  }
  const double numeric = sub.determinant();

  const double b42 = b2(0, 1);
  const double b51 = b2(1, 0);
  const double b61 = b2(2, 0);
  const double b62_d = b2d(2, 1);
  const double b51_dd = b2dd(1, 0);
  const double bracket = b51 * b62_d * f.f46 * b61 -
                         b42 * (0.5 * f.f52 * b51 + b51_dd) * b61 +
                         0.5 * f.f63 * b61 * b42 * b51;
  const double factored = -b42 * (f.f64 * b42 - 2.0 * b62_d) * b51 * bracket;
  return {numeric, factored};
}

double closed_form_combination(const InertiaTensor& j,
                               const OrbitConfig& orbit) {
  const double si = std::sin(orbit.inclination_mag);
  const double ci = std::cos(orbit.inclination_mag);
  const double a3 = std::pow(orbit.semi_major_axis, 3);
  const double mu3 = std::pow(orbit.dipole_strength, 3);
  const double inertia_term = j.j22 * (j.j11 - j.j22 + j.j33) -
                              6.0 * j.j33 * (j.j33 - j.j11);
  return 2.0 * mu3 * orbit.omega0 * orbit.omega0 /
         (a3 * a3 * a3 * j.j11 * j.j22 * j.j22 * j.j33 * j.j33) * si * si *
         ci * inertia_term;
}

double condition1_value(const InertiaTensor& j, const OrbitConfig& orbit) {
  const double si = std::sin(orbit.inclination_mag);
  const double a3 = std::pow(orbit.semi_major_axis, 3);
  return 2.0 * orbit.dipole_strength * orbit.omega0 * si *
         (j.j33 - j.j22) / (a3 * j.j11 * j.j33);
}

GramianResult gramian(const InertiaTensor& j, const OrbitConfig& orbit,
                      double t0, double tf, int nodes) {
  const SystemMatrices sys = system_matrix(j, orbit.omega0);
  const auto integrand = [&](double tau) -> Matrix6d {
    const Matrix6d phi = expm(sys.a_matrix, t0 - tau);
    const Matrix63d m = phi * full_input_matrix(influence_matrix(j, orbit, tau));
    return m * m.transpose();
  };

  GramianResult result;
  result.matrix = gramian_quadrature(integrand, t0, tf, nodes);
  Eigen::SelfAdjointEigenSolver<Matrix6d> eig(result.matrix);
  result.eigenvalues = eig.eigenvalues().reverse();
  return result;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Controllable:
      return "Controllable";
    case Verdict::NotControllableEquatorial:
      return "NotControllableEquatorial";
    case Verdict::ConditionsViolated:
      return "ConditionsViolated";
    case Verdict::Inconclusive:
      return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace magctrl
