#include "sectionlab/quadform.hpp"

#include <cmath>

#include "sectionlab/errors.hpp"

namespace sectionlab {

QuadForm3 QuadForm3::from_matrix(const Eigen::Matrix3d& q) {
  const double scale = std::max(1.0, q.cwiseAbs().maxCoeff());
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) throw InvalidArgument("QuadForm3: matrix is not symmetric");
  if (std::abs(q.trace()) > 1e-12 * scale) throw InvalidArgument("QuadForm3: matrix is not traceless");
  QuadForm3 f;
  f.q = 0.5 * (q + q.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(f.q);
  const Eigen::Vector3d ev = es.eigenvalues();  // ascending
  const Eigen::Matrix3d vec = es.eigenvectors();
  if (ev[1] >= 0.0) {
    f.lambda = ev[2];
    f.mu = ev[1];
    f.e_lambda = vec.col(2);
    f.e_mu = vec.col(1);
    f.e_nu = vec.col(0);
  } else {
    f.lambda = ev[1];
    f.mu = ev[0];
    f.e_lambda = vec.col(1);
    f.e_mu = vec.col(0);
    f.e_nu = vec.col(2);
  }
  f.nu = -f.lambda - f.mu;
  return f;
}

Eigen::Matrix3d traceless_part(const Eigen::Matrix3d& a) {
  const Eigen::Matrix3d s = 0.5 * (a + a.transpose());
  return s - (s.trace() / 3.0) * Eigen::Matrix3d::Identity();
}

QuadForm3 random_unit_quadform(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::Matrix3d a;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a(i, j) = normal(rng);
  Eigen::Matrix3d t = traceless_part(a);
  t /= t.norm();
  return QuadForm3::from_matrix(t);
}

Eigen::Matrix<double, 3, 6> octahedron_vertices(const QuadForm3& q) {
  const double a = 0.5 * (q.lambda - q.mu) * (q.lambda - q.mu);
  const double c = 0.5 * q.nu * q.nu;
  Eigen::Matrix<double, 3, 6> v;
  v.col(0) = a * q.e_lambda;
  v.col(1) = -a * q.e_lambda;
  v.col(2) = a * q.e_mu;
  v.col(3) = -a * q.e_mu;
  v.col(4) = c * q.e_nu;
  v.col(5) = -c * q.e_nu;
  return v;
}

ConvexBody octahedron(GridPtr grid, const QuadForm3& q) {
  if (grid->dim != 3) throw SizeMismatch("octahedron: needs a grid on S^2");
  return support_from_vertices(std::move(grid), octahedron_vertices(q));
}

ConvexBody pair_hull(GridPtr grid, double t, const QuadForm3& q1, const QuadForm3& q2) {
  if (!(t >= 0.0 && t <= 1.0)) throw InvalidArgument("pair_hull: t must lie in [0,1]");
  if (std::abs(q1.norm() - 1.0) > 1e-8 || std::abs(q2.norm() - 1.0) > 1e-8)
    throw InvalidArgument("pair_hull: forms must have unit norm");
  Eigen::MatrixXd v(3, 12);
  v.leftCols(6) = octahedron_vertices(q1.scaled(t));
  v.rightCols(6) = octahedron_vertices(q2.scaled(1.0 - t));
  if (v.colwise().norm().maxCoeff() < 1e-14) throw DegenerateToPoint("pair_hull: hull is the origin");
  return support_from_vertices(std::move(grid), v);
}

}  // namespace sectionlab
