#pragma once

#include <Eigen/Dense>
#include <random>

#include "sectionlab/convex_body.hpp"

namespace sectionlab {

/// Symmetric traceless 3x3 form with its spectral data. lambda >= mu are the two eigenvalues of
/// equal sign and nu = -lambda - mu the remaining one. When the middle eigenvalue is zero the
/// pair is taken on the positive side; both choices give the same octahedron.
struct QuadForm3 {
  Eigen::Matrix3d q = Eigen::Matrix3d::Zero();
  double lambda = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  Eigen::Vector3d e_lambda = Eigen::Vector3d::UnitX();
  Eigen::Vector3d e_mu = Eigen::Vector3d::UnitY();
  Eigen::Vector3d e_nu = Eigen::Vector3d::UnitZ();

  /// Validates symmetry and trace (1e-12, relative to max(1, |q|)).
  static QuadForm3 from_matrix(const Eigen::Matrix3d& q);

  double norm() const { return q.norm(); }
  QuadForm3 scaled(double s) const { return from_matrix(s * q); }
};

/// Traceless part of a symmetric matrix.
Eigen::Matrix3d traceless_part(const Eigen::Matrix3d& a);

/// Gaussian traceless symmetric form with unit Frobenius norm.
QuadForm3 random_unit_quadform(std::mt19937_64& rng);

/// The six vertices +-((lambda-mu)^2/2) e_lambda, +-((lambda-mu)^2/2) e_mu, +-(nu^2/2) e_nu (columns).
Eigen::Matrix<double, 3, 6> octahedron_vertices(const QuadForm3& q);

ConvexBody octahedron(GridPtr grid, const QuadForm3& q);

/// Convex hull of C(t Q1) and C((1-t) Q2) for unit-norm forms. Throws DegenerateToPoint if the
/// hull is the origin.
ConvexBody pair_hull(GridPtr grid, double t, const QuadForm3& q1, const QuadForm3& q2);

}  // namespace sectionlab
