#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "sectionlab/monomial.hpp"
#include "sectionlab/spherical_basis.hpp"
#include "sectionlab/sphere.hpp"

namespace sectionlab {

/// Element of P^d_n stored as coefficients in SphericalBasis::get(n, d).
class SphericalPoly {
 public:
  SphericalPoly(int n, int d, Eigen::VectorXd coeffs);

  static SphericalPoly zero(int n, int d);

  int dim() const { return n_; }
  int degree() const { return d_; }
  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  const SphericalBasis& basis() const { return SphericalBasis::get(n_, d_); }

  double evaluate(const Eigen::VectorXd& x) const;
  Eigen::VectorXd sample(const SphereGrid& grid) const;

  /// Coefficient-space L2 norm (equals the sphere L2 norm by orthonormality).
  double l2_norm() const { return coeffs_.norm(); }
  /// Average value over the sphere.
  double mean() const;
  /// ||p - mean(p)||_{L2}.
  double deviation_norm() const;

  /// Same function re-expressed in the basis of degree `d`; truncates when d < degree().
  SphericalPoly with_degree(int d) const;

  /// (R p)(u) = p(R^T u).
  SphericalPoly rotated(const Eigen::MatrixXd& r) const;

  SphericalPoly even_part() const;
  SphericalPoly odd_part() const;
  bool is_even(double tol = 1e-12) const;

  MonomialPoly to_monomial() const;

  SphericalPoly operator+(const SphericalPoly& o) const;
  SphericalPoly operator-(const SphericalPoly& o) const;
  SphericalPoly operator*(double s) const;

 private:
  int n_;
  int d_;
  Eigen::VectorXd coeffs_;
};

/// Orthogonal projection pi^d_n of grid samples. Requires grid.exact_degree >= 2d.
SphericalPoly project(const SphereGrid& grid, const Eigen::VectorXd& samples, int d);

/// Restriction of an ambient polynomial to S^{nvars-1}; degree defaults to p.degree().
SphericalPoly from_ambient(const MonomialPoly& p, int d = -1);

/// Restriction of P on R^N to the subspace spanned by the rows of `frame` (n x N, orthonormal rows),
/// in frame coordinates: u -> P(frame^T u).
SphericalPoly restrict_to_frame(const MonomialPoly& p, const Eigen::MatrixXd& frame, int d = -1);

/// Pointwise product projected to degree a.degree() + b.degree() (exact).
SphericalPoly multiply(const SphericalPoly& a, const SphericalPoly& b);

/// Even part, mean removed, normalized: an element of S(F^d_n).
/// Throws ConstantPolynomial if the remainder has norm below tol * max(1, ||p||).
SphericalPoly to_F_space(const SphericalPoly& p, double tol = 1e-10);

/// True iff ||p - mean(p)||_{L2} > tol.
bool is_nonconstant(const SphericalPoly& p, double tol = 1e-10);

struct JoinPoint {
  std::vector<double> t;
  std::vector<SphericalPoly> f;

  /// Throws ValidationError unless t is a probability vector and each f_i lies in S(F^d_n)
  /// (even, zero mean, unit norm within 1e-8) with common n and d.
  void validate() const;
};

/// Normalized projection of (1 + t_1 f_1)...(1 + t_k f_k) to F^{kd}_n.
SphericalPoly join_product(const JoinPoint& j);

struct EvenOdd {
  Eigen::VectorXd even;
  Eigen::VectorXd odd;
};

EvenOdd odd_even_split(const SphereGrid& grid, const Eigen::VectorXd& f);

/// Gaussian-coefficient element of S(F^d_n).
SphericalPoly random_F_element(int n, int d, std::mt19937_64& rng);

/// Gaussian-coefficient element of P^d_n (not normalized).
SphericalPoly random_poly(int n, int d, std::mt19937_64& rng);

/// Indices of the basis functions of degree <= d spanning F^d_n (even degree, non-constant).
std::vector<int> F_space_indices(int n, int d);

}  // namespace sectionlab
