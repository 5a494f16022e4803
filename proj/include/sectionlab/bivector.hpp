#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace sectionlab {

/// Bivector in Lambda^2 R^4, coefficients in the order e12, e13, e14, e23, e24, e34.
/// Orientation Omega = e1 ^ e2 ^ e3 ^ e4.
using Bivector4 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

/// Coefficient of Omega in a ^ b.
double wedge(const Bivector4& a, const Bivector4& b);

/// w(s) with s ^ s = w(s) Omega; twice the Pfaffian of the skew matrix.
double wedge_square(const Bivector4& s);

/// Defined by a ^ b = <*a, b> Omega.
Bivector4 hodge_star(const Bivector4& a);

struct PlusMinus {
  Bivector4 plus;
  Bivector4 minus;
};

/// w+- = (s +- *s) / 2.
PlusMinus split_pm(const Bivector4& s);

/// Orthonormal bases of E+ and E- as columns:
///   E+-: (e12 +- e34)/sqrt2, (e13 -+ e24)/sqrt2, (e14 +- e23)/sqrt2.
Eigen::Matrix<double, 6, 3> e_plus_basis();
Eigen::Matrix<double, 6, 3> e_minus_basis();

/// Skew 4x4 matrix S with S_ij = s_ij for i < j.
Eigen::Matrix4d to_skew(const Bivector4& s);
Bivector4 from_skew(const Eigen::Matrix4d& m);

/// u ^ v.
Bivector4 wedge_vectors(const Eigen::Vector4d& u, const Eigen::Vector4d& v);

/// Induced action on Lambda^2: column k is R applied to the k-th basis bivector.
Mat6 lambda2(const Eigen::Matrix4d& r);

/// Throws NotARotation unless R is orthogonal with det +1 within tol.
void check_rotation4(const Eigen::Matrix4d& r, double tol = 1e-10);

struct RhoPair {
  Eigen::Matrix3d plus;
  Eigen::Matrix3d minus;
};

/// rho+- : SO(4) -> SO(3), Lambda^2 R restricted to E+ and E- in the bases above.
RhoPair rho_pm(const Eigen::Matrix4d& r);

/// |w(s)| <= tol |s|^2.
bool is_decomposable(const Bivector4& s, double tol = 1e-8);

/// Orthonormal (e, f) as columns with e ^ f a positive multiple of s. Throws ZeroBivector or
/// NotDecomposable (at tolerance 1e-8).
Eigen::Matrix<double, 4, 2> plane_from_bivector(const Bivector4& s);

/// sin of the largest principal angle between two 2-planes in R^4 (orthonormal columns).
double plane_distance(const Eigen::Matrix<double, 4, 2>& p, const Eigen::Matrix<double, 4, 2>& q);

struct PlaneCheckReport {
  Eigen::Matrix<double, 4, 2> plane;
  /// sin of the largest principal angle between P and R P, per element.
  std::vector<double> deviation;
  double max_deviation = 0.0;
  bool invariant = false;
};

/// Checks that the plane of w+ + w- is invariant under every element. Throws PreconditionViolation
/// listing the elements that move w+ or w- by more than 1e-8.
PlaneCheckReport invariant_plane_check(const std::vector<Eigen::Matrix4d>& h, const Bivector4& w_plus,
                                       const Bivector4& w_minus, double tol = 1e-8);

/// Product of rotations in the six coordinate planes (12, 13, 14, 23, 24, 34) by the given angles.
Eigen::Matrix4d givens_product(const Eigen::Matrix<double, 6, 1>& angles);

struct PreimageWitness {
  Eigen::Matrix4d rotation;
  double residual = 0.0;  // Frobenius norm of rho+(R) - target
  bool found = false;
};

/// Searches for R in SO(4) with rho+(R) = target (simplex search over givens_product angles).
PreimageWitness rho_plus_preimage(const Eigen::Matrix3d& target, double tol = 1e-6, std::uint64_t seed = 1);

/// Block rotation diag(R(a), R(b)) acting on span(e1,e2) and span(e3,e4).
Eigen::Matrix4d block_torus(double a, double b);

/// Unit element of E+ (resp. E-) with Gaussian coordinates.
Bivector4 random_unit_plus(std::mt19937_64& rng);
Bivector4 random_unit_minus(std::mt19937_64& rng);

}  // namespace sectionlab
