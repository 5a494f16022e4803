#pragma once

#include <Eigen/Dense>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "sectionlab/monomial.hpp"
#include "sectionlab/sphere.hpp"

namespace sectionlab {

/// Identifies one basis function. `degree` is its polynomial degree; the function has parity
/// (-1)^degree under x -> -x.
struct BasisLabel {
  int degree = 0;
  int m1 = 0;
  int m2 = 0;
  int k = 0;
  int part = 0;  // 0: real/cosine part, 1: imaginary/sine part
};

/// Orthonormal basis of P^d_n (restrictions to S^{n-1} of polynomials of degree <= d) in
/// L^2(S^{n-1}) with unnormalized surface measure.
///
/// The functions separate into an azimuthal Fourier factor and a Jacobi polynomial:
///   n=2  Re/Im (x1 + i x2)^q
///   n=3  Re/Im (x1 + i x2)^m * P_k^{(m,m)}(x3),                              degree m + k
///   n=4  Re/Im (x1 + i x2)^{m1} (x3 +- i x4)^{|m2|} * P_k^{(|m2|,m1)}(|w1|^2 - |w2|^2),  degree m1 + |m2| + 2k
/// Labels are sorted by degree, so the basis of P^{d'}_n is a prefix of the basis of P^d_n for d' <= d.
class SphericalBasis {
 public:
  static constexpr int kMaxDegree = 12;

  /// Cached per (n, d). n in {2,3,4}, 0 <= d <= kMaxDegree.
  static const SphericalBasis& get(int n, int d);

  /// dim P^d_n.
  static int dimension(int n, int d);

  int dim_n() const { return n_; }
  int max_degree() const { return d_; }
  int size() const { return static_cast<int>(labels_.size()); }
  const std::vector<BasisLabel>& labels() const { return labels_; }
  const std::string& hash() const { return hash_; }

  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;

  /// Basis values at every grid node, grid.size() x size(); cached per grid.
  const Eigen::MatrixXd& grid_values(const SphereGrid& grid) const;

  /// Values at arbitrary unit points (columns of `points`), points.cols() x size().
  Eigen::MatrixXd values_at(const Eigen::MatrixXd& points) const;

  /// Ambient polynomial whose restriction to the sphere is basis function j.
  MonomialPoly monomial_expansion(int j) const;

  SphericalBasis(const SphericalBasis&) = delete;
  SphericalBasis& operator=(const SphericalBasis&) = delete;

 private:
  SphericalBasis(int n, int d);

  int n_;
  int d_;
  std::vector<BasisLabel> labels_;
  std::vector<double> inv_norms_;
  std::string hash_;
  mutable std::mutex mu_;
  mutable std::map<std::string, Eigen::MatrixXd> grid_cache_;
};

/// Jacobi polynomial P_k^{(a,b)}(x) by the three-term recurrence.
double jacobi_p(int k, double a, double b, double x);

/// Coefficients (ascending powers of x) of P_k^{(a,b)}.
std::vector<double> jacobi_coefficients(int k, double a, double b);

}  // namespace sectionlab
