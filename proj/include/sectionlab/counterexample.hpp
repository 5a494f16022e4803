#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "sectionlab/convex_body.hpp"
#include "sectionlab/monomial.hpp"
#include "sectionlab/spherical_poly.hpp"

namespace sectionlab {

/// u -> P(R^T u) for an ambient polynomial P, with exact ambient derivatives.
class RotatedPoly {
 public:
  RotatedPoly(std::shared_ptr<const MonomialPoly> base, Eigen::MatrixXd rotation);

  int dim() const { return static_cast<int>(rotation_.rows()); }
  const Eigen::MatrixXd& rotation() const { return rotation_; }
  const MonomialPoly& base() const { return *base_; }

  double value(const Eigen::VectorXd& u) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& u) const;
  Eigen::VectorXd sample(const SphereGrid& grid) const;

 private:
  // Flattened polynomial: coefficient per term, exponents term-major.
  struct Flat {
    std::vector<double> coef;
    std::vector<int> exps;
  };
  static Flat flatten(const MonomialPoly& p);
  double eval(const Flat& f, const std::vector<double>& powers) const;
  std::vector<double> power_table(const Eigen::VectorXd& x) const;

  std::shared_ptr<const MonomialPoly> base_;
  Eigen::MatrixXd rotation_;
  int max_degree_ = 0;
  Flat value_;
  std::vector<Flat> grad_;
  std::vector<Flat> hess_;  // upper triangle, row-major
};

/// Normalized projection of the product Phi+ Phi- onto S(F^{d1+d2}_n).
SphericalPoly psi_product(const SphericalPoly& plus, const SphericalPoly& minus);

/// Star body with radial function 1 + eps Phi on `grid`. Throws NonpositiveRadius.
ConvexBody radial_body(GridPtr grid, const SphericalPoly& phi, double eps);
ConvexBody radial_body_from_samples(GridPtr grid, const Eigen::VectorXd& phi_samples, double eps);

/// Outward unit normals of the body 1 + eps Phi at the grid nodes.
Eigen::MatrixXd radial_normals(const SphereGrid& grid, const RotatedPoly& phi, double eps);

/// Tangent-plane hull certificate for 1 + eps Phi using exact normals.
ConvexityCertificate certify_radial_poly(const SphereGrid& grid, const RotatedPoly& phi, double eps);

/// Smallest eigenvalue over probe nodes of the tangential Hessian of the gauge |x| / r(x/|x|);
/// nonnegative iff the body 1 + eps Phi is locally convex at every probe node.
double radial_convexity_margin(const RotatedPoly& phi, double eps, const SphereGrid& probe);

/// Largest eps (to relative accuracy rel_tol) with radial_convexity_margin >= 0.
double analytic_epsilon(const RotatedPoly& phi, const SphereGrid& probe, double rel_tol = 1e-3);

/// Ambient polynomials of the orthonormal basis of F^d_n.
std::vector<std::shared_ptr<const MonomialPoly>> F_space_basis_monomials(int n, int d);

struct FindEpsilonOptions {
  int degree = 8;
  int resolution = 48;
  /// 0 selects twice `resolution`.
  int echo_resolution = 0;
  double rel_tol = 1e-3;
  /// Compute the analytic-curvature reference value.
  bool analytic = true;
};

struct EpsilonSample {
  int index = 0;
  int basis_index = 0;
  Eigen::MatrixXd rotation;
};

struct EpsilonSearch {
  int n = 0;
  int sample_count = 0;
  std::uint64_t seed = 0;
  FindEpsilonOptions options;
  /// Certified on both the working grid and the 2x echo grid for every sample.
  double epsilon = 0.0;
  /// Result of the first pass on the working grid alone.
  double coarse_epsilon = 0.0;
  /// min over the sampled shapes of analytic_epsilon (reference, 0 when disabled).
  double analytic_epsilon = 0.0;
  int certificate_evaluations = 0;
  int echo_failures = 0;
  std::string grid_hash;
  std::string echo_grid_hash;
  std::vector<EpsilonSample> manifest;
};

/// Deterministic sample set Phi_i = R_i b_{i mod K}, R_i Haar, b_k the orthonormal basis of F^d_n.
std::vector<EpsilonSample> epsilon_manifest(int n, int sample_count, std::uint64_t seed, int degree = 8);

std::vector<RotatedPoly> manifest_polys(int n, const std::vector<EpsilonSample>& manifest, int degree = 8);

EpsilonSearch find_epsilon(int n, int sample_count, std::uint64_t seed, const FindEpsilonOptions& opts = {});

struct SeparationReport {
  double delta = 0.0;
  int argmin = -1;
  int count = 0;
};

/// min over the field of distance_to_ball.
SeparationReport separation_delta(const std::vector<ConvexBody>& field);

}  // namespace sectionlab
