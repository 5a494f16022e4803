#pragma once

#include <Eigen/Dense>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace sectionlab {

/// Quadrature grid on the unit sphere S^{n-1}, n in {2,3,4}.
///
/// Nodes are stored column-wise. The grid is antipodally symmetric: antipode[i] is the index
/// of -nodes.col(i), which carries the same weight. Integration is exact for every polynomial
/// of total degree <= exact_degree.
///
/// Construction per dimension (resolution R, rounded up to even):
///   n=2  R equally spaced angles.
///   n=3  Gauss-Legendre in z (R/2 nodes) times R equally spaced azimuths.
///   n=4  Hopf coordinates x = (sqrt(1-t) e^{i a}, sqrt(t) e^{i b}); Gauss-Legendre in t
///        (R/4+1 nodes) times R x R equally spaced angles (a, b).
struct SphereGrid {
  int dim = 0;
  int resolution = 0;
  Eigen::MatrixXd nodes;
  Eigen::VectorXd weights;
  std::vector<int> antipode;
  int exact_degree = 0;
  /// Largest angular distance from a probe direction to its nearest node (estimated).
  double covering_radius = 0.0;
  std::string hash;

  int size() const { return static_cast<int>(weights.size()); }
  Eigen::VectorXd node(int i) const { return nodes.col(i); }
};

using GridPtr = std::shared_ptr<const SphereGrid>;

/// Memoized per (n, resolution). Throws InvalidArgument for n outside {2,3,4} or resolution < 8.
GridPtr build_grid(int n, int resolution);

/// Smallest standard grid that integrates polynomials of degree `degree` exactly.
GridPtr grid_for_degree(int n, int degree);

/// Surface measure of S^{n-1}.
double sphere_area(int n);

/// Exact integral of x^alpha over S^{n-1} (zero unless every exponent is even).
double monomial_integral(std::span<const int> alpha);

double integrate(const SphereGrid& grid, const Eigen::VectorXd& samples);

struct Norms {
  double l2 = 0.0;
  double c0 = 0.0;
};

Norms norms(const SphereGrid& grid, const Eigen::VectorXd& samples);

double inner(const SphereGrid& grid, const Eigen::VectorXd& f, const Eigen::VectorXd& g);

/// Samples a callable f(const Eigen::VectorXd&) -> double at every node.
template <class F>
Eigen::VectorXd sample(const SphereGrid& grid, F&& f) {
  Eigen::VectorXd out(grid.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = f(grid.nodes.col(i));
  return out;
}

void check_samples(const SphereGrid& grid, const Eigen::VectorXd& samples);

}  // namespace sectionlab
