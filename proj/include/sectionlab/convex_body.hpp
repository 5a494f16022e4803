#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "sectionlab/group.hpp"
#include "sectionlab/sphere.hpp"

namespace sectionlab {

/// Exact description of a support function as a Minkowski combination
///   h(v) = sum_k weight_k * max_j <points_k[:, j], v> + ball_radius * |v|.
/// Vertex bodies, neighbourhoods and group averages all stay in this form, which lets support
/// values be evaluated off the grid.
struct SupportGenerator {
  struct Term {
    double weight = 1.0;
    Eigen::MatrixXd points;  // dim x k
  };
  std::vector<Term> terms;
  double ball_radius = 0.0;

  double evaluate(const Eigen::VectorXd& v) const;
  Eigen::VectorXd evaluate_many(const Eigen::MatrixXd& directions) const;
  std::size_t point_count() const;
};

/// Compact convex set in R^n represented by support samples on a standard grid.
struct ConvexBody {
  int dim = 0;
  GridPtr grid;
  Eigen::VectorXd support;
  std::optional<Eigen::VectorXd> radial;
  std::optional<Eigen::MatrixXd> vertices;  // dim x k
  std::optional<SupportGenerator> generator;
  bool origin_interior = false;
  bool symmetric = false;

  /// Support value in an arbitrary direction: exact through the generator when present,
  /// otherwise interpolated from grid samples (an upper bound built from the nearest nodes).
  double support_at(const Eigen::VectorXd& v) const;
  /// support_at for every column of `directions`.
  Eigen::VectorXd support_at_many(const Eigen::MatrixXd& directions) const;

  /// Recomputes origin_interior and symmetric from the samples.
  void refresh_flags();
};

ConvexBody support_from_vertices(GridPtr grid, const Eigen::MatrixXd& vertices);
ConvexBody ball(GridPtr grid, double radius = 1.0);
ConvexBody from_support_samples(GridPtr grid, Eigen::VectorXd support);

/// Star body with radial function r (grid samples); support is that of the boundary point cloud.
ConvexBody from_radial_samples(GridPtr grid, Eigen::VectorXd radial);

/// Minkowski sum with the ball of radius rho.
ConvexBody thicken(const ConvexBody& a, double rho);

/// The body R A (support v -> h_A(R^T v)).
ConvexBody rotate_body(const ConvexBody& a, const Eigen::MatrixXd& r);

/// C0 distance of support samples; both bodies must live on the same grid.
double hausdorff(const ConvexBody& a, const ConvexBody& b);

/// Metric d = log(t*/s*) for the optimal sandwich s A <= B <= t A. Grid ratios, refined off-grid
/// by a simplex search when both bodies carry generators and `refine` is set.
double bm_distance(const ConvexBody& a, const ConvexBody& b, bool refine = true);

/// log(max r / min r): radial samples when present, otherwise max/min of the support function
/// (equal for convex bodies), refined like bm_distance.
double distance_to_ball(const ConvexBody& a, bool refine = true);

/// r(u) = min over nodes v with <u,v> > 0 of h(v) / <u,v>.
Eigen::VectorXd radial_from_support(const ConvexBody& a);

/// Support samples of the point cloud {r(u) u : u node}.
Eigen::VectorXd support_of_radial_cloud(const SphereGrid& grid, const Eigen::VectorXd& radial);

struct ConvexityCertificate {
  bool convex = false;
  int worst_node = -1;
  /// Most negative margin found (0 when every sample passes with equality).
  double worst_margin = 0.0;
  double tolerance = 0.0;
};

/// Convexity of the star body with radial samples r.
///  n=2  r^2 + 2 r'^2 - r r'' >= -tol with spectral derivatives.
///  n>=3 tangent-plane hull consistency: with outward normal m(u) estimated from a band-limited
///       fit of r, every sample p(u) = r(u) u must satisfy <p(u), m> >= max_w <p(w), m> - tol,
///       i.e. it lies on the boundary of the cloud's hull with that normal.
/// tol < 0 selects the default (1e-9 relative to max r, or max r^2 for n=2).
ConvexityCertificate certify_convex_radial(const SphereGrid& grid, const Eigen::VectorXd& radial, double tol = -1.0);

/// Same test with the outward normals supplied (columns, one per node) instead of estimated.
ConvexityCertificate certify_convex_with_normals(const SphereGrid& grid, const Eigen::VectorXd& radial,
                                                 const Eigen::MatrixXd& normals, double tol = -1.0);

/// Group average F(v) = sum_k w_k h(g_k v), the support of sum_k w_k g_k^T A.
ConvexBody group_average(const ConvexBody& a, const GroupSample& g);

/// max_k ||h - h o g_k||_{C0} over grid nodes.
double invariance_defect(const ConvexBody& a, const GroupSample& g);

/// Constant C(n) = (4 / C1(n))^{1/(n+1)} with C1(n) = vol(B^{n-1}) (sin(1/2)/(1/2))^{n-2} 4^{-(n-1)}.
double c0_l2_constant(int n);

struct C0L2Check {
  double lhs = 0.0;
  double rhs = 0.0;
  double l2 = 0.0;
  bool ok = false;
};

/// ||f - g||_{C0} <= C(n) ||f - g||_{L2}^{2/(n+1)} for support functions of subsets of the unit ball.
/// Throws InvalidArgument if |f| or |g| exceeds 1 (beyond 1e-12).
C0L2Check check_c0_l2_bound(const SphereGrid& grid, const Eigen::VectorXd& f, const Eigen::VectorXd& g);

struct L2UniformReport {
  bool resolved = false;
  int degree = -1;
  double eps = 0.0;
  std::vector<double> max_residual;  // index d = 0..12
};

/// Smallest d <= 12 with ||f - pi^d f||_{L2} < eps for all sampled support functions of random
/// polytopes in the unit ball.
L2UniformReport empirical_L2_uniform(int n, double eps, int trials, std::uint64_t seed);

/// max over node pairs of |h(u) - h(v)| - |u - v| (<= 0 for 1-Lipschitz samples).
double lipschitz_excess(const SphereGrid& grid, const Eigen::VectorXd& h);

/// `count` points uniform in the unit ball of R^n (columns).
Eigen::MatrixXd random_points_in_ball(int n, int count, std::mt19937_64& rng, double radius = 1.0);

}  // namespace sectionlab
