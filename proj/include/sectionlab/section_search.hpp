#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sectionlab/convex_body.hpp"
#include "sectionlab/fourier_support.hpp"

namespace sectionlab {

/// A body in R^N queried through its central 2-dimensional sections. A frame is a 2 x N matrix
/// with orthonormal rows; sections are returned in frame coordinates on the supplied circle grid.
struct SectionFamily {
  enum class Kind { Ellipsoid, Ball, HPolytope, Callback };
  using Callback = std::function<ConvexBody(const Eigen::MatrixXd& frame, GridPtr grid)>;

  Kind kind = Kind::Ball;
  int N = 3;
  std::string name;
  Eigen::VectorXd axes;  // ellipsoid semi-axes
  double radius = 1.0;   // ball
  Eigen::MatrixXd normals;  // H-polytope {x : normals x <= offsets}, one row per facet
  Eigen::VectorXd offsets;
  Callback callback;

  ConvexBody section(const Eigen::MatrixXd& frame, GridPtr grid) const;
};

SectionFamily ellipsoid_family(const Eigen::VectorXd& semi_axes);
SectionFamily ball_family(int N, double radius = 1.0);
SectionFamily hpolytope_family(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets);
SectionFamily cube_family(int N, double half_side = 1.0);
/// `facets` random unit normals at random offsets in [0.5, 1.5], plus the cube [-2,2]^N for boundedness.
SectionFamily random_polytope_family(int N, int facets, std::uint64_t seed);
SectionFamily callback_family(int N, SectionFamily::Callback cb, std::string name = "callback");

/// Polygon {u in R^2 : a u <= b} by Sutherland-Hodgman clipping (vertices as columns, CCW).
/// Throws InvalidArgument if the polygon is unbounded or empty.
Eigen::MatrixXd clip_polygon(const Eigen::MatrixXd& a, const Eigen::VectorXd& b);

struct RoundSearchOptions {
  int degree = 2;
  int resolution = 64;
  int coarse_frames = 200;
  int refine_starts = 3;
  int refine_rounds = 4;
  double tolerance = 1e-8;
  std::uint64_t seed = 1;
};

struct RoundSearchResult {
  Eigen::MatrixXd frame;
  double energy = 0.0;
  ConvexBody body;
  FourierSupport fourier;
  /// Mean support value a0 of the section.
  double radius = 0.0;
  /// d-distance of the section to the centred disk (log max h / min h).
  double disk_distance = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool success = false;
  /// Best energy after each coarse candidate and each refinement iteration; non-increasing.
  std::vector<double> trace;
};

/// Frame minimizing harmonic_energy over G(2,N): coarse Haar sample, then simplex descent over the
/// chart F(X) = orth(F0 + X C) with C an orthonormal complement of F0.
RoundSearchResult round_section_search(const SectionFamily& family, const RoundSearchOptions& opts = {});

}  // namespace sectionlab
