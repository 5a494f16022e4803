#pragma once

#include <Eigen/Dense>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sectionlab/convex_body.hpp"
#include "sectionlab/monomial.hpp"
#include "sectionlab/quadform.hpp"
#include "sectionlab/spherical_poly.hpp"

namespace sectionlab {

enum class SectionKind { Constant, Restriction, UserFile };
enum class BodyRoute { Radial, Octahedron };

/// Which section to evaluate on the sampled frames.
///  Constant     one fixed body (N == n); `ambient` restricted to the identity frame.
///  Restriction  an even polynomial on R^N restricted to each frame.
///  UserFile     JSON-lines records read from `path` (see read_field_records).
struct SectionDescriptor {
  SectionKind kind = SectionKind::Restriction;
  std::string name;
  int n = 3;
  int N = 3;
  MonomialPoly ambient;
  BodyRoute route = BodyRoute::Radial;
  double epsilon = 0.02;
  /// Neighbourhood radius for the octahedron route.
  double thicken_radius = 1.0;
  std::string path;
};

/// One record of a user field file.
struct FieldRecord {
  Eigen::MatrixXd frame;  // n x N
  std::optional<SphericalPoly> poly;
  std::optional<double> t;
  std::optional<Eigen::Matrix3d> q1;
  std::optional<Eigen::Matrix3d> q2;
};

struct ContinuityReport {
  std::vector<std::pair<int, int>> pairs;
  std::vector<double> frame_distance;
  std::vector<double> body_distance;
  double max_body_distance = 0.0;
};

struct BodyField {
  int n = 0;
  int N = 0;
  std::string provenance;
  std::vector<Eigen::MatrixXd> frames;
  std::vector<ConvexBody> bodies;
  ContinuityReport continuity;
};

/// Builds the bodies for every frame and the continuity report over `adjacency`.
/// UserFile descriptors take their frames from the file and ignore `frames`.
BodyField build_field(const SectionDescriptor& desc, const std::vector<Eigen::MatrixXd>& frames, GridPtr grid,
                      const std::vector<std::pair<int, int>>& adjacency = {});

/// d_h between bodies of adjacent frames after aligning frame j to frame i by the orthogonal
/// polar factor of F_i F_j^T.
ContinuityReport continuity_report(const BodyField& field, const std::vector<std::pair<int, int>>& adjacency);

/// Largest principal angle between the row spaces of two n x N frames.
double frame_distance(const Eigen::MatrixXd& f1, const Eigen::MatrixXd& f2);

/// Orthogonal polar factor of a square matrix.
Eigen::MatrixXd polar_orthogonal(const Eigen::MatrixXd& a);

/// Haar-random orthonormal n-frame in R^N (rows).
Eigen::MatrixXd random_frame(int n, int N, std::mt19937_64& rng);

/// Frame moved along a random geodesic of the Stiefel manifold by `angle`, re-orthonormalized.
Eigen::MatrixXd perturb_frame(const Eigen::MatrixXd& f, double angle, std::mt19937_64& rng);

/// Parses a JSON-lines field file. Throws ValidationError naming every offending line
/// (non-orthonormal frames, non-even or non-normalized polynomials, malformed forms).
std::vector<FieldRecord> read_field_records(const std::string& path);

}  // namespace sectionlab
