#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "sectionlab/body_field.hpp"
#include "sectionlab/counterexample.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/group.hpp"
#include "sectionlab/quadform.hpp"

using namespace sectionlab;

namespace {

// Vertex set compared as a multiset of columns.
bool same_points(Eigen::MatrixXd a, Eigen::MatrixXd b, double tol) {
  if (a.cols() != b.cols()) return false;
  std::vector<bool> used(static_cast<std::size_t>(b.cols()), false);
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    bool hit = false;
    for (Eigen::Index j = 0; j < b.cols() && !hit; ++j)
      if (!used[static_cast<std::size_t>(j)] && (a.col(i) - b.col(j)).norm() < tol) used[static_cast<std::size_t>(j)] = hit = true;
    if (!hit) return false;
  }
  return true;
}

MonomialPoly x1sq_minus_x2sq(int N) {
  MonomialPoly p(N);
  std::vector<int> e(static_cast<std::size_t>(N), 0);
  e[0] = 2;
  p.add_term(e, 1.0);
  e[0] = 0;
  e[1] = 2;
  p.add_term(e, -1.0);
  return p;
}

Eigen::Matrix3d random_traceless(std::mt19937_64& rng) { return random_unit_quadform(rng).q; }

}  // namespace

TEST_CASE("octahedron: diag(2,1,-3) has lengths 1, 1, 9") {
  const QuadForm3 q = QuadForm3::from_matrix(Eigen::Vector3d(2, 1, -3).asDiagonal());
  CHECK(q.lambda == doctest::Approx(2.0));
  CHECK(q.mu == doctest::Approx(1.0));
  CHECK(q.nu == doctest::Approx(-3.0));
  Eigen::MatrixXd expected(3, 6);
  expected << 0.5, -0.5, 0, 0, 0, 0,
              0, 0, 0.5, -0.5, 0, 0,
              0, 0, 0, 0, 4.5, -4.5;
  CHECK(same_points(octahedron_vertices(q), expected, 1e-12));
}

TEST_CASE("octahedron: diag(1,1,-2) degenerates to a segment of length 4") {
  const QuadForm3 q = QuadForm3::from_matrix(Eigen::Vector3d(1, 1, -2).asDiagonal());
  const Eigen::MatrixXd v = octahedron_vertices(q);
  double top = 0.0;
  for (Eigen::Index i = 0; i < v.cols(); ++i) {
    CHECK(v.col(i).head<2>().norm() < 1e-12);
    top = std::max(top, v(2, i));
  }
  CHECK(std::abs(2.0 * top - 4.0) < 1e-12);
  const auto g = build_grid(3, 24);
  const ConvexBody c = octahedron(g, q);
  CHECK((c.support - 2.0 * g->nodes.row(2).transpose().cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("octahedron: Q = 0 is the origin") {
  const auto g = build_grid(3, 24);
  CHECK(octahedron_vertices(QuadForm3::from_matrix(Eigen::Matrix3d::Zero())).cwiseAbs().maxCoeff() == 0.0);
  CHECK(octahedron(g, QuadForm3::from_matrix(Eigen::Matrix3d::Zero())).support.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("QuadForm3 validation and zero eigenvalue") {
  CHECK_THROWS(QuadForm3::from_matrix(Eigen::Matrix3d::Identity()));
  Eigen::Matrix3d skew = Eigen::Matrix3d::Zero();
  skew(0, 1) = 1;
  CHECK_THROWS(QuadForm3::from_matrix(skew));
  const QuadForm3 q = QuadForm3::from_matrix(Eigen::Vector3d(1, 0, -1).asDiagonal());
  CHECK(std::abs(q.nu) == doctest::Approx(1.0));
  CHECK(std::abs(q.lambda - q.mu) == doctest::Approx(1.0));
}

TEST_CASE("octahedron equivariance") {
  std::mt19937_64 rng(1);
  const auto g = build_grid(3, 24);
  for (int k = 0; k < 20; ++k) {
    const QuadForm3 q = random_unit_quadform(rng);
    const Eigen::Matrix3d r = haar_rotation(3, rng);
    const ConvexBody a = octahedron(g, QuadForm3::from_matrix(r * q.q * r.transpose()));
    const ConvexBody b = rotate_body(octahedron(g, q), r);
    CHECK((a.support - b.support).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("pair_hull") {
  std::mt19937_64 rng(2);
  const auto g = build_grid(3, 24);
  const QuadForm3 q1 = random_unit_quadform(rng), q2 = random_unit_quadform(rng);
  CHECK((pair_hull(g, 1.0, q1, q2).support - octahedron(g, q1).support).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((pair_hull(g, 0.5, q1, q1).support - octahedron(g, q1.scaled(0.5)).support).cwiseAbs().maxCoeff() < 1e-12);

  const ConvexBody h = pair_hull(g, 0.3, q1, q2);
  REQUIRE(h.vertices);
  CHECK(h.vertices->cols() <= 12);
  // Brute force: support of the vertex union.
  Eigen::MatrixXd all(3, 12);
  all << octahedron_vertices(q1.scaled(0.3)), octahedron_vertices(q2.scaled(0.7));
  for (int i = 0; i < g->size(); ++i) {
    const double bf = (all.transpose() * g->nodes.col(i)).maxCoeff();
    CHECK(std::abs(h.support[i] - bf) < 1e-12);
  }
  const QuadForm3 zero = QuadForm3::from_matrix(Eigen::Matrix3d::Zero());
  CHECK_THROWS_AS(pair_hull(g, 0.5, zero, zero), InvalidArgument);
}

TEST_CASE("octahedron continuity across eigenvalue collisions") {
  std::mt19937_64 rng(3);
  const auto g = build_grid(3, 32);
  double worst = 0.0;
  for (double delta : {0.0, 1e-4, 1e-3, 1e-2, 1e-1}) {
    for (double eta : {1e-4, 1e-3, 1e-2}) {
      const Eigen::Matrix3d q = Eigen::Vector3d(1.0, 1.0 - delta, -(2.0 - delta)).asDiagonal();
      for (int k = 0; k < 5; ++k) {
        const Eigen::Matrix3d qp = q + eta * random_traceless(rng);
        const double dh = hausdorff(octahedron(g, QuadForm3::from_matrix(q)), octahedron(g, QuadForm3::from_matrix(qp)));
        worst = std::max(worst, dh / (delta + eta));
      }
    }
  }
  CHECK(worst <= 10.0);
}

TEST_CASE("psi_product") {
  std::mt19937_64 rng(4);
  const SphericalPoly phi = random_F_element(3, 4, rng);
  const SphericalPoly sq = psi_product(phi, phi);
  CHECK(sq.degree() == 8);
  CHECK(is_nonconstant(sq));
  CHECK(std::abs(sq.l2_norm() - 1.0) < 1e-8);
  CHECK(std::abs(sq.mean()) < 1e-8);
  // Square oracle: pointwise phi^2, mean removed, normalized.
  const auto grid = grid_for_degree(3, 16);
  Eigen::VectorXd s = phi.sample(*grid).array().square();
  s.array() -= integrate(*grid, s) / sphere_area(3);
  s /= norms(*grid, s).l2;
  CHECK((s - sq.sample(*grid)).cwiseAbs().maxCoeff() < 1e-9);

  for (int k = 0; k < 5; ++k) {
    const SphericalPoly a = random_F_element(4, 4, rng), b = random_F_element(4, 4, rng);
    const SphericalPoly ab = psi_product(a, b), ba = psi_product(b, a);
    CHECK(ab.coeffs() == ba.coeffs());
    CHECK(std::abs(ab.l2_norm() - 1.0) < 1e-8);
    CHECK(std::abs(ab.mean()) < 1e-8);
  }
}

TEST_CASE("radial_body") {
  std::mt19937_64 rng(5);
  const auto g = build_grid(3, 32);
  const SphericalPoly phi = random_F_element(3, 8, rng);
  const ConvexBody b0 = radial_body(g, phi, 0.0);
  CHECK((b0.support.array() - 1.0).abs().maxCoeff() < 1e-12);
  const ConvexBody b = radial_body(g, phi, 0.02);
  CHECK(b.symmetric);
  for (int i = 0; i < g->size(); ++i) CHECK(std::abs(b.support[i] - b.support[g->antipode[static_cast<std::size_t>(i)]]) < 1e-10);
  CHECK_THROWS_AS(radial_body(g, phi, 100.0), NonpositiveRadius);
}

TEST_CASE("find_epsilon and the separated field (n = 3)") {
  FindEpsilonOptions opts;
  const EpsilonSearch s = find_epsilon(3, 500, 1, opts);
  MESSAGE("epsilon* = " << s.epsilon << ", analytic reference = " << s.analytic_epsilon);
  CHECK(s.epsilon > 1e-3);
  // Echo failures only lower epsilon; the final value is re-verified on the refined grid below.
  MESSAGE("echo failures = " << s.echo_failures);
  CHECK(static_cast<int>(s.manifest.size()) == 500);

  const auto grid = build_grid(3, opts.resolution);
  const auto echo = build_grid(3, 2 * opts.resolution);
  const auto polys = manifest_polys(3, s.manifest);
  std::vector<ConvexBody> field;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    CHECK(certify_radial_poly(*grid, polys[i], 0.0).convex);
    CHECK(certify_radial_poly(*grid, polys[i], s.epsilon).convex);
    CHECK(certify_radial_poly(*echo, polys[i], s.epsilon).convex);
    const Eigen::VectorXd v = polys[i].sample(*grid);
    CHECK(v.maxCoeff() > 0.0);
    CHECK(v.minCoeff() < 0.0);
    field.push_back(radial_body_from_samples(grid, v, s.epsilon));
  }
  // The estimated-normal certificate agrees on a subset.
  for (std::size_t i = 0; i < 20; ++i) CHECK(certify_convex_radial(*grid, field[i].radial.value()).convex);

  const SeparationReport sep = separation_delta(field);
  MESSAGE("delta = " << sep.delta);
  CHECK(sep.delta > 0.0);

  // Monotonicity: once a sample fails it keeps failing for larger eps.
  for (std::size_t i = 0; i < 40; ++i) {
    bool failed = false;
    for (double e = s.epsilon; e < 20 * s.epsilon; e *= 1.5) {
      const bool ok = certify_radial_poly(*grid, polys[i], e).convex;
      if (failed) CHECK_FALSE(ok);
      failed = failed || !ok;
    }
  }
}

TEST_CASE("separation_delta: balls and rotation invariance") {
  const auto g = build_grid(3, 32);
  CHECK(separation_delta({ball(g), ball(g, 2.0)}).delta == 0.0);

  std::mt19937_64 rng(6);
  const SphericalPoly phi = random_F_element(3, 8, rng);
  // A rotation about e3 by a multiple of the azimuthal step maps the grid onto itself.
  const double step = 2.0 * std::numbers::pi / g->resolution;
  const Eigen::MatrixXd r = plane_rotation(3, 0, 1, 5 * step);
  const double d0 = distance_to_ball(radial_body(g, phi, 0.02), false);
  const double d1 = distance_to_ball(radial_body(g, phi.rotated(r), 0.02), false);
  CHECK(std::abs(d0 - d1) < 1e-10);
}

TEST_CASE("build_field: constant section") {
  const auto g = build_grid(3, 24);
  SectionDescriptor d;
  d.kind = SectionKind::Constant;
  d.n = d.N = 3;
  d.ambient = x1sq_minus_x2sq(3);
  const BodyField f = build_field(d, {}, g, {});
  CHECK(f.bodies.size() == 1);
  CHECK(f.continuity.max_body_distance == 0.0);
}

TEST_CASE("build_field: restriction section is continuous") {
  std::mt19937_64 rng(7);
  const auto g = build_grid(3, 32);
  for (BodyRoute route : {BodyRoute::Radial, BodyRoute::Octahedron}) {
    SectionDescriptor d;
    d.kind = SectionKind::Restriction;
    d.n = 3;
    d.N = 5;
    d.ambient = x1sq_minus_x2sq(5);
    d.route = route;
    std::vector<Eigen::MatrixXd> frames;
    std::vector<std::pair<int, int>> adj;
    for (int k = 0; k < 15; ++k) {
      frames.push_back(random_frame(3, 5, rng));
      frames.push_back(perturb_frame(frames.back(), 1e-3, rng));
      adj.emplace_back(2 * k, 2 * k + 1);
    }
    const BodyField f = build_field(d, frames, g, adj);
    for (double a : f.continuity.frame_distance) CHECK(a <= 1.01e-3);
    CHECK(f.continuity.max_body_distance <= 1e-2);
  }
}

TEST_CASE("build_field commutes with a global rotation") {
  std::mt19937_64 rng(8);
  const auto g = build_grid(3, 24);
  const Eigen::MatrixXd rot = haar_rotation(5, rng);
  SectionDescriptor d;
  d.n = 3;
  d.N = 5;
  d.ambient = x1sq_minus_x2sq(5);
  SectionDescriptor dr = d;
  dr.ambient = d.ambient.compose_linear(rot.transpose());
  std::vector<Eigen::MatrixXd> frames, moved;
  for (int k = 0; k < 10; ++k) {
    frames.push_back(random_frame(3, 5, rng));
    moved.push_back(frames.back() * rot.transpose());
  }
  const BodyField a = build_field(d, frames, g), b = build_field(dr, moved, g);
  for (std::size_t k = 0; k < frames.size(); ++k) CHECK((a.bodies[k].support - b.bodies[k].support).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("user field files are validated line by line") {
  const auto dir = std::filesystem::temp_directory_path() / "sectionlab_field_test";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "field.jsonl").string();
  {
    std::ofstream out(path);
    out << R"({"frame": [[1,0,0],[0,1,0],[0,0,1]], "t": 0.5, "q1": [[0.7071067811865476,0,0],[0,-0.7071067811865476,0],[0,0,0]], "q2": [[0,0,0],[0,0.7071067811865476,0],[0,0,-0.7071067811865476]]})" << "\n";
    out << R"({"frame": [[1,0,0],[0,2,0],[0,0,1]], "t": 0.5, "q1": [[0.7071067811865476,0,0],[0,-0.7071067811865476,0],[0,0,0]], "q2": [[0,0,0],[0,0.7071067811865476,0],[0,0,-0.7071067811865476]]})" << "\n";
    out << R"({"frame": [[1,0,0],[0,1,0],[0,0,1]], "poly": {"n": 3, "degree": 1, "coeffs": [0, 1, 0, 0]}})" << "\n";
  }
  try {
    read_field_records(path);
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("line 3") != std::string::npos);
    CHECK(msg.find("line 1") == std::string::npos);
  }
  {
    std::ofstream out(path);
    out.precision(17);
    const double s = 1.0 / std::sqrt(2.0);
    out << R"({"frame": [[1,0,0],[0,1,0],[0,0,1]], "t": 0.5, "q1": [[)" << s << ",0,0],[0," << -s
        << R"(,0],[0,0,0]], "q2": [[0,0,0],[0,)" << s << ",0],[0,0," << -s << "]]}\n";
  }
  SectionDescriptor d;
  d.kind = SectionKind::UserFile;
  d.path = path;
  const BodyField f = build_field(d, {}, build_grid(3, 24));
  REQUIRE(f.bodies.size() == 1);
  CHECK(f.bodies[0].support.minCoeff() >= 1.0 - 1e-12);
}
