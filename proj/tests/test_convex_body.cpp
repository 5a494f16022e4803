#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sectionlab/counterexample.hpp"
#include "sectionlab/convex_body.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/group.hpp"
#include "sectionlab/spherical_poly.hpp"
#include "sectionlab/symmetrize.hpp"

using namespace sectionlab;

TEST_CASE("support_from_vertices") {
  const auto g2 = build_grid(2, 64);
  const auto g3 = build_grid(3, 24);
  CHECK(support_from_vertices(g3, Eigen::MatrixXd::Zero(3, 1)).support.cwiseAbs().maxCoeff() == 0.0);

  Eigen::MatrixXd seg(2, 2);
  seg << 1, -1, 0, 0;
  const ConvexBody s = support_from_vertices(g2, seg);
  CHECK((s.support - g2->nodes.row(0).cwiseAbs().transpose()).cwiseAbs().maxCoeff() < 1e-15);

  const ConvexBody cube = support_from_vertices(g3, cube_vertices(3));
  CHECK((cube.support - g3->nodes.cwiseAbs().colwise().sum().transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(cube.symmetric);
  CHECK(cube.origin_interior);

  CHECK_THROWS(support_from_vertices(g3, Eigen::MatrixXd(3, 0)));
  CHECK_THROWS_AS(support_from_vertices(g3, Eigen::MatrixXd::Zero(2, 3)), SizeMismatch);
}

TEST_CASE("hausdorff: balls and identity") {
  const auto g = build_grid(3, 24);
  CHECK(std::abs(hausdorff(ball(g, 0.4), ball(g, 1.3)) - 0.9) < 1e-14);
  std::mt19937_64 rng(1);
  const ConvexBody a = support_from_vertices(g, random_points_in_ball(3, 10, rng));
  CHECK(hausdorff(a, a) == 0.0);
  CHECK_THROWS(hausdorff(a, ball(build_grid(2, 32))));
}

TEST_CASE("hausdorff: brute-force set distance") {
  std::mt19937_64 rng(2);
  for (int n : {2, 3}) {
    const auto g = build_grid(n, n == 2 ? 256 : 64);
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::MatrixXd va = random_points_in_ball(n, 8, rng), vb = random_points_in_ball(n, 8, rng);
      const double grid_value = hausdorff(support_from_vertices(g, va), support_from_vertices(g, vb));
      const double exact = oracle::hull_hausdorff(va, vb);
      CHECK(std::abs(grid_value - exact) <= 2.0 * g->covering_radius);
      CHECK(grid_value <= exact + 1e-6);
    }
  }
}

TEST_CASE("bm_distance: scale invariance and ball vs cube") {
  for (int n : {2, 3, 4}) {
    const auto g = build_grid(n, n == 2 ? 256 : n == 3 ? 48 : 16);
    const ConvexBody cube = support_from_vertices(g, cube_vertices(n));
    const ConvexBody scaled = support_from_vertices(g, 2.5 * cube_vertices(n));
    CHECK(std::abs(bm_distance(cube, scaled)) < 1e-12);
    // Oracle: inradius 1 and circumradius sqrt(n) of the cube.
    const double s = 1.0, t = std::sqrt(static_cast<double>(n));
    CHECK(std::abs(bm_distance(ball(g), cube) - std::log(t / s)) < 1e-6);
  }
}

TEST_CASE("bm_distance: symmetric in its arguments") {
  std::mt19937_64 rng(3);
  const auto g = build_grid(3, 32);
  for (int k = 0; k < 100; ++k) {
    Eigen::MatrixXd va = random_points_in_ball(3, 6, rng), vb = random_points_in_ball(3, 6, rng);
    Eigen::MatrixXd sa(3, 12), sb(3, 12);
    sa << va, -va;
    sb << vb, -vb;
    const ConvexBody a = support_from_vertices(g, sa), b = support_from_vertices(g, sb);
    if (!a.origin_interior || !b.origin_interior) continue;
    CHECK(std::abs(bm_distance(a, b, false) - bm_distance(b, a, false)) < 1e-10);
  }
}

TEST_CASE("bm_distance requires the origin inside") {
  const auto g = build_grid(2, 64);
  Eigen::MatrixXd tri(2, 3);
  tri << 1, 2, 1, 1, 1, 2;
  CHECK_THROWS_AS(bm_distance(ball(g), support_from_vertices(g, tri)), OriginNotInterior);
}

TEST_CASE("distance_to_ball") {
  const auto g = build_grid(3, 48);
  CHECK(distance_to_ball(ball(g, 2.0)) < 1e-14);
  CHECK(std::abs(distance_to_ball(support_from_vertices(g, cube_vertices(3))) - 0.5 * std::log(3.0)) < 1e-6);

  std::mt19937_64 rng(4);
  const SphericalPoly phi = random_F_element(3, 4, rng);
  const double eps = 0.05;
  const Eigen::VectorXd s = phi.sample(*g);
  const double a = s.maxCoeff(), b = -s.minCoeff();
  REQUIRE(a > 0);
  REQUIRE(b > 0);
  // Oracle: the largest inscribed and smallest circumscribed centred balls have radii 1 - eps b, 1 + eps a.
  const ConvexBody body = radial_body(g, phi, eps);
  CHECK(std::abs(distance_to_ball(body, false) - std::log((1 + eps * a) / (1 - eps * b))) < 1e-12);
}

TEST_CASE("radial_from_support") {
  const auto g2 = build_grid(2, 64);
  CHECK((radial_from_support(ball(g2, 0.7)).array() - 0.7).abs().maxCoeff() < 1e-12);

  const ConvexBody sq = support_from_vertices(g2, cube_vertices(2));
  const Eigen::VectorXd r = radial_from_support(sq);
  for (int i = 0; i < g2->size(); ++i) {
    const Eigen::Vector2d u = g2->nodes.col(i);
    if (std::abs(std::abs(u[0]) - std::abs(u[1])) < 1e-12) CHECK(std::abs(r[i] - std::sqrt(2.0)) < 0.05);
  }

  Eigen::MatrixXd off(2, 1);
  off << 3, 0;
  CHECK_THROWS_AS(radial_from_support(support_from_vertices(g2, off)), OriginNotInterior);
}

TEST_CASE("support -> radial -> hull -> support round trip") {
  std::mt19937_64 rng(5);
  for (int n : {2, 3}) {
    const auto g = build_grid(n, n == 2 ? 256 : 48);
    for (int k = 0; k < 5; ++k) {
      Eigen::MatrixXd v(n, 24);
      const Eigen::MatrixXd p = random_points_in_ball(n, 12, rng);
      v << p, -p;
      const ConvexBody a = support_from_vertices(g, v);
      if (!a.origin_interior) continue;
      const Eigen::VectorXd back = support_of_radial_cloud(*g, radial_from_support(a));
      CHECK((back - a.support).cwiseAbs().maxCoeff() <= 2.0 * g->covering_radius);
    }
  }
}

TEST_CASE("certify_convex_radial") {
  for (int n : {2, 3}) {
    const auto g = build_grid(n, n == 2 ? 128 : 32);
    CHECK(certify_convex_radial(*g, Eigen::VectorXd::Ones(g->size())).convex);
  }
  const auto g = build_grid(3, 32);
  MonomialPoly x1sq(3);
  x1sq.add_term({2, 0, 0}, 1.0);
  const SphericalPoly phi = to_F_space(from_ambient(x1sq));
  const Eigen::VectorXd r = 1.0 + 0.9 * phi.sample(*g).array();
  const ConvexityCertificate c = certify_convex_radial(*g, r);
  CHECK_FALSE(c.convex);
  CHECK(c.worst_node >= 0);
  CHECK(c.worst_margin < 0);
  // Oracle: the worst node sits strictly inside the hull of the sampled boundary cloud.
  const Eigen::VectorXd p = r[c.worst_node] * g->nodes.col(c.worst_node);
  const Eigen::VectorXd u = p.normalized();
  const Eigen::VectorXd cloud_h = support_of_radial_cloud(*g, r);
  double inside = std::numeric_limits<double>::infinity();
  for (int i = 0; i < g->size(); ++i) inside = std::min(inside, cloud_h[i] - g->nodes.col(i).dot(p));
  CHECK(inside > 0.0);
  (void)u;

  const auto g2 = build_grid(2, 128);
  const Eigen::VectorXd wobble = sample(*g2, [](const Eigen::VectorXd& x) { return 1.0 + 0.5 * std::cos(4 * std::atan2(x[1], x[0])); });
  CHECK_FALSE(certify_convex_radial(*g2, wobble).convex);
  const Eigen::VectorXd mild = sample(*g2, [](const Eigen::VectorXd& x) { return 1.0 + 0.02 * std::cos(4 * std::atan2(x[1], x[0])); });
  CHECK(certify_convex_radial(*g2, mild).convex);
}

TEST_CASE("group_average") {
  const auto g3 = build_grid(3, 32);
  const ConvexBody cube = support_from_vertices(g3, cube_vertices(3));
  CHECK((group_average(cube, cube_rotation_group(3)).support - cube.support).cwiseAbs().maxCoeff() < 1e-10);

  Eigen::MatrixXd pt(3, 1);
  pt << 0.3, -0.5, 0.2;
  const ConvexBody point = support_from_vertices(g3, pt);
  CHECK(group_average(point, sample_group(GroupTag::PlusMinusIdentity, 3, 1, 0)).support.cwiseAbs().maxCoeff() < 1e-15);

  // Averaging over rotations about e3 gives a body of revolution: constant support on latitudes.
  const ConvexBody rev = group_average(cube, sample_group(GroupTag::Torus, 3, 500, 9));
  std::map<long long, std::pair<double, double>> lat;
  for (int i = 0; i < g3->size(); ++i) {
    const long long key = std::llround(g3->nodes(2, i) * 1e9);
    auto [it, fresh] = lat.try_emplace(key, rev.support[i], rev.support[i]);
    it->second.first = std::min(it->second.first, rev.support[i]);
    it->second.second = std::max(it->second.second, rev.support[i]);
  }
  double spread = 0.0;
  for (const auto& [k, mm] : lat) spread = std::max(spread, mm.second - mm.first);
  CHECK(spread < 1e-3);
}

TEST_CASE("invariance_defect") {
  const auto g = build_grid(3, 32);
  const ConvexBody b = ball(g);
  CHECK(invariance_defect(b, sample_group(GroupTag::SpecialOrthogonal, 3, 50, 1)) < 1e-12);

  const ConvexBody cube = support_from_vertices(g, cube_vertices(3));
  CHECK(invariance_defect(cube, cyclic_group(3, 4)) < 1e-12);
  CHECK(invariance_defect(cube, cyclic_group(3, 8)) > 0.1);

  std::mt19937_64 rng(6);
  const ConvexBody a = support_from_vertices(g, random_points_in_ball(3, 15, rng));
  const GroupSample c8 = cyclic_group(3, 8);
  CHECK(invariance_defect(a, c8) > 1e-3);
  CHECK(invariance_defect(group_average(a, c8), c8) < 1e-10);
}

TEST_CASE("C0/L2 bound") {
  const auto g = build_grid(3, 32);
  const Eigen::VectorXd f = Eigen::VectorXd::Constant(g->size(), 0.5);
  const C0L2Check same = check_c0_l2_bound(*g, f, f);
  CHECK(same.lhs == 0.0);
  CHECK(same.rhs == 0.0);
  CHECK(same.ok);
  CHECK_THROWS_AS(check_c0_l2_bound(*g, f * 3.0, f), InvalidArgument);

  std::mt19937_64 rng(7);
  for (int n : {2, 3}) {
    const auto gn = build_grid(n, n == 2 ? 256 : 32);
    for (int k = 0; k < 200; ++k) {
      const ConvexBody a = support_from_vertices(gn, random_points_in_ball(n, 6, rng));
      const ConvexBody b = support_from_vertices(gn, random_points_in_ball(n, 6, rng));
      CHECK(check_c0_l2_bound(*gn, a.support, b.support).ok);
    }
  }
  // C(n) = (4 / C1)^{1/(n+1)}, C1(2) = vol(B^1) / 4 = 1/2.
  CHECK(std::abs(c0_l2_constant(2) - std::pow(8.0, 1.0 / 3.0)) < 1e-12);
}

TEST_CASE("empirical L2 uniform") {
  const L2UniformReport r = empirical_L2_uniform(2, 0.05, 200, 11);
  CHECK(r.resolved);
  CHECK(r.degree >= 0);
  CHECK(r.degree <= 12);
  for (std::size_t d = 1; d < r.max_residual.size(); ++d) CHECK(r.max_residual[d] <= r.max_residual[d - 1] + 1e-12);
  CHECK(r.max_residual[static_cast<std::size_t>(r.degree)] < 0.05);

  // A degree-2 polynomial has zero residual at degree 2.
  std::mt19937_64 rng(12);
  const auto g = build_grid(3, 32);
  const SphericalPoly p = random_poly(3, 2, rng);
  const Eigen::VectorXd s = p.sample(*g);
  CHECK(norms(*g, s - project(*g, s, 2).sample(*g)).l2 < 1e-10);
}

TEST_CASE("thicken and rotate_body") {
  const auto g = build_grid(3, 32);
  CHECK((thicken(support_from_vertices(g, Eigen::MatrixXd::Zero(3, 1)), 1.0).support.array() - 1.0).abs().maxCoeff() < 1e-15);
  Eigen::MatrixXd seg(3, 2);
  seg << 0, 0, 0, 0, 2, -2;
  const ConvexBody st = thicken(support_from_vertices(g, seg), 1.0);
  CHECK((st.support.array() - (2.0 * g->nodes.row(2).transpose().array().abs() + 1.0)).abs().maxCoeff() < 1e-14);
  CHECK(st.origin_interior);

  std::mt19937_64 rng(13);
  const Eigen::MatrixXd r = haar_rotation(3, rng);
  const Eigen::MatrixXd v = random_points_in_ball(3, 7, rng);
  const ConvexBody a = rotate_body(support_from_vertices(g, v), r);
  CHECK((a.support - support_from_vertices(g, r * v).support).cwiseAbs().maxCoeff() < 1e-12);
}
