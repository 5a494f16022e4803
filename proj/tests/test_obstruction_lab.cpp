#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/fourier_support.hpp"
#include "sectionlab/group.hpp"
#include "sectionlab/mod2_poly.hpp"
#include "sectionlab/section_search.hpp"
#include "sectionlab/symmetrize.hpp"

using namespace sectionlab;
using std::numbers::pi;

namespace {

Eigen::VectorXd angles(const SphereGrid& g) {
  Eigen::VectorXd a(g.size());
  for (int i = 0; i < g.size(); ++i) a[i] = std::atan2(g.nodes(1, i), g.nodes(0, i));
  return a;
}

// a0 + sum_{q=lo..hi} (a_q cos q t + b_q sin q t) with random coefficients of size `amp`.
Eigen::VectorXd random_trig(const Eigen::VectorXd& t, int lo, int hi, double amp, std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Eigen::VectorXd f = Eigen::VectorXd::Zero(t.size());
  for (int q = lo; q <= hi; ++q) {
    const double a = amp * n(rng), b = amp * n(rng);
    f += (a * (q * t).array().cos() + b * (q * t).array().sin()).matrix();
  }
  return f;
}

}  // namespace

TEST_CASE("fourier_analyze: centred and translated disks") {
  const auto g = build_grid(2, 128);
  const FourierSupport d = fourier_analyze(ball(g, 1.7), 5);
  CHECK(std::abs(d.a0 - 1.7) < 1e-14);
  CHECK(d.a.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(d.b.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(harmonic_energy(d, 5) < 1e-28);

  const Eigen::Vector2d c(0.3, -0.2);
  const Eigen::VectorXd h = (1.0 + (g->nodes.transpose() * c).array()).matrix();
  const FourierSupport t = fourier_analyze(*g, h, 5);
  CHECK(std::abs(t.a[0] - c[0]) < 1e-14);
  CHECK(std::abs(t.b[0] - c[1]) < 1e-14);
  CHECK(t.a.tail(4).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(std::abs(harmonic_energy(t, 3) - c.squaredNorm()) < 1e-14);
}

TEST_CASE("fourier_analyze: square against the closed form") {
  const auto g = build_grid(2, 4096);
  const FourierSupport s = fourier_analyze(support_from_vertices(g, cube_vertices(2)), 16);
  CHECK(std::abs(s.a0 - oracle::square_support_cos_coeff(0)) < 1e-6);
  for (int q = 1; q <= 16; ++q) {
    CHECK(std::abs(s.b[q - 1]) < 1e-10);
    CHECK(std::abs(s.a[q - 1] - oracle::square_support_cos_coeff(q)) < 1e-5);
  }
}

TEST_CASE("fourier_analyze reconstructs band-limited functions") {
  const auto g = build_grid(2, 64);
  std::mt19937_64 rng(1);
  const Eigen::VectorXd h = (5.0 + random_trig(angles(*g), 1, 7, 0.1, rng).array()).matrix();
  CHECK((fourier_analyze(*g, h, 7).sample(*g) - h).cwiseAbs().maxCoeff() < 1e-10);
  CHECK_THROWS(fourier_analyze(*g, h, 40));
  CHECK_THROWS(fourier_analyze(*build_grid(3, 16), Eigen::VectorXd::Ones(build_grid(3, 16)->size()), 2));
}

TEST_CASE("harmonic energy is rotation invariant") {
  const auto g = build_grid(2, 2048);
  std::mt19937_64 rng(2);
  const Eigen::MatrixXd v = random_points_in_ball(2, 9, rng);
  const ConvexBody a = support_from_vertices(g, v);
  for (double th : {0.3, 1.1, 2.9}) {
    const ConvexBody b = support_from_vertices(g, plane_rotation(2, 0, 1, th) * v);
    for (int d : {1, 2, 4}) CHECK(std::abs(harmonic_energy(fourier_analyze(a, d), d) - harmonic_energy(fourier_analyze(b, d), d)) < 1e-5);
  }
}

TEST_CASE("round_section_search: triaxial ellipsoids") {
  for (const Eigen::Vector3d axes : {Eigen::Vector3d(1, 2, 3), Eigen::Vector3d(1, 1.1, 4), Eigen::Vector3d(0.5, 2, 2.5)}) {
    const RoundSearchResult r = round_section_search(ellipsoid_family(axes));
    CHECK(r.success);
    CHECK(r.energy < 1e-8);
    CHECK(std::abs(r.radius - axes[1]) < 1e-6);
    CHECK(r.disk_distance < 1e-6);
    // Oracle: the plane contains the middle axis and one of the two classical directions.
    const Eigen::MatrixXd f = r.frame;
    const Eigen::Vector3d r0 = f.row(0).transpose(), r1 = f.row(1).transpose();
    const Eigen::Vector3d nrm = r0.cross(r1).normalized();
    CHECK(std::abs(nrm[1]) < 1e-6);
    const double c2 = oracle::ellipsoid_section_cos2(axes[0], axes[1], axes[2]);
    // The normal is perpendicular to (cos t, 0, +-sin t), so nrm = (+-sin t, 0, cos t) up to sign.
    CHECK(std::abs(nrm[2] * nrm[2] - c2) < 1e-6);
    for (double t = 0; t < 2 * pi; t += 0.3) {
      const Eigen::VectorXd u = std::cos(t) * f.row(0).transpose() + std::sin(t) * f.row(1).transpose();
      CHECK(std::abs(oracle::ellipsoid_radius(axes, u) - axes[1]) < 1e-6);
    }
  }
}

TEST_CASE("round_section_search: balls and cube") {
  const RoundSearchResult b = round_section_search(ball_family(4, 1.3));
  CHECK(b.energy < 1e-28);
  CHECK(b.trace.front() < 1e-28);
  CHECK(b.iterations == 0);

  RoundSearchOptions o;
  o.degree = 1;
  const RoundSearchResult c = round_section_search(cube_family(3), o);
  CHECK(c.energy < 1e-8);
  // Central sections of a centrally symmetric body have no odd harmonics.
  const FourierSupport fs = fourier_analyze(c.body, 5);
  for (int q = 1; q <= 5; q += 2) CHECK(std::abs(fs.a[q - 1]) + std::abs(fs.b[q - 1]) < 1e-10);
}

TEST_CASE("round_section_search: trace is non-increasing") {
  RoundSearchOptions o;
  o.degree = 3;
  o.coarse_frames = 60;
  const RoundSearchResult r = round_section_search(random_polytope_family(6, 25, 3), o);
  for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
  CHECK(r.trace.back() == r.energy);
}

TEST_CASE("clip_polygon") {
  Eigen::MatrixXd a(4, 2);
  a << 1, 0, -1, 0, 0, 1, 0, -1;
  const Eigen::MatrixXd v = clip_polygon(a, Eigen::Vector4d::Ones());
  CHECK(v.cols() == 4);
  CHECK(std::abs(v.cwiseAbs().maxCoeff() - 1.0) < 1e-12);
  CHECK_THROWS_AS(clip_polygon(a.topRows(3), Eigen::Vector3d::Ones()), InvalidArgument);
  CHECK_THROWS_AS(hpolytope_family(a, -Eigen::Vector4d::Ones()), InvalidArgument);
}

TEST_CASE("sturm_hurwitz_count") {
  const auto g = build_grid(2, 360);
  const Eigen::VectorXd t = angles(*g);
  const Eigen::VectorXd h = (2.0 + 0.1 * (3 * t).array().cos()).matrix();
  CHECK(sturm_hurwitz_count(h, 2.0) == 6);
  CHECK(sturm_hurwitz_count(h, 1.5) == 0);
  CHECK_THROWS_AS(sturm_hurwitz_count(Eigen::VectorXd::Constant(g->size(), 2.0), 2.0), DegenerateFunction);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 1 + trial % 5;
    const Eigen::VectorXd f = random_trig(t, d + 1, d + 4, 0.01, rng);
    const Eigen::VectorXd hh = (3.0 + f.array()).matrix();
    CHECK(sturm_hurwitz_count(hh, fourier_analyze(*g, hh, d).a0) >= 2 * d + 2);
  }
}

TEST_CASE("stiefel_whitney_top") {
  for (int d : {1, 3, 5, 7}) {
    const ExpansionResult r = stiefel_whitney_top(1, d);
    CHECK(r.poly == Mod2SymPoly::variable(1, 0));
  }
  for (int n = 1; n <= 4; ++n)
    for (int d : {1, 3, 5, 7}) {
      const ExpansionResult r = stiefel_whitney_top(n, d);
      CHECK(r.ones_eval == 1);
      CHECK(r.nonzero);
      CHECK(r.poly.is_symmetric());
      CHECK(r.factor_count == multi_index_count(n, d));
    }
  const ExpansionResult r23 = stiefel_whitney_top(2, 3);
  CHECK(r23.factor_count == 4);
  CHECK(r23.poly.monomials() == std::vector<std::vector<int>>{{2, 2}});
  CHECK(r23.poly.to_string() == "x1^2*x2^2");
  for (int n = 1; n <= 3; ++n)
    for (int d : {1, 3, 5}) {
      auto m = stiefel_whitney_top(n, d).poly.monomials();
      std::sort(m.begin(), m.end());
      CHECK(m == oracle::expand_reduce_top(n, d));
    }

  CHECK_THROWS_AS(stiefel_whitney_top(2, 4), InvalidArgument);
  Mod2Options o;
  o.allow_even = true;
  // Even d: the factor 2 x_k vanishes mod 2.
  CHECK(stiefel_whitney_top(2, 2, o).poly.is_zero());
  CHECK(stiefel_whitney_top(2, 2, o).poly.monomials() == oracle::expand_reduce_top(2, 2));
  CHECK_THROWS_AS(stiefel_whitney_top(5, 3), InvalidArgument);
  CHECK_THROWS_AS(stiefel_whitney_top(2, 9), InvalidArgument);
}

TEST_CASE("sw_product_chain") {
  for (int n = 1; n <= 3; ++n) {
    CHECK(sw_product_chain(n, 1).poly == Mod2SymPoly::elementary(n, n));
    for (int dm : {1, 3, 5}) {
      const ExpansionResult c = sw_product_chain(n, dm);
      CHECK_FALSE(c.truncated);
      CHECK(c.ones_eval == 1);
      CHECK(c.nonzero);
      CHECK(c.poly.is_symmetric());
    }
  }
  Mod2Options tight;
  tight.monomial_budget = 3;
  const ExpansionResult t = sw_product_chain(3, 5, tight);
  CHECK(t.truncated);
  CHECK_FALSE(t.message.empty());
}

TEST_CASE("Mod2SymPoly arithmetic and elementary form") {
  const Mod2SymPoly x = Mod2SymPoly::variable(2, 0), y = Mod2SymPoly::variable(2, 1);
  CHECK((x + x).is_zero());
  CHECK((x + y) * (x + y) == x * x + y * y);
  CHECK(Mod2SymPoly::linear({3, 2}) == x);
  CHECK_FALSE((x * x * y).is_symmetric());

  const Mod2SymPoly p = stiefel_whitney_top(2, 3).poly;
  const ElementaryForm e = to_elementary(p);
  CHECK(e.complete);
  CHECK(e.terms == std::vector<std::vector<int>>{{0, 2}});
  for (int n = 2; n <= 3; ++n)
    for (int d : {3, 5}) {
      const Mod2SymPoly q = stiefel_whitney_top(n, d).poly;
      const ElementaryForm f = to_elementary(q);
      REQUIRE(f.complete);
      CHECK(from_elementary(n, f) == q);
    }
}

TEST_CASE("Euler class bookkeeping") {
  CHECK(euler_top_class_coefficient(0) == 1);
  CHECK(euler_top_class_coefficient(5) == 120);
  CHECK(euler_top_class_coefficient(20) == 2432902008176640000ULL);
  CHECK(factorial_mod(5, 7) == 1);
  CHECK(factorial_mod(6, 7) == 6);
  CHECK(factorial_mod(7, 7) == 0);
  CHECK(factorial_mod(30, 1000003) == factorial_mod(29, 1000003) * 30 % 1000003);
}

TEST_CASE("multi_indices") {
  CHECK(multi_indices(2, 3) == std::vector<std::vector<int>>{{3, 0}, {2, 1}, {1, 2}, {0, 3}});
  CHECK(multi_index_count(4, 7) == 120);
  CHECK(static_cast<std::int64_t>(multi_indices(3, 5).size()) == multi_index_count(3, 5));
}
