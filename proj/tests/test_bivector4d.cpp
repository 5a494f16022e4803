#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sectionlab/bivector.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/group.hpp"

using namespace sectionlab;

namespace {

Bivector4 basis(int k) { return Bivector4::Unit(k); }

Eigen::Matrix4d rot4(std::mt19937_64& rng) { return haar_rotation(4, rng); }

Bivector4 gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  Bivector4 s;
  for (int i = 0; i < 6; ++i) s[i] = n(rng);
  return s;
}

}  // namespace

TEST_CASE("hodge star") {
  CHECK(hodge_star(basis(0)) == basis(5));
  std::mt19937_64 rng(1);
  for (int k = 0; k < 100; ++k) {
    const Bivector4 a = gaussian(rng), b = gaussian(rng);
    CHECK((hodge_star(hodge_star(a)) - a).norm() < 1e-15);
    CHECK(std::abs(hodge_star(a).norm() - a.norm()) < 1e-14);
    CHECK(std::abs(hodge_star(a).dot(b) - oracle::four_form(a, b)) < 1e-12);
    CHECK(std::abs(wedge(a, b) - oracle::four_form(a, b)) < 1e-12);
  }
}

TEST_CASE("wedge square is twice the Pfaffian") {
  std::mt19937_64 rng(2);
  for (int k = 0; k < 50; ++k) {
    const Bivector4 s = gaussian(rng);
    const double pf = s[0] * s[5] - s[1] * s[4] + s[2] * s[3];
    CHECK(std::abs(wedge_square(s) - 2 * pf) < 1e-12);
    CHECK(std::abs(wedge_square(s)) <= s.squaredNorm() + 1e-12);
    CHECK(std::abs(std::sqrt(std::abs(to_skew(s).determinant())) - std::abs(pf)) < 1e-10);
  }
  const Bivector4 p = e_plus_basis().col(1);
  CHECK(std::abs(std::abs(wedge_square(p)) - p.squaredNorm()) < 1e-14);
}

TEST_CASE("split_pm") {
  const Bivector4 s = basis(0) + basis(5);
  const PlusMinus a = split_pm(s);
  CHECK((a.plus - s).norm() < 1e-15);
  CHECK(a.minus.norm() < 1e-15);

  const PlusMinus b = split_pm(basis(0));
  CHECK((b.plus - 0.5 * (basis(0) + basis(5))).norm() < 1e-15);
  CHECK((b.minus - 0.5 * (basis(0) - basis(5))).norm() < 1e-15);

  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    const Bivector4 x = gaussian(rng);
    const PlusMinus p = split_pm(x);
    CHECK(std::abs(p.plus.dot(p.minus)) < 1e-14);
    CHECK((p.plus + p.minus - x).norm() < 1e-15);
    CHECK((hodge_star(p.plus) - p.plus).norm() < 1e-15);
    CHECK((hodge_star(p.minus) + p.minus).norm() < 1e-15);
  }
}

TEST_CASE("E+- bases") {
  const auto bp = e_plus_basis(), bm = e_minus_basis();
  CHECK((bp.transpose() * bp - Eigen::Matrix3d::Identity()).norm() < 1e-15);
  CHECK((bm.transpose() * bm - Eigen::Matrix3d::Identity()).norm() < 1e-15);
  CHECK((bp.transpose() * bm).norm() < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK((bp.col(0) - r * (basis(0) + basis(5))).norm() < 1e-15);
  CHECK((bp.col(1) - r * (basis(1) - basis(4))).norm() < 1e-15);
  CHECK((bp.col(2) - r * (basis(2) + basis(3))).norm() < 1e-15);
  CHECK((bm.col(1) - r * (basis(1) + basis(4))).norm() < 1e-15);
}

TEST_CASE("lambda2 matches the basis-pair oracle") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 20; ++k) {
    const Eigen::Matrix4d r = rot4(rng);
    CHECK((lambda2(r) - oracle::lambda2_matrix(r)).norm() < 1e-13);
  }
}

TEST_CASE("rho_pm") {
  const RhoPair id = rho_pm(Eigen::Matrix4d::Identity());
  CHECK((id.plus - Eigen::Matrix3d::Identity()).norm() < 1e-15);
  CHECK((id.minus - Eigen::Matrix3d::Identity()).norm() < 1e-15);

  // Rotation by theta in (e1, e2): fixes (e12 +- e34)/sqrt2 and turns the complementary plane by theta.
  const double th = 0.37;
  const Eigen::Matrix4d r = plane_rotation(4, 0, 1, th);
  const RhoPair p = rho_pm(r);
  const Eigen::Matrix<double, 6, 6> l = oracle::lambda2_matrix(r);
  CHECK((p.plus - e_plus_basis().transpose() * l * e_plus_basis()).norm() < 1e-14);
  CHECK((p.minus - e_minus_basis().transpose() * l * e_minus_basis()).norm() < 1e-14);
  for (const Eigen::Matrix3d& m : {p.plus, p.minus}) {
    CHECK((m.col(0) - Eigen::Vector3d::UnitX()).norm() < 1e-14);
    CHECK(std::abs(m.block<2, 2>(1, 1).trace() - 2 * std::cos(th)) < 1e-14);
    CHECK(std::abs(m.block<2, 2>(1, 1).determinant() - 1.0) < 1e-14);
  }

  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    const Eigen::Matrix4d a = rot4(rng), b = rot4(rng);
    const RhoPair pa = rho_pm(a), pb = rho_pm(b), pab = rho_pm(a * b);
    CHECK((pab.plus - pa.plus * pb.plus).norm() < 1e-10);
    CHECK((pab.minus - pa.minus * pb.minus).norm() < 1e-10);
    CHECK(std::abs(pa.plus.determinant() - 1.0) < 1e-12);
    CHECK(std::abs(pa.minus.determinant() - 1.0) < 1e-12);
  }

  Eigen::Matrix4d refl = Eigen::Matrix4d::Identity();
  refl(0, 0) = -1;
  CHECK_THROWS_AS(rho_pm(refl), NotARotation);
  CHECK_THROWS_AS(rho_pm(2 * Eigen::Matrix4d::Identity()), NotARotation);
}

TEST_CASE("decomposability") {
  CHECK(is_decomposable(basis(0)));
  CHECK_FALSE(is_decomposable(basis(0) + basis(5)));
  CHECK(std::abs(wedge_square(basis(0) + basis(5)) - 2.0) < 1e-15);
  std::mt19937_64 rng(6);
  for (int k = 0; k < 100; ++k) {
    const Bivector4 p = random_unit_plus(rng), m = random_unit_minus(rng);
    CHECK(std::abs(wedge(p, p) - 1.0) < 1e-10);
    CHECK(std::abs(wedge(m, m) + 1.0) < 1e-10);
    CHECK(std::abs(wedge(p, m)) < 1e-10);
    CHECK(is_decomposable(p + m));
  }
}

TEST_CASE("plane_from_bivector") {
  const auto p = plane_from_bivector(std::sqrt(2.0) * basis(0));
  Eigen::Matrix<double, 4, 2> e12 = Eigen::Matrix<double, 4, 2>::Zero();
  e12(0, 0) = e12(1, 1) = 1;
  CHECK(plane_distance(p, e12) < 1e-12);

  const double r = 1.0 / std::sqrt(2.0);
  const Bivector4 wp = r * (basis(0) + basis(5)), wm = r * (basis(0) - basis(5));
  const Bivector4 s = wp + wm;
  CHECK((s - std::sqrt(2.0) * basis(0)).norm() < 1e-15);
  CHECK(plane_distance(plane_from_bivector(s), e12) < 1e-12);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 100; ++k) {
    const Eigen::Vector4d u = Eigen::Vector4d::Random(), v = Eigen::Vector4d::Random();
    const Bivector4 w = oracle::wedge_uv(u, v);
    const auto f = plane_from_bivector(w);
    const Bivector4 ef = oracle::wedge_uv(f.col(0), f.col(1));
    CHECK(std::abs(std::abs(ef.dot(w)) - ef.norm() * w.norm()) < 1e-8 * w.norm());
    CHECK(ef.dot(w) > 0);
    Eigen::Matrix<double, 4, 2> uv;
    uv << u, v;
    const Eigen::Matrix<double, 4, 2> q = uv.householderQr().householderQ() * Eigen::Matrix<double, 4, 2>::Identity();
    CHECK(plane_distance(f, q) < 1e-8);
  }
  CHECK_THROWS_AS(plane_from_bivector(Bivector4::Zero()), ZeroBivector);
  CHECK_THROWS_AS(plane_from_bivector(basis(0) + basis(5)), NotDecomposable);
}

TEST_CASE("invariant_plane_check") {
  const double r = 1.0 / std::sqrt(2.0);
  const Bivector4 wp = r * (basis(0) + basis(5)), wm = r * (basis(0) - basis(5));
  CHECK(invariant_plane_check({Eigen::Matrix4d::Identity()}, wp, wm).invariant);

  std::vector<Eigen::Matrix4d> h;
  for (int k = 0; k < 50; ++k) h.push_back(block_torus(0.1 * k, -0.23 * k));
  const PlaneCheckReport rep = invariant_plane_check(h, wp, wm);
  CHECK(rep.invariant);
  CHECK(rep.max_deviation < 1e-8);
  Eigen::Matrix<double, 4, 2> e12 = Eigen::Matrix<double, 4, 2>::Zero();
  e12(0, 0) = e12(1, 1) = 1;
  CHECK(plane_distance(rep.plane, e12) < 1e-12);

  // Conjugate family with transported bivectors.
  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    const Eigen::Matrix4d g = rot4(rng);
    std::vector<Eigen::Matrix4d> hc;
    for (const auto& m : h) hc.push_back(g * m * g.transpose());
    const Mat6 l = lambda2(g);
    const PlaneCheckReport c = invariant_plane_check(hc, l * wp, l * wm);
    CHECK(c.invariant);
    CHECK(plane_distance(c.plane, (g * e12).eval()) < 1e-8);
  }

  std::vector<Eigen::Matrix4d> bad = h;
  bad.push_back(plane_rotation(4, 0, 2, 0.4));
  try {
    invariant_plane_check(bad, wp, wm);
    FAIL("expected a precondition violation");
  } catch (const PreconditionViolation& e) {
    CHECK(std::string(e.what()).find("50") != std::string::npos);
  }
}

TEST_CASE("surjectivity witnesses for rho+") {
  for (int axis = 0; axis < 3; ++axis) {
    const Eigen::Matrix3d target = Eigen::AngleAxisd(0.7, Eigen::Vector3d::Unit(axis)).toRotationMatrix();
    const PreimageWitness w = rho_plus_preimage(target);
    CHECK(w.found);
    CHECK((rho_pm(w.rotation).plus - target).norm() < 1e-6);
  }
}
