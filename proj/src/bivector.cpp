#include "sectionlab/bivector.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "sectionlab/errors.hpp"
#include "sectionlab/optimize.hpp"

namespace sectionlab {

namespace {

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

Bivector4 random_in(const Eigen::Matrix<double, 6, 3>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::Vector3d g;
  do {
    for (int i = 0; i < 3; ++i) g[i] = gauss(rng);
  } while (g.norm() < 1e-12);
  return basis * g.normalized();
}

}  // namespace

double wedge(const Bivector4& a, const Bivector4& b) {
  return a[0] * b[5] - a[1] * b[4] + a[2] * b[3] + a[3] * b[2] - a[4] * b[1] + a[5] * b[0];
}

double wedge_square(const Bivector4& s) { return wedge(s, s); }

Bivector4 hodge_star(const Bivector4& a) {
  Bivector4 r;
  r << a[5], -a[4], a[3], a[2], -a[1], a[0];
  return r;
}

PlusMinus split_pm(const Bivector4& s) {
  const Bivector4 st = hodge_star(s);
  return {0.5 * (s + st), 0.5 * (s - st)};
}

Eigen::Matrix<double, 6, 3> e_plus_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<double, 6, 3> b = Eigen::Matrix<double, 6, 3>::Zero();
  b(0, 0) = h, b(5, 0) = h;
  b(1, 1) = h, b(4, 1) = -h;
  b(2, 2) = h, b(3, 2) = h;
  return b;
}

Eigen::Matrix<double, 6, 3> e_minus_basis() {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::Matrix<double, 6, 3> b = Eigen::Matrix<double, 6, 3>::Zero();
  b(0, 0) = h, b(5, 0) = -h;
  b(1, 1) = h, b(4, 1) = h;
  b(2, 2) = h, b(3, 2) = -h;
  return b;
}

Eigen::Matrix4d to_skew(const Bivector4& s) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  for (int k = 0; k < 6; ++k) {
    m(kPairs[k][0], kPairs[k][1]) = s[k];
    m(kPairs[k][1], kPairs[k][0]) = -s[k];
  }
  return m;
}

Bivector4 from_skew(const Eigen::Matrix4d& m) {
  Bivector4 s;
  for (int k = 0; k < 6; ++k) s[k] = 0.5 * (m(kPairs[k][0], kPairs[k][1]) - m(kPairs[k][1], kPairs[k][0]));
  return s;
}

Bivector4 wedge_vectors(const Eigen::Vector4d& u, const Eigen::Vector4d& v) {
  Bivector4 s;
  for (int k = 0; k < 6; ++k) {
    const int i = kPairs[k][0], j = kPairs[k][1];
    s[k] = u[i] * v[j] - u[j] * v[i];
  }
  return s;
}

Mat6 lambda2(const Eigen::Matrix4d& r) {
  Mat6 m;
  for (int k = 0; k < 6; ++k) m.col(k) = wedge_vectors(r.col(kPairs[k][0]), r.col(kPairs[k][1]));
  return m;
}

void check_rotation4(const Eigen::Matrix4d& r, double tol) {
  const double orth = (r.transpose() * r - Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff();
  const double det = r.determinant();
  if (!(orth <= tol) || !(std::abs(det - 1.0) <= tol)) {
    std::ostringstream msg;
    msg << "not a rotation: orthogonality defect " << orth << ", det " << det;
    throw NotARotation(msg.str());
  }
}

RhoPair rho_pm(const Eigen::Matrix4d& r) {
  check_rotation4(r);
  const Mat6 l = lambda2(r);
  const auto bp = e_plus_basis();
  const auto bm = e_minus_basis();
  return {bp.transpose() * l * bp, bm.transpose() * l * bm};
}

bool is_decomposable(const Bivector4& s, double tol) { return std::abs(wedge_square(s)) <= tol * s.squaredNorm(); }

Eigen::Matrix<double, 4, 2> plane_from_bivector(const Bivector4& s) {
  if (s.norm() < 1e-14) throw ZeroBivector("plane_from_bivector: zero bivector");
  if (!is_decomposable(s, 1e-8)) {
    std::ostringstream msg;
    msg << "plane_from_bivector: |s^s| = " << std::abs(wedge_square(s)) << " exceeds 1e-8 |s|^2";
    throw NotDecomposable(msg.str());
  }
  const Eigen::Matrix4d m = to_skew(s);
  Eigen::JacobiSVD<Eigen::Matrix4d> svd(m, Eigen::ComputeFullU);
  const Eigen::Vector4d e = svd.matrixU().col(0);
  const Eigen::Vector4d f = (-m * e).normalized();
  Eigen::Matrix<double, 4, 2> p;
  p.col(0) = e;
  // Re-orthogonalize against round-off in the near-decomposable case.
  p.col(1) = (f - e * e.dot(f)).normalized();
  return p;
}

double plane_distance(const Eigen::Matrix<double, 4, 2>& p, const Eigen::Matrix<double, 4, 2>& q) {
  const Eigen::Matrix<double, 4, 2> r = p - q * (q.transpose() * p);
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 2>> svd(r);
  return svd.singularValues()[0];
}

PlaneCheckReport invariant_plane_check(const std::vector<Eigen::Matrix4d>& h, const Bivector4& w_plus,
                                       const Bivector4& w_minus, double tol) {
  std::ostringstream bad;
  int nbad = 0;
  for (std::size_t k = 0; k < h.size(); ++k) {
    check_rotation4(h[k]);
    const Mat6 l = lambda2(h[k]);
    const double dp = (l * w_plus - w_plus).norm(), dm = (l * w_minus - w_minus).norm();
    if (dp > 1e-8 || dm > 1e-8) {
      ++nbad;
      bad << " element " << k << " (w+ moved " << dp << ", w- moved " << dm << ");";
    }
  }
  if (nbad > 0)
    throw PreconditionViolation("invariant_plane_check: " + std::to_string(nbad) +
                                " element(s) do not stabilize the pair:" + bad.str());

  PlaneCheckReport rep;
  rep.plane = plane_from_bivector(w_plus + w_minus);
  for (const auto& r : h) {
    const Eigen::Matrix<double, 4, 2> moved = r * rep.plane;
    const double d = plane_distance(moved, rep.plane);
    rep.deviation.push_back(d);
    rep.max_deviation = std::max(rep.max_deviation, d);
  }
  rep.invariant = rep.max_deviation <= tol;
  return rep;
}

Eigen::Matrix4d givens_product(const Eigen::Matrix<double, 6, 1>& angles) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Identity();
  for (int k = 0; k < 6; ++k) {
    const int i = kPairs[k][0], j = kPairs[k][1];
    const double c = std::cos(angles[k]), s = std::sin(angles[k]);
    Eigen::Matrix4d g = Eigen::Matrix4d::Identity();
    g(i, i) = c, g(j, j) = c, g(i, j) = -s, g(j, i) = s;
    r = r * g;
  }
  return r;
}

PreimageWitness rho_plus_preimage(const Eigen::Matrix3d& target, double tol, std::uint64_t seed) {
  const auto bp = e_plus_basis();
  auto objective = [&](const Eigen::VectorXd& x) {
    const Eigen::Matrix<double, 6, 1> a = x;
    const Eigen::Matrix4d r = givens_product(a);
    return (bp.transpose() * lambda2(r) * bp - target).squaredNorm();
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  PreimageWitness best;
  best.residual = std::numeric_limits<double>::infinity();
  NelderMeadOptions opts;
  opts.initial_step = 0.5;
  opts.size_tol = 1e-12;
  opts.max_iter = 20000;
  for (int attempt = 0; attempt < 20 && !best.found; ++attempt) {
    Eigen::VectorXd x0(6);
    for (int k = 0; k < 6; ++k) x0[k] = attempt == 0 ? 0.0 : angle(rng);
    auto res = nelder_mead(objective, x0, opts);
    // Restart from the best point to shake off simplex collapse.
    opts.initial_step = 0.05;
    res = nelder_mead(objective, res.x, opts);
    opts.initial_step = 0.5;
    const double resid = std::sqrt(std::max(0.0, res.value));
    if (resid < best.residual) {
      best.residual = resid;
      best.rotation = givens_product(Eigen::Matrix<double, 6, 1>(res.x));
      best.found = resid <= tol;
    }
  }
  return best;
}

Eigen::Matrix4d block_torus(double a, double b) {
  Eigen::Matrix4d r = Eigen::Matrix4d::Zero();
  r(0, 0) = std::cos(a), r(0, 1) = -std::sin(a), r(1, 0) = std::sin(a), r(1, 1) = std::cos(a);
  r(2, 2) = std::cos(b), r(2, 3) = -std::sin(b), r(3, 2) = std::sin(b), r(3, 3) = std::cos(b);
  return r;
}

Bivector4 random_unit_plus(std::mt19937_64& rng) { return random_in(e_plus_basis(), rng); }
Bivector4 random_unit_minus(std::mt19937_64& rng) { return random_in(e_minus_basis(), rng); }

}  // namespace sectionlab
