#include "sectionlab/group.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "sectionlab/errors.hpp"

namespace sectionlab {

std::string to_string(GroupTag tag) {
  switch (tag) {
    case GroupTag::SpecialOrthogonal: return "SO";
    case GroupTag::Torus: return "torus";
    case GroupTag::PlusMinusIdentity: return "pm";
    case GroupTag::Finite: return "finite";
  }
  return "finite";
}

GroupTag group_tag_from_string(const std::string& s) {
  if (s == "SO" || s == "so") return GroupTag::SpecialOrthogonal;
  if (s == "torus") return GroupTag::Torus;
  if (s == "pm") return GroupTag::PlusMinusIdentity;
  if (s == "finite") return GroupTag::Finite;
  throw InvalidArgument("unknown group tag '" + s + "' (expected SO, torus, pm or finite)");
}

Eigen::MatrixXd haar_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) a(i, j) = normal(rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0) q.col(j) *= -1.0;
  if (q.determinant() < 0) q.col(0) *= -1.0;
  return q;
}

Eigen::MatrixXd plane_rotation(int n, int i, int j, double angle) {
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) throw InvalidArgument("plane_rotation: bad plane indices");
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  const double c = std::cos(angle), s = std::sin(angle);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return r;
}

Eigen::MatrixXd torus_element(int n, std::span<const double> angles) {
  if (static_cast<int>(angles.size()) != n / 2)
    throw InvalidArgument("torus_element: expected " + std::to_string(n / 2) + " angles");
  Eigen::MatrixXd r = Eigen::MatrixXd::Identity(n, n);
  for (int b = 0; b < n / 2; ++b) {
    const double c = std::cos(angles[static_cast<std::size_t>(b)]);
    const double s = std::sin(angles[static_cast<std::size_t>(b)]);
    r(2 * b, 2 * b) = c;
    r(2 * b + 1, 2 * b + 1) = c;
    r(2 * b, 2 * b + 1) = -s;
    r(2 * b + 1, 2 * b) = s;
  }
  return r;
}

namespace {

void set_equal_weights(GroupSample& g) {
  g.weights.assign(g.elements.size(), 1.0 / static_cast<double>(g.elements.size()));
}

}  // namespace

GroupSample sample_group(GroupTag tag, int n, int count, std::uint64_t seed) {
  if (n < 1) throw InvalidArgument("sample_group: n must be >= 1");
  if (count < 1 && tag != GroupTag::PlusMinusIdentity) throw InvalidArgument("sample_group: count must be >= 1");
  GroupSample g;
  g.tag = tag;
  g.dim = n;
  g.seed = seed;
  std::mt19937_64 rng(seed);
  switch (tag) {
    case GroupTag::SpecialOrthogonal:
      for (int k = 0; k < count; ++k) g.elements.push_back(haar_rotation(n, rng));
      break;
    case GroupTag::Torus: {
      const int blocks = n / 2;
      if (blocks == 0) {
        g.elements.push_back(Eigen::MatrixXd::Identity(n, n));
        break;
      }
      const int m = std::max(1, static_cast<int>(std::lround(std::pow(count, 1.0 / blocks))));
      std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
      std::vector<double> shift(static_cast<std::size_t>(blocks));
      for (auto& s : shift) s = unif(rng);
      std::vector<int> idx(static_cast<std::size_t>(blocks), 0);
      std::vector<double> angles(static_cast<std::size_t>(blocks));
      while (true) {
        for (int b = 0; b < blocks; ++b)
          angles[static_cast<std::size_t>(b)] =
              shift[static_cast<std::size_t>(b)] + 2.0 * std::numbers::pi * idx[static_cast<std::size_t>(b)] / m;
        g.elements.push_back(torus_element(n, angles));
        int b = 0;
        while (b < blocks && ++idx[static_cast<std::size_t>(b)] == m) idx[static_cast<std::size_t>(b++)] = 0;
        if (b == blocks) break;
      }
      break;
    }
    case GroupTag::PlusMinusIdentity:
      g.elements.push_back(Eigen::MatrixXd::Identity(n, n));
      g.elements.push_back(-Eigen::MatrixXd::Identity(n, n));
      break;
    case GroupTag::Finite:
      throw InvalidArgument("sample_group: finite groups are built with finite_group/cyclic_group");
  }
  set_equal_weights(g);
  return g;
}

GroupSample sample_torus_independent(int n, int count, std::uint64_t seed) {
  if (count < 1) throw InvalidArgument("sample_torus_independent: count must be >= 1");
  GroupSample g;
  g.tag = GroupTag::Torus;
  g.dim = n;
  g.seed = seed;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
  std::vector<double> angles(static_cast<std::size_t>(n / 2));
  for (int k = 0; k < count; ++k) {
    for (auto& a : angles) a = unif(rng);
    g.elements.push_back(torus_element(n, angles));
  }
  set_equal_weights(g);
  return g;
}

GroupSample finite_group(int n, std::vector<Eigen::MatrixXd> elements) {
  if (elements.empty()) throw InvalidArgument("finite_group: empty element list");
  for (std::size_t k = 0; k < elements.size(); ++k) {
    const auto& e = elements[k];
    if (e.rows() != n || e.cols() != n)
      throw InvalidArgument("finite_group: element " + std::to_string(k) + " has wrong shape");
    const double defect = (e.transpose() * e - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) throw InvalidArgument("finite_group: element " + std::to_string(k) + " is not orthogonal");
  }
  GroupSample g;
  g.tag = GroupTag::Finite;
  g.dim = n;
  g.elements = std::move(elements);
  set_equal_weights(g);
  return g;
}

GroupSample cyclic_group(int n, int order, int i, int j) {
  if (order < 1) throw InvalidArgument("cyclic_group: order must be >= 1");
  std::vector<Eigen::MatrixXd> els;
  for (int k = 0; k < order; ++k) els.push_back(plane_rotation(n, i, j, 2.0 * std::numbers::pi * k / order));
  return finite_group(n, std::move(els));
}

GroupSample cube_rotation_group(int n) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Eigen::MatrixXd> els;
  do {
    for (int signs = 0; signs < (1 << n); ++signs) {
      Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
      for (int r = 0; r < n; ++r) p(r, perm[static_cast<std::size_t>(r)]) = (signs >> r) & 1 ? -1.0 : 1.0;
      if (p.determinant() > 0) els.push_back(p);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return finite_group(n, std::move(els));
}

double orthogonality_defect(const GroupSample& g) {
  double worst = 0.0;
  for (const auto& e : g.elements)
    worst = std::max(worst, (e.transpose() * e - Eigen::MatrixXd::Identity(g.dim, g.dim)).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace sectionlab
