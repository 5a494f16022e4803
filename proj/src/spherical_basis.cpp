#include "sectionlab/spherical_basis.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "sectionlab/errors.hpp"
#include "sectionlab/hash.hpp"
#include "sectionlab/optimize.hpp"

namespace sectionlab {

double jacobi_p(int k, double a, double b, double x) {
  if (k == 0) return 1.0;
  double p0 = 1.0;
  double p1 = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int j = 2; j <= k; ++j) {
    const double c = 2.0 * j + a + b;
    const double lhs = 2.0 * j * (j + a + b) * (c - 2.0);
    const double p2 = ((c - 1.0) * (c * (c - 2.0) * x + a * a - b * b) * p1 -
                       2.0 * (j + a - 1.0) * (j + b - 1.0) * c * p0) /
                      lhs;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

std::vector<double> jacobi_coefficients(int k, double a, double b) {
  std::vector<double> p0{1.0};
  if (k == 0) return p0;
  std::vector<double> p1{(a + 1.0) - 0.5 * (a + b + 2.0), 0.5 * (a + b + 2.0)};
  for (int j = 2; j <= k; ++j) {
    const double c = 2.0 * j + a + b;
    const double lhs = 2.0 * j * (j + a + b) * (c - 2.0);
    std::vector<double> p2(static_cast<std::size_t>(j + 1), 0.0);
    for (std::size_t i = 0; i < p1.size(); ++i) {
      p2[i + 1] += (c - 1.0) * c * (c - 2.0) * p1[i] / lhs;
      p2[i] += (c - 1.0) * (a * a - b * b) * p1[i] / lhs;
    }
    for (std::size_t i = 0; i < p0.size(); ++i) p2[i] -= 2.0 * (j + a - 1.0) * (j + b - 1.0) * c * p0[i] / lhs;
    p0 = std::move(p1);
    p1 = std::move(p2);
  }
  return p1;
}

int SphericalBasis::dimension(int n, int d) {
  switch (n) {
    case 2: return 2 * d + 1;
    case 3: return (d + 1) * (d + 1);
    case 4: {
      int s = 0;
      for (int l = 0; l <= d; ++l) s += (l + 1) * (l + 1);
      return s;
    }
    default: throw InvalidArgument("spherical basis: n=" + std::to_string(n) + " outside supported range 2..4");
  }
}

namespace {

std::vector<BasisLabel> make_labels(int n, int d) {
  std::vector<BasisLabel> out;
  auto push = [&](int l, int m1, int m2, int k, bool two_parts) {
    out.push_back({l, m1, m2, k, 0});
    if (two_parts) out.push_back({l, m1, m2, k, 1});
  };
  for (int l = 0; l <= d; ++l) {
    if (n == 2) {
      push(l, l, 0, 0, l > 0);
    } else if (n == 3) {
      for (int m = 0; m <= l; ++m) push(l, m, 0, l - m, m > 0);
    } else {
      for (int k = 0; 2 * k <= l; ++k) {
        const int j = l - 2 * k;
        if (j == 0) {
          push(l, 0, 0, k, false);
          continue;
        }
        push(l, 0, j, k, true);
        for (int m1 = 1; m1 <= j; ++m1) {
          const int r = j - m1;
          push(l, m1, r, k, true);
          if (r > 0) push(l, m1, -r, k, true);
        }
      }
    }
  }
  return out;
}

// Squared L2 norm of the unnormalized basis function with this label.
double label_norm2(int n, const BasisLabel& b) {
  const double two_pi = 2.0 * std::numbers::pi;
  if (n == 2) return b.degree == 0 ? two_pi : std::numbers::pi;
  static const GaussLegendre gl_pm = gauss_legendre(40, -1.0, 1.0);
  static const GaussLegendre gl_01 = gauss_legendre(40, 0.0, 1.0);
  if (n == 3) {
    double s = 0.0;
    for (int i = 0; i < gl_pm.nodes.size(); ++i) {
      const double z = gl_pm.nodes[i];
      const double p = jacobi_p(b.k, b.m1, b.m1, z);
      s += gl_pm.weights[i] * std::pow(1.0 - z * z, b.m1) * p * p;
    }
    return s * (b.m1 == 0 ? two_pi : std::numbers::pi);
  }
  const int a2 = std::abs(b.m2);
  double s = 0.0;
  for (int i = 0; i < gl_01.nodes.size(); ++i) {
    const double t = gl_01.nodes[i];
    const double p = jacobi_p(b.k, a2, b.m1, 1.0 - 2.0 * t);
    s += gl_01.weights[i] * std::pow(1.0 - t, b.m1) * std::pow(t, a2) * p * p;
  }
  const double angular = two_pi * two_pi * ((b.m1 == 0 && b.m2 == 0) ? 1.0 : 0.5);
  return 0.5 * s * angular;
}

struct ComplexPoly {
  MonomialPoly re;
  MonomialPoly im;

  ComplexPoly operator*(const ComplexPoly& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
};

ComplexPoly complex_power(const ComplexPoly& base, int p, int nvars) {
  ComplexPoly r{MonomialPoly::constant(nvars, 1.0), MonomialPoly(nvars)};
  for (int i = 0; i < p; ++i) r = r * base;
  return r;
}

}  // namespace

SphericalBasis::SphericalBasis(int n, int d) : n_(n), d_(d) {
  if (n < 2 || n > 4) throw InvalidArgument("spherical basis: n=" + std::to_string(n) + " outside supported range 2..4");
  if (d < 0 || d > kMaxDegree)
    throw InvalidArgument("spherical basis: degree " + std::to_string(d) + " outside 0.." + std::to_string(kMaxDegree));
  labels_ = make_labels(n, d);
  if (static_cast<int>(labels_.size()) != dimension(n, d)) throw Error("spherical basis: label count mismatch");
  ContentHash h;
  h.add(std::int64_t{n});
  h.add(std::int64_t{d});
  inv_norms_.reserve(labels_.size());
  for (const auto& b : labels_) {
    inv_norms_.push_back(1.0 / std::sqrt(label_norm2(n, b)));
    for (int v : {b.degree, b.m1, b.m2, b.k, b.part}) h.add(std::int64_t{v});
    h.add(inv_norms_.back());
  }
  hash_ = h.hex();
}

const SphericalBasis& SphericalBasis::get(int n, int d) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<SphericalBasis>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[{n, d}];
  if (!slot) slot.reset(new SphericalBasis(n, d));
  return *slot;
}

Eigen::VectorXd SphericalBasis::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != n_) throw SizeMismatch("SphericalBasis::evaluate: point dimension mismatch");
  using C = std::complex<double>;
  const C w1(x[0], x[1]);
  std::vector<C> p1(static_cast<std::size_t>(d_ + 1)), p2(static_cast<std::size_t>(d_ + 1));
  p1[0] = p2[0] = 1.0;
  C w2 = n_ == 4 ? C(x[2], x[3]) : C(0.0, 0.0);
  for (int i = 1; i <= d_; ++i) {
    p1[static_cast<std::size_t>(i)] = p1[static_cast<std::size_t>(i - 1)] * w1;
    p2[static_cast<std::size_t>(i)] = p2[static_cast<std::size_t>(i - 1)] * w2;
  }
  const double s = n_ == 3 ? x[2] : (n_ == 4 ? std::norm(w1) - std::norm(w2) : 0.0);
  Eigen::VectorXd out(size());
  for (int j = 0; j < size(); ++j) {
    const auto& b = labels_[static_cast<std::size_t>(j)];
    C c = p1[static_cast<std::size_t>(b.m1)];
    double radial = 1.0;
    if (n_ == 3) {
      radial = jacobi_p(b.k, b.m1, b.m1, s);
    } else if (n_ == 4) {
      const C q = p2[static_cast<std::size_t>(std::abs(b.m2))];
      c *= b.m2 >= 0 ? q : std::conj(q);
      radial = jacobi_p(b.k, std::abs(b.m2), b.m1, s);
    }
    out[j] = (b.part == 0 ? c.real() : c.imag()) * radial * inv_norms_[static_cast<std::size_t>(j)];
  }
  return out;
}

Eigen::MatrixXd SphericalBasis::values_at(const Eigen::MatrixXd& points) const {
  Eigen::MatrixXd out(points.cols(), size());
  for (Eigen::Index i = 0; i < points.cols(); ++i) out.row(i) = evaluate(points.col(i)).transpose();
  return out;
}

const Eigen::MatrixXd& SphericalBasis::grid_values(const SphereGrid& grid) const {
  if (grid.dim != n_) throw SizeMismatch("SphericalBasis::grid_values: grid dimension mismatch");
  std::lock_guard lock(mu_);
  auto it = grid_cache_.find(grid.hash);
  if (it == grid_cache_.end()) it = grid_cache_.emplace(grid.hash, values_at(grid.nodes)).first;
  return it->second;
}

MonomialPoly SphericalBasis::monomial_expansion(int j) const {
  if (j < 0 || j >= size()) throw InvalidArgument("monomial_expansion: index out of range");
  const auto& b = labels_[static_cast<std::size_t>(j)];
  const int nv = n_;
  ComplexPoly w1{MonomialPoly::variable(nv, 0), MonomialPoly::variable(nv, 1)};
  ComplexPoly c = complex_power(w1, b.m1, nv);
  MonomialPoly s(nv);
  double ja = 0.0, jb = 0.0;
  if (n_ == 3) {
    s = MonomialPoly::variable(nv, 2);
    ja = jb = b.m1;
  } else if (n_ == 4) {
    const double sign = b.m2 >= 0 ? 1.0 : -1.0;
    ComplexPoly w2{MonomialPoly::variable(nv, 2), MonomialPoly::variable(nv, 3) * sign};
    c = c * complex_power(w2, std::abs(b.m2), nv);
    s = MonomialPoly::variable(nv, 0).pow(2) + MonomialPoly::variable(nv, 1).pow(2) -
        MonomialPoly::variable(nv, 2).pow(2) - MonomialPoly::variable(nv, 3).pow(2);
    ja = std::abs(b.m2);
    jb = b.m1;
  }
  MonomialPoly radial = MonomialPoly::constant(nv, 1.0);
  if (n_ > 2) {
    const auto coef = jacobi_coefficients(b.k, ja, jb);
    radial = MonomialPoly(nv);
    MonomialPoly power = MonomialPoly::constant(nv, 1.0);
    for (double a : coef) {
      radial = radial + power * a;
      power = power * s;
    }
  }
  const MonomialPoly& part = b.part == 0 ? c.re : c.im;
  return part * radial * inv_norms_[static_cast<std::size_t>(j)];
}

}  // namespace sectionlab
