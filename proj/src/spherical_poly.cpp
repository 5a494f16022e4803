#include "sectionlab/spherical_poly.hpp"

#include <cmath>

#include "sectionlab/errors.hpp"

namespace sectionlab {

SphericalPoly::SphericalPoly(int n, int d, Eigen::VectorXd coeffs) : n_(n), d_(d), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != SphericalBasis::dimension(n, d))
    throw SizeMismatch("SphericalPoly: expected " + std::to_string(SphericalBasis::dimension(n, d)) +
                       " coefficients for (n=" + std::to_string(n) + ", d=" + std::to_string(d) + "), got " +
                       std::to_string(coeffs_.size()));
  if (d < 0 || d > SphericalBasis::kMaxDegree) throw InvalidArgument("SphericalPoly: degree out of range");
}

SphericalPoly SphericalPoly::zero(int n, int d) {
  return SphericalPoly(n, d, Eigen::VectorXd::Zero(SphericalBasis::dimension(n, d)));
}

double SphericalPoly::evaluate(const Eigen::VectorXd& x) const { return basis().evaluate(x).dot(coeffs_); }

Eigen::VectorXd SphericalPoly::sample(const SphereGrid& grid) const { return basis().grid_values(grid) * coeffs_; }

double SphericalPoly::mean() const { return coeffs_[0] / std::sqrt(sphere_area(n_)); }

double SphericalPoly::deviation_norm() const { return coeffs_.tail(coeffs_.size() - 1).norm(); }

SphericalPoly SphericalPoly::with_degree(int d) const {
  const int m = SphericalBasis::dimension(n_, d);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(m);
  const int k = std::min<int>(m, static_cast<int>(coeffs_.size()));
  c.head(k) = coeffs_.head(k);
  return SphericalPoly(n_, d, std::move(c));
}

SphericalPoly SphericalPoly::rotated(const Eigen::MatrixXd& r) const {
  if (r.rows() != n_ || r.cols() != n_) throw SizeMismatch("SphericalPoly::rotated: matrix shape mismatch");
  const GridPtr g = grid_for_degree(n_, 2 * d_);
  const Eigen::MatrixXd pts = r.transpose() * g->nodes;
  const Eigen::VectorXd vals = basis().values_at(pts) * coeffs_;
  return project(*g, vals, d_);
}

namespace {

SphericalPoly parity_part(const SphericalPoly& p, int parity) {
  Eigen::VectorXd c = p.coeffs();
  const auto& labels = p.basis().labels();
  for (Eigen::Index j = 0; j < c.size(); ++j)
    if (labels[static_cast<std::size_t>(j)].degree % 2 != parity) c[j] = 0.0;
  return SphericalPoly(p.dim(), p.degree(), std::move(c));
}

}  // namespace

SphericalPoly SphericalPoly::even_part() const { return parity_part(*this, 0); }
SphericalPoly SphericalPoly::odd_part() const { return parity_part(*this, 1); }

bool SphericalPoly::is_even(double tol) const { return odd_part().l2_norm() <= tol * std::max(1.0, l2_norm()); }

MonomialPoly SphericalPoly::to_monomial() const {
  MonomialPoly r(n_);
  const auto& b = basis();
  for (int j = 0; j < b.size(); ++j)
    if (coeffs_[j] != 0.0) r = r + b.monomial_expansion(j) * coeffs_[j];
  return r;
}

SphericalPoly SphericalPoly::operator+(const SphericalPoly& o) const {
  const int d = std::max(d_, o.d_);
  if (o.n_ != n_) throw SizeMismatch("SphericalPoly: dimension mismatch");
  return SphericalPoly(n_, d, with_degree(d).coeffs_ + o.with_degree(d).coeffs_);
}

SphericalPoly SphericalPoly::operator-(const SphericalPoly& o) const { return *this + o * -1.0; }

SphericalPoly SphericalPoly::operator*(double s) const { return SphericalPoly(n_, d_, coeffs_ * s); }

SphericalPoly project(const SphereGrid& grid, const Eigen::VectorXd& samples, int d) {
  check_samples(grid, samples);
  if (grid.exact_degree < 2 * d)
    throw InvalidArgument("project: grid exact to degree " + std::to_string(grid.exact_degree) +
                          " cannot project to degree " + std::to_string(d));
  const auto& b = SphericalBasis::get(grid.dim, d);
  const Eigen::VectorXd c = b.grid_values(grid).transpose() * samples.cwiseProduct(grid.weights);
  return SphericalPoly(grid.dim, d, c);
}

SphericalPoly from_ambient(const MonomialPoly& p, int d) {
  if (d < 0) d = p.degree();
  const GridPtr g = grid_for_degree(p.nvars(), 2 * d);
  return project(*g, sample(*g, [&](const Eigen::VectorXd& x) { return p.evaluate(x); }), d);
}

SphericalPoly restrict_to_frame(const MonomialPoly& p, const Eigen::MatrixXd& frame, int d) {
  if (frame.cols() != p.nvars()) throw SizeMismatch("restrict_to_frame: frame width must equal ambient dimension");
  return from_ambient(p.compose_linear(frame.transpose()), d < 0 ? p.degree() : d);
}

SphericalPoly multiply(const SphericalPoly& a, const SphericalPoly& b) {
  if (a.dim() != b.dim()) throw SizeMismatch("multiply: dimension mismatch");
  const int d = a.degree() + b.degree();
  const GridPtr g = grid_for_degree(a.dim(), 2 * d);
  return project(*g, a.sample(*g).cwiseProduct(b.sample(*g)), d);
}

SphericalPoly to_F_space(const SphericalPoly& p, double tol) {
  SphericalPoly e = p.even_part();
  Eigen::VectorXd c = e.coeffs();
  c[0] = 0.0;
  const double nrm = c.norm();
  if (nrm < tol * std::max(1.0, p.l2_norm()))
    throw ConstantPolynomial("to_F_space: even zero-mean part has norm " + std::to_string(nrm));
  return SphericalPoly(p.dim(), p.degree(), c / nrm);
}

bool is_nonconstant(const SphericalPoly& p, double tol) { return p.deviation_norm() > tol; }

void JoinPoint::validate() const {
  if (t.empty() || t.size() != f.size()) throw ValidationError("JoinPoint: need matching nonempty t and f lists");
  double s = 0.0;
  for (double ti : t) {
    if (!(ti >= 0.0 && ti <= 1.0)) throw ValidationError("JoinPoint: weights must lie in [0,1]");
    s += ti;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ValidationError("JoinPoint: weights must sum to 1");
  for (std::size_t i = 0; i < f.size(); ++i) {
    const auto& fi = f[i];
    const std::string tag = "JoinPoint entry " + std::to_string(i) + ": ";
    if (fi.dim() != f[0].dim() || fi.degree() != f[0].degree())
      throw ValidationError(tag + "all entries must share n and d");
    if (!fi.is_even(1e-8)) throw ValidationError(tag + "not even");
    if (std::abs(fi.coeffs()[0]) > 1e-8) throw ValidationError(tag + "nonzero mean");
    if (std::abs(fi.l2_norm() - 1.0) > 1e-8) throw ValidationError(tag + "not unit norm");
  }
}

SphericalPoly join_product(const JoinPoint& j) {
  j.validate();
  const int n = j.f[0].dim();
  const int d = j.f[0].degree() * static_cast<int>(j.f.size());
  const GridPtr g = grid_for_degree(n, 2 * d);
  Eigen::VectorXd prod = Eigen::VectorXd::Ones(g->size());
  for (std::size_t i = 0; i < j.f.size(); ++i)
    prod = prod.cwiseProduct((Eigen::VectorXd::Ones(g->size()) + j.t[i] * j.f[i].sample(*g)));
  return to_F_space(project(*g, prod, d));
}

EvenOdd odd_even_split(const SphereGrid& grid, const Eigen::VectorXd& f) {
  check_samples(grid, f);
  EvenOdd r{Eigen::VectorXd(f.size()), Eigen::VectorXd(f.size())};
  for (int i = 0; i < grid.size(); ++i) {
    const double a = f[i], b = f[grid.antipode[static_cast<std::size_t>(i)]];
    r.even[i] = 0.5 * (a + b);
    r.odd[i] = 0.5 * (a - b);
  }
  return r;
}

std::vector<int> F_space_indices(int n, int d) {
  std::vector<int> idx;
  const auto& labels = SphericalBasis::get(n, d).labels();
  for (std::size_t j = 1; j < labels.size(); ++j)
    if (labels[j].degree % 2 == 0) idx.push_back(static_cast<int>(j));
  return idx;
}

SphericalPoly random_F_element(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  const auto idx = F_space_indices(n, d);
  if (idx.empty()) throw InvalidArgument("random_F_element: F^d_n is trivial for d < 2");
  Eigen::VectorXd c = Eigen::VectorXd::Zero(SphericalBasis::dimension(n, d));
  for (int j : idx) c[j] = normal(rng);
  return SphericalPoly(n, d, c / c.norm());
}

SphericalPoly random_poly(int n, int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::VectorXd c(SphericalBasis::dimension(n, d));
  for (auto& x : c) x = normal(rng);
  return SphericalPoly(n, d, c);
}

}  // namespace sectionlab
