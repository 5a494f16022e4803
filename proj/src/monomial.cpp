#include "sectionlab/monomial.hpp"

#include <cmath>

#include "sectionlab/errors.hpp"
#include "sectionlab/sphere.hpp"

namespace sectionlab {

MonomialPoly MonomialPoly::constant(int nvars, double c) {
  MonomialPoly p(nvars);
  p.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

MonomialPoly MonomialPoly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw InvalidArgument("MonomialPoly::variable: index out of range");
  MonomialPoly p(nvars);
  Exponents e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(i)] = 1;
  p.add_term(e, 1.0);
  return p;
}

int MonomialPoly::degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    d = std::max(d, s);
  }
  return d;
}

void MonomialPoly::add_term(const Exponents& e, double coef) {
  if (static_cast<int>(e.size()) != nvars_) throw InvalidArgument("MonomialPoly: exponent length mismatch");
  if (coef == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0.0) terms_.erase(it);
  }
}

MonomialPoly MonomialPoly::operator+(const MonomialPoly& o) const {
  if (o.nvars_ != nvars_) throw InvalidArgument("MonomialPoly: variable count mismatch");
  MonomialPoly r = *this;
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MonomialPoly MonomialPoly::operator-(const MonomialPoly& o) const { return *this + o * -1.0; }

MonomialPoly MonomialPoly::operator*(const MonomialPoly& o) const {
  if (o.nvars_ != nvars_) throw InvalidArgument("MonomialPoly: variable count mismatch");
  MonomialPoly r(nvars_);
  Exponents e(static_cast<std::size_t>(nvars_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ca * cb);
    }
  }
  return r;
}

MonomialPoly MonomialPoly::operator*(double s) const {
  MonomialPoly r(nvars_);
  for (const auto& [e, c] : terms_) r.add_term(e, c * s);
  return r;
}

MonomialPoly MonomialPoly::pow(int k) const {
  if (k < 0) throw InvalidArgument("MonomialPoly::pow: negative exponent");
  MonomialPoly r = constant(nvars_, 1.0);
  for (int i = 0; i < k; ++i) r = r * *this;
  return r;
}

double MonomialPoly::evaluate(const Eigen::VectorXd& x) const {
  if (x.size() != nvars_) throw SizeMismatch("MonomialPoly::evaluate: point dimension mismatch");
  double s = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) m *= x[i];
    s += m;
  }
  return s;
}

namespace {

double monomial_value(const MonomialPoly::Exponents& e, const Eigen::VectorXd& x) {
  double m = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (int k = 0; k < e[i]; ++k) m *= x[static_cast<Eigen::Index>(i)];
  return m;
}

}  // namespace

Eigen::VectorXd MonomialPoly::gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(nvars_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) {
      const int a = e[static_cast<std::size_t>(i)];
      if (a == 0) continue;
      auto d = e;
      d[static_cast<std::size_t>(i)] -= 1;
      g[i] += c * a * monomial_value(d, x);
    }
  }
  return g;
}

Eigen::MatrixXd MonomialPoly::hessian(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nvars_, nvars_);
  for (const auto& [e, c] : terms_) {
    for (int i = 0; i < nvars_; ++i) {
      const int ai = e[static_cast<std::size_t>(i)];
      if (ai == 0) continue;
      for (int j = i; j < nvars_; ++j) {
        auto d = e;
        double f = c * ai;
        d[static_cast<std::size_t>(i)] -= 1;
        const int aj = d[static_cast<std::size_t>(j)];
        if (aj == 0) continue;
        f *= aj;
        d[static_cast<std::size_t>(j)] -= 1;
        const double v = f * monomial_value(d, x);
        h(i, j) += v;
        if (j != i) h(j, i) += v;
      }
    }
  }
  return h;
}

MonomialPoly MonomialPoly::derivative(int i) const {
  if (i < 0 || i >= nvars_) throw InvalidArgument("MonomialPoly::derivative: index out of range");
  MonomialPoly r(nvars_);
  for (const auto& [e, c] : terms_) {
    const int a = e[static_cast<std::size_t>(i)];
    if (a == 0) continue;
    auto d = e;
    d[static_cast<std::size_t>(i)] -= 1;
    r.add_term(d, c * a);
  }
  return r;
}

MonomialPoly MonomialPoly::compose_linear(const Eigen::MatrixXd& a) const {
  if (a.rows() != nvars_) throw InvalidArgument("compose_linear: matrix rows must equal nvars");
  const int m = static_cast<int>(a.cols());
  std::vector<MonomialPoly> lin;
  lin.reserve(static_cast<std::size_t>(nvars_));
  for (int i = 0; i < nvars_; ++i) {
    MonomialPoly li(m);
    for (int j = 0; j < m; ++j) {
      Exponents e(static_cast<std::size_t>(m), 0);
      e[static_cast<std::size_t>(j)] = 1;
      li.add_term(e, a(i, j));
    }
    lin.push_back(std::move(li));
  }
  MonomialPoly r(m);
  for (const auto& [e, c] : terms_) {
    MonomialPoly t = constant(m, c);
    for (int i = 0; i < nvars_; ++i) t = t * lin[static_cast<std::size_t>(i)].pow(e[static_cast<std::size_t>(i)]);
    r = r + t;
  }
  return r;
}

bool MonomialPoly::is_even(double tol) const {
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int a : e) s += a;
    if (s % 2 != 0 && std::abs(c) > tol) return false;
  }
  return true;
}

double MonomialPoly::sphere_integral() const {
  double s = 0.0;
  for (const auto& [e, c] : terms_) s += c * monomial_integral(e);
  return s;
}

double sphere_inner(const MonomialPoly& p, const MonomialPoly& q) { return (p * q).sphere_integral(); }

}  // namespace sectionlab
