#pragma once

#include <Eigen/Dense>
#include <map>
#include <vector>

namespace sectionlab {

/// Sparse real polynomial in `nvars` ambient variables, stored as exponent vector -> coefficient.
class MonomialPoly {
 public:
  using Exponents = std::vector<int>;

  explicit MonomialPoly(int nvars = 0) : nvars_(nvars) {}

  static MonomialPoly constant(int nvars, double c);
  static MonomialPoly variable(int nvars, int i);

  int nvars() const { return nvars_; }
  int degree() const;
  bool empty() const { return terms_.empty(); }
  const std::map<Exponents, double>& terms() const { return terms_; }

  void add_term(const Exponents& e, double coef);

  MonomialPoly operator+(const MonomialPoly& o) const;
  MonomialPoly operator-(const MonomialPoly& o) const;
  MonomialPoly operator*(const MonomialPoly& o) const;
  MonomialPoly operator*(double s) const;
  MonomialPoly pow(int k) const;

  double evaluate(const Eigen::VectorXd& x) const;
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  /// Partial derivative with respect to variable i.
  MonomialPoly derivative(int i) const;

  /// The polynomial x -> P(A x) in A.cols() variables; A has nvars() rows.
  MonomialPoly compose_linear(const Eigen::MatrixXd& a) const;

  /// True iff P(-x) == P(x) identically (all monomials of even total degree).
  bool is_even(double tol = 0.0) const;

  /// Exact integral over the unit sphere S^{nvars-1}.
  double sphere_integral() const;

 private:
  int nvars_;
  std::map<Exponents, double> terms_;
};

/// Exact L^2(S^{n-1}) inner product of two ambient polynomials.
double sphere_inner(const MonomialPoly& p, const MonomialPoly& q);

}  // namespace sectionlab
