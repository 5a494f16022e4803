#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace sectionlab {

struct NelderMeadOptions {
  double initial_step = 0.1;
  double size_tol = 1e-10;
  int max_iter = 2000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  /// Best value after each iteration; non-increasing.
  std::vector<double> trace;
};

/// Derivative-free simplex minimization (GSL nmsimplex2).
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts = {});

struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// m-point Gauss-Legendre rule on [a, b]; exact for polynomials of degree <= 2m-1.
GaussLegendre gauss_legendre(int m, double a, double b);

}  // namespace sectionlab
