#pragma once

#include <Eigen/Dense>

#include "sectionlab/convex_body.hpp"

namespace sectionlab {

/// Truncated Fourier series h(a) ~ a0 + sum_{q=1..d} (a_q cos qa + b_q sin qa) of a planar
/// support function. a[q-1], b[q-1] hold the q-th harmonic.
struct FourierSupport {
  double a0 = 0.0;
  Eigen::VectorXd a;
  Eigen::VectorXd b;

  int degree() const { return static_cast<int>(a.size()); }
  double evaluate(double angle) const;
  /// Values at the nodes of a circle grid.
  Eigen::VectorXd sample(const SphereGrid& grid) const;
};

/// Coefficients by the trapezoid rule on the circle grid; exact for band-limited h when the grid
/// resolution exceeds twice the band limit. Requires grid.dim == 2 and resolution > 2d.
FourierSupport fourier_analyze(const SphereGrid& grid, const Eigen::VectorXd& h, int d);
FourierSupport fourier_analyze(const ConvexBody& body, int d);

/// sum_{q=1..d} (a_q^2 + b_q^2).
double harmonic_energy(const FourierSupport& fs, int d);

/// Cyclic sign changes of h - c around the circle. Nodes where |h - c| <= zero_tol count
/// through the signs of their nearest nonzero neighbours. zero_tol < 0 selects
/// 1e-13 * max|h - c|. Throws DegenerateFunction when h - c vanishes at every node.
int sturm_hurwitz_count(const Eigen::VectorXd& h, double c, double zero_tol = -1.0);

}  // namespace sectionlab
