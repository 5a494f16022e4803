#pragma once

#include <vector>

#include "sectionlab/convex_body.hpp"
#include "sectionlab/group.hpp"

namespace sectionlab {

struct SymmetrizeReport {
  double defect_before = 0.0;
  double defect_after = 0.0;
  /// d_h(input, averaged)
  double hausdorff_change = 0.0;
  /// Norms of the odd part of the input support function.
  double odd_l2 = 0.0;
  double odd_c0 = 0.0;
  ConvexBody averaged;
};

SymmetrizeReport symmetrize(const ConvexBody& a, const GroupSample& g);

/// Odd-residual sweep over the bodies conv([-1,1]^n U {(1+s) e_1}): averaging over {+-Id} moves
/// each body by d_h = ||odd part||_C0, and log d_h is fitted against log ||odd part||_L2.
struct ExponentSweep {
  int n = 0;
  int resolution = 0;
  std::vector<double> heights;
  std::vector<double> odd_l2;
  std::vector<double> hausdorff;
  double fitted_exponent = 0.0;
  double expected_exponent = 0.0;
  double relative_error = 0.0;
  bool consistent = false;
};

ExponentSweep odd_residual_exponent_sweep(int n, int resolution, const std::vector<double>& heights,
                                          double rel_tol = 0.2);

/// Vertices of [-1,1]^n (columns).
Eigen::MatrixXd cube_vertices(int n, double half_side = 1.0);

}  // namespace sectionlab
