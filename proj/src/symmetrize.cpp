#include "sectionlab/symmetrize.hpp"

#include <cmath>

#include "sectionlab/errors.hpp"
#include "sectionlab/spherical_poly.hpp"

namespace sectionlab {

Eigen::MatrixXd cube_vertices(int n, double half_side) {
  Eigen::MatrixXd v(n, 1 << n);
  for (int c = 0; c < (1 << n); ++c)
    for (int i = 0; i < n; ++i) v(i, c) = (c >> i) & 1 ? half_side : -half_side;
  return v;
}

SymmetrizeReport symmetrize(const ConvexBody& a, const GroupSample& g) {
  SymmetrizeReport r;
  r.defect_before = invariance_defect(a, g);
  r.averaged = group_average(a, g);
  r.defect_after = invariance_defect(r.averaged, g);
  r.hausdorff_change = hausdorff(a, r.averaged);
  const EvenOdd eo = odd_even_split(*a.grid, a.support);
  const Norms nr = norms(*a.grid, eo.odd);
  r.odd_l2 = nr.l2;
  r.odd_c0 = nr.c0;
  return r;
}

ExponentSweep odd_residual_exponent_sweep(int n, int resolution, const std::vector<double>& heights, double rel_tol) {
  if (heights.size() < 2) throw InvalidArgument("exponent sweep: need at least two heights");
  ExponentSweep sw;
  sw.n = n;
  sw.resolution = resolution;
  sw.heights = heights;
  sw.expected_exponent = 2.0 / (n + 1);
  const GridPtr grid = build_grid(n, resolution);
  const GroupSample pm = sample_group(GroupTag::PlusMinusIdentity, n, 2, 0);
  const Eigen::MatrixXd cube = cube_vertices(n);
  for (double s : heights) {
    if (!(s > 0.0)) throw InvalidArgument("exponent sweep: heights must be positive");
    Eigen::MatrixXd v(n, cube.cols() + 1);
    v.leftCols(cube.cols()) = cube;
    v.col(cube.cols()) = (1.0 + s) * Eigen::VectorXd::Unit(n, 0);
    const ConvexBody body = support_from_vertices(grid, v);
    const SymmetrizeReport rep = symmetrize(body, pm);
    sw.odd_l2.push_back(rep.odd_l2);
    sw.hausdorff.push_back(rep.hausdorff_change);
  }
  // least-squares slope of log d_h against log ||odd||_L2
  const auto m = static_cast<double>(heights.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < heights.size(); ++i) {
    const double x = std::log(sw.odd_l2[i]), y = std::log(sw.hausdorff[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  sw.fitted_exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  sw.relative_error = std::abs(sw.fitted_exponent / sw.expected_exponent - 1.0);
  sw.consistent = sw.relative_error <= rel_tol;
  return sw;
}

}  // namespace sectionlab
