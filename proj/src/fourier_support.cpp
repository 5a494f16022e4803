#include "sectionlab/fourier_support.hpp"

#include <cmath>
#include <vector>

#include "sectionlab/errors.hpp"

namespace sectionlab {

double FourierSupport::evaluate(double angle) const {
  double s = a0;
  for (int q = 1; q <= degree(); ++q) s += a[q - 1] * std::cos(q * angle) + b[q - 1] * std::sin(q * angle);
  return s;
}

Eigen::VectorXd FourierSupport::sample(const SphereGrid& grid) const {
  if (grid.dim != 2) throw InvalidArgument("FourierSupport::sample: circle grid required");
  Eigen::VectorXd out(grid.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = evaluate(std::atan2(grid.nodes(1, i), grid.nodes(0, i)));
  return out;
}

FourierSupport fourier_analyze(const SphereGrid& grid, const Eigen::VectorXd& h, int d) {
  if (grid.dim != 2) throw InvalidArgument("fourier_analyze: planar body required");
  if (d < 0 || 2 * d >= grid.size()) throw InvalidArgument("fourier_analyze: grid too coarse for degree " + std::to_string(d));
  check_samples(grid, h);
  const int m = grid.size();
  FourierSupport fs;
  fs.a = Eigen::VectorXd::Zero(d);
  fs.b = Eigen::VectorXd::Zero(d);
  fs.a0 = h.mean();
  for (int i = 0; i < m; ++i) {
    const double t = std::atan2(grid.nodes(1, i), grid.nodes(0, i));
    for (int q = 1; q <= d; ++q) {
      fs.a[q - 1] += h[i] * std::cos(q * t);
      fs.b[q - 1] += h[i] * std::sin(q * t);
    }
  }
  fs.a *= 2.0 / m;
  fs.b *= 2.0 / m;
  return fs;
}

FourierSupport fourier_analyze(const ConvexBody& body, int d) { return fourier_analyze(*body.grid, body.support, d); }

double harmonic_energy(const FourierSupport& fs, int d) {
  const int top = std::min(d, fs.degree());
  double e = 0.0;
  for (int q = 1; q <= top; ++q) e += fs.a[q - 1] * fs.a[q - 1] + fs.b[q - 1] * fs.b[q - 1];
  return e;
}

int sturm_hurwitz_count(const Eigen::VectorXd& h, double c, double zero_tol) {
  const Eigen::ArrayXd g = h.array() - c;
  const double scale = g.abs().maxCoeff();
  if (zero_tol < 0) zero_tol = 1e-13 * scale;
  std::vector<int> signs;
  for (Eigen::Index i = 0; i < g.size(); ++i)
    if (std::abs(g[i]) > zero_tol) signs.push_back(g[i] > 0 ? 1 : -1);
  if (signs.empty()) throw DegenerateFunction("sturm_hurwitz_count: h - c vanishes identically");
  int changes = 0;
  for (std::size_t i = 0; i < signs.size(); ++i)
    if (signs[i] != signs[(i + 1) % signs.size()]) ++changes;
  return changes;
}

}  // namespace sectionlab
