#include "sectionlab/sphere.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "sectionlab/errors.hpp"
#include "sectionlab/hash.hpp"
#include "sectionlab/optimize.hpp"

namespace sectionlab {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::VectorXd symmetric_gauss_legendre_nodes(const GaussLegendre& rule) {
  const auto m = rule.nodes.size();
  Eigen::VectorXd z(m);
  for (Eigen::Index i = 0; i < m; ++i) z[i] = 0.5 * (rule.nodes[i] - rule.nodes[m - 1 - i]);
  return z;
}

Eigen::VectorXd symmetric_weights(const GaussLegendre& rule) {
  const auto m = rule.weights.size();
  Eigen::VectorXd w(m);
  for (Eigen::Index i = 0; i < m; ++i) w[i] = 0.5 * (rule.weights[i] + rule.weights[m - 1 - i]);
  return w;
}

double estimate_covering_radius(const SphereGrid& g) {
  std::mt19937_64 rng(0x5eed);
  std::normal_distribution<double> normal;
  const int probes = 2000;
  double worst = 0.0;
  Eigen::VectorXd p(g.dim);
  for (int k = 0; k < probes; ++k) {
    for (int i = 0; i < g.dim; ++i) p[i] = normal(rng);
    p.normalize();
    const double best = (g.nodes.transpose() * p).maxCoeff();
    worst = std::max(worst, std::acos(std::clamp(best, -1.0, 1.0)));
  }
  return worst;
}

SphereGrid make_circle(int res) {
  SphereGrid g;
  g.dim = 2;
  g.resolution = res;
  g.nodes.resize(2, res);
  g.weights = Eigen::VectorXd::Constant(res, 2.0 * kPi / res);
  g.antipode.resize(static_cast<std::size_t>(res));
  for (int k = 0; k < res; ++k) {
    const double a = 2.0 * kPi * k / res;
    g.nodes(0, k) = std::cos(a);
    g.nodes(1, k) = std::sin(a);
    g.antipode[static_cast<std::size_t>(k)] = (k + res / 2) % res;
  }
  // exact antipodal pairs
  for (int k = res / 2; k < res; ++k) g.nodes.col(k) = -g.nodes.col(k - res / 2);
  g.exact_degree = res - 1;
  return g;
}

SphereGrid make_s2(int res) {
  const int m = res / 2;
  const int az = res;
  const auto rule = gauss_legendre(m, -1.0, 1.0);
  const Eigen::VectorXd z = symmetric_gauss_legendre_nodes(rule);
  const Eigen::VectorXd wz = symmetric_weights(rule);

  SphereGrid g;
  g.dim = 3;
  g.resolution = res;
  g.nodes.resize(3, m * az);
  g.weights.resize(m * az);
  g.antipode.resize(static_cast<std::size_t>(m * az));
  Eigen::VectorXd cs(az), sn(az);
  for (int j = 0; j < az; ++j) {
    const double phi = 2.0 * kPi * j / az;
    cs[j] = std::cos(phi);
    sn[j] = std::sin(phi);
  }
  for (int j = az / 2; j < az; ++j) {
    cs[j] = -cs[j - az / 2];
    sn[j] = -sn[j - az / 2];
  }
  for (int i = 0; i < m; ++i) {
    const double rho = std::sqrt(std::max(0.0, 1.0 - z[i] * z[i]));
    for (int j = 0; j < az; ++j) {
      const int idx = i * az + j;
      g.nodes(0, idx) = rho * cs[j];
      g.nodes(1, idx) = rho * sn[j];
      g.nodes(2, idx) = z[i];
      g.weights[idx] = wz[i] * 2.0 * kPi / az;
      g.antipode[static_cast<std::size_t>(idx)] = (m - 1 - i) * az + (j + az / 2) % az;
    }
  }
  g.exact_degree = std::min(2 * m - 1, az - 1);
  return g;
}

SphereGrid make_s3(int res) {
  const int m = res / 4 + 1;
  const int az = res;
  const auto rule = gauss_legendre(m, -1.0, 1.0);
  // t = (1 + s) / 2 on [0, 1], mirrored so that t_i + t_{m-1-i} = 1
  const Eigen::VectorXd s = symmetric_gauss_legendre_nodes(rule);
  const Eigen::VectorXd ws = symmetric_weights(rule);

  SphereGrid g;
  g.dim = 4;
  g.resolution = res;
  const int total = m * az * az;
  g.nodes.resize(4, total);
  g.weights.resize(total);
  g.antipode.resize(static_cast<std::size_t>(total));
  Eigen::VectorXd cs(az), sn(az);
  for (int j = 0; j < az; ++j) {
    const double phi = 2.0 * kPi * j / az;
    cs[j] = std::cos(phi);
    sn[j] = std::sin(phi);
  }
  for (int j = az / 2; j < az; ++j) {
    cs[j] = -cs[j - az / 2];
    sn[j] = -sn[j - az / 2];
  }
  const double angle_w = (2.0 * kPi / az) * (2.0 * kPi / az);
  for (int i = 0; i < m; ++i) {
    const double t = 0.5 * (1.0 + s[i]);
    const double wt = 0.5 * ws[i];
    const double r1 = std::sqrt(std::max(0.0, 1.0 - t));
    const double r2 = std::sqrt(std::max(0.0, t));
    for (int a = 0; a < az; ++a) {
      for (int b = 0; b < az; ++b) {
        const int idx = (i * az + a) * az + b;
        g.nodes(0, idx) = r1 * cs[a];
        g.nodes(1, idx) = r1 * sn[a];
        g.nodes(2, idx) = r2 * cs[b];
        g.nodes(3, idx) = r2 * sn[b];
        g.weights[idx] = 0.5 * wt * angle_w;
        g.antipode[static_cast<std::size_t>(idx)] = (i * az + (a + az / 2) % az) * az + (b + az / 2) % az;
      }
    }
  }
  // the t-rule is exact to degree 2m-1 in t, i.e. total degree 4m-2
  g.exact_degree = std::min(4 * m - 2, az - 1);
  return g;
}

}  // namespace

double sphere_area(int n) {
  if (n < 1) throw InvalidArgument("sphere_area: n must be >= 1");
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

double monomial_integral(std::span<const int> alpha) {
  double log_num = 0.0;
  int total = 0;
  for (int a : alpha) {
    if (a < 0) throw InvalidArgument("monomial_integral: negative exponent");
    if (a % 2 != 0) return 0.0;
    log_num += std::lgamma(0.5 * (a + 1));
    total += a;
  }
  const double n = static_cast<double>(alpha.size());
  return 2.0 * std::exp(log_num - std::lgamma(0.5 * (total + n)));
}

GridPtr build_grid(int n, int resolution) {
  if (n < 2 || n > 4)
    throw InvalidArgument("build_grid: unsupported dimension n=" + std::to_string(n) +
                          " (supported range is 2..4)");
  if (resolution < 8)
    throw InvalidArgument("build_grid: resolution must be >= 8, got " + std::to_string(resolution));
  if (resolution % 2 != 0) ++resolution;

  static std::mutex mu;
  static std::map<std::pair<int, int>, GridPtr> cache;
  std::lock_guard lock(mu);
  auto key = std::make_pair(n, resolution);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  SphereGrid g = n == 2 ? make_circle(resolution) : n == 3 ? make_s2(resolution) : make_s3(resolution);
  g.covering_radius = estimate_covering_radius(g);
  ContentHash h;
  h.add(static_cast<std::int64_t>(g.dim));
  h.add(static_cast<std::int64_t>(g.resolution));
  h.add(std::span<const double>(g.nodes.data(), static_cast<std::size_t>(g.nodes.size())));
  h.add(std::span<const double>(g.weights.data(), static_cast<std::size_t>(g.weights.size())));
  g.hash = h.hex();

  auto ptr = std::make_shared<const SphereGrid>(std::move(g));
  cache.emplace(key, ptr);
  return ptr;
}

GridPtr grid_for_degree(int n, int degree) {
  int res = std::max(8, degree + 1);
  if (res % 2 != 0) ++res;
  return build_grid(n, res);
}

void check_samples(const SphereGrid& grid, const Eigen::VectorXd& samples) {
  if (samples.size() != grid.size())
    throw SizeMismatch("sample count " + std::to_string(samples.size()) + " does not match grid size " +
                       std::to_string(grid.size()));
}

double integrate(const SphereGrid& grid, const Eigen::VectorXd& samples) {
  check_samples(grid, samples);
  return grid.weights.dot(samples);
}

double inner(const SphereGrid& grid, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  check_samples(grid, f);
  check_samples(grid, g);
  return (grid.weights.array() * f.array() * g.array()).sum();
}

Norms norms(const SphereGrid& grid, const Eigen::VectorXd& samples) {
  check_samples(grid, samples);
  Norms out;
  out.l2 = std::sqrt(std::max(0.0, (grid.weights.array() * samples.array().square()).sum()));
  out.c0 = samples.size() ? samples.cwiseAbs().maxCoeff() : 0.0;
  return out;
}

}  // namespace sectionlab
