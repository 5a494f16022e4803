#include "sectionlab/convex_body.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "sectionlab/errors.hpp"
#include "sectionlab/optimize.hpp"
#include "sectionlab/spherical_poly.hpp"

namespace sectionlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInteriorTol = 1e-12;
constexpr double kSymmetryTol = 1e-10;

void require_same_grid(const ConvexBody& a, const ConvexBody& b, const char* who) {
  if (a.dim != b.dim) throw SizeMismatch(std::string(who) + ": dimension mismatch");
  if (a.grid->hash != b.grid->hash) throw SizeMismatch(std::string(who) + ": bodies are sampled on different grids");
}

// Upper bound for h(v) from samples: v written as a conic combination of nearby nodes.
double interpolate_support(const SphereGrid& grid, const Eigen::VectorXd& h, const Eigen::VectorXd& v) {
  const double len = v.norm();
  if (len == 0.0) return 0.0;
  const Eigen::VectorXd u = v / len;
  if (grid.dim == 2) {
    const int r = grid.size();
    double a = std::atan2(u[1], u[0]);
    if (a < 0) a += 2.0 * kPi;
    const int k0 = static_cast<int>(std::floor(a / (2.0 * kPi / r))) % r;
    const int k1 = (k0 + 1) % r;
    Eigen::Matrix2d m;
    m.col(0) = grid.nodes.col(k0);
    m.col(1) = grid.nodes.col(k1);
    const Eigen::Vector2d lam = m.partialPivLu().solve(u);
    return len * (lam[0] * h[k0] + lam[1] * h[k1]);
  }
  const int n = grid.dim;
  const int near = 2 * n;
  const Eigen::VectorXd dots = grid.nodes.transpose() * u;
  std::vector<int> idx(static_cast<std::size_t>(grid.size()));
  for (int i = 0; i < grid.size(); ++i) idx[static_cast<std::size_t>(i)] = i;
  std::partial_sort(idx.begin(), idx.begin() + near, idx.end(), [&](int a, int b) { return dots[a] > dots[b]; });
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> pick(static_cast<std::size_t>(n));
  std::vector<bool> mask(static_cast<std::size_t>(near), false);
  std::fill(mask.begin(), mask.begin() + n, true);
  do {
    int c = 0;
    for (int i = 0; i < near; ++i)
      if (mask[static_cast<std::size_t>(i)]) pick[static_cast<std::size_t>(c++)] = idx[static_cast<std::size_t>(i)];
    Eigen::MatrixXd m(n, n);
    for (int j = 0; j < n; ++j) m.col(j) = grid.nodes.col(pick[static_cast<std::size_t>(j)]);
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd lam = lu.solve(u);
    if (lam.minCoeff() < -1e-12) continue;
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += lam[j] * h[pick[static_cast<std::size_t>(j)]];
    best = std::min(best, s);
  } while (std::prev_permutation(mask.begin(), mask.end()));
  if (!std::isfinite(best)) best = h[idx[0]] / std::max(dots[idx[0]], 1e-12);
  return len * best;
}

}  // namespace

double SupportGenerator::evaluate(const Eigen::VectorXd& v) const {
  double s = ball_radius * v.norm();
  for (const auto& t : terms) s += t.weight * (t.points.transpose() * v).maxCoeff();
  return s;
}

Eigen::VectorXd SupportGenerator::evaluate_many(const Eigen::MatrixXd& directions) const {
  Eigen::VectorXd out = ball_radius * directions.colwise().norm().transpose();
  for (const auto& t : terms) out += t.weight * (t.points.transpose() * directions).colwise().maxCoeff().transpose();
  return out;
}

std::size_t SupportGenerator::point_count() const {
  std::size_t k = 0;
  for (const auto& t : terms) k += static_cast<std::size_t>(t.points.cols());
  return k;
}

double ConvexBody::support_at(const Eigen::VectorXd& v) const {
  if (v.size() != dim) throw SizeMismatch("support_at: direction dimension mismatch");
  if (generator) return generator->evaluate(v);
  return interpolate_support(*grid, support, v);
}

Eigen::VectorXd ConvexBody::support_at_many(const Eigen::MatrixXd& directions) const {
  if (directions.rows() != dim) throw SizeMismatch("support_at_many: direction dimension mismatch");
  if (generator) return generator->evaluate_many(directions);
  Eigen::VectorXd out(directions.cols());
  for (Eigen::Index i = 0; i < directions.cols(); ++i) out[i] = interpolate_support(*grid, support, directions.col(i));
  return out;
}

void ConvexBody::refresh_flags() {
  origin_interior = support.size() > 0 && support.minCoeff() > kInteriorTol;
  double asym = 0.0;
  for (int i = 0; i < grid->size(); ++i)
    asym = std::max(asym, std::abs(support[i] - support[grid->antipode[static_cast<std::size_t>(i)]]));
  symmetric = asym <= kSymmetryTol;
}

namespace {

ConvexBody from_generator(GridPtr grid, SupportGenerator gen) {
  ConvexBody b;
  b.dim = grid->dim;
  b.support = gen.evaluate_many(grid->nodes);
  b.grid = std::move(grid);
  b.generator = std::move(gen);
  b.refresh_flags();
  return b;
}

}  // namespace

ConvexBody support_from_vertices(GridPtr grid, const Eigen::MatrixXd& vertices) {
  if (vertices.cols() == 0) throw InvalidArgument("support_from_vertices: empty vertex list");
  if (vertices.rows() != grid->dim) throw SizeMismatch("support_from_vertices: vertex dimension mismatch");
  SupportGenerator gen;
  gen.terms.push_back({1.0, vertices});
  ConvexBody b = from_generator(std::move(grid), std::move(gen));
  b.vertices = vertices;
  return b;
}

ConvexBody ball(GridPtr grid, double radius) {
  if (radius < 0) throw InvalidArgument("ball: negative radius");
  SupportGenerator gen;
  gen.ball_radius = radius;
  ConvexBody b = from_generator(std::move(grid), std::move(gen));
  b.radial = Eigen::VectorXd::Constant(b.grid->size(), radius);
  return b;
}

ConvexBody from_support_samples(GridPtr grid, Eigen::VectorXd support) {
  check_samples(*grid, support);
  ConvexBody b;
  b.dim = grid->dim;
  b.grid = std::move(grid);
  b.support = std::move(support);
  b.refresh_flags();
  return b;
}

Eigen::VectorXd support_of_radial_cloud(const SphereGrid& grid, const Eigen::VectorXd& radial) {
  check_samples(grid, radial);
  const Eigen::MatrixXd cloud = grid.nodes * radial.asDiagonal();
  Eigen::VectorXd h(grid.size());
  // blockwise to bound memory on large grids
  const int block = 512;
  for (int s = 0; s < grid.size(); s += block) {
    const int len = std::min(block, grid.size() - s);
    h.segment(s, len) = (cloud.transpose() * grid.nodes.middleCols(s, len)).colwise().maxCoeff().transpose();
  }
  return h;
}

ConvexBody from_radial_samples(GridPtr grid, Eigen::VectorXd radial) {
  check_samples(*grid, radial);
  for (int i = 0; i < radial.size(); ++i)
    if (!(radial[i] > 0.0))
      throw NonpositiveRadius("radial sample " + std::to_string(i) + " is " + std::to_string(radial[i]));
  SupportGenerator gen;
  gen.terms.push_back({1.0, grid->nodes * radial.asDiagonal()});
  ConvexBody b;
  b.dim = grid->dim;
  b.support = support_of_radial_cloud(*grid, radial);
  b.grid = std::move(grid);
  b.radial = std::move(radial);
  b.generator = std::move(gen);
  b.refresh_flags();
  return b;
}

ConvexBody thicken(const ConvexBody& a, double rho) {
  if (!(rho > 0.0)) throw InvalidArgument("thicken: radius must be positive");
  ConvexBody b = a;
  b.support = a.support.array() + rho;
  b.radial.reset();
  if (b.generator) b.generator->ball_radius += rho;
  b.refresh_flags();
  return b;
}

ConvexBody rotate_body(const ConvexBody& a, const Eigen::MatrixXd& r) {
  if (r.rows() != a.dim || r.cols() != a.dim) throw SizeMismatch("rotate_body: matrix shape mismatch");
  ConvexBody b = a;
  b.support = a.support_at_many(r.transpose() * a.grid->nodes);
  if (a.vertices) b.vertices = r * *a.vertices;
  if (a.generator)
    for (auto& t : b.generator->terms) t.points = r * t.points;
  b.radial.reset();
  b.refresh_flags();
  return b;
}

double hausdorff(const ConvexBody& a, const ConvexBody& b) {
  require_same_grid(a, b, "hausdorff");
  return (a.support - b.support).cwiseAbs().maxCoeff();
}

namespace {

// Orthonormal basis of the tangent space at unit u (columns).
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& u) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(u)};
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(u.size() - 1);
}

// Minimizes f over the sphere starting at unit u0, returns the best value (never worse than f(u0)).
double minimize_on_sphere(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& u0,
                          double step) {
  // Simplex searches stall on kinks (support functions of polytopes); restart from the best point
  // with a fresh simplex and a re-centred chart until no further progress.
  Eigen::VectorXd u = u0;
  double best = f(u0);
  for (int restart = 0; restart < 12; ++restart) {
    const Eigen::MatrixXd t = tangent_basis(u);
    auto g = [&](const Eigen::VectorXd& x) { return f((u + t * x).normalized()); };
    NelderMeadOptions opts;
    opts.initial_step = step;
    opts.size_tol = 1e-11;
    opts.max_iter = 4000;
    const auto res = nelder_mead(g, Eigen::VectorXd::Zero(u.size() - 1), opts);
    if (!(res.value < best - 1e-15)) break;
    best = res.value;
    u = (u + t * res.x).normalized();
    step = std::max(0.25 * step, 1e-6);
  }
  return best;
}

// max f - min f over the sphere, grid values refined by local searches from the extreme nodes.
double range_on_sphere(const SphereGrid& grid, const Eigen::VectorXd& samples,
                       const std::function<double(const Eigen::VectorXd&)>& f, bool refine) {
  Eigen::Index imax = 0, imin = 0;
  double hi = samples.maxCoeff(&imax);
  double lo = samples.minCoeff(&imin);
  if (refine) {
    const double step = 0.5 * std::max(grid.covering_radius, 1e-3);
    hi = -minimize_on_sphere([&](const Eigen::VectorXd& v) { return -f(v); }, grid.nodes.col(imax), step);
    lo = minimize_on_sphere(f, grid.nodes.col(imin), step);
  }
  return hi - lo;
}

}  // namespace

double bm_distance(const ConvexBody& a, const ConvexBody& b, bool refine) {
  require_same_grid(a, b, "bm_distance");
  if (a.support.minCoeff() <= kInteriorTol) throw OriginNotInterior("bm_distance: first body does not contain the origin in its interior");
  if (b.support.minCoeff() <= kInteriorTol) throw OriginNotInterior("bm_distance: second body does not contain the origin in its interior");
  const Eigen::VectorXd f = b.support.array().log() - a.support.array().log();
  const bool exact = a.generator.has_value() && b.generator.has_value();
  auto fn = [&](const Eigen::VectorXd& v) { return std::log(b.support_at(v)) - std::log(a.support_at(v)); };
  return std::max(0.0, range_on_sphere(*a.grid, f, fn, refine && exact));
}

double distance_to_ball(const ConvexBody& a, bool refine) {
  if (a.radial) {
    const auto& r = *a.radial;
    if (r.minCoeff() <= 0.0) throw NonpositiveRadius("distance_to_ball: nonpositive radial sample");
    return std::log(r.maxCoeff()) - std::log(r.minCoeff());
  }
  if (a.support.minCoeff() <= kInteriorTol) throw OriginNotInterior("distance_to_ball: origin not interior");
  const Eigen::VectorXd f = a.support.array().log();
  auto fn = [&](const Eigen::VectorXd& v) { return std::log(a.support_at(v)); };
  return std::max(0.0, range_on_sphere(*a.grid, f, fn, refine && a.generator.has_value()));
}

Eigen::VectorXd radial_from_support(const ConvexBody& a) {
  if (a.support.minCoeff() <= kInteriorTol) throw OriginNotInterior("radial_from_support: origin not interior");
  const auto& g = *a.grid;
  const Eigen::MatrixXd dots = g.nodes.transpose() * g.nodes;
  Eigen::VectorXd r(g.size());
  for (int i = 0; i < g.size(); ++i) {
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < g.size(); ++j) {
      const double c = dots(j, i);
      if (c > 1e-12) best = std::min(best, a.support[j] / c);
    }
    r[i] = best;
  }
  return r;
}

namespace {

// Outward normals r u - grad_S r from a band-limited fit of the radial samples.
Eigen::MatrixXd estimate_normals(const SphereGrid& grid, const Eigen::VectorXd& radial) {
  const int d = std::min(SphericalBasis::kMaxDegree, grid.exact_degree / 2);
  const SphericalPoly fit = project(grid, radial, d);
  const double h = 1e-5;
  Eigen::MatrixXd normals(grid.dim, grid.size());
  for (int i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd u = grid.nodes.col(i);
    const Eigen::MatrixXd t = tangent_basis(u);
    Eigen::VectorXd m = radial[i] * u;
    for (int k = 0; k < t.cols(); ++k) {
      const double dp = fit.evaluate((u + h * t.col(k)).normalized());
      const double dm = fit.evaluate((u - h * t.col(k)).normalized());
      m -= (dp - dm) / (2.0 * h) * t.col(k);
    }
    normals.col(i) = m.normalized();
  }
  return normals;
}

ConvexityCertificate certify_circle(const SphereGrid& grid, const Eigen::VectorXd& r, double tol) {
  const int m = grid.size();
  // spectral derivatives by direct DFT
  Eigen::VectorXd d1 = Eigen::VectorXd::Zero(m), d2 = Eigen::VectorXd::Zero(m);
  for (int q = 1; q <= m / 2; ++q) {
    double a = 0.0, b = 0.0;
    for (int k = 0; k < m; ++k) {
      const double t = 2.0 * kPi * k / m;
      a += r[k] * std::cos(q * t);
      b += r[k] * std::sin(q * t);
    }
    const double scale = (2 * q == m) ? 1.0 / m : 2.0 / m;
    a *= scale;
    b *= scale;
    for (int k = 0; k < m; ++k) {
      const double t = 2.0 * kPi * k / m;
      const double c = std::cos(q * t), s = std::sin(q * t);
      if (2 * q != m) d1[k] += q * (-a * s + b * c);
      d2[k] += -static_cast<double>(q * q) * (a * c + b * s);
    }
  }
  Eigen::VectorXd v(m);
  for (int k = 0; k < m; ++k) v[k] = r[k] * r[k] + 2.0 * d1[k] * d1[k] - r[k] * d2[k];
  ConvexityCertificate cert;
  cert.tolerance = tol;
  Eigen::Index worst = 0;
  const double lo = v.minCoeff(&worst);
  cert.worst_node = static_cast<int>(worst);
  cert.worst_margin = std::min(lo, 0.0);
  cert.convex = lo >= -tol;
  return cert;
}

}  // namespace

namespace {

struct NeighborLists {
  std::vector<int> offsets;
  std::vector<int> indices;
};

constexpr double kNeighborRadius = 0.6;

// For every node, the nodes within angular distance kNeighborRadius (itself included).
const NeighborLists& neighbor_lists(const SphereGrid& grid) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<NeighborLists>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[grid.hash];
  if (!slot) {
    slot = std::make_unique<NeighborLists>();
    const double c = std::cos(kNeighborRadius);
    slot->offsets.push_back(0);
    for (int i = 0; i < grid.size(); ++i) {
      const Eigen::VectorXd dots = grid.nodes.transpose() * grid.nodes.col(i);
      for (int j = 0; j < grid.size(); ++j)
        if (dots[j] >= c) slot->indices.push_back(j);
      slot->offsets.push_back(static_cast<int>(slot->indices.size()));
    }
  }
  return *slot;
}

}  // namespace

ConvexityCertificate certify_convex_with_normals(const SphereGrid& grid, const Eigen::VectorXd& radial,
                                                 const Eigen::MatrixXd& normals, double tol) {
  check_samples(grid, radial);
  if (normals.rows() != grid.dim || normals.cols() != grid.size())
    throw SizeMismatch("certify_convex_with_normals: normals shape mismatch");
  if (radial.minCoeff() <= 0.0) throw NonpositiveRadius("certify_convex_radial: nonpositive radial sample");
  const double rmax = radial.maxCoeff();
  if (tol < 0) tol = 1e-9 * rmax;
  const Eigen::MatrixXd cloud = grid.nodes * radial.asDiagonal();
  const NeighborLists& nb = neighbor_lists(grid);
  ConvexityCertificate cert;
  cert.tolerance = tol;
  cert.worst_node = 0;
  for (int i = 0; i < grid.size(); ++i) {
    const auto m = normals.col(i);
    const double a = cloud.col(i).dot(m);
    // Only nodes w with r_max <w,m> > a - tol can beat sample i; they lie within angle
    // acos((a - tol) / r_max) of m, hence within that plus angle(m, u_i) of u_i.
    const double c = std::clamp((a - tol) / rmax, -1.0, 1.0);
    const double reach = std::acos(c) + std::acos(std::clamp(m.dot(grid.nodes.col(i)), -1.0, 1.0));
    double best = a;
    if (reach < kNeighborRadius) {
      for (int k = nb.offsets[static_cast<std::size_t>(i)]; k < nb.offsets[static_cast<std::size_t>(i) + 1]; ++k)
        best = std::max(best, cloud.col(nb.indices[static_cast<std::size_t>(k)]).dot(m));
    } else {
      best = std::max(best, (cloud.transpose() * m).maxCoeff());
    }
    const double margin = a - best;
    if (margin < cert.worst_margin) {
      cert.worst_margin = margin;
      cert.worst_node = i;
    }
  }
  cert.convex = cert.worst_margin >= -tol;
  return cert;
}

ConvexityCertificate certify_convex_radial(const SphereGrid& grid, const Eigen::VectorXd& radial, double tol) {
  check_samples(grid, radial);
  if (radial.minCoeff() <= 0.0) throw NonpositiveRadius("certify_convex_radial: nonpositive radial sample");
  if (grid.dim == 2) {
    const double rmax = radial.maxCoeff();
    return certify_circle(grid, radial, tol < 0 ? 1e-9 * rmax * rmax : tol);
  }
  return certify_convex_with_normals(grid, radial, estimate_normals(grid, radial), tol);
}

ConvexBody group_average(const ConvexBody& a, const GroupSample& g) {
  if (g.dim != a.dim) throw SizeMismatch("group_average: group acts on the wrong dimension");
  if (a.generator) {
    SupportGenerator gen;
    gen.ball_radius = a.generator->ball_radius;
    for (int k = 0; k < g.size(); ++k)
      for (const auto& t : a.generator->terms)
        gen.terms.push_back({t.weight * g.weights[static_cast<std::size_t>(k)],
                             g.elements[static_cast<std::size_t>(k)].transpose() * t.points});
    return from_generator(a.grid, std::move(gen));
  }
  Eigen::VectorXd f = Eigen::VectorXd::Zero(a.grid->size());
  for (int k = 0; k < g.size(); ++k)
    f += g.weights[static_cast<std::size_t>(k)] * a.support_at_many(g.elements[static_cast<std::size_t>(k)] * a.grid->nodes);
  return from_support_samples(a.grid, std::move(f));
}

double invariance_defect(const ConvexBody& a, const GroupSample& g) {
  if (g.dim != a.dim) throw SizeMismatch("invariance_defect: group acts on the wrong dimension");
  double worst = 0.0;
  for (const auto& e : g.elements)
    worst = std::max(worst, (a.support - a.support_at_many(e * a.grid->nodes)).cwiseAbs().maxCoeff());
  return worst;
}

double c0_l2_constant(int n) {
  const double m = n - 1;
  const double ball_volume = std::pow(kPi, m / 2.0) / std::tgamma(m / 2.0 + 1.0);
  const double kappa = std::sin(0.5) / 0.5;
  const double c1 = ball_volume * std::pow(kappa, n - 2) * std::pow(4.0, -m);
  return std::pow(4.0 / c1, 1.0 / (n + 1));
}

C0L2Check check_c0_l2_bound(const SphereGrid& grid, const Eigen::VectorXd& f, const Eigen::VectorXd& g) {
  check_samples(grid, f);
  check_samples(grid, g);
  if (f.cwiseAbs().maxCoeff() > 1.0 + 1e-12 || g.cwiseAbs().maxCoeff() > 1.0 + 1e-12)
    throw InvalidArgument("check_c0_l2_bound: inputs must be support functions of subsets of the unit ball");
  const Eigen::VectorXd diff = f - g;
  const Norms nr = norms(grid, diff);
  C0L2Check r;
  r.lhs = nr.c0;
  r.l2 = nr.l2;
  r.rhs = c0_l2_constant(grid.dim) * std::pow(nr.l2, 2.0 / (grid.dim + 1));
  r.ok = r.lhs <= r.rhs + 1e-9;
  return r;
}

Eigen::MatrixXd random_points_in_ball(int n, int count, std::mt19937_64& rng, double radius) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  Eigen::MatrixXd p(n, count);
  for (int j = 0; j < count; ++j) {
    for (int i = 0; i < n; ++i) p(i, j) = normal(rng);
    p.col(j) *= radius * std::pow(unif(rng), 1.0 / n) / p.col(j).norm();
  }
  return p;
}

L2UniformReport empirical_L2_uniform(int n, double eps, int trials, std::uint64_t seed) {
  if (!(eps > 0.0)) throw InvalidArgument("empirical_L2_uniform: eps must be positive");
  if (trials < 1) throw InvalidArgument("empirical_L2_uniform: trials must be >= 1");
  const int dmax = SphericalBasis::kMaxDegree;
  const GridPtr grid = grid_for_degree(n, 2 * dmax);
  std::vector<int> offset(static_cast<std::size_t>(dmax + 2), 0);
  for (int d = 0; d <= dmax; ++d) offset[static_cast<std::size_t>(d + 1)] = SphericalBasis::dimension(n, d);
  L2UniformReport rep;
  rep.eps = eps;
  rep.max_residual.assign(static_cast<std::size_t>(dmax + 1), 0.0);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count(1, 12);
  for (int t = 0; t < trials; ++t) {
    const Eigen::MatrixXd pts = random_points_in_ball(n, count(rng), rng);
    const Eigen::VectorXd h = (pts.transpose() * grid->nodes).colwise().maxCoeff().transpose();
    const double total = integrate(*grid, h.cwiseProduct(h));
    const SphericalPoly p = project(*grid, h, dmax);
    double acc = 0.0;
    for (int d = 0; d <= dmax; ++d) {
      const auto lo = offset[static_cast<std::size_t>(d)], hi = offset[static_cast<std::size_t>(d + 1)];
      acc += p.coeffs().segment(lo, hi - lo).squaredNorm();
      const double res = std::sqrt(std::max(0.0, total - acc));
      auto& slot = rep.max_residual[static_cast<std::size_t>(d)];
      slot = std::max(slot, res);
    }
  }
  for (int d = 0; d <= dmax; ++d) {
    if (rep.max_residual[static_cast<std::size_t>(d)] < eps) {
      rep.resolved = true;
      rep.degree = d;
      break;
    }
  }
  return rep;
}

double lipschitz_excess(const SphereGrid& grid, const Eigen::VectorXd& h) {
  check_samples(grid, h);
  double worst = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < grid.size(); ++i)
    for (int j = i + 1; j < grid.size(); ++j)
      worst = std::max(worst, std::abs(h[i] - h[j]) - (grid.nodes.col(i) - grid.nodes.col(j)).norm());
  return worst;
}

}  // namespace sectionlab
