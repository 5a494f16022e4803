#include "sectionlab/counterexample.hpp"

#include <cmath>
#include <set>

#include "sectionlab/errors.hpp"
#include "sectionlab/group.hpp"

namespace sectionlab {

RotatedPoly::RotatedPoly(std::shared_ptr<const MonomialPoly> base, Eigen::MatrixXd rotation)
    : base_(std::move(base)), rotation_(std::move(rotation)) {
  const int n = base_->nvars();
  if (rotation_.rows() != n || rotation_.cols() != n) throw SizeMismatch("RotatedPoly: rotation shape mismatch");
  max_degree_ = base_->degree();
  value_ = flatten(*base_);
  std::vector<MonomialPoly> g;
  for (int i = 0; i < n; ++i) g.push_back(base_->derivative(i));
  for (const auto& gi : g) grad_.push_back(flatten(gi));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) hess_.push_back(flatten(g[static_cast<std::size_t>(i)].derivative(j)));
}

RotatedPoly::Flat RotatedPoly::flatten(const MonomialPoly& p) {
  Flat f;
  for (const auto& [e, c] : p.terms()) {
    f.coef.push_back(c);
    f.exps.insert(f.exps.end(), e.begin(), e.end());
  }
  return f;
}

std::vector<double> RotatedPoly::power_table(const Eigen::VectorXd& x) const {
  const int n = dim();
  const int stride = max_degree_ + 1;
  std::vector<double> pw(static_cast<std::size_t>(n * stride));
  for (int i = 0; i < n; ++i) {
    double v = 1.0;
    for (int k = 0; k < stride; ++k) {
      pw[static_cast<std::size_t>(i * stride + k)] = v;
      v *= x[i];
    }
  }
  return pw;
}

double RotatedPoly::eval(const Flat& f, const std::vector<double>& powers) const {
  const int n = dim();
  const int stride = max_degree_ + 1;
  double s = 0.0;
  for (std::size_t t = 0; t < f.coef.size(); ++t) {
    double m = f.coef[t];
    const int* e = f.exps.data() + t * static_cast<std::size_t>(n);
    for (int i = 0; i < n; ++i) m *= powers[static_cast<std::size_t>(i * stride + e[i])];
    s += m;
  }
  return s;
}

double RotatedPoly::value(const Eigen::VectorXd& u) const {
  return eval(value_, power_table(rotation_.transpose() * u));
}

Eigen::VectorXd RotatedPoly::gradient(const Eigen::VectorXd& u) const {
  const auto pw = power_table(rotation_.transpose() * u);
  Eigen::VectorXd g(dim());
  for (int i = 0; i < dim(); ++i) g[i] = eval(grad_[static_cast<std::size_t>(i)], pw);
  return rotation_ * g;
}

Eigen::MatrixXd RotatedPoly::hessian(const Eigen::VectorXd& u) const {
  const auto pw = power_table(rotation_.transpose() * u);
  const int n = dim();
  Eigen::MatrixXd h(n, n);
  std::size_t k = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) h(i, j) = h(j, i) = eval(hess_[k++], pw);
  return rotation_ * h * rotation_.transpose();
}

Eigen::VectorXd RotatedPoly::sample(const SphereGrid& grid) const {
  Eigen::VectorXd out(grid.size());
  for (int i = 0; i < grid.size(); ++i) out[i] = value(grid.nodes.col(i));
  return out;
}

SphericalPoly psi_product(const SphericalPoly& plus, const SphericalPoly& minus) {
  for (const auto* p : {&plus, &minus}) {
    if (!p->is_even(1e-8)) throw InvalidArgument("psi_product: inputs must be even");
    if (!is_nonconstant(*p)) throw InvalidArgument("psi_product: inputs must be non-constant");
  }
  return to_F_space(multiply(plus, minus));
}

ConvexBody radial_body_from_samples(GridPtr grid, const Eigen::VectorXd& phi_samples, double eps) {
  if (eps < 0) throw InvalidArgument("radial_body: eps must be nonnegative");
  check_samples(*grid, phi_samples);
  Eigen::VectorXd r = Eigen::VectorXd::Ones(grid->size()) + eps * phi_samples;
  return from_radial_samples(std::move(grid), std::move(r));
}

ConvexBody radial_body(GridPtr grid, const SphericalPoly& phi, double eps) {
  const Eigen::VectorXd s = phi.sample(*grid);
  return radial_body_from_samples(std::move(grid), s, eps);
}

namespace {

Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& u) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(u)};
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(u.size() - 1);
}

struct SampleCache {
  Eigen::VectorXd phi;
  Eigen::MatrixXd tangential_gradient;
};

SampleCache make_cache(const SphereGrid& grid, const RotatedPoly& p) {
  SampleCache c{Eigen::VectorXd(grid.size()), Eigen::MatrixXd(grid.dim, grid.size())};
  for (int i = 0; i < grid.size(); ++i) {
    const Eigen::VectorXd u = grid.nodes.col(i);
    c.phi[i] = p.value(u);
    const Eigen::VectorXd g = p.gradient(u);
    c.tangential_gradient.col(i) = g - u * u.dot(g);
  }
  return c;
}

Eigen::MatrixXd normals_from_cache(const SphereGrid& grid, const SampleCache& c, double eps) {
  Eigen::MatrixXd m(grid.dim, grid.size());
  for (int i = 0; i < grid.size(); ++i)
    m.col(i) = ((1.0 + eps * c.phi[i]) * grid.nodes.col(i) - eps * c.tangential_gradient.col(i)).normalized();
  return m;
}

bool certify_cached(const SphereGrid& grid, const SampleCache& c, double eps) {
  if (1.0 + eps * c.phi.minCoeff() <= 0.0) return false;
  const Eigen::VectorXd r = Eigen::VectorXd::Ones(grid.size()) + eps * c.phi;
  return certify_convex_with_normals(grid, r, normals_from_cache(grid, c, eps)).convex;
}

}  // namespace

Eigen::MatrixXd radial_normals(const SphereGrid& grid, const RotatedPoly& phi, double eps) {
  return normals_from_cache(grid, make_cache(grid, phi), eps);
}

ConvexityCertificate certify_radial_poly(const SphereGrid& grid, const RotatedPoly& phi, double eps) {
  const SampleCache c = make_cache(grid, phi);
  const Eigen::VectorXd r = Eigen::VectorXd::Ones(grid.size()) + eps * c.phi;
  if (r.minCoeff() <= 0.0) throw NonpositiveRadius("certify_radial_poly: 1 + eps Phi is not positive");
  return certify_convex_with_normals(grid, r, normals_from_cache(grid, c, eps));
}

double radial_convexity_margin(const RotatedPoly& phi, double eps, const SphereGrid& probe) {
  double worst = std::numeric_limits<double>::infinity();
  for (int i = 0; i < probe.size(); ++i) {
    const Eigen::VectorXd u = probe.nodes.col(i);
    const double r = 1.0 + eps * phi.value(u);
    if (r <= 0.0) return -std::numeric_limits<double>::infinity();
    const Eigen::VectorXd g = phi.gradient(u);
    const Eigen::MatrixXd h = phi.hessian(u);
    const double f = 1.0 / r;
    const Eigen::VectorXd gf = -eps * g / (r * r);
    const Eigen::MatrixXd hf = -eps * h / (r * r) + 2.0 * eps * eps * g * g.transpose() / (r * r * r);
    const Eigen::MatrixXd t = tangent_basis(u);
    Eigen::MatrixXd m = t.transpose() * hf * t;
    m.diagonal().array() += f - u.dot(gf);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    worst = std::min(worst, es.eigenvalues()[0]);
  }
  return worst;
}

double analytic_epsilon(const RotatedPoly& phi, const SphereGrid& probe, double rel_tol) {
  double lo = 0.0, hi = 1.0;
  while (radial_convexity_margin(phi, hi, probe) >= 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e6) return lo;
  }
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (radial_convexity_margin(phi, mid, probe) >= 0.0 ? lo : hi) = mid;
  }
  return lo;
}

std::vector<std::shared_ptr<const MonomialPoly>> F_space_basis_monomials(int n, int d) {
  const auto& b = SphericalBasis::get(n, d);
  std::vector<std::shared_ptr<const MonomialPoly>> out;
  for (int j : F_space_indices(n, d)) out.push_back(std::make_shared<const MonomialPoly>(b.monomial_expansion(j)));
  return out;
}

std::vector<EpsilonSample> epsilon_manifest(int n, int sample_count, std::uint64_t seed, int degree) {
  if (sample_count < 1) throw InvalidArgument("epsilon_manifest: sample count must be >= 1");
  const int k = static_cast<int>(F_space_indices(n, degree).size());
  std::mt19937_64 rng(seed);
  std::vector<EpsilonSample> m;
  for (int i = 0; i < sample_count; ++i) m.push_back({i, i % k, haar_rotation(n, rng)});
  return m;
}

std::vector<RotatedPoly> manifest_polys(int n, const std::vector<EpsilonSample>& manifest, int degree) {
  const auto basis = F_space_basis_monomials(n, degree);
  std::vector<RotatedPoly> out;
  out.reserve(manifest.size());
  for (const auto& s : manifest) out.emplace_back(basis[static_cast<std::size_t>(s.basis_index)], s.rotation);
  return out;
}

EpsilonSearch find_epsilon(int n, int sample_count, std::uint64_t seed, const FindEpsilonOptions& opts) {
  if (n != 3 && n != 4) throw InvalidArgument("find_epsilon: n must be 3 or 4");
  EpsilonSearch out;
  out.n = n;
  out.sample_count = sample_count;
  out.seed = seed;
  out.options = opts;
  if (out.options.echo_resolution <= 0) out.options.echo_resolution = 2 * opts.resolution;
  const GridPtr coarse = build_grid(n, opts.resolution);
  const GridPtr fine = build_grid(n, out.options.echo_resolution);
  if (coarse->exact_degree < 2 * opts.degree) throw InvalidArgument("find_epsilon: working grid too coarse for the degree");
  out.grid_hash = coarse->hash;
  out.echo_grid_hash = fine->hash;
  out.manifest = epsilon_manifest(n, sample_count, seed, opts.degree);
  const auto polys = manifest_polys(n, out.manifest, opts.degree);

  auto bisect = [&](const std::function<bool(double)>& pass, double hi) {
    double lo = 0.0;
    while (hi - lo > opts.rel_tol * hi) {
      const double mid = 0.5 * (lo + hi);
      (pass(mid) ? lo : hi) = mid;
    }
    return lo;
  };
  auto counted = [&](const SphereGrid& g, const SampleCache& c, double eps) {
    ++out.certificate_evaluations;
    return certify_cached(g, c, eps);
  };

  double eps = 1.0;
  for (const auto& p : polys) {
    const SampleCache c = make_cache(*coarse, p);
    if (!counted(*coarse, c, eps)) eps = bisect([&](double e) { return counted(*coarse, c, e); }, eps);
  }
  out.coarse_epsilon = eps;

  // echo on the refined grid; samples checked before the last decrease are re-verified until stable
  std::size_t limit = polys.size();
  bool echo = true;
  while (limit > 0) {
    std::size_t last_change = 0;
    for (std::size_t i = 0; i < limit; ++i) {
      const SampleCache cc = make_cache(*coarse, polys[i]);
      const SampleCache cf = make_cache(*fine, polys[i]);
      auto both = [&](double e) { return counted(*coarse, cc, e) && counted(*fine, cf, e); };
      if (!both(eps)) {
        if (echo) ++out.echo_failures;
        eps = bisect(both, eps);
        last_change = i;
      }
    }
    echo = false;
    limit = last_change;
  }
  out.epsilon = eps;

  if (opts.analytic) {
    std::set<int> seen;
    double best = std::numeric_limits<double>::infinity();
    const auto basis = F_space_basis_monomials(n, opts.degree);
    for (const auto& s : out.manifest) {
      if (!seen.insert(s.basis_index).second) continue;
      const RotatedPoly p(basis[static_cast<std::size_t>(s.basis_index)], Eigen::MatrixXd::Identity(n, n));
      best = std::min(best, analytic_epsilon(p, *coarse, opts.rel_tol));
    }
    out.analytic_epsilon = best;
  }
  return out;
}

SeparationReport separation_delta(const std::vector<ConvexBody>& field) {
  SeparationReport r;
  r.count = static_cast<int>(field.size());
  r.delta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < field.size(); ++i) {
    const double d = distance_to_ball(field[i]);
    if (d < r.delta) {
      r.delta = d;
      r.argmin = static_cast<int>(i);
    }
  }
  if (field.empty()) r.delta = 0.0;
  return r;
}

}  // namespace sectionlab
