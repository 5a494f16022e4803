#include "sectionlab/optimize.hpp"

#include <gsl/gsl_integration.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <limits>
#include <memory>

#include "sectionlab/errors.hpp"

namespace sectionlab {

namespace {

struct Callback {
  const std::function<double(const Eigen::VectorXd&)>* f;
  Eigen::VectorXd scratch;
};

double trampoline(const gsl_vector* v, void* params) {
  auto* cb = static_cast<Callback*>(params);
  for (Eigen::Index i = 0; i < cb->scratch.size(); ++i) cb->scratch[i] = gsl_vector_get(v, i);
  double y = (*cb->f)(cb->scratch);
  if (!std::isfinite(y)) y = std::numeric_limits<double>::max();
  return y;
}

struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};
struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, const NelderMeadOptions& opts) {
  const auto n = static_cast<std::size_t>(x0.size());
  NelderMeadResult out;
  if (n == 0) {
    out.x = x0;
    out.value = f(x0);
    out.converged = true;
    out.trace.push_back(out.value);
    return out;
  }

  Callback cb{&f, Eigen::VectorXd(x0.size())};
  gsl_multimin_function fn;
  fn.n = n;
  fn.f = &trampoline;
  fn.params = &cb;

  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, x0[static_cast<Eigen::Index>(i)]);
  gsl_vector_set_all(step.get(), opts.initial_step);

  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> s(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(s.get(), &fn, x.get(), step.get());

  double best = std::numeric_limits<double>::infinity();
  int iter = 0;
  bool converged = false;
  while (iter < opts.max_iter) {
    ++iter;
    if (gsl_multimin_fminimizer_iterate(s.get()) != GSL_SUCCESS) break;
    best = std::min(best, gsl_multimin_fminimizer_minimum(s.get()));
    out.trace.push_back(best);
    const double size = gsl_multimin_fminimizer_size(s.get());
    if (gsl_multimin_test_size(size, opts.size_tol) == GSL_SUCCESS) {
      converged = true;
      break;
    }
  }

  out.x.resize(x0.size());
  const gsl_vector* xm = gsl_multimin_fminimizer_x(s.get());
  for (std::size_t i = 0; i < n; ++i) out.x[static_cast<Eigen::Index>(i)] = gsl_vector_get(xm, i);
  out.value = gsl_multimin_fminimizer_minimum(s.get());
  out.iterations = iter;
  out.converged = converged;
  if (out.trace.empty()) out.trace.push_back(out.value);
  return out;
}

GaussLegendre gauss_legendre(int m, double a, double b) {
  if (m < 1) throw InvalidArgument("gauss_legendre: need at least one node");
  gsl_integration_glfixed_table* table = gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(m));
  GaussLegendre rule{Eigen::VectorXd(m), Eigen::VectorXd(m)};
  for (int i = 0; i < m; ++i) {
    double xi = 0.0;
    double wi = 0.0;
    gsl_integration_glfixed_point(a, b, static_cast<std::size_t>(i), &xi, &wi, table);
    rule.nodes[i] = xi;
    rule.weights[i] = wi;
  }
  gsl_integration_glfixed_table_free(table);
  return rule;
}

}  // namespace sectionlab
