#include "sectionlab/section_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "sectionlab/errors.hpp"
#include "sectionlab/group.hpp"
#include "sectionlab/optimize.hpp"

namespace sectionlab {

namespace {

constexpr double kClipBox = 1e6;

Eigen::MatrixXd orthonormal_rows(const Eigen::MatrixXd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

// Rows spanning the orthogonal complement of the row space of f.
Eigen::MatrixXd complement_rows(const Eigen::MatrixXd& f) {
  Eigen::HouseholderQR<Eigen::MatrixXd> qr{Eigen::MatrixXd(f.transpose())};
  const Eigen::MatrixXd q = qr.householderQ();
  return q.rightCols(f.cols() - f.rows()).transpose();
}

void check_section_frame(const Eigen::MatrixXd& frame, int N) {
  if (frame.rows() != 2 || frame.cols() != N) throw SizeMismatch("section: frame must be 2 x N");
}

}  // namespace

Eigen::MatrixXd clip_polygon(const Eigen::MatrixXd& a, const Eigen::VectorXd& b) {
  if (a.cols() != 2 || a.rows() != b.size()) throw SizeMismatch("clip_polygon: need a (m x 2) and b (m)");
  std::vector<Eigen::Vector2d> poly = {{-kClipBox, -kClipBox}, {kClipBox, -kClipBox}, {kClipBox, kClipBox}, {-kClipBox, kClipBox}};
  for (Eigen::Index k = 0; k < a.rows() && !poly.empty(); ++k) {
    const Eigen::Vector2d n = a.row(k).transpose();
    const double off = b[k];
    std::vector<Eigen::Vector2d> out;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Eigen::Vector2d& p = poly[i];
      const Eigen::Vector2d& q = poly[(i + 1) % poly.size()];
      const double sp = n.dot(p) - off, sq = n.dot(q) - off;
      if (sp <= 0) out.push_back(p);
      if ((sp < 0 && sq > 0) || (sp > 0 && sq < 0)) out.push_back(p + (q - p) * (sp / (sp - sq)));
    }
    poly = std::move(out);
  }
  if (poly.size() < 3) throw InvalidArgument("clip_polygon: empty or degenerate section");
  Eigen::MatrixXd v(2, static_cast<Eigen::Index>(poly.size()));
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly[i].cwiseAbs().maxCoeff() >= 0.5 * kClipBox) throw InvalidArgument("clip_polygon: unbounded section");
    v.col(static_cast<Eigen::Index>(i)) = poly[i];
  }
  return v;
}

ConvexBody SectionFamily::section(const Eigen::MatrixXd& frame, GridPtr grid) const {
  check_section_frame(frame, N);
  if (grid->dim != 2) throw InvalidArgument("section: circle grid required");
  switch (kind) {
    case Kind::Ball:
      return ball(std::move(grid), radius);
    case Kind::Ellipsoid: {
      const Eigen::VectorXd inv = axes.array().square().inverse();
      const Eigen::Matrix2d m = frame * inv.asDiagonal() * frame.transpose();
      const Eigen::Matrix2d minv = m.inverse();
      Eigen::VectorXd h(grid->size());
      for (int i = 0; i < grid->size(); ++i) {
        const Eigen::Vector2d v = grid->nodes.col(i);
        h[i] = std::sqrt(v.dot(minv * v));
      }
      return from_support_samples(std::move(grid), std::move(h));
    }
    case Kind::HPolytope:
      return support_from_vertices(std::move(grid), clip_polygon(normals * frame.transpose(), offsets));
    case Kind::Callback:
      return callback(frame, std::move(grid));
  }
  throw InvalidArgument("section: unknown family kind");
}

SectionFamily ellipsoid_family(const Eigen::VectorXd& semi_axes) {
  if (semi_axes.size() < 2 || (semi_axes.array() <= 0).any()) throw InvalidArgument("ellipsoid_family: positive semi-axes required");
  SectionFamily f;
  f.kind = SectionFamily::Kind::Ellipsoid;
  f.N = static_cast<int>(semi_axes.size());
  f.axes = semi_axes;
  f.name = "ellipsoid";
  return f;
}

SectionFamily ball_family(int N, double radius) {
  if (N < 2 || !(radius > 0)) throw InvalidArgument("ball_family: need N >= 2 and radius > 0");
  SectionFamily f;
  f.kind = SectionFamily::Kind::Ball;
  f.N = N;
  f.radius = radius;
  f.name = "ball";
  return f;
}

SectionFamily hpolytope_family(const Eigen::MatrixXd& normals, const Eigen::VectorXd& offsets) {
  if (normals.rows() != offsets.size() || normals.cols() < 2) throw SizeMismatch("hpolytope_family: shape mismatch");
  if ((offsets.array() <= 0).any()) throw InvalidArgument("hpolytope_family: origin must be interior (offsets > 0)");
  SectionFamily f;
  f.kind = SectionFamily::Kind::HPolytope;
  f.N = static_cast<int>(normals.cols());
  f.normals = normals;
  f.offsets = offsets;
  f.name = "hpolytope";
  return f;
}

SectionFamily cube_family(int N, double half_side) {
  Eigen::MatrixXd a(2 * N, N);
  a << Eigen::MatrixXd::Identity(N, N), -Eigen::MatrixXd::Identity(N, N);
  SectionFamily f = hpolytope_family(a, Eigen::VectorXd::Constant(2 * N, half_side));
  f.name = "cube";
  return f;
}

SectionFamily random_polytope_family(int N, int facets, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> off(0.5, 1.5);
  Eigen::MatrixXd a(facets + 2 * N, N);
  Eigen::VectorXd b(facets + 2 * N);
  for (int k = 0; k < facets; ++k) {
    Eigen::VectorXd v(N);
    for (int i = 0; i < N; ++i) v[i] = gauss(rng);
    a.row(k) = v.normalized().transpose();
    b[k] = off(rng);
  }
  a.bottomRows(2 * N) << Eigen::MatrixXd::Identity(N, N), -Eigen::MatrixXd::Identity(N, N);
  b.tail(2 * N).setConstant(2.0);
  SectionFamily f = hpolytope_family(a, b);
  f.name = "random_polytope";
  return f;
}

SectionFamily callback_family(int N, SectionFamily::Callback cb, std::string name) {
  SectionFamily f;
  f.kind = SectionFamily::Kind::Callback;
  f.N = N;
  f.callback = std::move(cb);
  f.name = std::move(name);
  return f;
}

RoundSearchResult round_section_search(const SectionFamily& family, const RoundSearchOptions& opts) {
  if (family.N < 2) throw InvalidArgument("round_section_search: N >= 2 required");
  const GridPtr grid = build_grid(2, opts.resolution);
  if (2 * opts.degree >= grid->size()) throw InvalidArgument("round_section_search: resolution too low for degree");

  RoundSearchResult res;
  double best = std::numeric_limits<double>::infinity();
  Eigen::MatrixXd best_frame;
  auto energy_of = [&](const Eigen::MatrixXd& frame) {
    ++res.evaluations;
    const double e = harmonic_energy(fourier_analyze(family.section(frame, grid), opts.degree), opts.degree);
    if (e < best) {
      best = e;
      best_frame = frame;
    }
    return e;
  };

  // Coarse stage: identity frame first, then Haar frames.
  std::mt19937_64 rng(opts.seed);
  std::vector<std::pair<double, Eigen::MatrixXd>> coarse;
  const int count = family.N == 2 ? 1 : std::max(1, opts.coarse_frames);
  for (int k = 0; k < count; ++k) {
    const Eigen::MatrixXd f =
        k == 0 ? Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, family.N)) : haar_rotation(family.N, rng).topRows(2);
    coarse.emplace_back(energy_of(f), f);
    res.trace.push_back(best);
  }
  std::stable_sort(coarse.begin(), coarse.end(), [](const auto& x, const auto& y) { return x.first < y.first; });

  // Below this the section is round to working precision.
  constexpr double kRound = 1e-28;
  if (family.N > 2 && best > kRound) {
    const int starts = std::min<int>(opts.refine_starts, static_cast<int>(coarse.size()));
    for (int s = 0; s < starts; ++s) {
      Eigen::MatrixXd f0 = coarse[static_cast<std::size_t>(s)].second;
      double step = 0.2;
      for (int round = 0; round < opts.refine_rounds; ++round) {
        const Eigen::MatrixXd c = complement_rows(f0);
        auto chart = [&](const Eigen::VectorXd& x) {
          const Eigen::MatrixXd xm = Eigen::Map<const Eigen::MatrixXd>(x.data(), 2, family.N - 2);
          return orthonormal_rows(f0 + xm * c);
        };
        NelderMeadOptions nm;
        nm.initial_step = step;
        nm.size_tol = 1e-13;
        nm.max_iter = 4000;
        const double before = best;
        const auto r = nelder_mead([&](const Eigen::VectorXd& x) { return energy_of(chart(x)); },
                                   Eigen::VectorXd::Zero(2 * (family.N - 2)), nm);
        res.iterations += r.iterations;
        for (double v : r.trace) res.trace.push_back(std::min(res.trace.back(), v));
        f0 = chart(r.x);
        step *= 0.1;
        if (best <= kRound || (round > 0 && best >= before)) break;
      }
    }
  }

  res.frame = best_frame;
  res.energy = best;
  res.body = family.section(best_frame, grid);
  res.fourier = fourier_analyze(res.body, opts.degree);
  res.radius = res.fourier.a0;
  const double hmin = res.body.support.minCoeff(), hmax = res.body.support.maxCoeff();
  res.disk_distance = hmin > 0 ? std::log(hmax / hmin) : std::numeric_limits<double>::infinity();
  res.success = res.energy < opts.tolerance;
  return res;
}

}  // namespace sectionlab
