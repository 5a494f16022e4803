#include "sectionlab/body_field.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sectionlab/counterexample.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/group.hpp"

namespace sectionlab {

namespace {

constexpr double kFrameTol = 1e-10;

void check_frame(const Eigen::MatrixXd& f, int n, int N, const std::string& what) {
  if (f.rows() != n || f.cols() != N)
    throw SizeMismatch(what + ": expected a " + std::to_string(n) + "x" + std::to_string(N) + " frame");
  const double defect = (f * f.transpose() - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (defect > kFrameTol) throw InvalidArgument(what + ": frame rows not orthonormal (defect " + std::to_string(defect) + ")");
}

// Symmetric matrix of the quadratic part of p.
Eigen::MatrixXd quadratic_matrix(const MonomialPoly& p) {
  const int N = p.nvars();
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(N, N);
  for (const auto& [e, c] : p.terms()) {
    int total = 0;
    for (int k : e) total += k;
    if (total == 0) continue;
    if (total != 2) throw InvalidArgument("octahedron route needs a quadratic ambient polynomial");
    std::vector<int> idx;
    for (int i = 0; i < N; ++i)
      for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) idx.push_back(i);
    if (idx[0] == idx[1]) {
      a(idx[0], idx[0]) += c;
    } else {
      a(idx[0], idx[1]) += 0.5 * c;
      a(idx[1], idx[0]) += 0.5 * c;
    }
  }
  return a;
}

ConvexBody octahedron_route(GridPtr grid, const Eigen::Matrix3d& q, double rho) {
  const QuadForm3 form = QuadForm3::from_matrix(q);
  return thicken(octahedron(std::move(grid), form), rho);
}

ConvexBody body_for_frame(const SectionDescriptor& desc, const Eigen::MatrixXd& frame, const GridPtr& grid) {
  if (desc.route == BodyRoute::Octahedron) {
    if (desc.n != 3) throw InvalidArgument("octahedron route requires n = 3");
    const Eigen::MatrixXd a = quadratic_matrix(desc.ambient);
    const Eigen::Matrix3d q = traceless_part(frame * a * frame.transpose());
    return octahedron_route(grid, q, desc.thicken_radius);
  }
  if (!desc.ambient.is_even(1e-12)) throw InvalidArgument("radial route needs an even ambient polynomial");
  const SphericalPoly phi = to_F_space(restrict_to_frame(desc.ambient, frame));
  return radial_body(grid, phi, desc.epsilon);
}

Eigen::MatrixXd json_matrix(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError("expected a nested numeric array");
  const auto rows = j.size(), cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
  }
  return m;
}

std::optional<Eigen::Matrix3d> json_form(const nlohmann::json& j, std::vector<std::string>& problems) {
  Eigen::MatrixXd m = json_matrix(j);
  if (m.rows() != 3 || m.cols() != 3) {
    problems.push_back("quadratic form must be 3x3");
    return std::nullopt;
  }
  Eigen::Matrix3d q = m;
  if ((q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12) problems.push_back("quadratic form not symmetric");
  if (std::abs(q.trace()) > 1e-12 * std::max(1.0, q.norm())) problems.push_back("quadratic form not traceless");
  if (std::abs(q.norm() - 1.0) > 1e-8) problems.push_back("quadratic form not unit norm");
  return q;
}

}  // namespace

double frame_distance(const Eigen::MatrixXd& f1, const Eigen::MatrixXd& f2) {
  if (f1.rows() != f2.rows() || f1.cols() != f2.cols()) throw SizeMismatch("frame_distance: shape mismatch");
  // sin of the largest principal angle = spectral norm of the component of span(f1) orthogonal to span(f2).
  const Eigen::MatrixXd resid = f1.transpose() - f2.transpose() * (f2 * f1.transpose());
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(resid);
  const double s = std::min(1.0, svd.singularValues()[0]);
  // Largest angle can exceed pi/2 only in sign; principal angles live in [0, pi/2].
  return std::asin(s);
}

Eigen::MatrixXd polar_orthogonal(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

Eigen::MatrixXd random_frame(int n, int N, std::mt19937_64& rng) {
  if (n < 1 || n > N) throw InvalidArgument("random_frame: need 1 <= n <= N");
  return haar_rotation(N, rng).topRows(n);
}

Eigen::MatrixXd perturb_frame(const Eigen::MatrixXd& f, double angle, std::mt19937_64& rng) {
  const auto n = f.rows(), N = f.cols();
  if (n == N || angle == 0.0) return f;
  std::normal_distribution<double> gauss;
  Eigen::MatrixXd d(n, N);
  for (Eigen::Index i = 0; i < d.size(); ++i) d.data()[i] = gauss(rng);
  d -= d * f.transpose() * f;
  Eigen::JacobiSVD<Eigen::MatrixXd> s0(d);
  d /= s0.singularValues()[0];
  const Eigen::MatrixXd m = f + std::tan(angle) * d;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  return svd.matrixU() * svd.matrixV().transpose();
}

ContinuityReport continuity_report(const BodyField& field, const std::vector<std::pair<int, int>>& adjacency) {
  ContinuityReport rep;
  const int count = static_cast<int>(field.bodies.size());
  for (const auto& [i, j] : adjacency) {
    if (i < 0 || j < 0 || i >= count || j >= count) throw InvalidArgument("continuity_report: adjacency index out of range");
    const Eigen::MatrixXd o = polar_orthogonal(field.frames[static_cast<std::size_t>(i)] *
                                               field.frames[static_cast<std::size_t>(j)].transpose());
    const ConvexBody aligned = rotate_body(field.bodies[static_cast<std::size_t>(j)], o);
    const double dh = hausdorff(field.bodies[static_cast<std::size_t>(i)], aligned);
    rep.pairs.emplace_back(i, j);
    rep.frame_distance.push_back(frame_distance(field.frames[static_cast<std::size_t>(i)],
                                                field.frames[static_cast<std::size_t>(j)]));
    rep.body_distance.push_back(dh);
    rep.max_body_distance = std::max(rep.max_body_distance, dh);
  }
  return rep;
}

BodyField build_field(const SectionDescriptor& desc, const std::vector<Eigen::MatrixXd>& frames, GridPtr grid,
                      const std::vector<std::pair<int, int>>& adjacency) {
  if (!grid || grid->dim != desc.n) throw InvalidArgument("build_field: grid dimension must equal n");
  BodyField field;
  field.n = desc.n;
  field.N = desc.N;
  field.provenance = desc.name;

  switch (desc.kind) {
    case SectionKind::Constant: {
      if (desc.N != desc.n) throw InvalidArgument("constant section requires N = n");
      const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(desc.n, desc.n);
      field.frames.push_back(id);
      field.bodies.push_back(body_for_frame(desc, id, grid));
      if (field.provenance.empty()) field.provenance = "constant";
      break;
    }
    case SectionKind::Restriction: {
      if (desc.ambient.nvars() != desc.N) throw SizeMismatch("restriction section: ambient polynomial must have N variables");
      for (std::size_t k = 0; k < frames.size(); ++k) {
        check_frame(frames[k], desc.n, desc.N, "build_field frame " + std::to_string(k));
        field.frames.push_back(frames[k]);
        field.bodies.push_back(body_for_frame(desc, frames[k], grid));
      }
      if (field.provenance.empty()) field.provenance = "restriction";
      break;
    }
    case SectionKind::UserFile: {
      const auto records = read_field_records(desc.path);
      for (const auto& rec : records) {
        if (rec.frame.rows() != desc.n || rec.frame.cols() != desc.N)
          throw SizeMismatch("field file frame shape does not match n x N");
        field.frames.push_back(rec.frame);
        if (rec.poly) {
          field.bodies.push_back(radial_body(grid, *rec.poly, desc.epsilon));
        } else {
          const QuadForm3 q1 = QuadForm3::from_matrix(*rec.q1), q2 = QuadForm3::from_matrix(*rec.q2);
          field.bodies.push_back(thicken(pair_hull(grid, *rec.t, q1, q2), desc.thicken_radius));
        }
      }
      if (field.provenance.empty()) field.provenance = "file:" + desc.path;
      break;
    }
  }
  field.continuity = continuity_report(field, adjacency);
  return field;
}

std::vector<FieldRecord> read_field_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open field file: " + path);
  std::vector<FieldRecord> out;
  std::ostringstream errors;
  int bad = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::string> problems;
    FieldRecord rec;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.contains("frame")) {
        problems.push_back("missing frame");
      } else {
        rec.frame = json_matrix(j.at("frame"));
        const double defect =
            (rec.frame * rec.frame.transpose() - Eigen::MatrixXd::Identity(rec.frame.rows(), rec.frame.rows()))
                .cwiseAbs()
                .maxCoeff();
        if (rec.frame.rows() > rec.frame.cols() || defect > kFrameTol) problems.push_back("frame not orthonormal");
      }
      if (j.contains("poly")) {
        const auto& p = j.at("poly");
        const int n = p.at("n").get<int>(), d = p.at("degree").get<int>();
        const auto c = p.at("coeffs").get<std::vector<double>>();
        if (static_cast<int>(c.size()) != SphericalBasis::dimension(n, d)) {
          problems.push_back("coefficient count does not match n and degree");
        } else {
          SphericalPoly poly(n, d, Eigen::Map<const Eigen::VectorXd>(c.data(), static_cast<Eigen::Index>(c.size())));
          if (!poly.is_even(1e-8)) problems.push_back("polynomial not even");
          if (std::abs(poly.coeffs()[0]) > 1e-8) problems.push_back("polynomial mean not zero");
          if (std::abs(poly.l2_norm() - 1.0) > 1e-8) problems.push_back("polynomial not unit norm");
          if (rec.frame.size() > 0 && n != rec.frame.rows()) problems.push_back("polynomial dimension differs from frame");
          rec.poly = std::move(poly);
        }
      } else if (j.contains("q1") && j.contains("q2") && j.contains("t")) {
        rec.t = j.at("t").get<double>();
        if (!(*rec.t >= 0.0 && *rec.t <= 1.0)) problems.push_back("t outside [0,1]");
        rec.q1 = json_form(j.at("q1"), problems);
        rec.q2 = json_form(j.at("q2"), problems);
      } else {
        problems.push_back("record needs either poly or t, q1, q2");
      }
    } catch (const nlohmann::json::exception& e) {
      problems.push_back(std::string("malformed JSON: ") + e.what());
    } catch (const Error& e) {
      problems.push_back(e.what());
    }
    if (!problems.empty()) {
      ++bad;
      errors << "line " << lineno << ":";
      for (const auto& p : problems) errors << " " << p << ";";
      errors << "\n";
    } else {
      out.push_back(std::move(rec));
    }
  }
  if (bad > 0) throw ValidationError(path + ": " + std::to_string(bad) + " invalid record(s)\n" + errors.str());
  return out;
}

}  // namespace sectionlab
