#include "sectionlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "sectionlab/counterexample.hpp"
#include "sectionlab/errors.hpp"

namespace sectionlab {

namespace {

int line_of_offset(const std::string& text, std::size_t byte) {
  const std::size_t end = std::min(byte == 0 ? 0 : byte - 1, text.size());
  int line = 1;
  for (std::size_t i = 0; i < end; ++i)
    if (text[i] == '\n') ++line;
  return line;
}

const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

}  // namespace

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write file: " + path);
  out << text;
  if (!out) throw InvalidArgument("write failed: " + path);
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const int line = line_of_offset(text, e.byte);
    throw ParseError(source + ":" + std::to_string(line) + ": malformed JSON (" + e.what() + ")", line);
  }
}

Json read_json(const std::string& path) { return parse_json(read_text(path), path); }

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array()) throw ValidationError("expected a matrix (array of rows)");
  const auto rows = j.size(), cols = j[0].size();
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ValidationError("ragged matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw ValidationError("matrix entries must be numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

Json vector_to_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Eigen::VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected a numeric array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ValidationError("array entries must be numbers");
    v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  }
  return v;
}

Json grid_to_json(const SphereGrid& g) {
  Json j;
  j["dim"] = g.dim;
  j["resolution"] = g.resolution;
  j["nodes"] = g.size();
  j["exact_degree"] = g.exact_degree;
  j["hash"] = g.hash;
  return j;
}

Json group_to_json(const GroupSample& g) {
  Json j;
  j["tag"] = to_string(g.tag);
  j["dim"] = g.dim;
  j["seed"] = g.seed;
  Json el = Json::array();
  for (const auto& e : g.elements) el.push_back(matrix_to_json(e));
  j["elements"] = std::move(el);
  j["weights"] = g.weights;
  return j;
}

GroupSample group_from_json(const Json& j) {
  const int n = require(j, "dim").get<int>();
  std::vector<Eigen::MatrixXd> els;
  for (const auto& e : require(j, "elements")) els.push_back(matrix_from_json(e));
  GroupSample g = finite_group(n, std::move(els));
  if (j.contains("tag")) g.tag = group_tag_from_string(j.at("tag").get<std::string>());
  if (j.contains("weights")) {
    g.weights = j.at("weights").get<std::vector<double>>();
    if (static_cast<int>(g.weights.size()) != g.size()) throw ValidationError("group: weight count differs from element count");
  }
  return g;
}

Json poly_to_json(const SphericalPoly& p) {
  Json j;
  j["n"] = p.dim();
  j["degree"] = p.degree();
  j["basis_hash"] = p.basis().hash();
  j["coeffs"] = vector_to_json(p.coeffs());
  return j;
}

SphericalPoly poly_from_json(const Json& j) {
  const int n = require(j, "n").get<int>(), d = require(j, "degree").get<int>();
  if (n < 2 || n > 4 || d < 0 || d > SphericalBasis::kMaxDegree) throw ValidationError("poly: n or degree out of range");
  const Eigen::VectorXd c = vector_from_json(require(j, "coeffs"));
  if (c.size() != SphericalBasis::dimension(n, d)) throw ValidationError("poly: coefficient count does not match n and degree");
  if (j.contains("basis_hash") && j.at("basis_hash").get<std::string>() != SphericalBasis::get(n, d).hash())
    throw ValidationError("poly: basis hash mismatch");
  return SphericalPoly(n, d, c);
}

int default_resolution(int n) {
  switch (n) {
    case 2: return 256;
    case 3: return 48;
    default: return 16;
  }
}

Json body_to_json(const ConvexBody& b) {
  Json j;
  j["dim"] = b.dim;
  j["resolution"] = b.grid->resolution;
  j["grid_hash"] = b.grid->hash;
  if (b.generator && b.generator->terms.empty()) {
    j["ball"] = b.generator->ball_radius;
  } else if (b.vertices) {
    j["vertices"] = matrix_to_json(b.vertices->transpose());
  } else if (b.radial) {
    j["radial"] = vector_to_json(*b.radial);
  } else {
    j["support"] = vector_to_json(b.support);
  }
  return j;
}

ConvexBody body_from_json(const Json& j) {
  const int n = require(j, "dim").get<int>();
  if (n < 2 || n > 4) throw ValidationError("body: dim must be 2, 3 or 4");
  const int res = j.contains("resolution") ? j.at("resolution").get<int>() : default_resolution(n);
  const GridPtr grid = build_grid(n, res);
  auto samples = [&](const char* key) {
    Eigen::VectorXd v = vector_from_json(j.at(key));
    if (v.size() != grid->size())
      throw ValidationError(std::string("body: \"") + key + "\" needs " + std::to_string(grid->size()) + " samples");
    return v;
  };
  if (j.contains("vertices")) {
    const Eigen::MatrixXd v = matrix_from_json(j.at("vertices"));
    if (v.cols() != n) throw ValidationError("body: vertex dimension differs from dim");
    return support_from_vertices(grid, v.transpose());
  }
  if (j.contains("ball")) return ball(grid, j.at("ball").get<double>());
  if (j.contains("support")) return from_support_samples(grid, samples("support"));
  if (j.contains("radial")) return from_radial_samples(grid, samples("radial"));
  if (j.contains("poly")) {
    const SphericalPoly p = poly_from_json(j.at("poly"));
    if (p.dim() != n) throw ValidationError("body: poly dimension differs from dim");
    return radial_body(grid, p, j.contains("epsilon") ? j.at("epsilon").get<double>() : 0.0);
  }
  throw ValidationError("body: need one of vertices, ball, support, radial, poly");
}

ConvexBody read_body(const std::string& path) {
  const Json j = read_json(path);
  try {
    return body_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + ": " + e.what());
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string field_to_jsonl(const BodyField& f, const std::vector<SphericalPoly>& polys) {
  if (polys.size() != f.frames.size()) throw SizeMismatch("field_to_jsonl: one polynomial per frame required");
  std::string out;
  for (std::size_t k = 0; k < f.frames.size(); ++k) {
    Json j;
    j["frame"] = matrix_to_json(f.frames[k]);
    j["poly"] = poly_to_json(polys[k]);
    out += j.dump() + "\n";
  }
  return out;
}

std::string search_result_csv(const RoundSearchResult& r) {
  std::ostringstream os;
  for (Eigen::Index i = 0; i < r.frame.rows(); ++i)
    for (Eigen::Index c = 0; c < r.frame.cols(); ++c) os << "frame_" << i << c << ",";
  os << "energy,radius,disk_distance,evaluations,iterations,success\n";
  for (Eigen::Index i = 0; i < r.frame.rows(); ++i)
    for (Eigen::Index c = 0; c < r.frame.cols(); ++c) os << format_double(r.frame(i, c)) << ",";
  os << format_double(r.energy) << "," << format_double(r.radius) << "," << format_double(r.disk_distance) << ","
     << r.evaluations << "," << r.iterations << "," << (r.success ? 1 : 0) << "\n";
  return os.str();
}

std::string search_trace_csv(const RoundSearchResult& r) {
  std::ostringstream os;
  os << "step,energy\n";
  for (std::size_t i = 0; i < r.trace.size(); ++i) os << i << "," << format_double(r.trace[i]) << "\n";
  return os.str();
}

Json mod2_to_json(const Mod2SymPoly& p) {
  Json j;
  j["n"] = p.nvars();
  j["monomials"] = p.monomials();
  return j;
}

Mod2SymPoly mod2_from_json(const Json& j) {
  const int n = require(j, "n").get<int>();
  return Mod2SymPoly::from_monomials(n, require(j, "monomials").get<std::vector<std::vector<int>>>());
}

Json bivector_to_json(const Bivector4& b) { return vector_to_json(b); }

Bivector4 bivector_from_json(const Json& j) {
  const Eigen::VectorXd v = vector_from_json(j);
  if (v.size() != 6) throw ValidationError("bivector: expected 6 coefficients");
  return v;
}

std::vector<Eigen::Matrix4d> rotations_from_json(const Json& j) {
  if (!j.is_array()) throw ValidationError("expected an array of 4x4 matrices");
  std::vector<Eigen::Matrix4d> out;
  for (const auto& m : j) {
    const Eigen::MatrixXd r = matrix_from_json(m);
    if (r.rows() != 4 || r.cols() != 4) throw ValidationError("rotation must be 4x4");
    out.emplace_back(r);
  }
  return out;
}

std::string plane_check_csv(const PlaneCheckReport& r) {
  std::ostringstream os;
  os << "element,deviation\n";
  for (std::size_t i = 0; i < r.deviation.size(); ++i) os << i << "," << format_double(r.deviation[i]) << "\n";
  return os.str();
}

std::string format_double(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace sectionlab
