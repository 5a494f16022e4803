#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <limits>
#include <random>

#include "sectionlab/bivector.hpp"
#include "sectionlab/body_field.hpp"
#include "sectionlab/cli.hpp"
#include "sectionlab/counterexample.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/fourier_support.hpp"
#include "sectionlab/hash.hpp"
#include "sectionlab/mod2_poly.hpp"
#include "sectionlab/quadform.hpp"
#include "sectionlab/section_search.hpp"
#include "sectionlab/symmetrize.hpp"

namespace sectionlab {

namespace {

// JSON has no infinity; report it as null.
Json num(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string resolve_out_dir(const ExperimentConfig& c) {
  if (!c.out_dir.empty()) return c.out_dir;
  if (const char* env = std::getenv("SECTIONLAB_OUT_DIR")) return env;
  return {};
}

std::string csv_row(std::initializer_list<std::string> cells) {
  std::string s;
  for (const auto& c : cells) s += (s.empty() ? "" : ",") + c;
  return s + "\n";
}

std::string fmt(double x) { return std::isfinite(x) ? format_double(x) : "inf"; }

double optional_bm(const ConvexBody& a, const ConvexBody& b) {
  try {
    return bm_distance(a, b);
  } catch (const OriginNotInterior&) {
    return std::numeric_limits<double>::infinity();
  }
}

double optional_ball_distance(const ConvexBody& a) {
  try {
    return distance_to_ball(a);
  } catch (const OriginNotInterior&) {
    return std::numeric_limits<double>::infinity();
  }
}

}  // namespace

CommandOutput cmd_metrics(const ExperimentConfig& c) {
  if (c.body_a.empty() || c.body_b.empty()) throw ValidationError("metrics: body_a and body_b are required");
  const ConvexBody a = read_body(c.body_a);
  ConvexBody b = read_body(c.body_b);
  if (a.dim != b.dim) throw ValidationError("metrics: bodies live in different dimensions");
  bool resampled = false;
  if (a.grid->hash != b.grid->hash) {
    b = from_support_samples(a.grid, b.support_at_many(a.grid->nodes));
    resampled = true;
  }
  const double d = optional_bm(a, b);
  const double dh = hausdorff(a, b);
  const double ra = optional_ball_distance(a), rb = optional_ball_distance(b);

  CommandOutput out;
  out.report["grid_hash"] = a.grid->hash;
  out.report["resampled_b"] = resampled;
  out.report["d"] = num(d);
  out.report["d_h"] = num(dh);
  out.report["distance_to_ball_a"] = num(ra);
  out.report["distance_to_ball_b"] = num(rb);
  out.files.emplace_back("metrics.csv", csv_row({"body_a", "body_b", "d", "d_h", "distance_to_ball_a", "distance_to_ball_b"}) +
                                            csv_row({c.body_a, c.body_b, fmt(d), fmt(dh), fmt(ra), fmt(rb)}));
  return out;
}

CommandOutput cmd_counterexample(const ExperimentConfig& c) {
  if (c.n != 3 && c.n != 4) throw ValidationError("counterexample: n must be 3 or 4");
  FindEpsilonOptions opts;
  opts.resolution = c.resolution > 0 ? c.resolution : (c.n == 3 ? 48 : 18);
  opts.echo_resolution = c.echo_resolution;
  const GridPtr grid = build_grid(c.n, opts.resolution);

  CommandOutput out;
  Json& r = out.report;
  double eps = c.epsilon;
  std::vector<EpsilonSample> manifest;
  if (eps == 0.0) {
    const EpsilonSearch s = find_epsilon(c.n, c.samples, c.seed, opts);
    eps = s.epsilon;
    manifest = s.manifest;
    r["epsilon_source"] = "search";
    r["coarse_epsilon"] = s.coarse_epsilon;
    r["analytic_epsilon"] = s.analytic_epsilon;
    r["certificate_evaluations"] = s.certificate_evaluations;
    r["echo_failures"] = s.echo_failures;
    r["echo_grid_hash"] = s.echo_grid_hash;
  } else {
    manifest = epsilon_manifest(c.n, c.samples, c.seed, opts.degree);
    r["epsilon_source"] = "override";
  }
  r["epsilon"] = eps;
  r["grid_hash"] = grid->hash;
  r["degree"] = opts.degree;

  // Certificate pass rate and the separation field over the same samples.
  const auto polys = manifest_polys(c.n, manifest, opts.degree);
  int passed = 0;
  Json failures = Json::array();
  std::vector<ConvexBody> field;
  bool radius_ok = true;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto cert = certify_radial_poly(*grid, polys[i], eps);
    if (cert.convex) {
      ++passed;
    } else {
      Json f;
      f["index"] = manifest[i].index;
      f["basis_index"] = manifest[i].basis_index;
      f["rotation"] = matrix_to_json(manifest[i].rotation);
      f["worst_node"] = cert.worst_node;
      f["worst_margin"] = cert.worst_margin;
      failures.push_back(std::move(f));
    }
    try {
      field.push_back(radial_body_from_samples(grid, polys[i].sample(*grid), eps));
    } catch (const NonpositiveRadius&) {
      radius_ok = false;
    }
  }
  const double rate = polys.empty() ? 1.0 : static_cast<double>(passed) / static_cast<double>(polys.size());
  r["samples"] = static_cast<int>(polys.size());
  r["certificate_pass_rate"] = rate;
  const SeparationReport sep = separation_delta(field);
  r["delta"] = sep.delta;
  r["delta_argmin"] = sep.argmin;
  bool ok = rate == 1.0 && radius_ok && sep.delta > 0.0;

  if (c.n == 4) {
    std::mt19937_64 rng(c.seed);
    bool symmetric = true;
    for (int k = 0; k < 5; ++k) {
      const SphericalPoly p = random_F_element(4, 4, rng), q = random_F_element(4, 4, rng);
      symmetric = symmetric && psi_product(p, q).coeffs() == psi_product(q, p).coeffs();
    }
    r["psi_swap_symmetric"] = symmetric;
    ok = ok && symmetric;
  } else {
    // Octahedron field of the restricted form x1^2 - x2^2 over frames in R^N with close neighbours.
    const int N = std::max(3, c.N);
    MonomialPoly amb(N);
    std::vector<int> e(static_cast<std::size_t>(N), 0);
    e[0] = 2;
    amb.add_term(e, 1.0);
    e[0] = 0, e[1] = 2;
    amb.add_term(e, -1.0);
    SectionDescriptor desc;
    desc.kind = SectionKind::Restriction;
    desc.name = "octahedron:x1^2-x2^2";
    desc.n = 3;
    desc.N = N;
    desc.ambient = amb;
    desc.route = BodyRoute::Octahedron;
    std::mt19937_64 rng(c.seed);
    std::vector<Eigen::MatrixXd> frames;
    std::vector<std::pair<int, int>> adj;
    for (int k = 0; k < 20; ++k) {
      frames.push_back(random_frame(3, N, rng));
      frames.push_back(perturb_frame(frames.back(), 1e-3, rng));
      adj.emplace_back(2 * k, 2 * k + 1);
    }
    const BodyField f = build_field(desc, frames, grid, adj);
    double max_angle = 0.0;
    for (double a : f.continuity.frame_distance) max_angle = std::max(max_angle, a);
    Json oct;
    oct["N"] = N;
    oct["frames"] = static_cast<int>(frames.size());
    oct["max_frame_distance"] = max_angle;
    oct["max_body_distance"] = f.continuity.max_body_distance;
    oct["continuous"] = f.continuity.max_body_distance <= 1e-2;
    r["octahedron_field"] = oct;
    ok = ok && f.continuity.max_body_distance <= 1e-2;
  }

  if (!failures.empty()) {
    r["failing_samples"] = failures;
    out.files.emplace_back("failing_samples.json", failures.dump(2) + "\n");
  }
  out.exit_code = ok ? 0 : 1;
  return out;
}

namespace {

SectionFamily family_from_config(const ExperimentConfig& c) {
  if (c.family == "ellipsoid") return ellipsoid_family(Eigen::Map<const Eigen::VectorXd>(c.axes.data(), static_cast<Eigen::Index>(c.axes.size())));
  if (c.family == "sphere") return ball_family(c.N);
  if (c.family == "cube") return cube_family(c.N);
  if (c.family == "polytope") return random_polytope_family(c.N, c.facets, c.seed);
  if (c.family == "file") {
    if (c.input.empty()) throw ValidationError("round2d: family = file needs input");
    const Json j = read_json(c.input);
    if (!j.contains("normals") || !j.contains("offsets")) throw ValidationError(c.input + ": need normals and offsets");
    return hpolytope_family(matrix_from_json(j.at("normals")), vector_from_json(j.at("offsets")));
  }
  throw ValidationError("round2d: unknown family '" + c.family + "'");
}

}  // namespace

CommandOutput cmd_round2d(const ExperimentConfig& c) {
  const SectionFamily fam = family_from_config(c);
  RoundSearchOptions opts;
  opts.degree = c.d;
  opts.resolution = c.resolution > 0 ? c.resolution : 64;
  opts.tolerance = c.tolerance;
  opts.seed = c.seed;
  const RoundSearchResult res = round_section_search(fam, opts);

  CommandOutput out;
  Json& r = out.report;
  r["family"] = fam.name;
  r["N"] = fam.N;
  r["frame"] = matrix_to_json(res.frame);
  r["energy"] = res.energy;
  r["radius"] = res.radius;
  r["disk_distance"] = num(res.disk_distance);
  r["evaluations"] = res.evaluations;
  r["iterations"] = res.iterations;
  r["first_energy"] = res.trace.empty() ? 0.0 : res.trace.front();
  r["success"] = res.success;
  out.files.emplace_back("round2d.csv", search_result_csv(res));
  out.files.emplace_back("round2d_trace.csv", search_trace_csv(res));
  out.exit_code = res.success ? 0 : 1;
  return out;
}

namespace {

GroupSample group_from_config(const ExperimentConfig& c, int n) {
  if (c.group == "cube") return cube_rotation_group(n);
  if (c.group == "finite") {
    if (c.group_file.empty()) throw ValidationError("symmetrize: group = finite needs group_file");
    const Json j = read_json(c.group_file);
    if (j.is_array()) {
      std::vector<Eigen::MatrixXd> els;
      for (const auto& m : j) els.push_back(matrix_from_json(m));
      return finite_group(n, std::move(els));
    }
    return group_from_json(j);
  }
  return sample_group(group_tag_from_string(c.group), n, c.group_count, c.seed);
}

}  // namespace

CommandOutput cmd_symmetrize(const ExperimentConfig& c) {
  CommandOutput out;
  Json& r = out.report;
  bool ok = true;
  if (!c.body.empty()) {
    const ConvexBody a = read_body(c.body);
    const GroupSample g = group_from_config(c, a.dim);
    const SymmetrizeReport s = symmetrize(a, g);
    r["group"] = to_string(g.tag);
    r["group_size"] = g.size();
    r["grid_hash"] = a.grid->hash;
    r["defect_before"] = s.defect_before;
    r["defect_after"] = s.defect_after;
    r["hausdorff_change"] = s.hausdorff_change;
    r["odd_l2"] = s.odd_l2;
    r["odd_c0"] = s.odd_c0;
    out.files.emplace_back("symmetrized_body.json", body_to_json(s.averaged).dump() + "\n");
  } else if (!c.sweep) {
    throw ValidationError("symmetrize: body is required unless sweep = true");
  }
  if (c.sweep) {
    // The cap over a facet must cover many nodes, hence grids much finer than the body default.
    const int n = c.n >= 2 ? c.n : 3;
    const int res = c.resolution > 0 ? c.resolution : (n == 2 ? 1024 : n == 3 ? 256 : 32);
    const std::vector<double> heights = n == 2 ? std::vector<double>{0.1, 0.2, 0.4, 0.8} : std::vector<double>{0.2, 0.4, 0.8};
    const ExponentSweep sw = odd_residual_exponent_sweep(n, res, heights);
    Json j;
    j["n"] = sw.n;
    j["fitted_exponent"] = sw.fitted_exponent;
    j["expected_exponent"] = sw.expected_exponent;
    j["relative_error"] = sw.relative_error;
    j["consistent"] = sw.consistent;
    r["exponent_sweep"] = j;
    std::string csv = "height,odd_l2,hausdorff\n";
    for (std::size_t i = 0; i < sw.heights.size(); ++i)
      csv += csv_row({fmt(sw.heights[i]), fmt(sw.odd_l2[i]), fmt(sw.hausdorff[i])});
    out.files.emplace_back("exponent_sweep.csv", csv);
    ok = ok && sw.consistent;
  }
  out.exit_code = ok ? 0 : 1;
  return out;
}

CommandOutput cmd_swclass(const ExperimentConfig& c) {
  Mod2Options opts;
  opts.allow_even = c.allow_even;
  const int dtop = c.chain ? (c.d_max > 0 ? c.d_max : c.d) : c.d;
  const ExpansionResult res = c.chain ? sw_product_chain(c.n, dtop, opts) : stiefel_whitney_top(c.n, dtop, opts);

  CommandOutput out;
  Json& r = out.report;
  r["n"] = c.n;
  r["d"] = dtop;
  r["chain"] = c.chain;
  r["M"] = c.chain ? res.factor_count : multi_index_count(c.n, dtop);
  r["factor_count"] = res.factor_count;
  r["factors_applied"] = res.factors_applied;
  r["monomial_count"] = res.poly.size();
  r["degree"] = res.poly.degree();
  r["ones_eval"] = res.ones_eval;
  r["nonzero"] = res.nonzero;
  r["symmetric"] = res.poly.is_symmetric();
  r["truncated"] = res.truncated;
  if (res.truncated) r["truncation_error"] = res.message;
  if (res.poly.size() <= 64) r["polynomial"] = res.poly.to_string();
  if (c.elementary) {
    const ElementaryForm ef = to_elementary(res.poly);
    Json e;
    e["complete"] = ef.complete;
    e["terms"] = ef.terms;
    r["elementary"] = e;
  }
  out.files.emplace_back("swclass_poly.json", mod2_to_json(res.poly).dump() + "\n");
  // For odd degrees the all-ones evaluation must be 1.
  const bool odd = dtop % 2 == 1;
  const bool ok = !res.truncated && res.nonzero && (!odd || res.ones_eval == 1);
  out.exit_code = ok ? 0 : 1;
  return out;
}

CommandOutput cmd_bivec(const ExperimentConfig& c) {
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> gauss;
  const int count = c.samples;
  auto random_bivector = [&]() {
    Bivector4 s;
    for (int k = 0; k < 6; ++k) s[k] = gauss(rng);
    return s;
  };
  auto random_rotation = [&]() { return Eigen::Matrix4d(haar_rotation(4, rng)); };

  double star_involution = 0.0, star_isometry = 0.0, split_orth = 0.0;
  for (int k = 0; k < count; ++k) {
    const Bivector4 s = random_bivector();
    star_involution = std::max(star_involution, (hodge_star(hodge_star(s)) - s).norm());
    star_isometry = std::max(star_isometry, std::abs(hodge_star(s).norm() - s.norm()));
    const PlusMinus pm = split_pm(s);
    split_orth = std::max(split_orth, std::abs(pm.plus.dot(pm.minus)));
  }
  double hom = 0.0;
  for (int k = 0; k < count; ++k) {
    const Eigen::Matrix4d r1 = random_rotation(), r2 = random_rotation();
    const RhoPair a = rho_pm(r1), b = rho_pm(r2), ab = rho_pm(r1 * r2);
    hom = std::max({hom, (ab.plus - a.plus * b.plus).cwiseAbs().maxCoeff(), (ab.minus - a.minus * b.minus).cwiseAbs().maxCoeff()});
  }
  double sign_err = 0.0;
  bool decomposable = true;
  for (int k = 0; k < count; ++k) {
    const Bivector4 wp = random_unit_plus(rng), wm = random_unit_minus(rng);
    sign_err = std::max({sign_err, std::abs(wedge(wp, wp) - 1.0), std::abs(wedge(wm, wm) + 1.0), std::abs(wedge(wp, wm))});
    decomposable = decomposable && is_decomposable(wp + wm);
  }
  std::vector<Eigen::Matrix4d> torus;
  std::uniform_real_distribution<double> angle(-M_PI, M_PI);
  for (int k = 0; k < 100; ++k) torus.push_back(block_torus(angle(rng), angle(rng)));
  const Bivector4 wp = e_plus_basis().col(0), wm = e_minus_basis().col(0);
  const PlaneCheckReport torus_check = invariant_plane_check(torus, wp, wm);

  bool surjective = true;
  Json witnesses = Json::array();
  for (int k = 0; k < 3; ++k) {
    Eigen::Matrix3d t = Eigen::Matrix3d::Identity();
    const int i = (k + 1) % 3, j = (k + 2) % 3;
    t(i, i) = std::cos(0.7), t(j, j) = std::cos(0.7), t(i, j) = -std::sin(0.7), t(j, i) = std::sin(0.7);
    const PreimageWitness w = rho_plus_preimage(t, 1e-6, c.seed);
    surjective = surjective && w.found;
    witnesses.push_back({{"axis", k}, {"residual", w.residual}, {"found", w.found}});
  }

  CommandOutput out;
  Json& r = out.report;
  r["pairs"] = count;
  r["star_involution_error"] = star_involution;
  r["star_isometry_error"] = star_isometry;
  r["split_orthogonality_error"] = split_orth;
  r["homomorphism_error"] = hom;
  r["wedge_sign_error"] = sign_err;
  r["sum_decomposable"] = decomposable;
  r["block_torus_max_deviation"] = torus_check.max_deviation;
  r["block_torus_invariant"] = torus_check.invariant;
  r["surjectivity_witnesses"] = witnesses;
  bool ok = star_involution <= 1e-12 && star_isometry <= 1e-12 && split_orth <= 1e-12 && hom <= 1e-10 &&
            sign_err <= 1e-10 && decomposable && torus_check.invariant && surjective;

  if (!c.rotations.empty()) {
    if (c.input.empty()) throw ValidationError("bivec: rotations need an input file with w_plus and w_minus");
    const Json pair = read_json(c.input);
    if (!pair.contains("w_plus") || !pair.contains("w_minus")) throw ValidationError(c.input + ": need w_plus and w_minus");
    const PlaneCheckReport pc = invariant_plane_check(rotations_from_json(read_json(c.rotations)),
                                                      bivector_from_json(pair.at("w_plus")),
                                                      bivector_from_json(pair.at("w_minus")));
    r["plane_check_max_deviation"] = pc.max_deviation;
    r["plane_check_invariant"] = pc.invariant;
    out.files.emplace_back("plane_check.csv", plane_check_csv(pc));
    ok = ok && pc.invariant;
  }
  out.exit_code = ok ? 0 : 1;
  return out;
}

CommandOutput cmd_mkbody(const ExperimentConfig& c) {
  if (c.output.empty()) throw ValidationError("mkbody: output is required");
  if (c.n < 2 || c.n > 4) throw ValidationError("mkbody: n must be 2, 3 or 4");
  const GridPtr grid = build_grid(c.n, c.resolution > 0 ? c.resolution : default_resolution(c.n));
  ConvexBody b;
  if (c.shape == "cube") {
    b = support_from_vertices(grid, cube_vertices(c.n));
  } else if (c.shape == "ball") {
    b = ball(grid, 1.0);
  } else if (c.shape == "cross") {
    Eigen::MatrixXd v(c.n, 2 * c.n);
    v << Eigen::MatrixXd::Identity(c.n, c.n), -Eigen::MatrixXd::Identity(c.n, c.n);
    b = support_from_vertices(grid, v);
  } else if (c.shape == "simplex") {
    Eigen::MatrixXd v(c.n, c.n + 1);
    v << Eigen::MatrixXd::Identity(c.n, c.n), Eigen::VectorXd::Constant(c.n, -1.0 / c.n);
    b = support_from_vertices(grid, v);
  } else if (c.shape == "random") {
    std::mt19937_64 rng(c.seed);
    b = support_from_vertices(grid, random_points_in_ball(c.n, c.samples, rng));
  } else {
    throw ValidationError("mkbody: unknown shape '" + c.shape + "' (cube, ball, cross, simplex, random)");
  }
  CommandOutput out;
  out.report["shape"] = c.shape;
  out.report["grid_hash"] = grid->hash;
  out.report["output"] = c.output;
  write_text(c.output, body_to_json(b).dump() + "\n");
  return out;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  ExperimentConfig cfg;
  CLI::App app{"sectionlab: convex-body section experiments"};
  add_config_options(app, cfg);
  app.set_config("--config", "", "key = value config file");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"metrics", "distances between two body files"},
      {"counterexample", "convexity margin and separation of the radial counterexample field"},
      {"round2d", "search for a round planar section"},
      {"symmetrize", "group averaging and invariance defects"},
      {"swclass", "mod-2 top-class polynomial"},
      {"bivec", "bivector and rho+- invariant sweep"},
      {"mkbody", "write a standard body file"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }
  cfg.experiment = app.get_subcommands().front()->get_name();

  CommandOutput res;
  try {
    validate_config(cfg);
    if (cfg.experiment == "metrics") res = cmd_metrics(cfg);
    else if (cfg.experiment == "counterexample") res = cmd_counterexample(cfg);
    else if (cfg.experiment == "round2d") res = cmd_round2d(cfg);
    else if (cfg.experiment == "symmetrize") res = cmd_symmetrize(cfg);
    else if (cfg.experiment == "swclass") res = cmd_swclass(cfg);
    else if (cfg.experiment == "bivec") res = cmd_bivec(cfg);
    else res = cmd_mkbody(cfg);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const SizeMismatch& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "failure: " << e.what() << "\n";
    return 1;
  }

  Json report;
  report["toolkit"] = "sectionlab";
  report["version"] = kToolkitVersion;
  report["experiment"] = cfg.experiment;
  report["config"] = config_to_json(cfg);
  report["config_hash"] = config_hash(cfg);
  report["status"] = res.exit_code == 0 ? "pass" : "fail";
  report["results"] = res.report;
  report["report_hash"] = hash_hex(report.dump());

  const std::string dir = resolve_out_dir(cfg);
  if (!dir.empty()) {
    try {
      std::filesystem::create_directories(dir);
      write_text((std::filesystem::path(dir) / (cfg.experiment + "_report.json")).string(), report.dump(2) + "\n");
      for (const auto& [name, text] : res.files) write_text((std::filesystem::path(dir) / name).string(), text);
    } catch (const std::exception& e) {
      err << "error: " << e.what() << "\n";
      return 2;
    }
  }
  out << report.dump(2) << "\n";
  return res.exit_code;
}

}  // namespace sectionlab
