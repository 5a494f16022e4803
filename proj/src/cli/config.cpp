#include <CLI11.hpp>
#include <sstream>

#include "sectionlab/cli.hpp"
#include "sectionlab/errors.hpp"
#include "sectionlab/hash.hpp"

namespace sectionlab {

void add_config_options(CLI::App& app, ExperimentConfig& c) {
  app.add_option("--experiment", c.experiment, "experiment name (set from the subcommand)");
  app.add_option("--n", c.n, "dimension of the bodies");
  app.add_option("--N", c.N, "ambient dimension");
  app.add_option("--d", c.d, "degree (harmonics, Stiefel-Whitney class)");
  app.add_option("--d_max", c.d_max, "largest odd degree of a product chain (0: use d)");
  app.add_option("--epsilon", c.epsilon, "radial perturbation size (0: search)");
  app.add_option("--seed", c.seed, "random seed");
  app.add_option("--resolution", c.resolution, "grid resolution (0: command default)");
  app.add_option("--echo_resolution", c.echo_resolution, "refinement grid resolution (0: twice resolution)");
  app.add_option("--samples", c.samples, "sample count");
  app.add_option("--tolerance", c.tolerance, "success tolerance");
  app.add_option("--group", c.group, "group tag: SO, torus, pm, finite, cube");
  app.add_option("--group_count", c.group_count, "group sample size");
  app.add_option("--group_file", c.group_file, "JSON list of matrices for the finite group");
  app.add_option("--body", c.body, "body file");
  app.add_option("--body_a", c.body_a, "first body file");
  app.add_option("--body_b", c.body_b, "second body file");
  app.add_option("--family", c.family, "section family: ellipsoid, sphere, cube, polytope, file");
  app.add_option("--axes", c.axes, "ellipsoid semi-axes");
  app.add_option("--facets", c.facets, "facet count of random polytopes");
  app.add_option("--input", c.input, "auxiliary input file");
  app.add_option("--rotations", c.rotations, "JSON list of 4x4 rotations");
  app.add_option("--shape", c.shape, "mkbody shape: cube, ball, cross, simplex, random");
  app.add_option("--output", c.output, "output file (mkbody)");
  app.add_option("--out_dir", c.out_dir, "output directory");
  app.add_option("--allow_even", c.allow_even, "accept even degrees in swclass");
  app.add_option("--chain", c.chain, "swclass: product P_1 P_3 ... P_d");
  app.add_option("--elementary", c.elementary, "swclass: re-express in elementary symmetric polynomials");
  app.add_option("--sweep", c.sweep, "symmetrize: run the odd-residual exponent sweep");
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string config_to_text(const ExperimentConfig& c) {
  std::ostringstream os;
  auto str = [&](const char* k, const std::string& v) {
    if (!v.empty()) os << k << " = " << quote(v) << "\n";
  };
  auto num = [&](const char* k, double v) { os << k << " = " << format_double(v) << "\n"; };
  auto integer = [&](const char* k, long long v) { os << k << " = " << v << "\n"; };
  auto flag = [&](const char* k, bool v) { os << k << " = " << (v ? "true" : "false") << "\n"; };
  str("experiment", c.experiment);
  integer("n", c.n);
  integer("N", c.N);
  integer("d", c.d);
  integer("d_max", c.d_max);
  num("epsilon", c.epsilon);
  os << "seed = " << c.seed << "\n";
  integer("resolution", c.resolution);
  integer("echo_resolution", c.echo_resolution);
  integer("samples", c.samples);
  num("tolerance", c.tolerance);
  str("group", c.group);
  integer("group_count", c.group_count);
  str("group_file", c.group_file);
  str("body", c.body);
  str("body_a", c.body_a);
  str("body_b", c.body_b);
  str("family", c.family);
  os << "axes = [";
  for (std::size_t i = 0; i < c.axes.size(); ++i) os << (i ? ", " : "") << format_double(c.axes[i]);
  os << "]\n";
  integer("facets", c.facets);
  str("input", c.input);
  str("rotations", c.rotations);
  str("shape", c.shape);
  str("output", c.output);
  str("out_dir", c.out_dir);
  flag("allow_even", c.allow_even);
  flag("chain", c.chain);
  flag("elementary", c.elementary);
  flag("sweep", c.sweep);
  return os.str();
}

ExperimentConfig config_from_text(const std::string& text) {
  ExperimentConfig c;
  CLI::App app;
  add_config_options(app, c);
  app.allow_config_extras(CLI::config_extras_mode::error);
  std::istringstream in(text);
  try {
    app.parse_from_stream(in);
  } catch (const CLI::ParseError& e) {
    throw ValidationError(std::string("config: ") + e.what());
  }
  return c;
}

void validate_config(const ExperimentConfig& c) {
  std::ostringstream bad;
  auto need = [&](bool ok, const char* what) {
    if (!ok) bad << " " << what << ";";
  };
  need(c.n >= 1 && c.n <= 4, "n must lie in [1, 4]");
  need(c.N >= 1 && c.N <= 12, "N must lie in [1, 12]");
  need(c.d >= 0 && c.d <= 12, "d must lie in [0, 12]");
  need(c.d_max >= 0 && c.d_max <= 7, "d_max must lie in [0, 7]");
  need(c.epsilon >= 0.0 && c.epsilon < 1.0, "epsilon must lie in [0, 1)");
  need(c.resolution == 0 || (c.resolution >= 8 && c.resolution <= 512), "resolution must be 0 or in [8, 512]");
  need(c.echo_resolution == 0 || (c.echo_resolution >= 8 && c.echo_resolution <= 512),
       "echo_resolution must be 0 or in [8, 512]");
  need(c.samples >= 1 && c.samples <= 100000, "samples must lie in [1, 100000]");
  need(c.tolerance > 0.0 && c.tolerance < 1.0, "tolerance must lie in (0, 1)");
  need(c.group_count >= 1 && c.group_count <= 100000, "group_count must lie in [1, 100000]");
  need(c.facets >= 0 && c.facets <= 10000, "facets must lie in [0, 10000]");
  for (double a : c.axes) need(a > 0.0, "axes must be positive");
  const std::string msg = bad.str();
  if (!msg.empty()) throw ValidationError("invalid config:" + msg);
}

Json config_to_json(const ExperimentConfig& c) {
  Json j;
  j["experiment"] = c.experiment;
  j["n"] = c.n;
  j["N"] = c.N;
  j["d"] = c.d;
  j["d_max"] = c.d_max;
  j["epsilon"] = c.epsilon;
  j["seed"] = c.seed;
  j["resolution"] = c.resolution;
  j["echo_resolution"] = c.echo_resolution;
  j["samples"] = c.samples;
  j["tolerance"] = c.tolerance;
  j["group"] = c.group;
  j["group_count"] = c.group_count;
  j["group_file"] = c.group_file;
  j["body"] = c.body;
  j["body_a"] = c.body_a;
  j["body_b"] = c.body_b;
  j["family"] = c.family;
  j["axes"] = c.axes;
  j["facets"] = c.facets;
  j["input"] = c.input;
  j["rotations"] = c.rotations;
  j["shape"] = c.shape;
  j["output"] = c.output;
  j["out_dir"] = c.out_dir;
  j["allow_even"] = c.allow_even;
  j["chain"] = c.chain;
  j["elementary"] = c.elementary;
  j["sweep"] = c.sweep;
  return j;
}

std::string config_hash(const ExperimentConfig& c) { return hash_hex(config_to_text(c)); }

}  // namespace sectionlab
