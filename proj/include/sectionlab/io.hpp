#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "sectionlab/bivector.hpp"
#include "sectionlab/body_field.hpp"
#include "sectionlab/convex_body.hpp"
#include "sectionlab/group.hpp"
#include "sectionlab/mod2_poly.hpp"
#include "sectionlab/section_search.hpp"
#include "sectionlab/spherical_poly.hpp"

namespace sectionlab {

using Json = nlohmann::ordered_json;

/// Reads a whole file; throws InvalidArgument naming the path when it cannot be opened.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Parses JSON text; malformed input raises ParseError with the 1-based line of the failure.
Json parse_json(const std::string& text, const std::string& source = "<input>");
Json read_json(const std::string& path);

Json matrix_to_json(const Eigen::MatrixXd& m);
Eigen::MatrixXd matrix_from_json(const Json& j);
Json vector_to_json(const Eigen::VectorXd& v);
Eigen::VectorXd vector_from_json(const Json& j);

Json grid_to_json(const SphereGrid& g);

Json group_to_json(const GroupSample& g);
GroupSample group_from_json(const Json& j);

Json poly_to_json(const SphericalPoly& p);
SphericalPoly poly_from_json(const Json& j);

/// Default working resolution for body files that do not state one.
int default_resolution(int n);

/// Body file, one JSON object with "dim" and optional "resolution", plus exactly one of
///   "vertices": [[x...], ...]         convex hull of points (rows)
///   "ball": r                         centred ball
///   "support": [h...]                 support samples on the standard grid
///   "radial": [r...]                  star body from radial samples
///   "poly": {...}, "epsilon": e       radial body 1 + e Phi
Json body_to_json(const ConvexBody& b);
ConvexBody body_from_json(const Json& j);
ConvexBody read_body(const std::string& path);

/// One JSON line per frame: {"frame": [[...]], "poly": {...}}.
std::string field_to_jsonl(const BodyField& f, const std::vector<SphericalPoly>& polys);

/// CSV header frame_00..frame_1{N-1},energy,radius,disk_distance,evaluations,iterations,success.
std::string search_result_csv(const RoundSearchResult& r);
/// CSV step,energy.
std::string search_trace_csv(const RoundSearchResult& r);

Json mod2_to_json(const Mod2SymPoly& p);
Mod2SymPoly mod2_from_json(const Json& j);

Json bivector_to_json(const Bivector4& b);
Bivector4 bivector_from_json(const Json& j);
std::vector<Eigen::Matrix4d> rotations_from_json(const Json& j);

/// CSV element,deviation.
std::string plane_check_csv(const PlaneCheckReport& r);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace sectionlab
