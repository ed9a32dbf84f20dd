#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "randers/conjugate.hpp"
#include "randers/embed.hpp"
#include "randers/geodesics.hpp"
#include "randers/measure.hpp"
#include "randers/profile.hpp"

namespace randers::io {

using json = nlohmann::ordered_json;

const char* engine_version();

/// %.17g, with nan/inf spelled out.
std::string fmt(double x);

/// Serializes with every double printed to 17 significant digits (the
/// library default prints the shortest round-trip form). Non-finite
/// numbers become null, as JSON has no spelling for them.
std::string dump(const json& j, int indent = 2);

/// {"engine", "version", "config"} header shared by every JSON output.
json envelope(const json& config);

/// Surface files: {"kind": "paraboloid", "mu": 1, "r_max": 20} or
/// {"kind": "custom", "m": "...", "m1": "...", "m2": "...", "mu": ..., "r_max": ...}.
/// The derivative expressions are optional. Throws Error(parse) on malformed
/// input and the profile's own errors on invalid parameters.
Profile parse_surface(const json& j);
Profile load_surface(const std::filesystem::path& file);
json surface_json(const Profile& p);

const char* to_string(MetricTag tag);
const char* to_string(PathKind kind);

/// CSV with header s,r,theta,dr,dtheta.
std::string path_csv(const GeodesicPath& path);
json path_json(const GeodesicPath& path, const IntegrateOptions& options);

json to_json(const SurfacePoint& q);
json to_json(const ClairautReport& r);
json to_json(const DistanceReport& r);
json to_json(const ParallelLengths& r);
json to_json(const MeetingPoint& r);
json to_json(const CutArc& arc);
json to_json(const CutPointCheck& c);
json to_json(const PoleCertificate& c);
json to_json(const PullbackReport& r);
json to_json(const HeightMapCheck& c);

/// s,r,theta rows of the cut locus.
std::string cut_arc_csv(const CutArc& arc);

/// Wavefront OBJ. Faces are written 1-based in the stored winding.
std::string mesh_obj(const Mesh& mesh, const std::string& comment = {});
/// Polylines as OBJ `l` elements, one per curve.
std::string polylines_obj(const std::vector<std::vector<Vec3>>& curves,
                          const std::string& comment = {});
/// x,y,z rows.
std::string polyline_csv(const std::vector<Vec3>& curve);

/// Writes text to a file, creating parent directories.
void write_file(const std::filesystem::path& file, const std::string& text);

}  // namespace randers::io
