#include "lanegeo/scene_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "lanegeo/errors.hpp"

namespace lanegeo {
namespace {

VisibilityFlags flags_from_json(const Json& j) {
  VisibilityFlags flags;
  flags.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidInput("visibility entries must be integers 0 or 1");
    const auto f = v.get<long long>();
    if (f != 0 && f != 1) throw InvalidInput("visibility entries must be 0 or 1");
    flags.push_back(static_cast<std::uint8_t>(f));
  }
  return flags;
}

Json flags_to_json(const VisibilityFlags& flags) {
  Json out = Json::array();
  for (auto f : flags) out.push_back(static_cast<int>(f));
  return out;
}

Metadata metadata_from_json(const Json& j) {
  Metadata m;
  if (j.is_null()) return m;
  for (auto it = j.begin(); it != j.end(); ++it) m[it.key()] = it.value().get<std::string>();
  return m;
}

Json metadata_to_json(const Metadata& m) {
  Json out = Json::object();
  for (const auto& [k, v] : m) out[k] = v;
  return out;
}

Lane3D lane3d_from_json(const Json& j) {
  Lane3D lane;
  lane.id = j.at("id").get<std::string>();
  for (const auto& p : j.at("points")) {
    if (p.size() != 3) throw InvalidInput("lane '" + lane.id + "': points must be [x,y,z]");
    lane.points.push_back({p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
  }
  lane.visibility = flags_from_json(j.at("visibility"));
  if (j.contains("prob")) lane.prob = j.at("prob").get<double>();
  return lane;
}

Lane2D lane2d_from_json(const Json& j) {
  Lane2D lane;
  lane.id = j.at("id").get<std::string>();
  for (const auto& p : j.at("points")) {
    if (p.size() != 2) throw InvalidInput("lane '" + lane.id + "': flat points must be [x,y]");
    lane.points.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  lane.visibility = flags_from_json(j.at("visibility"));
  return lane;
}

Json to_json(const Lane2D& lane) {
  Json pts = Json::array();
  for (const auto& p : lane.points) pts.push_back(Json::array({p.x, p.y}));
  Json out = Json::object();
  out["id"] = lane.id;
  out["points"] = std::move(pts);
  out["visibility"] = flags_to_json(lane.visibility);
  return out;
}

template <typename Record, typename FromJson>
std::vector<Record> parse_lines(std::istream& in, FromJson from_json) {
  std::vector<Record> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Record r = from_json(Json::parse(line));
      validate(r);
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(line_no, e.what());
    } catch (const InvalidInput& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

Json to_json(const CameraPose& pose) {
  Json k = Json::object();
  k["fx"] = pose.intrinsics.fx;
  k["fy"] = pose.intrinsics.fy;
  k["cx"] = pose.intrinsics.cx;
  k["cy"] = pose.intrinsics.cy;
  k["width_px"] = pose.intrinsics.width_px;
  k["height_px"] = pose.intrinsics.height_px;
  Json out = Json::object();
  out["height_m"] = pose.height_m;
  out["pitch_rad"] = pose.pitch_rad;
  out["intrinsics"] = std::move(k);
  return out;
}

CameraPose camera_from_json(const Json& j) {
  CameraPose pose;
  pose.height_m = j.at("height_m").get<double>();
  pose.pitch_rad = j.at("pitch_rad").get<double>();
  const auto& k = j.at("intrinsics");
  pose.intrinsics.fx = k.at("fx").get<double>();
  pose.intrinsics.fy = k.at("fy").get<double>();
  pose.intrinsics.cx = k.at("cx").get<double>();
  pose.intrinsics.cy = k.at("cy").get<double>();
  pose.intrinsics.width_px = k.at("width_px").get<int>();
  pose.intrinsics.height_px = k.at("height_px").get<int>();
  return pose;
}

Json to_json(const AnchorSet& set) {
  Json anchors = Json::array();
  for (const auto& a : set.anchors) {
    Json e = Json::object();
    e["x_offsets"] = a.x_offsets;
    e["z"] = a.z;
    e["vis"] = a.vis;
    e["prob"] = a.prob;
    anchors.push_back(std::move(e));
  }
  Json out = Json::object();
  out["y_refs"] = set.y_refs;
  out["anchors"] = std::move(anchors);
  return out;
}

AnchorSet anchor_set_from_json(const Json& j) {
  AnchorSet set;
  set.y_refs = j.at("y_refs").get<std::vector<double>>();
  for (const auto& e : j.at("anchors")) {
    Anchor a;
    a.x_offsets = e.at("x_offsets").get<std::vector<double>>();
    a.z = e.at("z").get<std::vector<double>>();
    a.vis = e.at("vis").get<std::vector<double>>();
    a.prob = e.at("prob").get<double>();
    set.anchors.push_back(std::move(a));
  }
  return set;
}

Json to_json(const Lane3D& lane) {
  Json pts = Json::array();
  for (const auto& p : lane.points) pts.push_back(Json::array({p.x, p.y, p.z}));
  Json out = Json::object();
  out["id"] = lane.id;
  out["points"] = std::move(pts);
  out["visibility"] = flags_to_json(lane.visibility);
  if (lane.prob) out["prob"] = *lane.prob;
  return out;
}

Json to_json(const Scene& scene) {
  Json lanes = Json::array();
  for (const auto& lane : scene.lanes) lanes.push_back(to_json(lane));
  Json out = Json::object();
  out["frame_id"] = scene.frame_id;
  out["camera"] = to_json(scene.camera);
  out["lanes"] = std::move(lanes);
  out["metadata"] = metadata_to_json(scene.metadata);
  if (scene.anchors) out["anchors"] = to_json(*scene.anchors);
  return out;
}

Json to_json(const FlatScene& scene) {
  Json lanes = Json::array();
  for (const auto& lane : scene.lanes) lanes.push_back(to_json(lane));
  Json out = Json::object();
  out["frame_id"] = scene.frame_id;
  out["camera"] = to_json(scene.camera);
  out["lanes"] = std::move(lanes);
  out["metadata"] = metadata_to_json(scene.metadata);
  return out;
}

Scene scene_from_json(const Json& j) {
  Scene s;
  s.frame_id = j.at("frame_id").get<std::string>();
  s.camera = camera_from_json(j.at("camera"));
  for (const auto& l : j.at("lanes")) s.lanes.push_back(lane3d_from_json(l));
  if (j.contains("metadata")) s.metadata = metadata_from_json(j.at("metadata"));
  if (j.contains("anchors")) s.anchors = anchor_set_from_json(j.at("anchors"));
  return s;
}

FlatScene flat_scene_from_json(const Json& j) {
  FlatScene s;
  s.frame_id = j.at("frame_id").get<std::string>();
  s.camera = camera_from_json(j.at("camera"));
  for (const auto& l : j.at("lanes")) s.lanes.push_back(lane2d_from_json(l));
  if (j.contains("metadata")) s.metadata = metadata_from_json(j.at("metadata"));
  return s;
}

std::vector<Scene> parse_scenes(std::istream& in) {
  return parse_lines<Scene>(in, [](const Json& j) { return scene_from_json(j); });
}

std::vector<FlatScene> parse_flat_scenes(std::istream& in) {
  return parse_lines<FlatScene>(in, [](const Json& j) { return flat_scene_from_json(j); });
}

void write_scenes(std::span<const Scene> scenes, std::ostream& out) {
  for (const auto& s : scenes) {
    validate(s);
    out << to_json(s).dump() << '\n';
  }
  if (!out) throw IoError("write failed");
}

void write_flat_scenes(std::span<const FlatScene> scenes, std::ostream& out) {
  for (const auto& s : scenes) {
    validate(s);
    out << to_json(s).dump() << '\n';
  }
  if (!out) throw IoError("write failed");
}

std::vector<Scene> read_scenes(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_scenes(in);
}

std::vector<FlatScene> read_flat_scenes(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_flat_scenes(in);
}

void write_scenes(std::span<const Scene> scenes, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_scenes(scenes, static_cast<std::ostream&>(out));
}

void write_flat_scenes(std::span<const FlatScene> scenes, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_flat_scenes(scenes, static_cast<std::ostream&>(out));
}

Json read_json_file(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

void write_json_file(const Json& j, const std::filesystem::path& path) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace lanegeo
