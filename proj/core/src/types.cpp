#include "lanegeo/types.hpp"

#include <cmath>
#include <set>

#include "lanegeo/errors.hpp"

namespace lanegeo {
namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

void validate_flags(const VisibilityFlags& flags, std::size_t expected, const std::string& id) {
  require(flags.size() == expected, "lane '" + id + "': visibility length " +
                                        std::to_string(flags.size()) + " != point count " +
                                        std::to_string(expected));
  for (auto f : flags) require(f == 0 || f == 1, "lane '" + id + "': visibility flag not in {0,1}");
}

template <typename PointT>
void validate_increasing_y(const std::vector<PointT>& pts, const std::string& id) {
  for (std::size_t i = 0; i < pts.size(); ++i) {
    try {
      validate(pts[i]);
    } catch (const InvalidInput&) {
      throw InvalidInput("lane '" + id + "': non-finite point at index " + std::to_string(i));
    }
    if (i > 0 && !(pts[i].y > pts[i - 1].y)) {
      throw InvalidInput("lane '" + id + "': y not strictly increasing at index " +
                         std::to_string(i));
    }
  }
}

}  // namespace

void validate(const Point3D& p) {
  require(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z), "non-finite Point3D");
}

void validate(const Point2D& p) {
  require(std::isfinite(p.x) && std::isfinite(p.y), "non-finite Point2D");
}

void validate(const CameraPose& pose) {
  const auto& k = pose.intrinsics;
  require(std::isfinite(pose.height_m) && pose.height_m > 0.0, "camera height must be > 0");
  require(std::isfinite(pose.pitch_rad), "camera pitch must be finite");
  require(k.fx > 0.0 && k.fy > 0.0, "focal lengths must be > 0");
  require(k.width_px > 0 && k.height_px > 0, "image size must be positive");
  require(k.cx >= 0.0 && k.cx < k.width_px, "cx outside [0, width)");
  require(k.cy >= 0.0 && k.cy < k.height_px, "cy outside [0, height)");
}

void validate(const Lane3D& lane) {
  validate_increasing_y(lane.points, lane.id);
  validate_flags(lane.visibility, lane.points.size(), lane.id);
  if (lane.prob) {
    require(*lane.prob >= 0.0 && *lane.prob <= 1.0, "lane '" + lane.id + "': prob outside [0,1]");
  }
}

void validate(const Lane2D& lane) {
  validate_increasing_y(lane.points, lane.id);
  validate_flags(lane.visibility, lane.points.size(), lane.id);
}

void validate(const AnchorSet& set) {
  for (std::size_t i = 1; i < set.y_refs.size(); ++i) {
    require(set.y_refs[i] > set.y_refs[i - 1], "anchor y_refs not strictly increasing");
  }
  const auto n = set.y_refs.size();
  for (const auto& a : set.anchors) {
    require(a.x_offsets.size() == n && a.z.size() == n && a.vis.size() == n,
            "anchor list length differs from y_refs length");
    for (double v : a.vis) require(v >= 0.0 && v <= 1.0, "anchor visibility outside [0,1]");
    require(a.prob >= 0.0 && a.prob <= 1.0, "anchor probability outside [0,1]");
  }
}

void validate(const Scene& scene) {
  require(!scene.frame_id.empty(), "empty frame_id");
  validate(scene.camera);
  std::set<std::string> ids;
  for (const auto& lane : scene.lanes) {
    require(ids.insert(lane.id).second, "duplicate lane id '" + lane.id + "'");
    validate(lane);
  }
  if (scene.anchors) validate(*scene.anchors);
}

void validate(const FlatScene& scene) {
  require(!scene.frame_id.empty(), "empty frame_id");
  validate(scene.camera);
  std::set<std::string> ids;
  for (const auto& lane : scene.lanes) {
    require(ids.insert(lane.id).second, "duplicate lane id '" + lane.id + "'");
    validate(lane);
  }
}

void validate(const PairMap& map) {
  std::size_t prev = 0;
  bool first = true;
  for (const auto& [k, v] : map.pairs) {
    require(first || v >= prev, "pair map values decrease");
    prev = v;
    first = false;
  }
}

}  // namespace lanegeo
