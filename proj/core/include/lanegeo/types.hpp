#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lanegeo {

/// Ego frame: x lateral (right positive), y longitudinal (forward), z up.
/// Origin is the ground point directly below the camera center.
struct Point3D {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Point3D&) const = default;
};

/// Point on the flat ground plane.
struct Point2D {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point2D&) const = default;
};

struct Intrinsics {
  double fx = 1000.0;
  double fy = 1000.0;
  double cx = 960.0;
  double cy = 540.0;
  int width_px = 1920;
  int height_px = 1080;

  bool operator==(const Intrinsics&) const = default;
};

/// Camera mounted at (0, 0, height_m) with zero roll and yaw. Positive pitch
/// tilts the optical axis down toward the road.
struct CameraPose {
  double height_m = 1.78;
  double pitch_rad = 0.0;
  Intrinsics intrinsics;

  bool operator==(const CameraPose&) const = default;
};

using VisibilityFlags = std::vector<std::uint8_t>;

struct Lane3D {
  std::string id;
  std::vector<Point3D> points;
  VisibilityFlags visibility;
  /// Present on predictions only.
  std::optional<double> prob;

  bool operator==(const Lane3D&) const = default;
};

struct Lane2D {
  std::string id;
  std::vector<Point2D> points;
  VisibilityFlags visibility;

  bool operator==(const Lane2D&) const = default;
};

/// Column-anchor encoding of one lane: values sampled at the shared y_refs.
struct Anchor {
  std::vector<double> x_offsets;
  std::vector<double> z;
  std::vector<double> vis;
  double prob = 1.0;

  bool operator==(const Anchor&) const = default;
};

struct AnchorSet {
  std::vector<double> y_refs;
  std::vector<Anchor> anchors;

  bool operator==(const AnchorSet&) const = default;
};

using Metadata = std::map<std::string, std::string>;

struct Scene {
  std::string frame_id;
  CameraPose camera;
  std::vector<Lane3D> lanes;
  Metadata metadata;
  std::optional<AnchorSet> anchors;

  bool operator==(const Scene&) const = default;
};

/// Lanes already projected onto the flat ground (virtual top view).
struct FlatScene {
  std::string frame_id;
  CameraPose camera;
  std::vector<Lane2D> lanes;
  Metadata metadata;

  bool operator==(const FlatScene&) const = default;
};

/// Matched point indices from the shorter (source) boundary into the longer
/// (target) one. Keys are unique and values nondecreasing in key order.
struct PairMap {
  std::string source_id;
  std::string target_id;
  std::map<std::size_t, std::size_t> pairs;

  bool operator==(const PairMap&) const = default;
};

void validate(const Point3D& p);
void validate(const Point2D& p);
void validate(const CameraPose& pose);
void validate(const Lane3D& lane);
void validate(const Lane2D& lane);
void validate(const AnchorSet& set);
void validate(const Scene& scene);
void validate(const FlatScene& scene);
void validate(const PairMap& map);

}  // namespace lanegeo
