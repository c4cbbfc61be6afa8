#include "lanegeo/projection.hpp"

#include <cmath>

#include <Eigen/Geometry>
#include <Eigen/LU>

#include "lanegeo/errors.hpp"

namespace lanegeo {

Homography3x3::Homography3x3(const Eigen::Matrix3d& m) : m_(m) {
  if (std::abs(m_.determinant()) == 0.0 || !m_.allFinite()) {
    throw DegeneratePose("singular homography");
  }
}

Homography3x3 Homography3x3::inverse() const { return Homography3x3(m_.inverse()); }

Eigen::Vector2d Homography3x3::apply(const Eigen::Vector2d& p) const {
  const Eigen::Vector3d q = m_ * p.homogeneous();
  return q.hnormalized();
}

Point2D project_real_top(const Point3D& p) { return {p.x, p.y}; }

Point2D project_virtual_top(const Point3D& p, double h_cam) {
  if (!(p.z < h_cam)) throw HeightExceedsCamera(p.z, h_cam);
  const double s = h_cam / (h_cam - p.z);
  return {p.x * s, p.y * s};
}

Point3D lift_from_virtual_top(const Point2D& p, double z, double h_cam) {
  if (!(z < h_cam)) throw HeightExceedsCamera(z, h_cam);
  const double s = (h_cam - z) / h_cam;
  return {p.x * s, p.y * s, z};
}

namespace {

// Camera frame: X right, Y down (image v), Z along the optical axis.
Eigen::Vector3d to_camera(const Point3D& p, const CameraPose& pose) {
  const double c = std::cos(pose.pitch_rad);
  const double s = std::sin(pose.pitch_rad);
  const double rx = p.x;
  const double ry = p.y;
  const double rz = p.z - pose.height_m;
  return {rx, -ry * s - rz * c, ry * c - rz * s};
}

}  // namespace

std::optional<Pixel> project_front_view(const Point3D& p, const CameraPose& pose) {
  const Eigen::Vector3d q = to_camera(p, pose);
  if (!(q.z() > 0.0)) return std::nullopt;
  const auto& k = pose.intrinsics;
  return Pixel{k.cx + k.fx * q.x() / q.z(), k.cy + k.fy * q.y() / q.z()};
}

Homography3x3 ipm_homography(const CameraPose& pose) {
  const double c = std::cos(pose.pitch_rad);
  const double s = std::sin(pose.pitch_rad);
  if (std::abs(c) < 1e-12) throw DegeneratePose("pitch makes the ground-plane mapping degenerate");
  const double h = pose.height_m;
  // Columns act on (x, y, 1) of a z = 0 point; see to_camera with rz = -h.
  Eigen::Matrix3d ground_to_camera;
  ground_to_camera << 1.0, 0.0, 0.0,
                      0.0, -s, h * c,
                      0.0, c, h * s;
  const auto& k = pose.intrinsics;
  Eigen::Matrix3d kmat;
  kmat << k.fx, 0.0, k.cx,
          0.0, k.fy, k.cy,
          0.0, 0.0, 1.0;
  return Homography3x3(kmat * ground_to_camera);
}

bool is_visible(const Point3D& p, const CameraPose& pose) {
  const auto px = project_front_view(p, pose);
  if (!px) return false;
  const auto& k = pose.intrinsics;
  return px->u >= 0.0 && px->u < k.width_px && px->v >= 0.0 && px->v < k.height_px;
}

VisibilityFlags compute_visibility(const Lane3D& lane, const CameraPose& pose) {
  VisibilityFlags flags;
  flags.reserve(lane.points.size());
  for (const auto& p : lane.points) flags.push_back(is_visible(p, pose) ? 1 : 0);
  return flags;
}

Lane2D project_lane_virtual_top(const Lane3D& lane, double h_cam, std::size_t* dropped) {
  Lane2D out;
  out.id = lane.id;
  std::size_t skipped = 0;
  for (std::size_t i = 0; i < lane.points.size(); ++i) {
    const auto& p = lane.points[i];
    if (!(p.z < h_cam)) {
      ++skipped;
      continue;
    }
    const auto q = project_virtual_top(p, h_cam);
    if (!out.points.empty() && !(q.y > out.points.back().y)) {
      ++skipped;
      continue;
    }
    out.points.push_back(q);
    out.visibility.push_back(i < lane.visibility.size() ? lane.visibility[i] : 1);
  }
  if (dropped) *dropped = skipped;
  return out;
}

FlatScene project_scene_virtual_top(const Scene& scene) {
  FlatScene out;
  out.frame_id = scene.frame_id;
  out.camera = scene.camera;
  out.metadata = scene.metadata;
  std::size_t total = 0;
  for (const auto& lane : scene.lanes) {
    std::size_t dropped = 0;
    out.lanes.push_back(project_lane_virtual_top(lane, scene.camera.height_m, &dropped));
    total += dropped;
  }
  out.metadata["project.dropped_points"] = std::to_string(total);
  return out;
}

}  // namespace lanegeo
