#pragma once

#include <optional>

#include <Eigen/Core>
#include <Eigen/LU>

#include "lanegeo/types.hpp"

namespace lanegeo {

struct Pixel {
  double u = 0.0;
  double v = 0.0;
};

/// Ground plane (x, y, 1) -> image (u, v, 1), up to scale.
class Homography3x3 {
 public:
  explicit Homography3x3(const Eigen::Matrix3d& m);

  const Eigen::Matrix3d& matrix() const { return m_; }
  double determinant() const { return m_.determinant(); }
  Homography3x3 inverse() const;

  /// Applies the map and dehomogenizes. The caller is responsible for points
  /// on the line at infinity.
  Eigen::Vector2d apply(const Eigen::Vector2d& p) const;

 private:
  Eigen::Matrix3d m_;
};

/// Orthographic projection onto the ground: z is dropped.
Point2D project_real_top(const Point3D& p);

/// Central projection from the camera center onto the ground plane:
/// (x, y) * h_cam / (h_cam - z). Throws HeightExceedsCamera if z >= h_cam.
Point2D project_virtual_top(const Point3D& p, double h_cam);

/// Inverse of project_virtual_top for a known height z.
Point3D lift_from_virtual_top(const Point2D& p, double z, double h_cam);

/// Pinhole projection. Returns nullopt when the point is on or behind the
/// image plane (camera-frame depth <= 0).
std::optional<Pixel> project_front_view(const Point3D& p, const CameraPose& pose);

/// Homography between the z = 0 plane and the image.
Homography3x3 ipm_homography(const CameraPose& pose);

/// 1 iff the point projects with positive depth inside [0,W) x [0,H).
VisibilityFlags compute_visibility(const Lane3D& lane, const CameraPose& pose);
bool is_visible(const Point3D& p, const CameraPose& pose);

/// Projects a lane onto the virtual top view. Points at or above the camera
/// height and points hidden behind a crest (flat y not increasing) are
/// dropped; `dropped` receives their count when non-null.
Lane2D project_lane_virtual_top(const Lane3D& lane, double h_cam, std::size_t* dropped = nullptr);

/// project_lane_virtual_top over every lane, keeping frame id, camera and
/// metadata. The number of dropped points is recorded in the metadata.
FlatScene project_scene_virtual_top(const Scene& scene);

}  // namespace lanegeo
