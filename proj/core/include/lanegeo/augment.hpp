#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include <Eigen/Core>

#include "lanegeo/scene_io.hpp"
#include "lanegeo/types.hpp"

namespace lanegeo {

enum class AngleUnit { kRadians, kDegrees };

struct AngleRange {
  double lo = 0.0;
  double hi = 0.0;
  AngleUnit unit = AngleUnit::kRadians;

  double lo_rad() const;
  double hi_rad() const;
};

/// Defaults are the published training ranges. Pitch is read in radians and
/// roll/yaw in degrees; the source does not state units, so every range
/// carries its own.
struct AugmentConfig {
  AngleRange pitch_range{-0.1, 0.3, AngleUnit::kRadians};
  AngleRange roll_range{-3.0, 3.0, AngleUnit::kDegrees};
  AngleRange yaw_range{-3.0, 3.0, AngleUnit::kDegrees};
  double p_pitch = 0.1;
  double p_roll = 0.05;
  double p_yaw = 0.2;
  std::uint64_t seed = 0;
};

void validate(const AugmentConfig& cfg);
AugmentConfig augment_config_from_json(const Json& j);
Json to_json(const AugmentConfig& cfg);

/// Proper rotation (orthonormal, det +1).
class Rotation3x3 {
 public:
  Rotation3x3() : m_(Eigen::Matrix3d::Identity()) {}
  explicit Rotation3x3(const Eigen::Matrix3d& m) : m_(m) {}

  const Eigen::Matrix3d& matrix() const { return m_; }
  Rotation3x3 inverse() const { return Rotation3x3(m_.transpose()); }
  Point3D apply(const Point3D& p) const;

  friend Rotation3x3 operator*(const Rotation3x3& a, const Rotation3x3& b) {
    return Rotation3x3(a.m_ * b.m_);
  }

 private:
  Eigen::Matrix3d m_;
};

/// Pitch (about x), roll (about y) and yaw (about z); angles in radians.
Rotation3x3 rot_x(double angle);
Rotation3x3 rot_y(double angle);
Rotation3x3 rot_z(double angle);

/// Angles actually applied for one draw; unset axes were not selected.
struct AugmentDraw {
  std::optional<double> pitch_rad;
  std::optional<double> roll_rad;
  std::optional<double> yaw_rad;

  bool any() const { return pitch_rad || roll_rad || yaw_rad; }
  /// R_z * R_y * R_x, identity for unselected axes.
  Rotation3x3 rotation() const;
};

AugmentDraw draw_augmentation(const AugmentConfig& cfg, std::string_view frame_id,
                              std::uint64_t draw_index);

/// Rotates every lane point about the ego origin and recomputes visibility.
/// The camera pose is untouched; points may end up above the camera.
Scene rotate_scene(const Scene& scene, const Rotation3x3& r);

/// Applies each rotation independently with its probability. A draw that
/// selects no axis returns the scene unchanged.
Scene augment_scene(const Scene& scene, const AugmentConfig& cfg, std::uint64_t draw_index);

}  // namespace lanegeo
