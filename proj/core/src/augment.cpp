#include "lanegeo/augment.hpp"

#include <cmath>
#include <numbers>

#include "lanegeo/errors.hpp"
#include "lanegeo/projection.hpp"
#include "lanegeo/random.hpp"

namespace lanegeo {
namespace {

double to_rad(double v, AngleUnit unit) {
  return unit == AngleUnit::kDegrees ? v * std::numbers::pi / 180.0 : v;
}

AngleUnit unit_from_string(const std::string& s) {
  if (s == "radians") return AngleUnit::kRadians;
  if (s == "degrees") return AngleUnit::kDegrees;
  throw InvalidInput("angle_unit must be 'radians' or 'degrees', got '" + s + "'");
}

std::string unit_to_string(AngleUnit u) {
  return u == AngleUnit::kRadians ? "radians" : "degrees";
}

AngleRange range_from_json(const Json& j, AngleUnit unit) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("angle range must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>(), unit};
}

// One uniform draw for selection and one for the angle, always both, so the
// stream layout does not depend on the probabilities.
std::optional<double> draw_axis(std::mt19937_64& rng, double p, const AngleRange& range) {
  const double select = uniform01(rng);
  const double angle = uniform(rng, range.lo_rad(), range.hi_rad());
  if (select < p) return angle;
  return std::nullopt;
}

}  // namespace

double AngleRange::lo_rad() const { return to_rad(lo, unit); }
double AngleRange::hi_rad() const { return to_rad(hi, unit); }

void validate(const AugmentConfig& cfg) {
  for (const auto* r : {&cfg.pitch_range, &cfg.roll_range, &cfg.yaw_range}) {
    if (!(r->lo <= r->hi)) throw InvalidInput("angle range lo > hi");
    if (!std::isfinite(r->lo) || !std::isfinite(r->hi)) throw InvalidInput("non-finite angle");
  }
  for (double p : {cfg.p_pitch, cfg.p_roll, cfg.p_yaw}) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidInput("augmentation probability outside [0,1]");
  }
}

AugmentConfig augment_config_from_json(const Json& j) {
  AugmentConfig cfg;
  AngleUnit pitch_unit = cfg.pitch_range.unit;
  AngleUnit roll_unit = cfg.roll_range.unit;
  AngleUnit yaw_unit = cfg.yaw_range.unit;
  if (j.contains("angle_unit")) {
    const auto& u = j.at("angle_unit");
    if (u.is_string()) {
      pitch_unit = roll_unit = yaw_unit = unit_from_string(u.get<std::string>());
    } else {
      pitch_unit = unit_from_string(u.at("pitch").get<std::string>());
      roll_unit = unit_from_string(u.at("roll").get<std::string>());
      yaw_unit = unit_from_string(u.at("yaw").get<std::string>());
    }
  }
  cfg.pitch_range.unit = pitch_unit;
  cfg.roll_range.unit = roll_unit;
  cfg.yaw_range.unit = yaw_unit;
  if (j.contains("pitch_range")) cfg.pitch_range = range_from_json(j.at("pitch_range"), pitch_unit);
  if (j.contains("roll_range")) cfg.roll_range = range_from_json(j.at("roll_range"), roll_unit);
  if (j.contains("yaw_range")) cfg.yaw_range = range_from_json(j.at("yaw_range"), yaw_unit);
  if (j.contains("p_pitch")) cfg.p_pitch = j.at("p_pitch").get<double>();
  if (j.contains("p_roll")) cfg.p_roll = j.at("p_roll").get<double>();
  if (j.contains("p_yaw")) cfg.p_yaw = j.at("p_yaw").get<double>();
  if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
  validate(cfg);
  return cfg;
}

Json to_json(const AugmentConfig& cfg) {
  Json units = Json::object();
  units["pitch"] = unit_to_string(cfg.pitch_range.unit);
  units["roll"] = unit_to_string(cfg.roll_range.unit);
  units["yaw"] = unit_to_string(cfg.yaw_range.unit);
  Json out = Json::object();
  out["pitch_range"] = Json::array({cfg.pitch_range.lo, cfg.pitch_range.hi});
  out["roll_range"] = Json::array({cfg.roll_range.lo, cfg.roll_range.hi});
  out["yaw_range"] = Json::array({cfg.yaw_range.lo, cfg.yaw_range.hi});
  out["p_pitch"] = cfg.p_pitch;
  out["p_roll"] = cfg.p_roll;
  out["p_yaw"] = cfg.p_yaw;
  out["angle_unit"] = std::move(units);
  out["seed"] = cfg.seed;
  return out;
}

Point3D Rotation3x3::apply(const Point3D& p) const {
  const Eigen::Vector3d q = m_ * Eigen::Vector3d(p.x, p.y, p.z);
  return {q.x(), q.y(), q.z()};
}

Rotation3x3 rot_x(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  m << 1.0, 0.0, 0.0,
       0.0, c, -s,
       0.0, s, c;
  return Rotation3x3(m);
}

Rotation3x3 rot_y(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  m << c, 0.0, s,
       0.0, 1.0, 0.0,
       -s, 0.0, c;
  return Rotation3x3(m);
}

Rotation3x3 rot_z(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d m;
  m << c, -s, 0.0,
       s, c, 0.0,
       0.0, 0.0, 1.0;
  return Rotation3x3(m);
}

Rotation3x3 AugmentDraw::rotation() const {
  Rotation3x3 r;
  if (pitch_rad) r = rot_x(*pitch_rad);
  if (roll_rad) r = rot_y(*roll_rad) * r;
  if (yaw_rad) r = rot_z(*yaw_rad) * r;
  return r;
}

AugmentDraw draw_augmentation(const AugmentConfig& cfg, std::string_view frame_id,
                              std::uint64_t draw_index) {
  validate(cfg);
  auto rng = make_stream(cfg.seed, frame_id, draw_index);
  AugmentDraw d;
  d.pitch_rad = draw_axis(rng, cfg.p_pitch, cfg.pitch_range);
  d.roll_rad = draw_axis(rng, cfg.p_roll, cfg.roll_range);
  d.yaw_rad = draw_axis(rng, cfg.p_yaw, cfg.yaw_range);
  return d;
}

Scene rotate_scene(const Scene& scene, const Rotation3x3& r) {
  Scene out = scene;
  out.anchors.reset();
  for (auto& lane : out.lanes) {
    for (auto& p : lane.points) p = r.apply(p);
    lane.visibility = compute_visibility(lane, out.camera);
  }
  return out;
}

Scene augment_scene(const Scene& scene, const AugmentConfig& cfg, std::uint64_t draw_index) {
  const AugmentDraw d = draw_augmentation(cfg, scene.frame_id, draw_index);
  if (!d.any()) return scene;
  return rotate_scene(scene, d.rotation());
}

}  // namespace lanegeo
