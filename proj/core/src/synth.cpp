#include "lanegeo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "lanegeo/errors.hpp"
#include "lanegeo/projection.hpp"
#include "lanegeo/random.hpp"

namespace lanegeo {
namespace {

double poly(const std::vector<double>& c, double y) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * y + *it;
  return v;
}

double poly_derivative(const std::vector<double>& c, double y) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) v = v * y + static_cast<double>(k) * c[k];
  return v;
}

std::vector<double> sample_grid(const RoadSpec& spec) {
  std::vector<double> ys;
  const auto n = static_cast<std::size_t>(std::floor((spec.y_end - spec.y_start) / spec.y_step + 1e-9));
  for (std::size_t i = 0; i <= n; ++i) ys.push_back(spec.y_start + static_cast<double>(i) * spec.y_step);
  return ys;
}

Interval interval_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("interval must be [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

double draw(std::mt19937_64& rng, const Interval& iv) { return uniform(rng, iv[0], iv[1]); }

Scene build_scene(const RoadSpec& spec, const std::string& frame_id) {
  Scene scene;
  scene.frame_id = frame_id;
  scene.camera = spec.camera;
  const auto ys = sample_grid(spec);
  const int n = spec.num_boundaries;
  for (int k = 0; k < n; ++k) {
    const double offset = (static_cast<double>(k) - 0.5 * (n - 1)) * spec.lane_width;
    Lane3D lane;
    lane.id = "b" + std::to_string(k);
    for (double y : ys) {
      const double slope = poly_derivative(spec.centerline_x_coeffs, y);
      const double norm = std::sqrt(1.0 + slope * slope);
      lane.points.push_back({poly(spec.centerline_x_coeffs, y) + offset / norm,
                             y - offset * slope / norm, height_at(spec.height, y)});
    }
    for (std::size_t i = 1; i < lane.points.size(); ++i) {
      if (!(lane.points[i].y > lane.points[i - 1].y)) {
        throw SpecError("boundary " + lane.id + " folds back in y: curvature too high for the offset");
      }
    }
    lane.visibility = compute_visibility(lane, scene.camera);
    scene.lanes.push_back(std::move(lane));
  }
  return scene;
}

struct FlatSample {
  double y;
  double x;
  double z;
  double vis;
};

}  // namespace

double height_at(const HeightProfile& profile, double y) {
  if (const auto* p = std::get_if<PolynomialProfile>(&profile)) return poly(p->coeffs, y);
  const auto& h = std::get<HillProfile>(profile);
  const double t = (y - h.start_y) / h.length;
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return h.peak_z * 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * t));
}

void validate(const RoadSpec& spec) {
  validate(spec.camera);
  if (!(spec.lane_width > 0.0)) throw SpecError("lane_width must be > 0");
  if (spec.num_boundaries < 2) throw SpecError("num_boundaries must be >= 2");
  if (!(spec.y_start < spec.y_end)) throw SpecError("y_start must be < y_end");
  if (!(spec.y_step > 0.0)) throw SpecError("y_step must be > 0");
  if (spec.centerline_x_coeffs.empty()) throw SpecError("centerline_x_coeffs is empty");
  if (const auto* h = std::get_if<HillProfile>(&spec.height); h && !(h->length > 0.0)) {
    throw SpecError("hill length must be > 0");
  }
  for (double y : sample_grid(spec)) {
    if (!(height_at(spec.height, y) < spec.camera.height_m)) {
      throw SpecError("road height reaches the camera height at y = " + std::to_string(y));
    }
  }
}

RoadSpec road_spec_from_json(const Json& j) {
  RoadSpec spec;
  if (j.contains("centerline_x_coeffs")) {
    spec.centerline_x_coeffs = j.at("centerline_x_coeffs").get<std::vector<double>>();
  }
  if (j.contains("height_profile")) {
    const auto& h = j.at("height_profile");
    const auto type = h.at("type").get<std::string>();
    if (type == "polynomial") {
      spec.height = PolynomialProfile{h.at("coeffs").get<std::vector<double>>()};
    } else if (type == "hill") {
      spec.height = HillProfile{h.at("start_y").get<double>(), h.at("length").get<double>(),
                                h.at("peak_z").get<double>()};
    } else {
      throw SpecError("height_profile.type must be 'polynomial' or 'hill'");
    }
  }
  if (j.contains("lane_width")) spec.lane_width = j.at("lane_width").get<double>();
  if (j.contains("num_boundaries")) spec.num_boundaries = j.at("num_boundaries").get<int>();
  if (j.contains("y_start")) spec.y_start = j.at("y_start").get<double>();
  if (j.contains("y_end")) spec.y_end = j.at("y_end").get<double>();
  if (j.contains("y_step")) spec.y_step = j.at("y_step").get<double>();
  if (j.contains("camera")) spec.camera = camera_from_json(j.at("camera"));
  if (j.contains("variation")) {
    const auto& v = j.at("variation");
    RoadVariation var;
    if (v.contains("lateral_offset")) var.lateral_offset = interval_from_json(v.at("lateral_offset"));
    if (v.contains("heading")) var.heading = interval_from_json(v.at("heading"));
    if (v.contains("curvature")) var.curvature = interval_from_json(v.at("curvature"));
    if (v.contains("hill_probability")) var.hill_probability = v.at("hill_probability").get<double>();
    if (v.contains("peak_z")) var.peak_z = interval_from_json(v.at("peak_z"));
    if (v.contains("hill_start_y")) var.hill_start_y = interval_from_json(v.at("hill_start_y"));
    if (v.contains("hill_length")) var.hill_length = interval_from_json(v.at("hill_length"));
    if (v.contains("max_attempts")) var.max_attempts = v.at("max_attempts").get<int>();
    spec.variation = var;
  }
  validate(spec);
  return spec;
}

Json to_json(const RoadSpec& spec) {
  Json out = Json::object();
  out["centerline_x_coeffs"] = spec.centerline_x_coeffs;
  Json h = Json::object();
  if (const auto* p = std::get_if<PolynomialProfile>(&spec.height)) {
    h["type"] = "polynomial";
    h["coeffs"] = p->coeffs;
  } else {
    const auto& hill = std::get<HillProfile>(spec.height);
    h["type"] = "hill";
    h["start_y"] = hill.start_y;
    h["length"] = hill.length;
    h["peak_z"] = hill.peak_z;
  }
  out["height_profile"] = std::move(h);
  out["lane_width"] = spec.lane_width;
  out["num_boundaries"] = spec.num_boundaries;
  out["y_start"] = spec.y_start;
  out["y_end"] = spec.y_end;
  out["y_step"] = spec.y_step;
  out["camera"] = to_json(spec.camera);
  if (spec.variation) {
    const auto& v = *spec.variation;
    Json var = Json::object();
    var["lateral_offset"] = v.lateral_offset;
    var["heading"] = v.heading;
    var["curvature"] = v.curvature;
    var["hill_probability"] = v.hill_probability;
    var["peak_z"] = v.peak_z;
    var["hill_start_y"] = v.hill_start_y;
    var["hill_length"] = v.hill_length;
    var["max_attempts"] = v.max_attempts;
    out["variation"] = std::move(var);
  }
  return out;
}

RoadSpec sample_road_spec(const RoadSpec& spec, std::uint64_t seed) {
  validate(spec);
  if (!spec.variation) return spec;
  const auto& v = *spec.variation;
  for (int attempt = 0; attempt < v.max_attempts; ++attempt) {
    auto rng = make_stream(seed, "road", static_cast<std::uint64_t>(attempt));
    RoadSpec s = spec;
    s.variation.reset();
    s.centerline_x_coeffs = {draw(rng, v.lateral_offset), draw(rng, v.heading), draw(rng, v.curvature)};
    const bool hill = uniform01(rng) < v.hill_probability;
    const HillProfile profile{draw(rng, v.hill_start_y), draw(rng, v.hill_length), draw(rng, v.peak_z)};
    if (hill) {
      s.height = profile;
    } else {
      s.height = PolynomialProfile{{0.0}};
    }
    try {
      validate(s);
      if (virtual_top_monotone(build_scene(s, "probe"))) return s;
    } catch (const SpecError&) {
    }
  }
  throw SpecError("no admissible road found in " + std::to_string(v.max_attempts) + " draws");
}

Scene generate_scene(const RoadSpec& spec, std::uint64_t seed, const std::string& frame_id) {
  if (frame_id.empty()) throw SpecError("frame_id must be nonempty");
  const RoadSpec s = sample_road_spec(spec, seed);
  Scene scene = build_scene(s, frame_id);
  scene.metadata["synth.seed"] = std::to_string(seed);
  if (const auto* h = std::get_if<HillProfile>(&s.height)) {
    scene.metadata["synth.hill"] = Json::array({h->start_y, h->length, h->peak_z}).dump();
  }
  scene.metadata["synth.centerline"] = Json(s.centerline_x_coeffs).dump();
  scene.metadata["synth.lane_width"] = Json(s.lane_width).dump();
  return scene;
}

bool virtual_top_monotone(const Scene& scene) {
  const double h = scene.camera.height_m;
  for (const auto& lane : scene.lanes) {
    double prev = -std::numeric_limits<double>::infinity();
    for (const auto& p : lane.points) {
      if (!(p.z < h)) return false;
      const double y = project_virtual_top(p, h).y;
      if (!(y > prev)) return false;
      prev = y;
    }
  }
  return true;
}

void validate(const AnchorConfig& cfg) {
  if (cfg.y_refs.empty()) throw InvalidInput("anchor y_refs is empty");
  for (std::size_t i = 1; i < cfg.y_refs.size(); ++i) {
    if (!(cfg.y_refs[i] > cfg.y_refs[i - 1])) throw InvalidInput("anchor y_refs not increasing");
  }
  if (std::find(cfg.y_refs.begin(), cfg.y_refs.end(), cfg.y_assoc) == cfg.y_refs.end()) {
    throw InvalidInput("y_assoc must be one of the y_refs");
  }
}

AnchorConfig anchor_config_from_json(const Json& j) {
  AnchorConfig cfg;
  if (j.contains("y_refs")) cfg.y_refs = j.at("y_refs").get<std::vector<double>>();
  if (j.contains("y_assoc")) cfg.y_assoc = j.at("y_assoc").get<double>();
  validate(cfg);
  return cfg;
}

AnchorSet encode_anchors(const Scene& scene, const AnchorConfig& cfg) {
  validate(cfg);
  const double h = scene.camera.height_m;
  AnchorSet out;
  out.y_refs = cfg.y_refs;
  for (const auto& lane : scene.lanes) {
    std::vector<FlatSample> flat;
    for (std::size_t i = 0; i < lane.points.size(); ++i) {
      const auto& p = lane.points[i];
      if (!(p.z < h)) continue;
      const Point2D q = project_virtual_top(p, h);
      if (!flat.empty() && !(q.y > flat.back().y)) continue;
      flat.push_back({q.y, q.x, p.z, static_cast<double>(lane.visibility[i])});
    }
    if (flat.empty() || cfg.y_assoc < flat.front().y || cfg.y_assoc > flat.back().y) {
      throw OutOfRange("lane '" + lane.id + "' does not cover y_assoc = " +
                       std::to_string(cfg.y_assoc) + " m on the flat ground");
    }
    Anchor a;
    a.prob = 1.0;
    for (double yr : cfg.y_refs) {
      if (yr < flat.front().y || yr > flat.back().y) {
        const auto& e = yr < flat.front().y ? flat.front() : flat.back();
        a.x_offsets.push_back(e.x);
        a.z.push_back(e.z);
        a.vis.push_back(0.0);
        continue;
      }
      // segment [k, k+1] with flat[k].y <= yr < flat[k+1].y; the last node
      // is hit exactly
      auto it = std::upper_bound(flat.begin(), flat.end(), yr,
                                 [](double y, const FlatSample& s) { return y < s.y; });
      const std::size_t k1 = static_cast<std::size_t>(it - flat.begin());
      if (k1 == flat.size()) {
        a.x_offsets.push_back(flat.back().x);
        a.z.push_back(flat.back().z);
        a.vis.push_back(flat.back().vis >= 0.5 ? 1.0 : 0.0);
        continue;
      }
      const auto& s0 = flat[k1 - 1];
      const auto& s1 = flat[k1];
      const double t = (yr - s0.y) / (s1.y - s0.y);
      a.x_offsets.push_back(s0.x + t * (s1.x - s0.x));
      a.z.push_back(s0.z + t * (s1.z - s0.z));
      a.vis.push_back(s0.vis + t * (s1.vis - s0.vis) >= 0.5 ? 1.0 : 0.0);
    }
    out.anchors.push_back(std::move(a));
  }
  return out;
}

std::vector<Lane3D> decode_anchors(const AnchorSet& set, double h_cam, double prob_threshold) {
  validate(set);
  std::vector<Lane3D> lanes;
  for (std::size_t a = 0; a < set.anchors.size(); ++a) {
    const Anchor& anchor = set.anchors[a];
    if (anchor.prob < prob_threshold) continue;
    Lane3D lane;
    lane.id = "anchor" + std::to_string(a);
    lane.prob = anchor.prob;
    for (std::size_t k = 0; k < set.y_refs.size(); ++k) {
      if (anchor.vis[k] < 0.5) continue;
      const Point3D p = lift_from_virtual_top({anchor.x_offsets[k], set.y_refs[k]}, anchor.z[k], h_cam);
      if (!lane.points.empty() && !(p.y > lane.points.back().y)) continue;
      lane.points.push_back(p);
      lane.visibility.push_back(1);
    }
    if (!lane.points.empty()) lanes.push_back(std::move(lane));
  }
  return lanes;
}

FlatScene add_flat_noise(const FlatScene& scene, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw InvalidInput("noise sigma must be >= 0");
  FlatScene out = scene;
  if (sigma == 0.0) return out;
  auto rng = make_stream(seed, scene.frame_id, 0);
  std::normal_distribution<double> noise(0.0, sigma);
  for (auto& lane : out.lanes) {
    Lane2D noisy;
    noisy.id = lane.id;
    for (std::size_t i = 0; i < lane.points.size(); ++i) {
      const double nx = noise(rng);
      const double ny = noise(rng);
      const Point2D p{lane.points[i].x + nx, lane.points[i].y + ny};
      if (!noisy.points.empty() && !(p.y > noisy.points.back().y)) continue;
      noisy.points.push_back(p);
      noisy.visibility.push_back(lane.visibility[i]);
    }
    lane = std::move(noisy);
  }
  out.metadata["noise.sigma"] = Json(sigma).dump();
  out.metadata["noise.seed"] = std::to_string(seed);
  return out;
}

}  // namespace lanegeo
