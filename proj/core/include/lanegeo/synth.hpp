#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lanegeo/scene_io.hpp"
#include "lanegeo/types.hpp"

namespace lanegeo {

/// z(y) = sum_k coeffs[k] * y^k
struct PolynomialProfile {
  std::vector<double> coeffs;
};

/// Raised-cosine bump: rises from 0 at start_y to peak_z at start_y +
/// length / 2 and returns to 0 at start_y + length.
struct HillProfile {
  double start_y = 30.0;
  double length = 60.0;
  double peak_z = 0.5;
};

using HeightProfile = std::variant<PolynomialProfile, HillProfile>;

double height_at(const HeightProfile& profile, double y);

using Interval = std::array<double, 2>;

/// Optional per-scene randomization of a RoadSpec. Each generated scene
/// draws its own centerline and height profile from these ranges; draws that
/// break the RoadSpec invariants or fold under the virtual top view (a point
/// hidden behind a crest) are redrawn.
struct RoadVariation {
  Interval lateral_offset{0.0, 0.0};
  Interval heading{0.0, 0.0};
  Interval curvature{0.0, 0.0};
  double hill_probability = 1.0;
  Interval peak_z{0.0, 0.0};
  Interval hill_start_y{20.0, 60.0};
  Interval hill_length{60.0, 200.0};
  int max_attempts = 200;
};

struct RoadSpec {
  /// x(y) = sum_k coeffs[k] * y^k
  std::vector<double> centerline_x_coeffs{0.0};
  HeightProfile height = PolynomialProfile{};
  double lane_width = 3.5;
  int num_boundaries = 2;
  double y_start = 3.0;
  double y_end = 100.0;
  double y_step = 1.0;
  CameraPose camera;
  std::optional<RoadVariation> variation;
};

void validate(const RoadSpec& spec);
RoadSpec road_spec_from_json(const Json& j);
Json to_json(const RoadSpec& spec);

/// Builds num_boundaries boundaries as exact parallel offsets of the
/// centerline (offsets (k - (n-1)/2) * lane_width along the x-y normal),
/// sampled at centerline parameters y_start, y_start + y_step, ..., y_end.
/// Paired boundary points share the centerline height. With a variation
/// block the RoadSpec is first randomized from `seed`. Throws SpecError.
Scene generate_scene(const RoadSpec& spec, std::uint64_t seed, const std::string& frame_id);

/// The concrete spec a seed resolves to (identity without a variation).
RoadSpec sample_road_spec(const RoadSpec& spec, std::uint64_t seed);

/// True iff every lane point is below the camera and the virtual-top
/// projection of every lane keeps y strictly increasing.
bool virtual_top_monotone(const Scene& scene);

struct AnchorConfig {
  std::vector<double> y_refs{5, 10, 15, 20, 30, 40, 50, 60, 80, 100};
  double y_assoc = 5.0;
};

void validate(const AnchorConfig& cfg);
AnchorConfig anchor_config_from_json(const Json& j);

/// One anchor per lane: virtual-top x and 3D height linearly interpolated at
/// each flat-ground y_ref; visibility interpolated and thresholded at 0.5.
/// References outside the lane get visibility 0 and the nearest end values.
/// Throws OutOfRange when a lane does not reach y_assoc.
AnchorSet encode_anchors(const Scene& scene, const AnchorConfig& cfg);

/// Lanes with prob >= prob_threshold, lifted to 3D at their visible refs.
/// Lanes left without points are dropped.
std::vector<Lane3D> decode_anchors(const AnchorSet& set, double h_cam, double prob_threshold);

/// Gaussian noise on every flat coordinate. Points whose y no longer
/// increases are dropped.
FlatScene add_flat_noise(const FlatScene& scene, double sigma, std::uint64_t seed);

}  // namespace lanegeo
