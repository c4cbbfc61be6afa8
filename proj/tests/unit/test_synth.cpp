#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "lanegeo/errors.hpp"
#include "lanegeo/losses.hpp"
#include "lanegeo/pairing.hpp"
#include "lanegeo/projection.hpp"
#include "lanegeo/synth.hpp"

using namespace lanegeo;

namespace {

RoadSpec flat_spec() {
  RoadSpec s;
  s.y_start = 3.0;
  s.y_end = 60.0;
  return s;
}

}  // namespace

TEST(Synth, StraightFlatRoad) {
  const Scene s = generate_scene(flat_spec(), 0, "f");
  ASSERT_EQ(s.lanes.size(), 2u);
  EXPECT_EQ(s.lanes[0].id, "b0");
  for (const auto& p : s.lanes[0].points) {
    EXPECT_EQ(p.x, -1.75);
    EXPECT_EQ(p.z, 0.0);
  }
  for (const auto& p : s.lanes[1].points) EXPECT_EQ(p.x, 1.75);
  EXPECT_EQ(s.lanes[0].points.size(), 58u);
  EXPECT_NO_THROW(validate(s));
}

TEST(Synth, HillProfileShape) {
  const HillProfile h{30.0, 60.0, 0.89};
  EXPECT_EQ(height_at(h, 10.0), 0.0);
  EXPECT_EQ(height_at(h, 30.0), 0.0);
  EXPECT_NEAR(height_at(h, 60.0), 0.89, 1e-15);
  EXPECT_NEAR(height_at(h, 45.0), 0.445, 1e-12);
  EXPECT_EQ(height_at(h, 95.0), 0.0);
  EXPECT_NEAR(height_at(PolynomialProfile{{0.1, 0.01}}, 10.0), 0.2, 1e-15);
}

TEST(Synth, HillKeepsPairWidth) {
  RoadSpec spec = flat_spec();
  spec.height = HillProfile{20.0, 60.0, 0.89};
  const Scene s = generate_scene(spec, 0, "hill");
  for (std::size_t i = 0; i < s.lanes[0].points.size(); ++i) {
    EXPECT_NEAR(dist3d(s.lanes[0].points[i], s.lanes[1].points[i]), 3.5, 1e-12);
  }
}

TEST(Synth, CurvedRoadOffsetsAlongNormals) {
  RoadSpec spec = flat_spec();
  spec.centerline_x_coeffs = {0.0, 0.0, 1e-3};
  spec.num_boundaries = 4;
  const Scene s = generate_scene(spec, 0, "curve");
  for (std::size_t k = 0; k + 1 < s.lanes.size(); ++k) {
    for (std::size_t i = 0; i < s.lanes[k].points.size(); ++i) {
      const auto& a = s.lanes[k].points[i];
      const auto& b = s.lanes[k + 1].points[i];
      EXPECT_NEAR(dist3d(a, b), 3.5, 1e-6);
      // Orthogonal to the centerline tangent (slope, 1) at the sample.
      const double y = spec.y_start + static_cast<double>(i) * spec.y_step;
      const double slope = 2e-3 * y;
      EXPECT_NEAR((b.x - a.x) * slope + (b.y - a.y), 0.0, 1e-9);
    }
  }
}

TEST(Synth, GeneratedScenesHaveNearZeroGeoPrior) {
  RoadSpec spec = road_spec_from_json(Json::parse(R"({"num_boundaries": 3, "variation": {
      "heading": [-0.01, 0.01], "curvature": [-0.0003, 0.0003], "peak_z": [-0.8, 0.8]}})"));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Scene s = generate_scene(spec, seed, "g");
    for (std::size_t k = 0; k + 1 < s.lanes.size(); ++k) {
      PairMap same;
      same.source_id = s.lanes[k].id;
      same.target_id = s.lanes[k + 1].id;
      for (std::size_t i = 0; i < s.lanes[k].points.size(); ++i) same.pairs[i] = i;
      const auto series = width_series(s.lanes[k], s.lanes[k + 1], same, s.camera.height_m);
      WidthSeries only3d = series;
      std::fill(only3d.d2.begin(), only3d.d2.end(), 0.0);
      EXPECT_LT(geo_prior_loss(only3d, 1.0), 1e-6);
    }
  }
}

TEST(Synth, SpecErrors) {
  RoadSpec s = flat_spec();
  s.lane_width = 0;
  EXPECT_THROW(generate_scene(s, 0, "x"), SpecError);
  s = flat_spec();
  s.y_end = s.y_start;
  EXPECT_THROW(generate_scene(s, 0, "x"), SpecError);
  s = flat_spec();
  s.height = HillProfile{10, 20, 2.0};
  EXPECT_THROW(generate_scene(s, 0, "x"), SpecError);
  s = flat_spec();
  s.num_boundaries = 1;
  EXPECT_THROW(generate_scene(s, 0, "x"), SpecError);
}

TEST(Synth, DeterministicAndMonotoneUnderVariation) {
  RoadSpec spec = road_spec_from_json(Json::parse(R"({"num_boundaries": 4, "variation": {
      "heading": [-0.01, 0.01], "curvature": [-0.0003, 0.0003], "peak_z": [-1.0, 1.2]}})"));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Scene a = generate_scene(spec, seed, "d");
    EXPECT_EQ(a, generate_scene(spec, seed, "d"));
    EXPECT_TRUE(virtual_top_monotone(a));
  }
  EXPECT_NE(generate_scene(spec, 1, "d"), generate_scene(spec, 2, "d"));
}

TEST(Synth, RoadSpecJsonRoundTrip) {
  RoadSpec spec = road_spec_from_json(Json::parse(R"({"height_profile": {"type": "hill", "start_y": 10,
      "length": 50, "peak_z": 0.4}, "variation": {"peak_z": [0.1, 0.2]}})"));
  const Json j = to_json(spec);
  EXPECT_EQ(to_json(road_spec_from_json(j)), j);
  EXPECT_THROW(road_spec_from_json(Json::parse(R"({"height_profile": {"type": "cliff"}})")), Error);
}

TEST(Anchors, StraightLane) {
  const Scene s = generate_scene(flat_spec(), 0, "a");
  const AnchorSet set = encode_anchors(s, AnchorConfig{});
  ASSERT_EQ(set.anchors.size(), 2u);
  for (std::size_t k = 0; k < set.y_refs.size(); ++k) {
    EXPECT_EQ(set.anchors[1].x_offsets[k], 1.75);
    EXPECT_EQ(set.anchors[1].z[k], 0.0);
  }
  // Refs beyond y_end = 60 are outside the lane.
  EXPECT_EQ(set.anchors[1].vis.back(), 0.0);
  EXPECT_EQ(set.anchors[1].prob, 1.0);
}

TEST(Anchors, RaisedLaneDoublesFlatX) {
  Scene s = fixture::scene_with("up", {fixture::straight_lane("a", 1.0, 40, 1.0, 1.0, 0.89)});
  const AnchorSet set = encode_anchors(s, AnchorConfig{{5, 10, 20, 40}, 5});
  // Flat y = 2 * y, so ref 40 is hit by 3D y = 20.
  EXPECT_NEAR(set.anchors[0].x_offsets[3], 2.0, 1e-12);
  EXPECT_NEAR(set.anchors[0].z[3], 0.89, 1e-12);
}

TEST(Anchors, EncodeDecodeRoundTrip) {
  RoadSpec spec = road_spec_from_json(Json::parse(R"({"num_boundaries": 3, "variation": {
      "heading": [-0.01, 0.01], "curvature": [-0.0002, 0.0002], "peak_z": [-0.6, 0.6]}})"));
  const AnchorConfig cfg;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Scene s = generate_scene(spec, seed, "rt");
    const AnchorSet set = encode_anchors(s, cfg);
    const auto lanes = decode_anchors(set, s.camera.height_m, 0.5);
    ASSERT_EQ(lanes.size(), s.lanes.size());
    for (std::size_t k = 0; k < lanes.size(); ++k) {
      const Lane2D flat = project_lane_virtual_top(s.lanes[k], s.camera.height_m);
      for (const auto& p : lanes[k].points) {
        // Each decoded point projects to (x_offset, y_ref); check it against
        // the source polyline interpolated in flat y.
        const Point2D q = project_virtual_top(p, s.camera.height_m);
        std::size_t i = 1;
        while (flat.points[i].y < q.y) ++i;
        const double t = (q.y - flat.points[i - 1].y) / (flat.points[i].y - flat.points[i - 1].y);
        EXPECT_NEAR(q.x, flat.points[i - 1].x + t * (flat.points[i].x - flat.points[i - 1].x), 1e-9);
      }
    }
  }
}

TEST(Anchors, ExactAtSampleGrid) {
  // Lane sampled exactly at the refs: decoding reproduces its points.
  Lane3D lane;
  lane.id = "a";
  const double h = 1.78;
  for (double yr : {5.0, 10.0, 15.0, 20.0, 30.0}) {
    const double z = 0.02 * yr;
    lane.points.push_back(lift_from_virtual_top({0.3 + 0.01 * yr, yr}, z, h));
    lane.visibility.push_back(1);
  }
  Scene s = fixture::scene_with("grid", {lane});
  const AnchorSet set = encode_anchors(s, AnchorConfig{{5, 10, 15, 20, 30}, 5});
  const auto lanes = decode_anchors(set, h, 0.5);
  ASSERT_EQ(lanes[0].points.size(), lane.points.size());
  for (std::size_t i = 0; i < lane.points.size(); ++i) {
    EXPECT_NEAR(lanes[0].points[i].x, lane.points[i].x, 1e-9);
    EXPECT_NEAR(lanes[0].points[i].y, lane.points[i].y, 1e-9);
    EXPECT_NEAR(lanes[0].points[i].z, lane.points[i].z, 1e-9);
  }
}

TEST(Anchors, DecodeFiltersByProbAndVisibility) {
  AnchorSet set;
  set.y_refs = {5, 10};
  set.anchors.push_back({{0, 0}, {0, 0}, {1, 1}, 0.3});
  set.anchors.push_back({{1, 1}, {0, 0}, {0, 0}, 0.9});
  set.anchors.push_back({{2, 2}, {0, 0}, {1, 1}, 0.9});
  const auto lanes = decode_anchors(set, 1.78, 0.5);
  ASSERT_EQ(lanes.size(), 1u);
  EXPECT_EQ(lanes[0].points[0].x, 2.0);
  EXPECT_EQ(lanes[0].prob, 0.9);
}

TEST(Anchors, OutOfRange) {
  Scene s = fixture::scene_with("short", {fixture::straight_lane("a", 0, 5, 20.0)});
  EXPECT_THROW(encode_anchors(s, AnchorConfig{}), OutOfRange);
  EXPECT_THROW(encode_anchors(s, AnchorConfig{{5, 10}, 7}), InvalidInput);
}

TEST(Noise, DeterministicAndScaled) {
  const FlatScene f = project_scene_virtual_top(generate_scene(flat_spec(), 0, "n"));
  EXPECT_EQ(add_flat_noise(f, 0.0, 1), f);
  const FlatScene a = add_flat_noise(f, 0.05, 1);
  EXPECT_EQ(a, add_flat_noise(f, 0.05, 1));
  EXPECT_NE(a, add_flat_noise(f, 0.05, 2));
  double sq = 0;
  std::size_t n = 0;
  for (std::size_t k = 0; k < f.lanes.size(); ++k) {
    ASSERT_EQ(a.lanes[k].points.size(), f.lanes[k].points.size());
    for (std::size_t i = 0; i < f.lanes[k].points.size(); ++i) {
      sq += std::pow(a.lanes[k].points[i].x - f.lanes[k].points[i].x, 2);
      ++n;
    }
  }
  EXPECT_NEAR(std::sqrt(sq / n), 0.05, 0.015);
}
