#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lanegeo/types.hpp"

namespace lanegeo::fixture {

/// Straight lane at constant x and height, sampled at y0, y0 + dy, ...
inline Lane3D straight_lane(const std::string& id, double x, int n, double y0 = 5.0, double dy = 1.0,
                            double z = 0.0) {
  Lane3D lane;
  lane.id = id;
  for (int i = 0; i < n; ++i) {
    lane.points.push_back({x, y0 + dy * i, z});
    lane.visibility.push_back(1);
  }
  return lane;
}

inline Scene scene_with(const std::string& frame_id, std::vector<Lane3D> lanes) {
  Scene s;
  s.frame_id = frame_id;
  s.lanes = std::move(lanes);
  return s;
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace lanegeo::fixture
