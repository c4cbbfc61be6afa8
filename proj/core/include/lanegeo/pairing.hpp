#pragma once

#include <optional>

#include "lanegeo/types.hpp"

namespace lanegeo {

struct PairingConfig {
  /// Sliding-window size: candidates per step and the seed search radius.
  int window = 2;
  /// Largest allowed change in matched width between consecutive pairs (m).
  double width_jump_threshold = 1.0;
};

void validate(const PairingConfig& cfg);

/// Greedy sliding-window point-pair search between two neighbouring lane
/// boundaries.
///
/// The shorter boundary drives the search (equal lengths: the lane with the
/// lexicographically smaller id). Its middle point is matched against the
/// longer boundary within +-window of the index with the nearest y; the
/// search then walks backward and forward, each step choosing the closest
/// point among the next `window` indices past the previous match. Ties go to
/// the smaller index. A step whose width differs from the previous matched
/// width by more than the threshold rejects the whole pairing (nullopt).
///
/// Throws InvalidInput when either lane has fewer than 3 points.
std::optional<PairMap> match_point_pairs(const Lane3D& l1, const Lane3D& l2,
                                         const PairingConfig& cfg = {});

/// Per-index pairing with candidates {i-1, i, i+1} on l2; no rejection.
PairMap simplified_neighbor_pairs(const Lane3D& l1, const Lane3D& l2);

/// Index on `lane` whose y is nearest to `y`; ties resolve to the smaller index.
std::size_t nearest_y_index(const Lane3D& lane, double y);

}  // namespace lanegeo
