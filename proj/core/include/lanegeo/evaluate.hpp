#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lanegeo/scene_io.hpp"
#include "lanegeo/types.hpp"

namespace lanegeo {

struct MatchConfig {
  double point_tolerance = 1.5;
  double match_fraction = 0.75;
  std::vector<double> eval_y_refs = default_eval_y_refs();
  double near_far_split = 40.0;
  std::vector<double> prob_thresholds = default_prob_thresholds();

  /// {5, 10, ..., 100}.
  static std::vector<double> default_eval_y_refs();
  /// {0.05, 0.10, ..., 0.95}.
  static std::vector<double> default_prob_thresholds();
};

void validate(const MatchConfig& cfg);
MatchConfig match_config_from_json(const Json& j);
Json to_json(const MatchConfig& cfg);

/// A lane sampled at the evaluation y references. Outside the lane's y range
/// (or between two points that are not both visible) the sample is invisible.
struct ResampledLane {
  std::vector<double> x;
  std::vector<double> z;
  std::vector<std::uint8_t> vis;
};

ResampledLane resample_lane(const Lane3D& lane, std::span<const double> y_refs);

/// Cost and admissibility of matching two resampled lanes.
struct EdgeCost {
  bool admissible = false;
  double cost = 0.0;
  std::size_t covisible = 0;
};

EdgeCost edge_cost(const ResampledLane& gt, const ResampledLane& pred, const MatchConfig& cfg);

struct MatchedPair {
  std::size_t gt_index = 0;
  std::size_t pred_index = 0;
  double cost = 0.0;
};

struct Matching {
  std::vector<MatchedPair> pairs;
  std::size_t num_gt = 0;
  std::size_t num_pred = 0;
  std::vector<ResampledLane> gt;
  std::vector<ResampledLane> pred;

  std::size_t tp() const { return pairs.size(); }
  std::size_t fp() const { return num_pred - pairs.size(); }
  std::size_t fn() const { return num_gt - pairs.size(); }
  double total_cost() const;
};

/// Maximum-cardinality, then minimum-total-cost, assignment between GT and
/// predicted lanes over admissible edges. Unmatched GT lanes are false
/// negatives and unmatched predictions false positives.
Matching match_lanes(std::span<const Lane3D> gt, std::span<const Lane3D> pred,
                     const MatchConfig& cfg);

struct Counts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;

  Counts& operator+=(const Counts& o);
};

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
  double f_score = 0.0;
};

/// P = TP / (TP + FP), R = TP / (TP + FN); a zero denominator gives 0.
/// F = 0 when P + R = 0.
PrecisionRecall compute_fscore(const Counts& counts);
PrecisionRecall compute_fscore(const Matching& matching);

/// Interpolated AP: points sorted by recall, precision replaced by its
/// running maximum from the right, integrated as sum (R_k - R_{k-1}) * P_k
/// with R_0 = 0.
double compute_ap(std::span<const PrecisionRecall> sweep);

/// Sums of absolute errors so that pooling across frames is associative.
struct OffsetSums {
  double x_near = 0.0;
  double x_far = 0.0;
  double z_near = 0.0;
  double z_far = 0.0;
  std::size_t n_near = 0;
  std::size_t n_far = 0;

  OffsetSums& operator+=(const OffsetSums& o);
};

struct OffsetErrors {
  double x_near = 0.0;
  double x_far = 0.0;
  double z_near = 0.0;
  double z_far = 0.0;
  /// Set when there was nothing to average.
  bool empty = true;
};

OffsetSums offset_sums(const Matching& matching, const MatchedPair& pair, const MatchConfig& cfg);
OffsetErrors finalize(const OffsetSums& sums);

/// Mean absolute x and z errors over co-visible references of matched pairs,
/// pooled over all references; y < near_far_split is near.
OffsetErrors compute_offset_errors(const Matching& matching, const MatchConfig& cfg);

struct MatchedLane {
  std::string frame_id;
  std::string gt_id;
  std::string pred_id;
  OffsetSums sums;
};

struct FrameResult {
  std::string frame_id;
  Counts counts;
  OffsetErrors offsets;
};

struct EvalReport {
  double f_score = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double ap = 0.0;
  /// Probability threshold at which the reported F-score, matches and
  /// offsets were taken (the best F-score over the sweep).
  double prob_threshold = 0.0;
  OffsetErrors offsets;
  std::vector<double> thresholds;
  std::vector<PrecisionRecall> sweep;
  std::vector<MatchedLane> matched;
  std::vector<FrameResult> per_frame;
};

/// Evaluates predictions against GT frame by frame (aligned by frame_id).
/// Predicted lanes without a probability count as probability 1. Throws
/// InvalidInput naming the frame ids missing on either side.
EvalReport evaluate(std::span<const Scene> gt, std::span<const Scene> pred, const MatchConfig& cfg);

struct JointErrors {
  std::vector<OffsetErrors> per_method;
  std::size_t shared = 0;
  bool empty_intersection = true;
};

/// Offset errors of each report recomputed on the (frame, GT lane) pairs
/// matched in every report.
JointErrors joint_offset_errors(std::span<const EvalReport> reports);

Json to_json(const OffsetErrors& e);
Json to_json(const EvalReport& report);
/// frame_id, tp, fp, fn, x_near, x_far, z_near, z_far
std::string per_frame_csv(const EvalReport& report);

struct ExtraLongSplit {
  std::vector<Scene> scenes;
  MatchConfig config;
};

/// Keeps scenes with some lane point beyond 195 m and sets the evaluation
/// references to {5, 10, ..., 200}.
ExtraLongSplit split_extra_long(std::span<const Scene> scenes, MatchConfig base = {});

/// hard: some lane point with |z| > z_threshold (strict).
std::pair<std::vector<Scene>, std::vector<Scene>> split_hard_easy(std::span<const Scene> scenes,
                                                                  double z_threshold = 1.78);

}  // namespace lanegeo
