#pragma once

#include <span>
#include <vector>

#include "lanegeo/types.hpp"

namespace lanegeo {

/// How the height-weighted 2D pair width is measured.
enum class D2Form {
  /// Distance between the virtual-top projections of the two points, times
  /// (h_cam - mean z). Equals h_cam * D_3D when both points share a height.
  kFlatProjected,
  /// Horizontal distance of the 3D points themselves, times (h_cam - mean z).
  kRawCoordinates,
};

struct LossWeights {
  double lambda_geo = 1e-2;
  double lambda_cam = 1e2;
};

void validate(const LossWeights& w);

/// Per matched pair: 3D width, weighted 2D width and the pair visibility.
struct WidthSeries {
  std::vector<double> d3;
  std::vector<double> d2;
  std::vector<std::uint8_t> mask;
};

double dist3d(const Point3D& a, const Point3D& b);

/// D_2D = D_flat(P_a', P_b') * (h_cam - (a.z + b.z) / 2), with P' the virtual
/// top projection. Throws HeightExceedsCamera if either point (or the mean
/// height) is not below the camera.
double dist2d_weighted(const Point3D& a, const Point3D& b, double h_cam);

/// Horizontal distance of a and b times (h_cam - mean z).
double dist2d_weighted_raw(const Point3D& a, const Point3D& b, double h_cam);

/// Widths along a lane for the given pairing. The PairMap keys index the lane
/// whose id equals pairs.source_id; that may be either argument.
WidthSeries width_series(const Lane3D& left, const Lane3D& right, const PairMap& pairs,
                         double h_cam, D2Form form = D2Form::kFlatProjected);

/// Second-difference geometry prior:
///   sum over d in {2D, 3D}, interior i: prob * |v_i * (D[i-1] + D[i+1] - 2 D[i])|
/// Zero for series shorter than 3.
double geo_prior_loss(const WidthSeries& series, double prob);

/// Subgradient of geo_prior_loss w.r.t. each d3 and d2 entry (sign(0) = 0).
struct WidthGradient {
  std::vector<double> d3;
  std::vector<double> d2;
};
WidthGradient geo_prior_loss_grad(const WidthSeries& series, double prob);

/// Widths of a pair of flat-ground points lifted to heights zl and zr, with
/// partial derivatives w.r.t. both heights.
struct PairWidth {
  double d3 = 0.0;
  double d2 = 0.0;
  double d3_dzl = 0.0;
  double d3_dzr = 0.0;
  double d2_dzl = 0.0;
  double d2_dzr = 0.0;
};
PairWidth lifted_pair_width(const Point2D& left, const Point2D& right, double zl, double zr,
                            double h_cam, D2Form form);

/// Matched flat-ground pairs whose heights are the free variables.
struct FlatPairs {
  std::vector<Point2D> left;
  std::vector<Point2D> right;
  std::vector<std::uint8_t> mask;
  double h_cam = 1.78;
};

/// geo_prior_loss of the lifted pairs as a function of the per-pair heights.
/// When the gradient spans are non-empty they receive dL/dz (same length as
/// the height spans).
double geo_prior_loss_of_heights(const FlatPairs& pairs, std::span<const double> z_left,
                                 std::span<const double> z_right, double prob, D2Form form,
                                 std::span<double> grad_left = {},
                                 std::span<double> grad_right = {});

/// Anchor regression loss: binary cross-entropy on the lane probability,
/// visibility-masked L1 on x and z, and L1 on visibility, the latter two
/// weighted by the ground-truth probability. Log arguments are floored at
/// 1e-7. Anchors are aligned by index.
double anchor_loss(const AnchorSet& pred, const AnchorSet& gt);

double cam_loss(double pred_pitch, double pred_h, double gt_pitch, double gt_h);

double total_rec_loss(double anchor, double geo, const LossWeights& w);

}  // namespace lanegeo
