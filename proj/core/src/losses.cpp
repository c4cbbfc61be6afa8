#include "lanegeo/losses.hpp"

#include <algorithm>
#include <cmath>

#include "lanegeo/errors.hpp"
#include "lanegeo/projection.hpp"

namespace lanegeo {
namespace {

constexpr double kProbFloor = 1e-7;

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

double mean_weight(double za, double zb, double h_cam) {
  const double zt = 0.5 * (za + zb);
  if (!(zt < h_cam)) throw HeightExceedsCamera(zt, h_cam);
  return h_cam - zt;
}

void accumulate_second_difference(const std::vector<double>& d,
                                  const std::vector<std::uint8_t>& mask, double prob,
                                  double* loss, std::vector<double>* grad) {
  const std::size_t n = d.size();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double r = mask[i] * ((d[i - 1] + d[i + 1]) - 2.0 * d[i]);
    if (loss) *loss += prob * std::abs(r);
    if (grad) {
      const double s = prob * mask[i] * sign(r);
      (*grad)[i - 1] += s;
      (*grad)[i + 1] += s;
      (*grad)[i] -= 2.0 * s;
    }
  }
}

void check_series(const WidthSeries& s) {
  if (s.d3.size() != s.d2.size() || s.d3.size() != s.mask.size()) {
    throw InvalidInput("width series lengths differ");
  }
}

}  // namespace

void validate(const LossWeights& w) {
  if (!(w.lambda_geo >= 0.0) || !(w.lambda_cam >= 0.0)) {
    throw InvalidInput("loss weights must be >= 0");
  }
}

double dist3d(const Point3D& a, const Point3D& b) {
  return std::sqrt((a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

double dist2d_weighted(const Point3D& a, const Point3D& b, double h_cam) {
  const Point2D pa = project_virtual_top(a, h_cam);
  const Point2D pb = project_virtual_top(b, h_cam);
  return std::hypot(pa.x - pb.x, pa.y - pb.y) * mean_weight(a.z, b.z, h_cam);
}

double dist2d_weighted_raw(const Point3D& a, const Point3D& b, double h_cam) {
  return std::hypot(a.x - b.x, a.y - b.y) * mean_weight(a.z, b.z, h_cam);
}

WidthSeries width_series(const Lane3D& left, const Lane3D& right, const PairMap& pairs,
                         double h_cam, D2Form form) {
  const Lane3D* src = nullptr;
  const Lane3D* dst = nullptr;
  if (pairs.source_id == left.id) {
    src = &left;
    dst = &right;
  } else if (pairs.source_id == right.id) {
    src = &right;
    dst = &left;
  } else {
    throw InvalidInput("pair map source '" + pairs.source_id + "' matches neither lane");
  }
  WidthSeries out;
  out.d3.reserve(pairs.pairs.size());
  for (const auto& [i, j] : pairs.pairs) {
    if (i >= src->points.size() || j >= dst->points.size()) {
      throw InvalidInput("pair index out of range");
    }
    const auto& a = src->points[i];
    const auto& b = dst->points[j];
    out.d3.push_back(dist3d(a, b));
    out.d2.push_back(form == D2Form::kFlatProjected ? dist2d_weighted(a, b, h_cam)
                                                    : dist2d_weighted_raw(a, b, h_cam));
    const bool va = i < src->visibility.size() ? src->visibility[i] != 0 : true;
    const bool vb = j < dst->visibility.size() ? dst->visibility[j] != 0 : true;
    out.mask.push_back(va && vb ? 1 : 0);
  }
  return out;
}

double geo_prior_loss(const WidthSeries& series, double prob) {
  check_series(series);
  double loss = 0.0;
  accumulate_second_difference(series.d3, series.mask, prob, &loss, nullptr);
  accumulate_second_difference(series.d2, series.mask, prob, &loss, nullptr);
  return loss;
}

WidthGradient geo_prior_loss_grad(const WidthSeries& series, double prob) {
  check_series(series);
  WidthGradient g{std::vector<double>(series.d3.size(), 0.0),
                  std::vector<double>(series.d2.size(), 0.0)};
  accumulate_second_difference(series.d3, series.mask, prob, nullptr, &g.d3);
  accumulate_second_difference(series.d2, series.mask, prob, nullptr, &g.d2);
  return g;
}

PairWidth lifted_pair_width(const Point2D& left, const Point2D& right, double zl, double zr,
                            double h_cam, D2Form form) {
  const Point3D a = lift_from_virtual_top(left, zl, h_cam);
  const Point3D b = lift_from_virtual_top(right, zr, h_cam);
  const double w = mean_weight(zl, zr, h_cam);
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = zl - zr;

  PairWidth out;
  out.d3 = std::sqrt(dx * dx + dy * dy + dz * dz);
  // d(dx, dy)/dzl = -left / h, d(dx, dy)/dzr = right / h
  const double proj_l = -(dx * left.x + dy * left.y) / h_cam;
  const double proj_r = (dx * right.x + dy * right.y) / h_cam;
  if (out.d3 > 0.0) {
    out.d3_dzl = (proj_l + dz) / out.d3;
    out.d3_dzr = (proj_r - dz) / out.d3;
  }
  if (form == D2Form::kFlatProjected) {
    const double flat = std::hypot(left.x - right.x, left.y - right.y);
    out.d2 = flat * w;
    out.d2_dzl = -0.5 * flat;
    out.d2_dzr = -0.5 * flat;
  } else {
    const double horiz = std::hypot(dx, dy);
    out.d2 = horiz * w;
    out.d2_dzl = -0.5 * horiz;
    out.d2_dzr = -0.5 * horiz;
    if (horiz > 0.0) {
      out.d2_dzl += proj_l / horiz * w;
      out.d2_dzr += proj_r / horiz * w;
    }
  }
  return out;
}

double geo_prior_loss_of_heights(const FlatPairs& pairs, std::span<const double> z_left,
                                 std::span<const double> z_right, double prob, D2Form form,
                                 std::span<double> grad_left, std::span<double> grad_right) {
  const std::size_t n = pairs.left.size();
  if (pairs.right.size() != n || pairs.mask.size() != n || z_left.size() != n ||
      z_right.size() != n) {
    throw InvalidInput("flat pair inputs differ in length");
  }
  std::vector<PairWidth> widths;
  widths.reserve(n);
  WidthSeries series;
  series.mask = pairs.mask;
  for (std::size_t i = 0; i < n; ++i) {
    widths.push_back(
        lifted_pair_width(pairs.left[i], pairs.right[i], z_left[i], z_right[i], pairs.h_cam, form));
    series.d3.push_back(widths.back().d3);
    series.d2.push_back(widths.back().d2);
  }
  const double loss = geo_prior_loss(series, prob);
  if (!grad_left.empty() || !grad_right.empty()) {
    if (grad_left.size() != n || grad_right.size() != n) {
      throw InvalidInput("gradient spans have the wrong length");
    }
    const auto g = geo_prior_loss_grad(series, prob);
    for (std::size_t i = 0; i < n; ++i) {
      grad_left[i] = g.d3[i] * widths[i].d3_dzl + g.d2[i] * widths[i].d2_dzl;
      grad_right[i] = g.d3[i] * widths[i].d3_dzr + g.d2[i] * widths[i].d2_dzr;
    }
  }
  return loss;
}

double anchor_loss(const AnchorSet& pred, const AnchorSet& gt) {
  if (pred.y_refs != gt.y_refs) throw MismatchedAnchors("prediction and GT y_refs differ");
  if (pred.anchors.size() != gt.anchors.size()) {
    throw MismatchedAnchors("prediction and GT anchor counts differ");
  }
  validate(pred);
  validate(gt);
  double loss = 0.0;
  for (std::size_t a = 0; a < gt.anchors.size(); ++a) {
    const Anchor& p = pred.anchors[a];
    const Anchor& g = gt.anchors[a];
    if (g.prob > 0.0) loss -= g.prob * std::log(std::max(p.prob, kProbFloor));
    if (g.prob < 1.0) loss -= (1.0 - g.prob) * std::log(std::max(1.0 - p.prob, kProbFloor));
    for (std::size_t k = 0; k < gt.y_refs.size(); ++k) {
      loss += g.prob * (std::abs(g.vis[k] * (p.x_offsets[k] - g.x_offsets[k])) +
                        std::abs(g.vis[k] * (p.z[k] - g.z[k])));
      loss += g.prob * std::abs(p.vis[k] - g.vis[k]);
    }
  }
  return loss;
}

double cam_loss(double pred_pitch, double pred_h, double gt_pitch, double gt_h) {
  return std::abs(pred_pitch - gt_pitch) + std::abs(pred_h - gt_h);
}

double total_rec_loss(double anchor, double geo, const LossWeights& w) {
  validate(w);
  return anchor + w.lambda_geo * geo;
}

}  // namespace lanegeo
