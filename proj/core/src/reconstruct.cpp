#include "lanegeo/reconstruct.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lanegeo/errors.hpp"
#include "lanegeo/projection.hpp"
#include "lanegeo/random.hpp"

namespace lanegeo {
namespace {

constexpr double kHeightMargin = 1e-6;
constexpr int kMaxHalvings = 20;

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

Lane3D as_ground_lane(const Lane2D& lane) {
  Lane3D out;
  out.id = lane.id;
  out.visibility = lane.visibility;
  for (const auto& p : lane.points) out.points.push_back({p.x, p.y, 0.0});
  return out;
}

double mean_x(const Lane2D& lane) {
  if (lane.points.empty()) return 0.0;
  double s = 0.0;
  for (const auto& p : lane.points) s += p.x;
  return s / static_cast<double>(lane.points.size());
}

}  // namespace

std::vector<double> reconstruct_closed_form(std::span<const FlatPoint2Pair> pairs,
                                            double true_width, double h_cam) {
  if (!(true_width > 0.0)) throw InvalidInput("true width must be > 0");
  if (!(h_cam > 0.0)) throw InvalidInput("camera height must be > 0");
  std::vector<double> z;
  z.reserve(pairs.size());
  for (const auto& p : pairs) {
    const double flat = std::hypot(p.left.x - p.right.x, p.left.y - p.right.y);
    if (flat <= 1e-9) throw DegeneratePair("flat pair width is zero");
    z.push_back(h_cam * (1.0 - true_width / flat));
  }
  return z;
}

void validate(const ReconstructOptions& opts) {
  if (opts.max_iters <= 0) throw InvalidInput("max_iters must be positive");
  if (!(opts.step > 0.0)) throw InvalidInput("step must be > 0");
  if (!(opts.tol > 0.0)) throw InvalidInput("tol must be > 0");
  if (!(opts.lambda_geo >= 0.0)) throw InvalidInput("lambda_geo must be >= 0");
  validate(opts.pairing);
}

ReconstructOptions reconstruct_options_from_json(const Json& j) {
  ReconstructOptions o;
  if (j.contains("max_iters")) o.max_iters = j.at("max_iters").get<int>();
  if (j.contains("step")) o.step = j.at("step").get<double>();
  if (j.contains("tol")) o.tol = j.at("tol").get<double>();
  if (j.contains("lambda_geo")) o.lambda_geo = j.at("lambda_geo").get<double>();
  if (j.contains("d2_form")) {
    const auto f = j.at("d2_form").get<std::string>();
    if (f == "raw") {
      o.d2_form = D2Form::kRawCoordinates;
    } else if (f == "flat_projected") {
      o.d2_form = D2Form::kFlatProjected;
    } else {
      throw InvalidInput("d2_form must be 'raw' or 'flat_projected'");
    }
  }
  if (j.contains("window")) o.pairing.window = j.at("window").get<int>();
  if (j.contains("width_jump_threshold")) {
    o.pairing.width_jump_threshold = j.at("width_jump_threshold").get<double>();
  }
  validate(o);
  return o;
}

PairObjective::PairObjective(FlatPairs pairs, double c_hat, double lambda_geo, D2Form form)
    : pairs_(std::move(pairs)), c_hat_(c_hat), lambda_geo_(lambda_geo), form_(form) {
  if (pairs_.right.size() != pairs_.left.size() || pairs_.mask.size() != pairs_.left.size()) {
    throw InvalidInput("flat pair inputs differ in length");
  }
}

double PairObjective::value(std::span<const double> z) const {
  std::vector<double> scratch(z.size());
  return value_and_gradient(z, scratch);
}

double PairObjective::value_and_gradient(std::span<const double> z, std::span<double> grad) const {
  const std::size_t n = size();
  if (z.size() != 2 * n || grad.size() != 2 * n) throw InvalidInput("height vector has wrong length");
  const auto zl = z.subspan(0, n);
  const auto zr = z.subspan(n, n);
  auto gl = grad.subspan(0, n);
  auto gr = grad.subspan(n, n);
  double j = 0.0;
  if (lambda_geo_ > 0.0) {
    j = lambda_geo_ * geo_prior_loss_of_heights(pairs_, zl, zr, 1.0, form_, gl, gr);
    for (auto& g : grad) g *= lambda_geo_;
  } else {
    std::fill(grad.begin(), grad.end(), 0.0);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const auto w = lifted_pair_width(pairs_.left[i], pairs_.right[i], zl[i], zr[i], pairs_.h_cam, form_);
    const double r = w.d3 - c_hat_;
    j += r * r;
    gl[i] += 2.0 * r * w.d3_dzl;
    gr[i] += 2.0 * r * w.d3_dzr;
  }
  return j;
}

std::vector<double> PairObjective::closed_form_start() const {
  std::vector<FlatPoint2Pair> flat;
  for (std::size_t i = 0; i < size(); ++i) flat.push_back({pairs_.left[i], pairs_.right[i]});
  auto z = reconstruct_closed_form(flat, c_hat_, pairs_.h_cam);
  std::vector<double> both(z);
  both.insert(both.end(), z.begin(), z.end());
  return both;
}

DescentResult minimize_pair(const PairObjective& objective, std::vector<double> start,
                            const ReconstructOptions& opts) {
  validate(opts);
  const double z_max = objective.pairs().h_cam - kHeightMargin;
  DescentResult out;
  for (auto& v : start) {
    if (v > z_max) {
      v = z_max;
      out.clamped = true;
    }
  }
  std::vector<double> z = std::move(start);
  std::vector<double> grad(z.size());
  std::vector<double> trial(z.size());
  std::vector<double> trial_grad(z.size());
  double j = objective.value_and_gradient(z, grad);
  out.initial_objective = j;
  out.trace.push_back({0, j, 0.0});
  double step = opts.step;
  for (int it = 1; it <= opts.max_iters; ++it) {
    bool accepted = false;
    double j_new = j;
    for (int k = 0; k <= kMaxHalvings; ++k) {
      bool hit_ceiling = false;
      for (std::size_t i = 0; i < z.size(); ++i) {
        trial[i] = z[i] - step * grad[i];
        if (trial[i] > z_max) {
          trial[i] = z_max;
          hit_ceiling = true;
        }
      }
      j_new = objective.value_and_gradient(trial, trial_grad);
      if (std::isfinite(j_new) && j_new <= j) {
        accepted = true;
        out.clamped = out.clamped || hit_ceiling;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    const double decrease = j - j_new;
    z.swap(trial);
    grad.swap(trial_grad);
    j = j_new;
    out.iterations = it;
    out.trace.push_back({it, j, step});
    step *= 2.0;
    if (decrease < opts.tol) break;
  }
  if (!std::isfinite(j)) out.diverged = true;
  out.z = std::move(z);
  out.objective = j;
  return out;
}

std::string to_string(LaneStatus s) {
  switch (s) {
    case LaneStatus::kOk:
      return "ok";
    case LaneStatus::kNoPairing:
      return "no_pairing";
    case LaneStatus::kDiverged:
      return "diverged";
    case LaneStatus::kClamped:
      return "clamped";
  }
  return "unknown";
}

Reconstruction reconstruct_iterative(std::span<const Lane2D> flat_lanes, double h_cam,
                                     const ReconstructOptions& opts) {
  validate(opts);
  if (!(h_cam > 0.0)) throw InvalidInput("camera height must be > 0");
  for (const auto& lane : flat_lanes) validate(lane);

  const std::size_t n = flat_lanes.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return mean_x(flat_lanes[a]) < mean_x(flat_lanes[b]);
  });

  std::vector<std::vector<double>> z_sum(n), z_cnt(n);
  for (std::size_t k = 0; k < n; ++k) {
    z_sum[k].assign(flat_lanes[k].points.size(), 0.0);
    z_cnt[k].assign(flat_lanes[k].points.size(), 0.0);
  }
  std::vector<LaneStatus> status(n, LaneStatus::kNoPairing);
  Reconstruction out;

  for (std::size_t s = 0; s + 1 < n; ++s) {
    const std::size_t a = order[s];
    const std::size_t b = order[s + 1];
    PairSolve solve;
    solve.left_id = flat_lanes[a].id;
    solve.right_id = flat_lanes[b].id;

    std::optional<PairMap> pm;
    if (flat_lanes[a].points.size() >= 3 && flat_lanes[b].points.size() >= 3) {
      pm = match_point_pairs(as_ground_lane(flat_lanes[a]), as_ground_lane(flat_lanes[b]), opts.pairing);
    }
    if (!pm || pm->pairs.empty()) {
      out.solves.push_back(std::move(solve));
      continue;
    }
    const bool a_is_source = pm->source_id == flat_lanes[a].id;
    FlatPairs fp;
    fp.h_cam = h_cam;
    std::vector<std::pair<std::size_t, std::size_t>> idx;  // (index on a, index on b)
    for (const auto& [i, j] : pm->pairs) {
      const std::size_t ia = a_is_source ? i : j;
      const std::size_t ib = a_is_source ? j : i;
      idx.emplace_back(ia, ib);
      fp.left.push_back(flat_lanes[a].points[ia]);
      fp.right.push_back(flat_lanes[b].points[ib]);
      fp.mask.push_back(flat_lanes[a].visibility[ia] && flat_lanes[b].visibility[ib] ? 1 : 0);
    }
    std::vector<double> near;
    for (std::size_t i = 0; i < std::min<std::size_t>(3, fp.left.size()); ++i) {
      near.push_back(std::hypot(fp.left[i].x - fp.right[i].x, fp.left[i].y - fp.right[i].y));
    }
    solve.c_hat = median(near);
    solve.paired = true;

    PairObjective objective(std::move(fp), solve.c_hat, opts.lambda_geo, opts.d2_form);
    std::vector<double> start;
    if (opts.random_init) {
      auto rng = make_stream(opts.init_seed, solve.left_id + "|" + solve.right_id, 0);
      for (std::size_t i = 0; i < 2 * objective.size(); ++i) start.push_back(uniform(rng, -0.5, 0.5));
    } else {
      start = objective.closed_form_start();
    }
    solve.descent = minimize_pair(objective, std::move(start), opts);

    const std::size_t m = objective.size();
    for (std::size_t p = 0; p < m; ++p) {
      z_sum[a][idx[p].first] += solve.descent.z[p];
      z_cnt[a][idx[p].first] += 1.0;
      z_sum[b][idx[p].second] += solve.descent.z[m + p];
      z_cnt[b][idx[p].second] += 1.0;
    }
    for (std::size_t k : {a, b}) {
      LaneStatus st = LaneStatus::kOk;
      if (solve.descent.diverged) {
        st = LaneStatus::kDiverged;
      } else if (solve.descent.clamped) {
        st = LaneStatus::kClamped;
      }
      if (status[k] == LaneStatus::kNoPairing || st != LaneStatus::kOk) status[k] = st;
    }
    out.solves.push_back(std::move(solve));
  }

  for (std::size_t k = 0; k < n; ++k) {
    const Lane2D& flat = flat_lanes[k];
    const std::size_t m = flat.points.size();
    std::vector<double> z(m, 0.0);
    std::vector<std::size_t> known;
    for (std::size_t i = 0; i < m; ++i) {
      if (z_cnt[k][i] > 0.0) {
        z[i] = z_sum[k][i] / z_cnt[k][i];
        known.push_back(i);
      }
    }
    if (!known.empty()) {
      for (std::size_t i = 0; i < m; ++i) {
        if (z_cnt[k][i] > 0.0) continue;
        auto hi = std::lower_bound(known.begin(), known.end(), i);
        if (hi == known.begin()) {
          z[i] = z[known.front()];
        } else if (hi == known.end()) {
          z[i] = z[known.back()];
        } else {
          const std::size_t i1 = *hi;
          const std::size_t i0 = *(hi - 1);
          const double t = (flat.points[i].y - flat.points[i0].y) / (flat.points[i1].y - flat.points[i0].y);
          z[i] = z[i0] + t * (z[i1] - z[i0]);
        }
      }
    }
    Lane3D lane;
    lane.id = flat.id;
    lane.prob = 1.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (z[i] > h_cam - kHeightMargin) {
        z[i] = h_cam - kHeightMargin;
        status[k] = LaneStatus::kClamped;
      }
      const Point3D p = lift_from_virtual_top(flat.points[i], z[i], h_cam);
      if (!lane.points.empty() && !(p.y > lane.points.back().y)) continue;
      lane.points.push_back(p);
      lane.visibility.push_back(flat.visibility[i]);
    }
    out.lanes.push_back(std::move(lane));
    out.heights.push_back(std::move(z));
  }
  out.status = std::move(status);
  return out;
}

}  // namespace lanegeo
