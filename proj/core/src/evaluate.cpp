#include "lanegeo/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include <Eigen/Core>

#include "lanegeo/assignment.hpp"
#include "lanegeo/errors.hpp"

namespace lanegeo {
namespace {

std::vector<double> arithmetic(double first, double step, int count) {
  std::vector<double> v;
  for (int k = 0; k < count; ++k) v.push_back(first + step * k);
  return v;
}

double lane_prob(const Lane3D& lane) { return lane.prob.value_or(1.0); }

double safe_div(double num, double den) { return den > 0.0 ? num / den : 0.0; }

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

}  // namespace

std::vector<double> MatchConfig::default_eval_y_refs() { return arithmetic(5.0, 5.0, 20); }

std::vector<double> MatchConfig::default_prob_thresholds() {
  std::vector<double> v;
  for (int k = 1; k <= 19; ++k) v.push_back(k / 20.0);
  return v;
}

void validate(const MatchConfig& cfg) {
  if (!(cfg.point_tolerance > 0.0)) throw InvalidInput("point_tolerance must be > 0");
  if (!(cfg.match_fraction >= 0.0 && cfg.match_fraction <= 1.0)) {
    throw InvalidInput("match_fraction must lie in [0, 1]");
  }
  if (cfg.eval_y_refs.empty()) throw InvalidInput("eval_y_refs is empty");
  for (std::size_t i = 0; i < cfg.eval_y_refs.size(); ++i) {
    if (!std::isfinite(cfg.eval_y_refs[i])) throw InvalidInput("eval_y_refs must be finite");
    if (i > 0 && !(cfg.eval_y_refs[i] > cfg.eval_y_refs[i - 1])) {
      throw InvalidInput("eval_y_refs must be strictly increasing");
    }
  }
  if (!std::isfinite(cfg.near_far_split)) throw InvalidInput("near_far_split must be finite");
  if (cfg.prob_thresholds.empty()) throw InvalidInput("prob_thresholds is empty");
  for (double t : cfg.prob_thresholds) {
    if (!(t >= 0.0 && t <= 1.0)) throw InvalidInput("prob_thresholds must lie in [0, 1]");
  }
}

MatchConfig match_config_from_json(const Json& j) {
  MatchConfig c;
  if (j.contains("point_tolerance")) c.point_tolerance = j.at("point_tolerance").get<double>();
  if (j.contains("match_fraction")) c.match_fraction = j.at("match_fraction").get<double>();
  if (j.contains("eval_y_refs")) c.eval_y_refs = j.at("eval_y_refs").get<std::vector<double>>();
  if (j.contains("near_far_split")) c.near_far_split = j.at("near_far_split").get<double>();
  if (j.contains("prob_thresholds")) {
    c.prob_thresholds = j.at("prob_thresholds").get<std::vector<double>>();
  }
  validate(c);
  return c;
}

Json to_json(const MatchConfig& cfg) {
  Json j;
  j["point_tolerance"] = cfg.point_tolerance;
  j["match_fraction"] = cfg.match_fraction;
  j["eval_y_refs"] = cfg.eval_y_refs;
  j["near_far_split"] = cfg.near_far_split;
  j["prob_thresholds"] = cfg.prob_thresholds;
  return j;
}

ResampledLane resample_lane(const Lane3D& lane, std::span<const double> y_refs) {
  ResampledLane out;
  out.x.assign(y_refs.size(), 0.0);
  out.z.assign(y_refs.size(), 0.0);
  out.vis.assign(y_refs.size(), 0);
  const auto& pts = lane.points;
  if (pts.empty()) return out;
  for (std::size_t r = 0; r < y_refs.size(); ++r) {
    const double y = y_refs[r];
    if (y < pts.front().y || y > pts.back().y) continue;
    auto it = std::lower_bound(pts.begin(), pts.end(), y,
                               [](const Point3D& p, double v) { return p.y < v; });
    const auto k1 = static_cast<std::size_t>(it - pts.begin());
    if (pts[k1].y == y) {
      out.x[r] = pts[k1].x;
      out.z[r] = pts[k1].z;
      out.vis[r] = lane.visibility[k1];
      continue;
    }
    const std::size_t k0 = k1 - 1;
    const double t = (y - pts[k0].y) / (pts[k1].y - pts[k0].y);
    out.x[r] = pts[k0].x + t * (pts[k1].x - pts[k0].x);
    out.z[r] = pts[k0].z + t * (pts[k1].z - pts[k0].z);
    out.vis[r] = lane.visibility[k0] && lane.visibility[k1] ? 1 : 0;
  }
  return out;
}

EdgeCost edge_cost(const ResampledLane& gt, const ResampledLane& pred, const MatchConfig& cfg) {
  EdgeCost e;
  std::size_t close = 0;
  double sum = 0.0;
  for (std::size_t r = 0; r < gt.vis.size(); ++r) {
    if (!gt.vis[r] || !pred.vis[r]) continue;
    const double d = std::hypot(gt.x[r] - pred.x[r], gt.z[r] - pred.z[r]);
    sum += d;
    ++e.covisible;
    if (d <= cfg.point_tolerance) ++close;
  }
  if (e.covisible == 0) return e;
  e.cost = sum / static_cast<double>(e.covisible);
  e.admissible = static_cast<double>(close) >= cfg.match_fraction * static_cast<double>(e.covisible);
  return e;
}

double Matching::total_cost() const {
  double s = 0.0;
  for (const auto& p : pairs) s += p.cost;
  return s;
}

Matching match_lanes(std::span<const Lane3D> gt, std::span<const Lane3D> pred,
                     const MatchConfig& cfg) {
  validate(cfg);
  Matching m;
  m.num_gt = gt.size();
  m.num_pred = pred.size();
  for (const auto& l : gt) m.gt.push_back(resample_lane(l, cfg.eval_y_refs));
  for (const auto& l : pred) m.pred.push_back(resample_lane(l, cfg.eval_y_refs));

  const std::size_t n = std::max(gt.size(), pred.size());
  if (n == 0) return m;
  std::vector<std::vector<EdgeCost>> edges(gt.size(), std::vector<EdgeCost>(pred.size()));
  // Any admissible edge is worth more than the sum of all costs, so the
  // solver first maximises the number of matches, then minimises cost.
  double bonus = 1.0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    for (std::size_t j = 0; j < pred.size(); ++j) {
      edges[i][j] = edge_cost(m.gt[i], m.pred[j], cfg);
      if (edges[i][j].admissible) bonus += edges[i][j].cost;
    }
  }
  Eigen::MatrixXd cost = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < gt.size(); ++i) {
    for (std::size_t j = 0; j < pred.size(); ++j) {
      if (edges[i][j].admissible) {
        cost(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = edges[i][j].cost - bonus;
      }
    }
  }
  const auto col = solve_assignment(cost);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const auto j = static_cast<std::size_t>(col[i]);
    if (j < pred.size() && edges[i][j].admissible) m.pairs.push_back({i, j, edges[i][j].cost});
  }
  return m;
}

Counts& Counts::operator+=(const Counts& o) {
  tp += o.tp;
  fp += o.fp;
  fn += o.fn;
  return *this;
}

PrecisionRecall compute_fscore(const Counts& c) {
  PrecisionRecall r;
  r.precision = safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fp));
  r.recall = safe_div(static_cast<double>(c.tp), static_cast<double>(c.tp + c.fn));
  const double s = r.precision + r.recall;
  r.f_score = s > 0.0 ? 2.0 * r.precision * r.recall / s : 0.0;
  return r;
}

PrecisionRecall compute_fscore(const Matching& m) {
  return compute_fscore(Counts{m.tp(), m.fp(), m.fn()});
}

double compute_ap(std::span<const PrecisionRecall> sweep) {
  if (sweep.empty()) throw InvalidInput("AP needs at least one threshold");
  std::vector<PrecisionRecall> pts(sweep.begin(), sweep.end());
  std::stable_sort(pts.begin(), pts.end(),
                   [](const PrecisionRecall& a, const PrecisionRecall& b) { return a.recall < b.recall; });
  for (std::size_t k = pts.size() - 1; k-- > 0;) {
    pts[k].precision = std::max(pts[k].precision, pts[k + 1].precision);
  }
  double ap = 0.0;
  double prev_recall = 0.0;
  for (const auto& p : pts) {
    ap += (p.recall - prev_recall) * p.precision;
    prev_recall = p.recall;
  }
  return ap;
}

OffsetSums& OffsetSums::operator+=(const OffsetSums& o) {
  x_near += o.x_near;
  x_far += o.x_far;
  z_near += o.z_near;
  z_far += o.z_far;
  n_near += o.n_near;
  n_far += o.n_far;
  return *this;
}

OffsetSums offset_sums(const Matching& m, const MatchedPair& pair, const MatchConfig& cfg) {
  OffsetSums s;
  const auto& g = m.gt.at(pair.gt_index);
  const auto& p = m.pred.at(pair.pred_index);
  for (std::size_t r = 0; r < cfg.eval_y_refs.size(); ++r) {
    if (!g.vis[r] || !p.vis[r]) continue;
    const double dx = std::abs(g.x[r] - p.x[r]);
    const double dz = std::abs(g.z[r] - p.z[r]);
    if (cfg.eval_y_refs[r] < cfg.near_far_split) {
      s.x_near += dx;
      s.z_near += dz;
      ++s.n_near;
    } else {
      s.x_far += dx;
      s.z_far += dz;
      ++s.n_far;
    }
  }
  return s;
}

OffsetErrors finalize(const OffsetSums& s) {
  OffsetErrors e;
  const auto nn = static_cast<double>(s.n_near);
  const auto nf = static_cast<double>(s.n_far);
  e.x_near = safe_div(s.x_near, nn);
  e.z_near = safe_div(s.z_near, nn);
  e.x_far = safe_div(s.x_far, nf);
  e.z_far = safe_div(s.z_far, nf);
  e.empty = s.n_near + s.n_far == 0;
  return e;
}

OffsetErrors compute_offset_errors(const Matching& m, const MatchConfig& cfg) {
  OffsetSums total;
  for (const auto& p : m.pairs) total += offset_sums(m, p, cfg);
  return finalize(total);
}

EvalReport evaluate(std::span<const Scene> gt, std::span<const Scene> pred, const MatchConfig& cfg) {
  validate(cfg);
  std::map<std::string, const Scene*> by_id;
  for (const auto& s : pred) by_id[s.frame_id] = &s;
  std::set<std::string> gt_ids;
  std::vector<std::string> missing_pred;
  for (const auto& s : gt) {
    gt_ids.insert(s.frame_id);
    if (!by_id.count(s.frame_id)) missing_pred.push_back(s.frame_id);
  }
  std::vector<std::string> missing_gt;
  for (const auto& s : pred) {
    if (!gt_ids.count(s.frame_id)) missing_gt.push_back(s.frame_id);
  }
  if (!missing_pred.empty() || !missing_gt.empty()) {
    std::string msg = "frame ids do not align";
    if (!missing_pred.empty()) msg += "; missing in predictions: " + join(missing_pred);
    if (!missing_gt.empty()) msg += "; missing in ground truth: " + join(missing_gt);
    throw InvalidInput(msg);
  }

  auto filtered = [](const Scene& s, double t) {
    std::vector<Lane3D> out;
    for (const auto& l : s.lanes) {
      if (lane_prob(l) >= t) out.push_back(l);
    }
    return out;
  };

  EvalReport report;
  report.thresholds = cfg.prob_thresholds;
  std::size_t best = 0;
  for (std::size_t k = 0; k < cfg.prob_thresholds.size(); ++k) {
    Counts total;
    for (const auto& g : gt) {
      const auto lanes = filtered(*by_id.at(g.frame_id), cfg.prob_thresholds[k]);
      const auto m = match_lanes(g.lanes, lanes, cfg);
      total += Counts{m.tp(), m.fp(), m.fn()};
    }
    report.sweep.push_back(compute_fscore(total));
    if (report.sweep[k].f_score > report.sweep[best].f_score) best = k;
  }
  report.ap = compute_ap(report.sweep);
  report.prob_threshold = cfg.prob_thresholds[best];
  report.f_score = report.sweep[best].f_score;
  report.precision = report.sweep[best].precision;
  report.recall = report.sweep[best].recall;

  OffsetSums all;
  for (const auto& g : gt) {
    const auto lanes = filtered(*by_id.at(g.frame_id), report.prob_threshold);
    const auto m = match_lanes(g.lanes, lanes, cfg);
    OffsetSums frame;
    for (const auto& p : m.pairs) {
      const auto s = offset_sums(m, p, cfg);
      frame += s;
      report.matched.push_back({g.frame_id, g.lanes[p.gt_index].id, lanes[p.pred_index].id, s});
    }
    all += frame;
    report.per_frame.push_back({g.frame_id, Counts{m.tp(), m.fp(), m.fn()}, finalize(frame)});
  }
  report.offsets = finalize(all);
  return report;
}

JointErrors joint_offset_errors(std::span<const EvalReport> reports) {
  if (reports.empty()) throw InvalidInput("joint metric needs at least one report");
  using Key = std::pair<std::string, std::string>;
  std::set<Key> shared;
  for (const auto& m : reports.front().matched) shared.insert({m.frame_id, m.gt_id});
  for (std::size_t r = 1; r < reports.size(); ++r) {
    std::set<Key> here;
    for (const auto& m : reports[r].matched) {
      if (shared.count({m.frame_id, m.gt_id})) here.insert({m.frame_id, m.gt_id});
    }
    shared = std::move(here);
  }
  JointErrors out;
  out.shared = shared.size();
  out.empty_intersection = shared.empty();
  for (const auto& rep : reports) {
    OffsetSums s;
    for (const auto& m : rep.matched) {
      if (shared.count({m.frame_id, m.gt_id})) s += m.sums;
    }
    out.per_method.push_back(finalize(s));
  }
  return out;
}

Json to_json(const OffsetErrors& e) {
  Json j;
  j["x_err_near"] = e.x_near;
  j["x_err_far"] = e.x_far;
  j["z_err_near"] = e.z_near;
  j["z_err_far"] = e.z_far;
  j["empty"] = e.empty;
  return j;
}

Json to_json(const EvalReport& r) {
  Json j;
  j["f_score"] = r.f_score;
  j["precision"] = r.precision;
  j["recall"] = r.recall;
  j["ap"] = r.ap;
  j["prob_threshold"] = r.prob_threshold;
  j["x_err_near"] = r.offsets.x_near;
  j["x_err_far"] = r.offsets.x_far;
  j["z_err_near"] = r.offsets.z_near;
  j["z_err_far"] = r.offsets.z_far;
  j["offsets_empty"] = r.offsets.empty;
  Json sweep = Json::array();
  for (std::size_t k = 0; k < r.sweep.size(); ++k) {
    sweep.push_back({{"threshold", r.thresholds.at(k)},
                     {"precision", r.sweep[k].precision},
                     {"recall", r.sweep[k].recall},
                     {"f_score", r.sweep[k].f_score}});
  }
  j["sweep"] = sweep;
  Json pairs = Json::array();
  for (const auto& m : r.matched) {
    pairs.push_back({{"frame_id", m.frame_id}, {"gt_id", m.gt_id}, {"pred_id", m.pred_id}});
  }
  j["matched_pairs"] = pairs;
  Json frames = Json::array();
  for (const auto& f : r.per_frame) {
    Json fj;
    fj["frame_id"] = f.frame_id;
    fj["tp"] = f.counts.tp;
    fj["fp"] = f.counts.fp;
    fj["fn"] = f.counts.fn;
    const Json offsets = to_json(f.offsets);
    for (const auto& [k, v] : offsets.items()) fj[k] = v;
    frames.push_back(fj);
  }
  j["per_frame"] = frames;
  return j;
}

std::string per_frame_csv(const EvalReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "frame_id,tp,fp,fn,x_near,x_far,z_near,z_far\n";
  for (const auto& f : r.per_frame) {
    os << f.frame_id << ',' << f.counts.tp << ',' << f.counts.fp << ',' << f.counts.fn << ','
       << f.offsets.x_near << ',' << f.offsets.x_far << ',' << f.offsets.z_near << ','
       << f.offsets.z_far << '\n';
  }
  return os.str();
}

ExtraLongSplit split_extra_long(std::span<const Scene> scenes, MatchConfig base) {
  ExtraLongSplit out;
  for (const auto& s : scenes) {
    const bool keep = std::any_of(s.lanes.begin(), s.lanes.end(), [](const Lane3D& l) {
      return !l.points.empty() && l.points.back().y > 195.0;
    });
    if (keep) out.scenes.push_back(s);
  }
  base.eval_y_refs = arithmetic(5.0, 5.0, 40);
  out.config = std::move(base);
  return out;
}

std::pair<std::vector<Scene>, std::vector<Scene>> split_hard_easy(std::span<const Scene> scenes,
                                                                  double z_threshold) {
  if (!(z_threshold > 0.0)) throw InvalidInput("z_threshold must be > 0");
  std::pair<std::vector<Scene>, std::vector<Scene>> out;
  for (const auto& s : scenes) {
    bool hard = false;
    for (const auto& l : s.lanes) {
      for (const auto& p : l.points) hard = hard || std::abs(p.z) > z_threshold;
    }
    (hard ? out.first : out.second).push_back(s);
  }
  return out;
}

}  // namespace lanegeo
