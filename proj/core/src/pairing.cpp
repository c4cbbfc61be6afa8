#include "lanegeo/pairing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lanegeo/errors.hpp"
#include "lanegeo/losses.hpp"

namespace lanegeo {
namespace {

struct Best {
  std::size_t j = 0;
  double dist = std::numeric_limits<double>::infinity();
  bool found = false;
};

// Closest point of `target` to `p` over the inclusive index range [lo, hi].
Best argmin_in(const Point3D& p, const Lane3D& target, long lo, long hi) {
  Best best;
  lo = std::max(lo, 0L);
  hi = std::min(hi, static_cast<long>(target.points.size()) - 1);
  for (long j = lo; j <= hi; ++j) {
    const double d = dist3d(p, target.points[static_cast<std::size_t>(j)]);
    if (d < best.dist) {
      best = {static_cast<std::size_t>(j), d, true};
    }
  }
  return best;
}

}  // namespace

void validate(const PairingConfig& cfg) {
  if (cfg.window < 1) throw InvalidInput("pairing window must be >= 1");
  if (!(cfg.width_jump_threshold > 0.0)) throw InvalidInput("width jump threshold must be > 0");
}

std::size_t nearest_y_index(const Lane3D& lane, double y) {
  if (lane.points.empty()) throw InvalidInput("nearest_y_index on empty lane");
  std::size_t best = 0;
  double best_d = std::abs(lane.points[0].y - y);
  for (std::size_t j = 1; j < lane.points.size(); ++j) {
    const double d = std::abs(lane.points[j].y - y);
    if (d < best_d) {
      best = j;
      best_d = d;
    }
  }
  return best;
}

std::optional<PairMap> match_point_pairs(const Lane3D& l1, const Lane3D& l2,
                                         const PairingConfig& cfg) {
  validate(cfg);
  if (l1.points.size() < 3 || l2.points.size() < 3) {
    throw InvalidInput("pairing needs at least 3 points per boundary");
  }
  const bool swap = l1.points.size() > l2.points.size() ||
                    (l1.points.size() == l2.points.size() && l2.id < l1.id);
  const Lane3D& src = swap ? l2 : l1;
  const Lane3D& dst = swap ? l1 : l2;
  const long eta = cfg.window;
  const long n1 = static_cast<long>(src.points.size());

  PairMap out;
  out.source_id = src.id;
  out.target_id = dst.id;

  const long mid1 = n1 / 2;
  const long guess = static_cast<long>(nearest_y_index(dst, src.points[mid1].y));
  const Best seed = argmin_in(src.points[mid1], dst, guess - eta, guess + eta);
  out.pairs[mid1] = seed.j;

  // backward
  long prev_j = static_cast<long>(seed.j);
  double prev_w = seed.dist;
  for (long i = mid1 - 1; i >= 0; --i) {
    const Best b = argmin_in(src.points[i], dst, prev_j - eta, prev_j - 1);
    if (!b.found) break;
    if (std::abs(b.dist - prev_w) > cfg.width_jump_threshold) return std::nullopt;
    out.pairs[i] = b.j;
    prev_j = static_cast<long>(b.j);
    prev_w = b.dist;
  }

  // forward
  prev_j = static_cast<long>(seed.j);
  prev_w = seed.dist;
  for (long i = mid1 + 1; i < n1; ++i) {
    const Best b = argmin_in(src.points[i], dst, prev_j + 1, prev_j + eta);
    if (!b.found) break;
    if (std::abs(b.dist - prev_w) > cfg.width_jump_threshold) return std::nullopt;
    out.pairs[i] = b.j;
    prev_j = static_cast<long>(b.j);
    prev_w = b.dist;
  }
  return out;
}

PairMap simplified_neighbor_pairs(const Lane3D& l1, const Lane3D& l2) {
  if (l1.points.empty() || l2.points.empty()) {
    throw InvalidInput("simplified pairing on an empty lane");
  }
  PairMap out;
  out.source_id = l1.id;
  out.target_id = l2.id;
  for (std::size_t i = 0; i < l1.points.size(); ++i) {
    const long c = static_cast<long>(i);
    const Best b = argmin_in(l1.points[i], l2, c - 1, c + 1);
    if (b.found) out.pairs[i] = b.j;
  }
  return out;
}

}  // namespace lanegeo
