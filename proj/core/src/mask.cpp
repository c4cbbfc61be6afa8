#include "lanegeo/mask.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "lanegeo/errors.hpp"
#include "lanegeo/projection.hpp"

namespace lanegeo {
namespace {

struct CellPoint {
  double u;
  double v;
};

// Liang-Barsky clip of segment a-b to [lo_u, hi_u] x [lo_v, hi_v].
bool clip(CellPoint& a, CellPoint& b, double lo_u, double hi_u, double lo_v, double hi_v) {
  const double du = b.u - a.u;
  const double dv = b.v - a.v;
  double t0 = 0.0;
  double t1 = 1.0;
  const double p[4] = {-du, du, -dv, dv};
  const double q[4] = {a.u - lo_u, hi_u - a.u, a.v - lo_v, hi_v - a.v};
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0.0) {
      if (q[i] < 0.0) return false;
      continue;
    }
    const double r = q[i] / p[i];
    if (p[i] < 0.0) {
      t0 = std::max(t0, r);
    } else {
      t1 = std::min(t1, r);
    }
    if (t0 > t1) return false;
  }
  const CellPoint a0 = a;
  a = {a0.u + t0 * du, a0.v + t0 * dv};
  b = {a0.u + t1 * du, a0.v + t1 * dv};
  return true;
}

void stamp(TopViewMask& mask, int col, int row, int t) {
  for (int dr = -(t - 1) / 2; dr <= t / 2; ++dr) {
    for (int dc = -(t - 1) / 2; dc <= t / 2; ++dc) mask.set(col + dc, row + dr);
  }
}

void draw_segment(TopViewMask& mask, CellPoint a, CellPoint b) {
  const int t = mask.geometry().thickness_cells;
  const double margin = t + 1.0;
  if (!clip(a, b, -margin, mask.width() + margin, -margin, mask.height() + margin)) return;
  int c0 = static_cast<int>(std::floor(a.u));
  int r0 = static_cast<int>(std::floor(a.v));
  const int c1 = static_cast<int>(std::floor(b.u));
  const int r1 = static_cast<int>(std::floor(b.v));
  // Bresenham
  const int dc = std::abs(c1 - c0);
  const int dr = -std::abs(r1 - r0);
  const int sc = c0 < c1 ? 1 : -1;
  const int sr = r0 < r1 ? 1 : -1;
  int err = dc + dr;
  while (true) {
    stamp(mask, c0, r0, t);
    if (c0 == c1 && r0 == r1) break;
    const int e2 = 2 * err;
    if (e2 >= dr) {
      err += dr;
      c0 += sc;
    }
    if (e2 <= dc) {
      err += dc;
      r0 += sr;
    }
  }
}

}  // namespace

void validate(const MaskGeometry& g) {
  if (g.width <= 0 || g.height <= 0) throw InvalidInput("mask size must be positive");
  if (!(g.meters_per_cell > 0.0)) throw InvalidInput("meters_per_cell must be > 0");
  if (g.thickness_cells <= 0) throw InvalidInput("thickness_cells must be positive");
}

MaskGeometry mask_geometry_from_json(const Json& j) {
  MaskGeometry g;
  if (j.contains("width")) g.width = j.at("width").get<int>();
  if (j.contains("height")) g.height = j.at("height").get<int>();
  if (j.contains("meters_per_cell")) g.meters_per_cell = j.at("meters_per_cell").get<double>();
  if (j.contains("origin")) g.origin = {j.at("origin")[0].get<double>(), j.at("origin")[1].get<double>()};
  if (j.contains("thickness_cells")) g.thickness_cells = j.at("thickness_cells").get<int>();
  if (j.contains("view")) {
    const auto v = j.at("view").get<std::string>();
    if (v == "virtual") {
      g.view = TopView::kVirtual;
    } else if (v == "real") {
      g.view = TopView::kReal;
    } else {
      throw InvalidInput("mask view must be 'virtual' or 'real'");
    }
  }
  validate(g);
  return g;
}

Json to_json(const MaskGeometry& g) {
  Json out = Json::object();
  out["width"] = g.width;
  out["height"] = g.height;
  out["meters_per_cell"] = g.meters_per_cell;
  out["origin"] = Json::array({g.origin.x, g.origin.y});
  out["thickness_cells"] = g.thickness_cells;
  out["view"] = g.view == TopView::kVirtual ? "virtual" : "real";
  return out;
}

TopViewMask::TopViewMask(const MaskGeometry& g) : geometry_(g) {
  validate(g);
  grid_.assign(static_cast<std::size_t>(g.width) * static_cast<std::size_t>(g.height), 0);
}

std::size_t TopViewMask::count() const {
  return static_cast<std::size_t>(std::count(grid_.begin(), grid_.end(), std::uint8_t{1}));
}

TopViewMask rasterize_top_mask(const Scene& scene, const MaskGeometry& g) {
  TopViewMask mask(g);
  const double h = scene.camera.height_m;
  auto to_cell = [&](const Point3D& p) -> std::optional<CellPoint> {
    Point2D q;
    if (g.view == TopView::kReal) {
      q = project_real_top(p);
    } else {
      if (!(p.z < h)) return std::nullopt;
      q = project_virtual_top(p, h);
    }
    return CellPoint{(q.x - g.origin.x) / g.meters_per_cell, (q.y - g.origin.y) / g.meters_per_cell};
  };
  for (const auto& lane : scene.lanes) {
    std::optional<CellPoint> prev;
    for (const auto& p : lane.points) {
      const auto cur = to_cell(p);
      if (cur && prev) {
        draw_segment(mask, *prev, *cur);
      } else if (cur && lane.points.size() == 1) {
        draw_segment(mask, *cur, *cur);
      }
      prev = cur;
    }
  }
  return mask;
}

void write_mask(const TopViewMask& mask, const std::filesystem::path& pgm_path) {
  std::ofstream out(pgm_path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + pgm_path.string() + "' for writing");
  out << "P5\n" << mask.width() << ' ' << mask.height() << "\n255\n";
  std::vector<char> row(static_cast<std::size_t>(mask.width()));
  for (int r = mask.height() - 1; r >= 0; --r) {
    for (int c = 0; c < mask.width(); ++c) row[static_cast<std::size_t>(c)] = mask.at(c, r) ? char(255) : char(0);
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("write failed: " + pgm_path.string());
  Json side = to_json(mask.geometry());
  side["row_order"] = "far_to_near";
  side["lane_cells"] = mask.count();
  auto sidecar = pgm_path;
  sidecar.replace_extension(".json");
  write_json_file(side, sidecar);
}

}  // namespace lanegeo
