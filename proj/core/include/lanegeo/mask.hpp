#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "lanegeo/scene_io.hpp"
#include "lanegeo/types.hpp"

namespace lanegeo {

enum class TopView { kVirtual, kReal };

/// Grid placement: cell (col, row) covers
/// [origin.x + col * m, origin.x + (col + 1) * m) x [origin.y + row * m, ...).
struct MaskGeometry {
  int width = 200;
  int height = 400;
  double meters_per_cell = 0.1;
  Point2D origin{-10.0, 3.0};
  int thickness_cells = 3;
  TopView view = TopView::kVirtual;
};

void validate(const MaskGeometry& g);
MaskGeometry mask_geometry_from_json(const Json& j);
Json to_json(const MaskGeometry& g);

class TopViewMask {
 public:
  explicit TopViewMask(const MaskGeometry& g);

  const MaskGeometry& geometry() const { return geometry_; }
  int width() const { return geometry_.width; }
  int height() const { return geometry_.height; }

  std::uint8_t at(int col, int row) const { return grid_[index(col, row)]; }
  void set(int col, int row) {
    if (col >= 0 && col < width() && row >= 0 && row < height()) grid_[index(col, row)] = 1;
  }
  std::size_t count() const;
  const std::vector<std::uint8_t>& cells() const { return grid_; }

  bool operator==(const TopViewMask& o) const { return grid_ == o.grid_; }

 private:
  std::size_t index(int col, int row) const {
    return static_cast<std::size_t>(row) * static_cast<std::size_t>(width()) +
           static_cast<std::size_t>(col);
  }

  MaskGeometry geometry_;
  std::vector<std::uint8_t> grid_;
};

/// Draws every lane polyline on the chosen top view with a square brush of
/// thickness_cells. Points at or above the camera height break the polyline
/// on the virtual view. Cells outside the grid are clipped.
TopViewMask rasterize_top_mask(const Scene& scene, const MaskGeometry& g);

/// Binary PGM (P5), far rows first, plus a JSON sidecar with the geometry.
void write_mask(const TopViewMask& mask, const std::filesystem::path& pgm_path);

}  // namespace lanegeo
