#pragma once

#include <optional>
#include <string>

#include "lanegeo/evaluate.hpp"
#include "lanegeo/types.hpp"

namespace lanegeo::tools {

/// Top view (x against y) and height profile (z against y) of one frame.
/// GT lanes are drawn in blue, predicted lanes in red, one polyline each.
std::string render_scene_svg(const Scene& gt, const std::optional<Scene>& pred);

/// Bar chart of the headline metrics of a report.
std::string render_report_svg(const EvalReport& report);

std::string xml_escape(const std::string& text);

}  // namespace lanegeo::tools
