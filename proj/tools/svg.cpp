#include "svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace lanegeo::tools {
namespace {

constexpr double kPanelW = 360.0;
constexpr double kPanelH = 480.0;
constexpr double kMargin = 40.0;
constexpr const char* kGtColor = "#1f4fd1";
constexpr const char* kPredColor = "#d12a1f";

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish(double min_span) {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = min_span;
    }
    if (hi - lo < min_span) {
      const double mid = 0.5 * (lo + hi);
      lo = mid - 0.5 * min_span;
      hi = mid + 0.5 * min_span;
    }
  }
  double map(double v, double out_lo, double out_hi) const {
    return out_lo + (v - lo) / (hi - lo) * (out_hi - out_lo);
  }
};

struct Panel {
  double left;
  double top;
  Range h;
  Range v;

  double px(double a) const { return h.map(a, left, left + kPanelW); }
  double py(double b) const { return v.map(b, top + kPanelH, top); }
};

void polyline(std::ostringstream& os, const Panel& panel, const Lane3D& lane, bool height,
              const char* color, const std::string& series) {
  os << "<polyline class=\"" << series << "\" data-lane=\"" << xml_escape(lane.id)
     << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& p : lane.points) {
    os << panel.px(height ? p.y : p.x) << ',' << panel.py(height ? p.z : p.y) << ' ';
  }
  os << "\"/>\n";
}

void frame(std::ostringstream& os, const Panel& p, const std::string& title, const std::string& hlabel,
           const std::string& vlabel) {
  os << "<rect x=\"" << p.left << "\" y=\"" << p.top << "\" width=\"" << kPanelW << "\" height=\""
     << kPanelH << "\" fill=\"none\" stroke=\"#888\"/>\n";
  os << "<text x=\"" << p.left << "\" y=\"" << p.top - 8 << "\" font-size=\"12\">" << xml_escape(title)
     << "</text>\n";
  os << "<text x=\"" << p.left + kPanelW / 2 << "\" y=\"" << p.top + kPanelH + 18
     << "\" font-size=\"11\" text-anchor=\"middle\">" << xml_escape(hlabel) << "</text>\n";
  os << "<text x=\"" << p.left - 24 << "\" y=\"" << p.top + kPanelH / 2 << "\" font-size=\"11\">"
     << xml_escape(vlabel) << "</text>\n";
  os << "<text x=\"" << p.left << "\" y=\"" << p.top + kPanelH + 32 << "\" font-size=\"10\">"
     << "h: [" << p.h.lo << ", " << p.h.hi << "]  v: [" << p.v.lo << ", " << p.v.hi << "]</text>\n";
}

}  // namespace

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      case '\'':
        out += "&apos;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

std::string render_scene_svg(const Scene& gt, const std::optional<Scene>& pred) {
  std::vector<const Lane3D*> all;
  for (const auto& l : gt.lanes) all.push_back(&l);
  if (pred) {
    for (const auto& l : pred->lanes) all.push_back(&l);
  }
  Panel top{kMargin, kMargin, {}, {}};
  Panel side{2 * kMargin + kPanelW + 20, kMargin, {}, {}};
  for (const auto* l : all) {
    for (const auto& p : l->points) {
      top.h.add(p.x);
      top.v.add(p.y);
      side.h.add(p.y);
      side.v.add(p.z);
    }
  }
  top.h.finish(10.0);
  top.v.finish(10.0);
  side.h.finish(10.0);
  side.v.finish(1.0);

  std::ostringstream os;
  os.precision(6);
  const double width = 3 * kMargin + 2 * kPanelW + 20;
  const double height = 2 * kMargin + kPanelH + 40;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<title>" << xml_escape(gt.frame_id) << "</title>\n";
  frame(os, top, "top view", "x (m)", "y");
  frame(os, side, "height profile", "y (m)", "z");
  for (const auto& l : gt.lanes) {
    polyline(os, top, l, false, kGtColor, "gt");
    polyline(os, side, l, true, kGtColor, "gt");
  }
  if (pred) {
    for (const auto& l : pred->lanes) {
      polyline(os, top, l, false, kPredColor, "pred");
      polyline(os, side, l, true, kPredColor, "pred");
    }
  }
  os << "</svg>\n";
  return os.str();
}

std::string render_report_svg(const EvalReport& r) {
  const std::array<std::pair<const char*, double>, 6> bars{{{"F-score", r.f_score},
                                                            {"AP", r.ap},
                                                            {"x near (m)", r.offsets.x_near},
                                                            {"x far (m)", r.offsets.x_far},
                                                            {"z near (m)", r.offsets.z_near},
                                                            {"z far (m)", r.offsets.z_far}}};
  double top = 1.0;
  for (const auto& b : bars) top = std::max(top, b.second);
  const double bar_w = 60.0;
  const double chart_h = 300.0;
  const double width = 2 * kMargin + bars.size() * (bar_w + 20);
  const double height = chart_h + 2 * kMargin + 30;
  std::ostringstream os;
  os.precision(6);
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  os << "<title>evaluation summary</title>\n";
  for (std::size_t k = 0; k < bars.size(); ++k) {
    const double h = bars[k].second / top * chart_h;
    const double x = kMargin + k * (bar_w + 20);
    const double y = kMargin + chart_h - h;
    os << "<rect class=\"bar\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << bar_w << "\" height=\"" << h
       << "\" fill=\"" << (k < 2 ? kGtColor : kPredColor) << "\"/>\n";
    os << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << kMargin + chart_h + 16
       << "\" font-size=\"10\" text-anchor=\"middle\">" << xml_escape(bars[k].first) << "</text>\n";
    os << "<text x=\"" << x + bar_w / 2 << "\" y=\"" << y - 4 << "\" font-size=\"10\" text-anchor=\"middle\">"
       << bars[k].second << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace lanegeo::tools
