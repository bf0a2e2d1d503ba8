#include "billiards/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace billiards {

namespace {

constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

struct Box {
  double x0, y0, w, h;
};

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (!(hi > lo)) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double m = 0.05 * (hi - lo);
    lo -= m;
    hi += m;
  }
};

std::string polyline(const std::vector<std::pair<double, double>>& pts, const char* color, bool closed) {
  std::string out = fmt::format("<{} fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"",
                                closed ? "polygon" : "polyline", color);
  for (const auto& [x, y] : pts) out += fmt::format("{:.2f},{:.2f} ", x, y);
  out += "\"/>\n";
  return out;
}

}  // namespace

std::string render_sweep_svg(const std::vector<PlotCurve>& curves, const std::vector<Vec2>& outline,
                             const std::vector<Vec2>& orbit, const std::string& title) {
  const Box left{60, 40, 520, 340};
  const Box right{640, 40, 340, 340};
  std::string svg =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"1000\" height=\"420\" viewBox=\"0 0 1000 420\">\n"
      "<rect width=\"1000\" height=\"420\" fill=\"white\"/>\n";
  svg += fmt::format("<text x=\"500\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"14\">{}</text>\n",
                     title);

  // Beta curves.
  Range rx, ry;
  for (const auto& c : curves) {
    for (const auto& [x, y] : c.points) {
      rx.add(x);
      ry.add(y);
    }
  }
  rx.pad();
  ry.pad();
  auto map_left = [&](double x, double y) {
    return std::pair{left.x0 + (x - rx.lo) / (rx.hi - rx.lo) * left.w,
                     left.y0 + left.h - (y - ry.lo) / (ry.hi - ry.lo) * left.h};
  };
  svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"#444\"/>\n", left.x0,
                     left.y0, left.w, left.h);
  for (int i = 0; i <= 4; ++i) {
    const double xv = rx.lo + (rx.hi - rx.lo) * i / 4.0;
    const double yv = ry.lo + (ry.hi - ry.lo) * i / 4.0;
    const auto [px, py0] = map_left(xv, ry.lo);
    const auto [px0, py] = map_left(rx.lo, yv);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"10\">{:.3f}</text>\n",
                       px, py0 + 14, xv);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
                       "font-size=\"10\">{:.3f}</text>\n",
                       px0 - 4, py + 3, yv);
  }
  if (ry.lo < 0.0 && ry.hi > 0.0) {
    const auto [ax, ay] = map_left(rx.lo, 0.0);
    svg += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#bbb\"/>\n", ax, ay,
                       left.x0 + left.w, ay);
  }
  for (std::size_t i = 0; i < curves.size(); ++i) {
    const char* color = kColors[i % std::size(kColors)];
    std::vector<std::pair<double, double>> pts;
    for (const auto& [x, y] : curves[i].points) pts.push_back(map_left(x, y));
    svg += polyline(pts, color, false);
    svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-family=\"sans-serif\" font-size=\"11\" "
                       "fill=\"{}\">{}</text>\n",
                       left.x0 + 8, left.y0 + 14 + 14.0 * i, color, curves[i].label);
  }
  svg += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                     "font-size=\"12\">rotation number</text>\n",
                     left.x0 + left.w / 2, left.y0 + left.h + 32);

  // Domain and orbit, equal aspect ratio.
  Range bx, by;
  for (const auto& p : outline) {
    bx.add(p.x);
    by.add(p.y);
  }
  for (const auto& p : orbit) {
    bx.add(p.x);
    by.add(p.y);
  }
  bx.pad();
  by.pad();
  const double span = std::max(bx.hi - bx.lo, by.hi - by.lo);
  const double cx = 0.5 * (bx.lo + bx.hi), cy = 0.5 * (by.lo + by.hi);
  auto map_right = [&](Vec2 p) {
    return std::pair{right.x0 + ((p.x - cx) / span + 0.5) * right.w,
                     right.y0 + right.h - ((p.y - cy) / span + 0.5) * right.h};
  };
  std::vector<std::pair<double, double>> pts;
  for (const auto& p : outline) pts.push_back(map_right(p));
  svg += polyline(pts, "#000", true);
  pts.clear();
  for (const auto& p : orbit) pts.push_back(map_right(p));
  if (!pts.empty()) svg += polyline(pts, kColors[1], true);
  for (const auto& [x, y] : pts) {
    svg += fmt::format("<circle cx=\"{:.2f}\" cy=\"{:.2f}\" r=\"2.5\" fill=\"{}\"/>\n", x, y, kColors[1]);
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace billiards
