#pragma once

// Minimal SVG output for beta sweeps: one panel with the beta curves, one
// with the domain outline and a sample orbit polygon.

#include <string>
#include <utility>
#include <vector>

#include "billiards/geometry.hpp"

namespace billiards {

struct PlotCurve {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (rho, beta)
};

std::string render_sweep_svg(const std::vector<PlotCurve>& curves, const std::vector<Vec2>& outline,
                             const std::vector<Vec2>& orbit, const std::string& title);

}  // namespace billiards
