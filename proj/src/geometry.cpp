#include "billiards/geometry.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "billiards/roots.hpp"

namespace billiards {

double polygon_area(const std::vector<Vec2>& vertices) {
  double twice = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) twice += cross(vertices[k], vertices[(k + 1) % n]);
  return 0.5 * twice;
}

double polygon_perimeter(const std::vector<Vec2>& vertices) {
  double total = 0.0;
  const std::size_t n = vertices.size();
  for (std::size_t k = 0; k < n; ++k) total += norm(vertices[(k + 1) % n] - vertices[k]);
  return total;
}

// ---------------------------------------------------------------------------
// SupportDomain

SupportDomain::SupportDomain(double a0, std::vector<FourierMode> modes)
    : a0_(a0), modes_(std::move(modes)) {
  while (!modes_.empty() && modes_.back().cos_coef == 0.0 && modes_.back().sin_coef == 0.0) {
    modes_.pop_back();
  }
  if (!std::isfinite(a0_)) throw DomainError("nonconvex parameters");
  for (const auto& m : modes_) {
    if (!std::isfinite(m.cos_coef) || !std::isfinite(m.sin_coef)) {
      throw DomainError("nonconvex parameters");
    }
  }
  const int grid = grid_size();
  min_h_ = std::numeric_limits<double>::infinity();
  min_radius_ = std::numeric_limits<double>::infinity();
  for (int j = 0; j < grid; ++j) {
    const SupportJet s = jet(kTwoPi * j / grid);
    min_h_ = std::min(min_h_, s.h);
    min_radius_ = std::min(min_radius_, s.h + s.d2);
  }
  if (!(min_h_ > 0.0) || !(min_radius_ > 0.0)) throw DomainError("nonconvex parameters");
}

int SupportDomain::grid_size() const { return std::max(1024, 16 * max_mode()); }

SupportJet SupportDomain::jet(double phi) const {
  SupportJet out{a0_, 0.0, 0.0, 0.0};
  if (modes_.empty()) return out;
  const double c1 = std::cos(phi);
  const double s1 = std::sin(phi);
  double cn = c1;
  double sn = s1;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    const double n = static_cast<double>(i + 1);
    const double a = modes_[i].cos_coef;
    const double b = modes_[i].sin_coef;
    const double even = a * cn + b * sn;
    const double odd = b * cn - a * sn;
    out.h += even;
    out.d1 += n * odd;
    out.d2 -= n * n * even;
    out.d3 -= n * n * n * odd;
    const double next_c = cn * c1 - sn * s1;
    sn = sn * c1 + cn * s1;
    cn = next_c;
  }
  return out;
}

double SupportDomain::eval(double phi, int order) const {
  const SupportJet s = jet(phi);
  switch (order) {
    case 0: return s.h;
    case 1: return s.d1;
    case 2: return s.d2;
    case 3: return s.d3;
    default: throw std::invalid_argument("support derivative order must be 0..3");
  }
}

// ---------------------------------------------------------------------------
// AffineMap

Vec2 AffineMap::apply(Vec2 p) const {
  return {linear[0] * p.x + linear[1] * p.y + translation.x,
          linear[2] * p.x + linear[3] * p.y + translation.y};
}

AffineMap AffineMap::rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return AffineMap{{c, -s, s, c}, {}};
}

AffineMap AffineMap::diagonal(double sx, double sy) { return AffineMap{{sx, 0.0, 0.0, sy}, {}}; }

// ---------------------------------------------------------------------------
// Primitives

double eval_support(const SupportDomain& dom, double phi, int order) { return dom.eval(phi, order); }

BoundaryPoint boundary_point(const SupportDomain& dom, double phi) {
  const SupportJet s = dom.jet(phi);
  BoundaryPoint p;
  p.phi = phi;
  p.position = s.h * unit_normal(phi) + s.d1 * unit_tangent(phi);
  p.tangent = unit_tangent(phi);
  p.curvature_radius = s.h + s.d2;
  return p;
}

Vec2 boundary_position(const SupportDomain& dom, double phi) {
  const SupportJet s = dom.jet(phi);
  return s.h * unit_normal(phi) + s.d1 * unit_tangent(phi);
}

double perimeter(const SupportDomain& dom) {
  const int grid = dom.grid_size();
  double sum = 0.0;
  for (int j = 0; j < grid; ++j) sum += dom.eval(kTwoPi * j / grid, 0);
  return sum * kTwoPi / grid;
}

double area(const SupportDomain& dom) {
  const int grid = dom.grid_size();
  double sum = 0.0;
  for (int j = 0; j < grid; ++j) {
    const SupportJet s = dom.jet(kTwoPi * j / grid);
    sum += s.h * s.h - s.d1 * s.d1;
  }
  return 0.5 * sum * kTwoPi / grid;
}

double area_closed_form(const SupportDomain& dom) {
  double sum = dom.a0() * dom.a0();
  for (int n = 1; n <= dom.max_mode(); ++n) {
    const auto& m = dom.modes()[n - 1];
    sum += 0.5 * (1.0 - double(n) * n) * (m.cos_coef * m.cos_coef + m.sin_coef * m.sin_coef);
  }
  return kPi * sum;
}

double nontrivial_energy(const SupportDomain& dom) {
  double e = 0.0;
  for (int n = 2; n <= dom.max_mode(); ++n) {
    const auto& m = dom.modes()[n - 1];
    e += m.cos_coef * m.cos_coef + m.sin_coef * m.sin_coef;
  }
  return e;
}

namespace {

// Uniform-grid DFT of samples onto modes 0..num_modes.
std::pair<double, std::vector<FourierMode>> dft_project(const std::vector<double>& samples,
                                                        int num_modes) {
  const int grid = static_cast<int>(samples.size());
  std::vector<double> cos_table(grid);
  std::vector<double> sin_table(grid);
  for (int j = 0; j < grid; ++j) {
    cos_table[j] = std::cos(kTwoPi * j / grid);
    sin_table[j] = std::sin(kTwoPi * j / grid);
  }
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= grid;
  std::vector<FourierMode> modes(num_modes);
  for (int n = 1; n <= num_modes; ++n) {
    double a = 0.0;
    double b = 0.0;
    for (int j = 0; j < grid; ++j) {
      const int idx = static_cast<int>((static_cast<long long>(n) * j) % grid);
      a += samples[j] * cos_table[idx];
      b += samples[j] * sin_table[idx];
    }
    modes[n - 1] = {2.0 * a / grid, 2.0 * b / grid};
  }
  return {mean, modes};
}

std::vector<double> sample(const std::function<double(double)>& f, int grid) {
  std::vector<double> v(grid);
  for (int j = 0; j < grid; ++j) v[j] = f(kTwoPi * j / grid);
  return v;
}

double reconstruction_residual(const std::vector<double>& samples, double a0,
                               const std::vector<FourierMode>& modes) {
  const int grid = static_cast<int>(samples.size());
  double worst = 0.0;
  double scale = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double phi = kTwoPi * j / grid;
    double v = a0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const double n = static_cast<double>(i + 1);
      v += modes[i].cos_coef * std::cos(n * phi) + modes[i].sin_coef * std::sin(n * phi);
    }
    worst = std::max(worst, std::abs(v - samples[j]));
    scale = std::max(scale, std::abs(samples[j]));
  }
  return worst / std::max(scale, 1e-300);
}

}  // namespace

SupportDomain project_support(const std::function<double(double)>& f, int num_modes) {
  if (num_modes < 0) throw std::invalid_argument("mode count must be non-negative");
  const int grid = std::max(1024, 16 * num_modes);
  const auto samples = sample(f, grid);
  auto [a0, modes] = dft_project(samples, num_modes);
  if (reconstruction_residual(samples, a0, modes) > 1e-8) throw InsufficientModes("insufficient modes");
  return SupportDomain(a0, std::move(modes));
}

SupportDomain project_support_auto(const std::function<double(double)>& f) {
  constexpr int kMaxModes = 512;
  constexpr int kGrid = 8192;
  const auto samples = sample(f, kGrid);
  auto [a0, modes] = dft_project(samples, kMaxModes);
  double total = a0 * a0;
  for (const auto& m : modes) total += m.cos_coef * m.cos_coef + m.sin_coef * m.sin_coef;
  // Keep every mode whose amplitude is above round-off level; the dropped
  // tail energy is then far below 1e-12 of the total.
  const double amp_floor = 1e-14 * std::max(std::abs(a0), 1.0);
  int keep = 0;
  for (int n = 1; n <= kMaxModes; ++n) {
    const auto& m = modes[n - 1];
    if (std::hypot(m.cos_coef, m.sin_coef) > amp_floor) keep = n;
  }
  double tail = 0.0;
  for (int n = keep + 1; n <= kMaxModes; ++n) {
    tail += modes[n - 1].cos_coef * modes[n - 1].cos_coef + modes[n - 1].sin_coef * modes[n - 1].sin_coef;
  }
  if (keep == kMaxModes || tail > 1e-12 * total) throw InsufficientModes("insufficient modes");
  modes.resize(keep);
  return SupportDomain(a0, std::move(modes));
}

SupportDomain affine_image(const SupportDomain& dom, const AffineMap& map, int num_modes) {
  if (!(map.det() > 0.0)) throw std::invalid_argument("affine map must have positive determinant");
  const auto& L = map.linear;
  auto h_image = [&](double phi) {
    const Vec2 u = unit_normal(phi);
    // A^T u
    const Vec2 w{L[0] * u.x + L[2] * u.y, L[1] * u.x + L[3] * u.y};
    return dom.eval(std::atan2(w.y, w.x), 0) * norm(w) + dot(map.translation, u);
  };
  return project_support(h_image, num_modes);
}

SupportDomain scaled(const SupportDomain& dom, double factor) {
  if (!(factor > 0.0)) throw std::invalid_argument("scale factor must be positive");
  std::vector<FourierMode> modes = dom.modes();
  for (auto& m : modes) {
    m.cos_coef *= factor;
    m.sin_coef *= factor;
  }
  return SupportDomain(dom.a0() * factor, std::move(modes));
}

double ellipse_defect(const SupportDomain& dom) {
  // Remove the translation, then look at g^2 on a grid.
  std::vector<FourierMode> centred = dom.modes();
  if (!centred.empty()) centred[0] = {};
  const SupportDomain g(dom.a0(), centred);
  const int grid = std::max(1024, 32 * std::max(1, dom.max_mode()));
  std::vector<double> squares(grid);
  double odd_energy = 0.0;
  for (std::size_t i = 2; i < centred.size(); i += 2) {
    odd_energy += centred[i].cos_coef * centred[i].cos_coef + centred[i].sin_coef * centred[i].sin_coef;
  }
  for (int j = 0; j < grid; ++j) {
    const double v = g.eval(kTwoPi * j / grid, 0);
    squares[j] = v * v;
  }
  const int top = std::min(grid / 2 - 1, 2 * std::max(1, dom.max_mode()));
  auto [m0, sq_modes] = dft_project(squares, top);
  double total = m0 * m0;
  double stray = 0.0;
  for (int n = 1; n <= top; ++n) {
    const double e = sq_modes[n - 1].cos_coef * sq_modes[n - 1].cos_coef +
                     sq_modes[n - 1].sin_coef * sq_modes[n - 1].sin_coef;
    total += e;
    if (n != 2) stray += e;
  }
  return std::sqrt(stray / total) + std::sqrt(odd_energy) / std::abs(dom.a0());
}

// ---------------------------------------------------------------------------
// Named families

namespace named {

SupportDomain disk(double radius, Vec2 center) {
  if (!(radius > 0.0)) throw DomainError("nonconvex parameters");
  std::vector<FourierMode> modes;
  if (center.x != 0.0 || center.y != 0.0) modes.push_back({center.x, center.y});
  return SupportDomain(radius, std::move(modes));
}

SupportDomain ellipse(double a, double b, int num_modes) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("nonconvex parameters");
  auto h = [a, b](double phi) {
    const double c = std::cos(phi);
    const double s = std::sin(phi);
    return std::sqrt(a * a * c * c + b * b * s * s);
  };
  return num_modes > 0 ? project_support(h, num_modes) : project_support_auto(h);
}

SupportDomain gutkin(int n, double eps) {
  if (n < 2) throw std::invalid_argument("gutkin family needs n >= 2");
  if (!(std::abs(eps) * (double(n) * n - 1.0) < 1.0)) throw DomainError("nonconvex parameters");
  std::vector<FourierMode> modes(n);
  modes[n - 1] = {eps, 0.0};
  return SupportDomain(1.0, std::move(modes));
}

SupportDomain constant_width(double eps, int n) {
  if (n < 3 || n % 2 == 0) throw std::invalid_argument("constant width family needs an odd mode >= 3");
  return gutkin(n, eps);
}

double squeeze_bump(double phi) {
  return std::exp(-(1.0 - std::cos(phi - 0.5 * kPi)) / (kSqueezeWidth * kSqueezeWidth));
}

SupportDomain squeezed_disk(double eps) {
  if (!(eps >= 0.0)) throw DomainError("nonconvex parameters");
  const SupportDomain raw = project_support_auto([eps](double phi) { return 1.0 - eps * squeeze_bump(phi); });
  return scaled(raw, std::sqrt(kPi / area(raw)));
}

}  // namespace named

namespace {

std::vector<double> parse_numbers(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad domain parameter '" + item + "'");
    }
    if (used != item.size()) throw std::invalid_argument("bad domain parameter '" + item + "'");
    out.push_back(v);
  }
  return out;
}

int as_int(double v) {
  if (v != std::floor(v)) throw std::invalid_argument("expected an integer domain parameter");
  return static_cast<int>(v);
}

}  // namespace

SupportDomain make_named(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string family = spec.substr(0, colon);
  const std::vector<double> p =
      colon == std::string::npos ? std::vector<double>{} : parse_numbers(spec.substr(colon + 1));
  auto need = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi) {
      throw std::invalid_argument("wrong number of parameters for domain family '" + family + "'");
    }
  };
  if (family == "disk") {
    need(0, 3);
    const double r = p.empty() ? 1.0 : p[0];
    const Vec2 c{p.size() > 1 ? p[1] : 0.0, p.size() > 2 ? p[2] : 0.0};
    return named::disk(r, c);
  }
  if (family == "ellipse") {
    need(2, 3);
    return named::ellipse(p[0], p[1], p.size() > 2 ? as_int(p[2]) : 0);
  }
  if (family == "gutkin") {
    need(2, 2);
    return named::gutkin(as_int(p[0]), p[1]);
  }
  if (family == "constwidth" || family == "constant_width") {
    need(1, 2);
    return named::constant_width(p[0], p.size() > 1 ? as_int(p[1]) : 3);
  }
  if (family == "squeezed" || family == "squeezed_disk") {
    need(1, 1);
    return named::squeezed_disk(p[0]);
  }
  throw std::invalid_argument("unknown domain family '" + family + "'");
}

// ---------------------------------------------------------------------------
// Radon curves

RadonReport radon_check(const SupportDomain& dom, double tol) {
  RadonReport report;
  std::vector<FourierMode> centred = dom.modes();
  if (!centred.empty()) centred[0] = {};
  double odd = 0.0;
  for (std::size_t i = 2; i < centred.size(); i += 2) {
    odd = std::max(odd, std::hypot(centred[i].cos_coef, centred[i].sin_coef));
  }
  report.is_centrally_symmetric = odd < tol;
  if (!report.is_centrally_symmetric) {
    report.max_defect = std::numeric_limits<double>::quiet_NaN();
    return report;
  }
  const SupportDomain sym(dom.a0(), centred);
  constexpr int kSamples = 256;
  double worst = 0.0;
  for (int j = 0; j < kSamples; ++j) {
    const double phi = kTwoPi * j / kSamples;
    const Vec2 x = boundary_position(sym, phi);
    const Vec2 tx = unit_tangent(phi);
    // gamma(psi) parallel to the tangent at x; monotone on (phi, phi + pi).
    auto f = [&](double psi) { return cross(boundary_position(sym, psi), tx); };
    auto df = [&](double psi) {
      const SupportJet s = sym.jet(psi);
      return (s.h + s.d2) * cross(unit_tangent(psi), tx);
    };
    const auto psi = solve_bracketed(f, df, phi, phi + kPi, 1e-14);
    if (!psi) throw GeometryError("geometry error");
    const Vec2 ty = unit_tangent(*psi);
    double angle = std::abs(std::atan2(cross(x, ty), dot(x, ty)));
    angle = std::min(angle, kPi - angle);
    worst = std::max(worst, angle);
  }
  report.max_defect = worst;
  report.is_radon = worst < tol;
  return report;
}

// ---------------------------------------------------------------------------
// JSON

std::string domain_to_json(const SupportDomain& dom) {
  nlohmann::json j;
  j["a0"] = dom.a0();
  nlohmann::json modes = nlohmann::json::array();
  for (const auto& m : dom.modes()) modes.push_back({m.cos_coef, m.sin_coef});
  j["modes"] = modes;
  return j.dump();
}

SupportDomain domain_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("domain JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("a0") || !j["a0"].is_number()) {
    throw std::invalid_argument("domain JSON: missing numeric field 'a0'");
  }
  std::vector<FourierMode> modes;
  if (j.contains("modes")) {
    if (!j["modes"].is_array()) throw std::invalid_argument("domain JSON: 'modes' must be an array");
    for (const auto& m : j["modes"]) {
      if (!m.is_array() || m.size() != 2 || !m[0].is_number() || !m[1].is_number()) {
        throw std::invalid_argument("domain JSON: each mode must be [a_n, b_n]");
      }
      modes.push_back({m[0].get<double>(), m[1].get<double>()});
    }
  }
  return SupportDomain(j["a0"].get<double>(), std::move(modes));
}

}  // namespace billiards
