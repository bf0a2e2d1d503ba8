#include "billiards/models.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "billiards/roots.hpp"

namespace billiards {

std::string to_string(ModelTag tag) {
  switch (tag) {
    case ModelTag::birkhoff:
      return "birkhoff";
    case ModelTag::symplectic:
      return "symplectic";
    case ModelTag::outer:
      return "outer";
    case ModelTag::fourth:
      return "fourth";
  }
  return "?";
}

ModelTag parse_model(const std::string& name) {
  for (ModelTag tag : kAllModels) {
    if (to_string(tag) == name) return tag;
  }
  if (name == "4th") return ModelTag::fourth;
  throw std::invalid_argument("unknown model '" + name + "'");
}

namespace {

using DomainPtr = std::shared_ptr<const SupportDomain>;

TwistSystem birkhoff_system(DomainPtr dom) {
  TwistSystem sys;
  sys.name = "birkhoff";
  sys.period = kTwoPi;
  sys.min_gap = 0.0;
  sys.max_gap = kTwoPi;
  sys.value = [dom](double x0, double x1) { return -2.0 * dom->eval(0.5 * (x0 + x1), 0) * std::sin(0.5 * (x1 - x0)); };
  sys.terms = [dom](double x0, double x1) {
    const SupportJet j = dom->jet(0.5 * (x0 + x1));
    const double sn = std::sin(0.5 * (x1 - x0));
    const double cs = std::cos(0.5 * (x1 - x0));
    const double fu = -2.0 * j.d1 * sn;
    const double fd = -j.h * cs;
    const double fuu = -2.0 * j.d2 * sn;
    const double fud = -j.d1 * cs;
    const double fdd = 0.5 * j.h * sn;
    PairTerms t;
    t.s = -2.0 * j.h * sn;
    t.s1 = 0.5 * fu - fd;
    t.s2 = 0.5 * fu + fd;
    t.s11 = 0.25 * fuu - fud + fdd;
    t.s22 = 0.25 * fuu + fud + fdd;
    t.s12 = 0.25 * fuu - fdd;
    return t;
  };
  return sys;
}

struct CurveJet {
  Vec2 g;    // gamma
  Vec2 g1;   // gamma'
  Vec2 g2;   // gamma''
};

CurveJet curve_jet(const SupportDomain& dom, double phi) {
  const SupportJet j = dom.jet(phi);
  const Vec2 n = unit_normal(phi);
  const Vec2 t = unit_tangent(phi);
  const double r = j.h + j.d2;
  const double dr = j.d1 + j.d3;
  return {j.h * n + j.d1 * t, r * t, dr * t - r * n};
}

TwistSystem symplectic_system(DomainPtr dom) {
  TwistSystem sys;
  sys.name = "symplectic";
  sys.period = kTwoPi;
  sys.min_gap = 0.0;
  sys.max_gap = kPi;
  sys.value = [dom](double x0, double x1) {
    return -0.5 * cross(boundary_position(*dom, x0), boundary_position(*dom, x1));
  };
  sys.terms = [dom](double x0, double x1) {
    const CurveJet a = curve_jet(*dom, x0);
    const CurveJet b = curve_jet(*dom, x1);
    PairTerms t;
    t.s = -0.5 * cross(a.g, b.g);
    t.s1 = -0.5 * cross(a.g1, b.g);
    t.s2 = -0.5 * cross(a.g, b.g1);
    t.s11 = -0.5 * cross(a.g2, b.g);
    t.s22 = -0.5 * cross(a.g, b.g2);
    t.s12 = -0.5 * cross(a.g1, b.g1);
    return t;
  };
  return sys;
}

TwistSystem fourth_system(DomainPtr dom) {
  TwistSystem sys;
  sys.name = "fourth";
  sys.period = kTwoPi;
  sys.min_gap = 0.0;
  sys.max_gap = kPi;
  sys.value = [dom](double x0, double x1) {
    return dom->eval(x1, 1) - dom->eval(x0, 1) + (dom->eval(x0, 0) + dom->eval(x1, 0)) * std::tan(0.5 * (x1 - x0));
  };
  sys.terms = [dom](double x0, double x1) {
    const SupportJet a = dom->jet(x0);
    const SupportJet b = dom->jet(x1);
    const double tn = std::tan(0.5 * (x1 - x0));
    const double t1 = 0.5 * (1.0 + tn * tn);
    const double t2 = tn * t1;
    const double hs = a.h + b.h;
    PairTerms t;
    t.s = b.d1 - a.d1 + hs * tn;
    t.s1 = -a.d2 + a.d1 * tn - hs * t1;
    t.s2 = b.d2 + b.d1 * tn + hs * t1;
    t.s11 = -a.d3 + a.d2 * tn - 2.0 * a.d1 * t1 + hs * t2;
    t.s22 = b.d3 + b.d2 * tn + 2.0 * b.d1 * t1 + hs * t2;
    t.s12 = t1 * (a.d1 - b.d1) - hs * t2;
    return t;
  };
  return sys;
}

// Area of the quadrilateral spanned by the origin, the two tangent feet and
// the tangent-line intersection: G(a, b, d) = (2ab - (a^2 + b^2) cos d) / (2 sin d).
double outer_share(double a, double b, double d) {
  return (2.0 * a * b - (a * a + b * b) * std::cos(d)) / (2.0 * std::sin(d));
}

TwistSystem outer_system(DomainPtr dom) {
  TwistSystem sys;
  sys.name = "outer";
  sys.period = kTwoPi;
  sys.min_gap = 0.0;
  sys.max_gap = kPi;
  sys.value = [dom](double x0, double x1) { return outer_share(dom->eval(x0, 0), dom->eval(x1, 0), x1 - x0); };
  sys.terms = [dom](double x0, double x1) {
    const SupportJet ja = dom->jet(x0);
    const SupportJet jb = dom->jet(x1);
    const double a = ja.h, b = jb.h;
    const double d = x1 - x0;
    const double c = std::cos(d), s = std::sin(d);
    const double n = 2.0 * a * b - (a * a + b * b) * c;
    const double nd = (a * a + b * b) * s;
    const double g_a = (b - a * c) / s;
    const double g_b = (a - b * c) / s;
    const double g_d = 0.5 * (a * a + b * b) - n * c / (2.0 * s * s);
    const double g_aa = -c / s;
    const double g_bb = -c / s;
    const double g_ab = 1.0 / s;
    const double g_ad = (a - b * c) / (s * s);
    const double g_bd = (b - a * c) / (s * s);
    const double g_dd = -((nd * c - n * s) / (2.0 * s * s) - n * c * c / (s * s * s));
    PairTerms t;
    t.s = n / (2.0 * s);
    t.s1 = g_a * ja.d1 - g_d;
    t.s2 = g_b * jb.d1 + g_d;
    t.s11 = g_aa * ja.d1 * ja.d1 + g_a * ja.d2 - 2.0 * g_ad * ja.d1 + g_dd;
    t.s22 = g_bb * jb.d1 * jb.d1 + g_b * jb.d2 + 2.0 * g_bd * jb.d1 + g_dd;
    t.s12 = g_ab * ja.d1 * jb.d1 + g_ad * ja.d1 - g_bd * jb.d1 - g_dd;
    return t;
  };
  return sys;
}

double lift_above(double angle, double floor_value) {
  return angle + kTwoPi * std::ceil((floor_value - angle) / kTwoPi);
}

}  // namespace

TwistSystem make_system(const SupportDomain& dom, ModelTag tag) {
  auto ptr = std::make_shared<const SupportDomain>(dom);
  switch (tag) {
    case ModelTag::birkhoff:
      return birkhoff_system(ptr);
    case ModelTag::symplectic:
      return symplectic_system(ptr);
    case ModelTag::outer:
      return outer_system(ptr);
    case ModelTag::fourth:
      return fourth_system(ptr);
  }
  throw std::invalid_argument("unknown model");
}

Vec2 tangent_intersection(const SupportDomain& dom, double phi0, double phi1) {
  const double s = std::sin(phi1 - phi0);
  const double h0 = dom.eval(phi0, 0);
  const double h1 = dom.eval(phi1, 0);
  return {(h0 * std::sin(phi1) - h1 * std::sin(phi0)) / s, (h1 * std::cos(phi0) - h0 * std::cos(phi1)) / s};
}

OuterPolygon outer_polygon(const SupportDomain& dom, const Configuration& cfg) {
  OuterPolygon poly;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const double a = cfg.points[k];
    const double b = cfg.at(static_cast<std::int64_t>(k) + 1);
    if (!(b - a > 0.0 && b - a < kPi)) throw GapViolation();
    poly.vertices.push_back(tangent_intersection(dom, a, b));
  }
  poly.area = polygon_area(poly.vertices);
  return poly;
}

std::vector<Vec2> inscribed_polygon(const SupportDomain& dom, const Configuration& cfg) {
  std::vector<Vec2> pts;
  pts.reserve(cfg.size());
  for (double phi : cfg.points) pts.push_back(boundary_position(dom, phi));
  return pts;
}

std::vector<Vec2> reflection_points(const SupportDomain& dom, const Configuration& cfg) {
  std::vector<Vec2> pts;
  pts.reserve(cfg.size());
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    pts.push_back(boundary_position(dom, 0.5 * (cfg.points[k] + cfg.at(static_cast<std::int64_t>(k) + 1))));
  }
  return pts;
}

std::vector<Vec2> orbit_polygon(const SupportDomain& dom, ModelTag tag, const Configuration& cfg) {
  switch (tag) {
    case ModelTag::birkhoff:
      return reflection_points(dom, cfg);
    case ModelTag::symplectic:
      return inscribed_polygon(dom, cfg);
    case ModelTag::outer:
    case ModelTag::fourth:
      break;
  }
  return outer_polygon(dom, cfg).vertices;
}

double beta_disk(ModelTag tag, double rho) {
  const bool closed_half = tag == ModelTag::birkhoff || tag == ModelTag::symplectic;
  if (!(rho > 0.0) || rho > 0.5 || (!closed_half && rho >= 0.5)) {
    throw std::invalid_argument("rotation number out of range for " + to_string(tag));
  }
  switch (tag) {
    case ModelTag::birkhoff:
      return -2.0 * std::sin(kPi * rho);
    case ModelTag::symplectic:
      return -0.5 * std::sin(kTwoPi * rho);
    case ModelTag::outer:
      return std::tan(kPi * rho);
    case ModelTag::fourth:
      return 2.0 * std::tan(kPi * rho);
  }
  throw std::invalid_argument("unknown model");
}

namespace {

// First sign change of f on (lo, hi) from a uniform scan, polished by
// safeguarded Newton.
template <typename F, typename DF>
double scan_root(F&& f, DF&& df, double lo, double hi, int samples, bool rising) {
  double prev_x = lo;
  double prev_f = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double x = lo + (hi - lo) * i / samples;
    const double fx = f(x);
    const bool crossed = rising ? (prev_f < 0.0 && fx >= 0.0) : (prev_f > 0.0 && fx <= 0.0);
    if (crossed) {
      auto root = solve_bracketed(f, df, prev_x, x, 1e-14);
      if (root) return *root;
    }
    prev_x = x;
    prev_f = fx;
  }
  throw GeometryError("root bracket not found");
}

}  // namespace

ChordState birkhoff_map(const SupportDomain& dom, ChordState state) {
  if (!(state.alpha > 0.0 && state.alpha < kPi)) throw std::invalid_argument("incidence angle outside (0, pi)");
  const Vec2 p0 = boundary_position(dom, state.phi);
  const Vec2 v = std::cos(state.alpha) * unit_tangent(state.phi) - std::sin(state.alpha) * unit_normal(state.phi);
  auto f = [&](double phi) { return cross(v, boundary_position(dom, phi) - p0); };
  auto df = [&](double phi) {
    const SupportJet j = dom.jet(phi);
    return (j.h + j.d2) * cross(v, unit_tangent(phi));
  };
  const double eps = 1e-9;
  const double phi1 = scan_root(f, df, state.phi + eps, state.phi + kTwoPi - eps, 512, true);
  // Reflection keeps the tangential component of the direction.
  const double c = std::clamp(dot(v, unit_tangent(phi1)), -1.0, 1.0);
  return {phi1, std::acos(c)};
}

double symplectic_next(const SupportDomain& dom, double phi0, double phi1) {
  const Vec2 p0 = boundary_position(dom, phi0);
  const Vec2 t1 = unit_tangent(phi1);
  auto f = [&](double phi) { return cross(t1, boundary_position(dom, phi) - p0); };
  auto df = [&](double phi) {
    const SupportJet j = dom.jet(phi);
    return (j.h + j.d2) * std::sin(phi - phi1);
  };
  const double eps = 1e-9;
  return scan_root(f, df, phi1 + eps, phi1 + kPi - eps, 256, true);
}

double outer_tangency(const SupportDomain& dom, Vec2 m) {
  auto g = [&](double th) { return dot(m, unit_normal(th)) - dom.eval(th, 0); };
  auto dg = [&](double th) { return dot(m, unit_tangent(th)) - dom.eval(th, 1); };
  // Start the scan inside the positive arc, i.e. at the direction of M.
  const double start = std::atan2(m.y, m.x);
  if (!(g(start) > 0.0)) throw GeometryError("point is not exterior to the domain");
  const double th = scan_root(g, dg, start, start + kTwoPi, 256, false);
  return std::fmod(std::fmod(th, kTwoPi) + kTwoPi, kTwoPi);
}

Vec2 outer_map(const SupportDomain& dom, Vec2 m) {
  const double th = outer_tangency(dom, m);
  return 2.0 * boundary_position(dom, th) - m;
}

double next_angle(const SupportDomain& dom, ModelTag tag, double phi_prev, double phi) {
  switch (tag) {
    case ModelTag::birkhoff: {
      // Line phi leaves the reflection point at the mid angle with incidence
      // angle (phi - phi_prev) / 2; the next line is phi' = mid' + alpha'.
      const double mid = 0.5 * (phi_prev + phi);
      const ChordState next = birkhoff_map(dom, {mid, phi - mid});
      return next.phi + next.alpha;
    }
    case ModelTag::symplectic:
      return symplectic_next(dom, phi_prev, phi);
    case ModelTag::outer: {
      const Vec2 m_prev = tangent_intersection(dom, phi_prev, phi);
      const Vec2 m = 2.0 * boundary_position(dom, phi) - m_prev;
      return lift_above(outer_tangency(dom, m), phi + 1e-12);
    }
    case ModelTag::fourth:
      break;
  }
  throw std::invalid_argument("no forward map for model " + to_string(tag));
}

double forward_orbit_defect(const SupportDomain& dom, ModelTag tag, const Configuration& cfg) {
  const auto q = static_cast<std::int64_t>(cfg.size());
  double prev = cfg.at(0);
  double cur = cfg.at(1);
  double worst = 0.0;
  for (std::int64_t k = 2; k <= q + 1; ++k) {
    const double next = next_angle(dom, tag, prev, cur);
    worst = std::max(worst, std::abs(next - cfg.at(k)));
    prev = cur;
    cur = next;
  }
  return worst;
}

void write_orbit_csv(std::ostream& out, const SupportDomain& dom, ModelTag tag, const Configuration& cfg) {
  out << "k,phi,x,y\n";
  const std::vector<Vec2> pts = orbit_polygon(dom, tag, cfg);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    out << fmt::format("{},{:.17g},{:.17g},{:.17g}\n", k, cfg.points[k], pts[k].x, pts[k].y);
  }
}

}  // namespace billiards
