#pragma once

// The four billiard generating functions over a support-function domain,
// all parameterised by the support angle phi, plus forward maps used to
// cross-check variational orbits.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/twist.hpp"

namespace billiards {

enum class ModelTag { birkhoff, symplectic, outer, fourth };

inline constexpr std::array<ModelTag, 4> kAllModels{ModelTag::birkhoff, ModelTag::symplectic, ModelTag::outer,
                                                    ModelTag::fourth};

std::string to_string(ModelTag tag);
// Throws std::invalid_argument for unknown names.
ModelTag parse_model(const std::string& name);

// birkhoff:   S = -2 h((x0+x1)/2) sin((x1-x0)/2),        gaps in (0, 2 pi)
// symplectic: S = -cross(gamma(x0), gamma(x1)) / 2,       gaps in (0, pi)
// outer:      per-edge share of the circumscribed area,   gaps in (0, pi)
// fourth:     S = h'(x1) - h'(x0) + (h(x0)+h(x1)) tan((x1-x0)/2), gaps in (0, pi)
TwistSystem make_system(const SupportDomain& dom, ModelTag tag);

// Intersection of the tangent lines with normals at phi0 and phi1.
Vec2 tangent_intersection(const SupportDomain& dom, double phi0, double phi1);

struct OuterPolygon {
  std::vector<Vec2> vertices;  // M_k on the tangents at phi_k and phi_{k+1}
  double area = 0.0;
};
// Throws GapViolation when a gap is outside (0, pi).
OuterPolygon outer_polygon(const SupportDomain& dom, const Configuration& cfg);

// Vertices gamma(phi_k); the symplectic orbit polygon.
std::vector<Vec2> inscribed_polygon(const SupportDomain& dom, const Configuration& cfg);

// Birkhoff angles phi_k are directions of the normals to the chords, so the
// k-th reflection happens at gamma((phi_k + phi_{k+1}) / 2).
std::vector<Vec2> reflection_points(const SupportDomain& dom, const Configuration& cfg);

// Polygon traced by an orbit of the given model: reflection points,
// inscribed vertices, or circumscribed vertices.
std::vector<Vec2> orbit_polygon(const SupportDomain& dom, ModelTag tag, const Configuration& cfg);

// Closed forms for the unit disk. Throws std::invalid_argument outside
// (0, 1/2] (birkhoff, symplectic) or (0, 1/2) (outer, fourth).
double beta_disk(ModelTag tag, double rho);

// Birkhoff state: boundary angle and the angle in (0, pi) between the
// outgoing chord and the positive tangent.
struct ChordState {
  double phi = 0.0;
  double alpha = 0.0;
};
ChordState birkhoff_map(const SupportDomain& dom, ChordState state);

// Third symplectic point: phi2 in (phi1, phi1 + pi) with gamma(phi2) -
// gamma(phi0) parallel to the tangent at phi1.
double symplectic_next(const SupportDomain& dom, double phi0, double phi1);

// Forward tangency angle seen from an exterior point M, in [0, 2 pi).
double outer_tangency(const SupportDomain& dom, Vec2 m);
// Reflection of M through its forward tangency point.
Vec2 outer_map(const SupportDomain& dom, Vec2 m);

// Next parameter phi_{k+1} > phi_k of the orbit through (phi_{k-1}, phi_k).
// The fourth model has no forward map; throws std::invalid_argument.
double next_angle(const SupportDomain& dom, ModelTag tag, double phi_prev, double phi);

// Largest |phi_k(forward) - phi_k| for k = 2..q+1 when the orbit is started
// from the first two points of cfg.
double forward_orbit_defect(const SupportDomain& dom, ModelTag tag, const Configuration& cfg);

// CSV rows "k,phi,x,y" with the points of orbit_polygon.
void write_orbit_csv(std::ostream& out, const SupportDomain& dom, ModelTag tag, const Configuration& cfg);

}  // namespace billiards
