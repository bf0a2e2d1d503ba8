#pragma once

// Strictly convex planar domains described by a truncated Fourier series of
// their support function, plus the geometric primitives the billiard models
// are built on.

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace billiards {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;
inline constexpr double kPi = 3.141592653589793238462643383280;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
// Standard area form: det[a b].
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline Vec2 unit_normal(double phi) { return {std::cos(phi), std::sin(phi)}; }
// Counter-clockwise unit tangent for outer normal angle phi.
inline Vec2 unit_tangent(double phi) { return {-std::sin(phi), std::cos(phi)}; }

// Signed shoelace area of a closed polygon (positive when counter-clockwise).
double polygon_area(const std::vector<Vec2>& vertices);
double polygon_perimeter(const std::vector<Vec2>& vertices);

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown by affine_image when the requested mode count cannot represent the
// image support function.
class InsufficientModes : public DomainError {
 public:
  using DomainError::DomainError;
};

// Root-finding failure in a construction that should always succeed on a
// valid strictly convex domain.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FourierMode {
  double cos_coef = 0.0;  // a_n
  double sin_coef = 0.0;  // b_n
};

// h and its first three derivatives at one angle.
struct SupportJet {
  double h = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;
};

struct BoundaryPoint {
  double phi = 0.0;
  Vec2 position;
  Vec2 tangent;
  double curvature_radius = 0.0;
};

// Support function h(phi) = a0 + sum_n (a_n cos n phi + b_n sin n phi).
// Immutable once built; construction validates positivity of h and of the
// radius of curvature h + h'' on the validation grid.
class SupportDomain {
 public:
  // Throws DomainError("nonconvex parameters") if the invariants fail.
  SupportDomain(double a0, std::vector<FourierMode> modes);

  double a0() const { return a0_; }
  const std::vector<FourierMode>& modes() const { return modes_; }
  int max_mode() const { return static_cast<int>(modes_.size()); }
  int grid_size() const;

  double eval(double phi, int order) const;
  SupportJet jet(double phi) const;

  double min_support() const { return min_h_; }
  double min_curvature_radius() const { return min_radius_; }

 private:
  double a0_;
  std::vector<FourierMode> modes_;
  double min_h_ = 0.0;
  double min_radius_ = 0.0;
};

// 2x2 linear part with positive determinant plus a translation.
struct AffineMap {
  std::array<double, 4> linear{1.0, 0.0, 0.0, 1.0};  // row-major
  Vec2 translation;

  double det() const { return linear[0] * linear[3] - linear[1] * linear[2]; }
  Vec2 apply(Vec2 p) const;

  static AffineMap rotation(double angle);
  static AffineMap diagonal(double sx, double sy);
  static AffineMap scaling(double s) { return diagonal(s, s); }
};

double eval_support(const SupportDomain& dom, double phi, int order);
BoundaryPoint boundary_point(const SupportDomain& dom, double phi);
Vec2 boundary_position(const SupportDomain& dom, double phi);

double perimeter(const SupportDomain& dom);
double area(const SupportDomain& dom);
// pi * (a0^2 + 1/2 sum (1 - n^2)(a_n^2 + b_n^2)); used to cross-check the
// quadrature in area().
double area_closed_form(const SupportDomain& dom);

// Energy of the modes n >= 2, i.e. the distance from the family of
// (possibly translated) disks.
double nontrivial_energy(const SupportDomain& dom);
// Relative deviation from an ellipse: after removing the translation mode,
// the square of the support function of an ellipse only carries modes 0 and
// 2, and the function itself carries no odd modes.
double ellipse_defect(const SupportDomain& dom);

// Samples f on a uniform grid and projects onto modes 0..num_modes.
// Throws InsufficientModes when the reconstruction misses the samples by
// more than 1e-8 relative.
SupportDomain project_support(const std::function<double(double)>& f, int num_modes);
// Picks the smallest mode count (up to 512) whose discarded tail is below
// round-off, then projects.
SupportDomain project_support_auto(const std::function<double(double)>& f);

SupportDomain affine_image(const SupportDomain& dom, const AffineMap& map, int num_modes);
SupportDomain scaled(const SupportDomain& dom, double factor);

namespace named {
SupportDomain disk(double radius, Vec2 center = {});
SupportDomain ellipse(double a, double b, int num_modes = 0);
SupportDomain gutkin(int n, double eps);
SupportDomain constant_width(double eps, int n);
SupportDomain squeezed_disk(double eps);
// Smooth cap centred at pi/2 used by squeezed_disk.
double squeeze_bump(double phi);
inline constexpr double kSqueezeWidth = 0.35;
}  // namespace named

// Parses "disk:1", "ellipse:2,1", "gutkin:4,0.05", "constwidth:0.05,3",
// "squeezed:0.1" (constant_width/squeezed_disk are accepted as aliases).
SupportDomain make_named(const std::string& spec);

struct RadonReport {
  bool is_centrally_symmetric = false;
  double max_defect = 0.0;  // NaN when not symmetric
  bool is_radon = false;
};
RadonReport radon_check(const SupportDomain& dom, double tol);

// JSON: {"a0": number, "modes": [[a_n, b_n], ...]}
std::string domain_to_json(const SupportDomain& dom);
SupportDomain domain_from_json(const std::string& text);

}  // namespace billiards
