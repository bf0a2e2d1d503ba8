#pragma once

// Numerical checks of the isoperimetric-type beta inequalities, their
// equality cases, the Gutkin root set, and the outer-billiard relations at
// rotation numbers 1/3 and 1/4.

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "billiards/geometry.hpp"
#include "billiards/models.hpp"
#include "billiards/rotation.hpp"
#include "billiards/twist.hpp"

namespace billiards {

enum class Theorem { T4_2, T4_3, T4_4, C6_3, P6_9, CE6_5, T6_4, T6_10, Gutkin, ConstWidth, Radon };

std::string to_string(Theorem t);
// Accepts "T4.2", ..., "T6.10", "gutkin", "constwidth", "radon".
Theorem parse_theorem(const std::string& name);

struct Tolerances {
  double eq_tol = 1e-6;   // |gap| below this counts as equality
  double num_tol = 1e-8;  // slack allowed before an inequality is violated
};

struct VerifyOptions {
  MinimizeOptions minimize;
  Tolerances tol;
  double irrational_tol = 1e-9;  // bracket width for decimal rotation numbers
};

struct InequalityReport {
  std::string theorem;
  std::string rho;
  double lhs = 0.0;
  double rhs = 0.0;
  double gap = 0.0;  // >= 0 when the inequality holds
  bool holds = false;
  bool equality = false;
  bool valid = true;  // false when a minimisation failed to converge
  std::string note;
  std::vector<std::pair<std::string, double>> extras;

  double extra(const std::string& key) const;
};

// Sets holds/equality from gap.
void finalize(InequalityReport& report, const Tolerances& tol);

std::string to_json_line(const InequalityReport& report);
std::string csv_header();
std::string to_csv_row(const std::string& domain_id, const InequalityReport& report);

// Minimal average action of one model on one domain at a rational or
// decimal rotation number. `converged` is cleared on failure.
double model_beta(const SupportDomain& dom, ModelTag tag, const RotationNumber& rho, const VerifyOptions& opts,
                  bool& converged);

// T4.2 (birkhoff, perimeter), T4.3 (symplectic, area), T4.4 (fourth, perimeter).
InequalityReport verify_main_inequality(const SupportDomain& dom, Theorem theorem, const RotationNumber& rho,
                                        const VerifyOptions& opts = {});

// Coefficients c_0..c_m (ascending powers of t) of (P_n(t) - n t Q_n(t)) / t^3
// where tan(n x) = P_n(t) / Q_n(t), t = tan x.
std::vector<long double> gutkin_polynomial(int n);

struct GutkinRootSet {
  int n = 0;
  std::vector<double> roots;  // delta in (0, 1/2), ascending
};
GutkinRootSet gutkin_roots(int n);
// |tan(n pi delta) - n tan(pi delta)| with denominators cleared:
// |sin(n pi delta) cos(pi delta) - n cos(n pi delta) sin(pi delta)|.
double gutkin_defect(int n, double delta);
bool in_R(double rho, int n_max, double tol);

// Equality in the Birkhoff inequality at the first Gutkin root of n on the
// domain h = 1 + eps cos(n phi).
InequalityReport gutkin_equality_check(int n, double eps, const VerifyOptions& opts = {});

// Birkhoff beta(1/2) against -perimeter/pi.
InequalityReport constant_width_equality(const SupportDomain& dom, const VerifyOptions& opts = {});

// beta_out(1/3) + 4 beta_symp(1/3) <= 0, with the 4:1 triangle area identity.
InequalityReport outer_third_relation(const SupportDomain& dom, const VerifyOptions& opts = {});
// beta_out(1/4) + 2 beta_symp(1/4) <= 0, with the 2:1 quadrilateral identity.
InequalityReport outer_quarter_relation(const SupportDomain& dom, const VerifyOptions& opts = {});

// |Area(ABC) - 4 Area(abc)| for a 3-periodic outer configuration.
double triangle_midpoint_property(const SupportDomain& dom, const Configuration& cfg);
// |Area(ABCD) - 2 Area(abcd)| for a 4-periodic outer configuration.
double quadrilateral_midpoint_property(const SupportDomain& dom, const Configuration& cfg);

// lhs = beta_out(rho), rhs = area/pi * tan(pi rho), gap = rhs - lhs: a
// positive gap is the counterexample direction.
InequalityReport outer_counterexample(const SupportDomain& dom, int q, const VerifyOptions& opts = {});

// Spread of pinned minimal actions over `phases` starting angles. A spread
// below 1e-8 certifies an invariant curve of q-periodic points.
double invariant_curve_spread(const SupportDomain& dom, ModelTag tag, int q, int phases = 16,
                              const VerifyOptions& opts = {});

// beta_out(1/3) >= area/pi * tan(pi/3) under an invariant curve of
// 3-periodic outer orbits.
InequalityReport outer_third_rigidity(const SupportDomain& dom, const VerifyOptions& opts = {});
// beta_out(1/4) >= area/pi under invariant curves of 4-periodic outer and
// symplectic orbits.
InequalityReport outer_quarter_rigidity(const SupportDomain& dom, const VerifyOptions& opts = {});
// Same inequality with the centrally symmetric Radon hypothesis.
InequalityReport radon_relation(const SupportDomain& dom, const VerifyOptions& opts = {});

// a0 = 1, a_n, b_n uniform in +-0.5/n^3 for n = 2..8, rejection-sampled
// until convex.
SupportDomain random_domain(std::mt19937_64& rng);
std::vector<SupportDomain> random_domains(std::size_t count, std::uint64_t seed);

struct SuiteEntry {
  std::size_t domain_index = 0;
  InequalityReport report;
};
// Every (domain, theorem, rho) triple, skipping rho = 1/2 for T4.3 and T4.4.
// Output order is domain-major, then theorem, then rho.
std::vector<SuiteEntry> run_inequality_suite(const std::vector<SupportDomain>& domains,
                                             const std::vector<Theorem>& theorems,
                                             const std::vector<Rational>& rhos, const VerifyOptions& opts = {});

}  // namespace billiards
