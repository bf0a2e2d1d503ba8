#pragma once

// Variational engine for exact twist maps: periodic action, its gradient and
// cyclic-tridiagonal Hessian, minimisation over ordered configurations, and
// Mather's minimal average action at rational and irrational rotation numbers.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "billiards/rotation.hpp"

namespace billiards {

// S and its partial derivatives at one pair (x0, x1).
struct PairTerms {
  double s = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;
  double s11 = 0.0;
  double s12 = 0.0;
  double s22 = 0.0;
};

// A generating function S(x0, x1), periodic under (x0, x1) -> (x0 + period,
// x1 + period), with positive twist S12 < 0 on the admissible window
// min_gap < x1 - x0 < max_gap.
struct TwistSystem {
  std::string name;
  double period = 1.0;
  double min_gap = 0.0;
  double max_gap = 1.0;
  std::function<double(double, double)> value;
  std::function<PairTerms(double, double)> terms;
};

class GapViolation : public std::runtime_error {
 public:
  GapViolation() : std::runtime_error("gap violation") {}
};

// x_0 < ... < x_{q-1} with the lift x_q = x_0 + winding * period.
struct Configuration {
  std::vector<double> points;
  std::int64_t winding = 0;
  double period = 1.0;

  std::size_t size() const { return points.size(); }
  // x_k for any integer k, using the periodic lift.
  double at(std::int64_t k) const;
};

Configuration equispaced(const TwistSystem& sys, std::int64_t p, std::int64_t q, double x0);
bool admissible(const TwistSystem& sys, const Configuration& cfg);

// Sum_{k<q} S(x_k, x_{k+1}); throws GapViolation for inadmissible input.
double action(const TwistSystem& sys, const Configuration& cfg);
std::vector<double> action_gradient(const TwistSystem& sys, const Configuration& cfg);

// Symmetric cyclic tridiagonal matrix: diag[k], off[k] = H(k, k+1) for
// k < n-1, and corner = H(n-1, 0). Solved in O(n) via Sherman-Morrison;
// returns nullopt on a zero pivot.
struct CyclicTridiagonal {
  std::vector<double> diag;
  std::vector<double> off;
  double corner = 0.0;
};
std::optional<std::vector<double>> solve_cyclic(const CyclicTridiagonal& m, const std::vector<double>& rhs);
CyclicTridiagonal action_hessian(const TwistSystem& sys, const Configuration& cfg);

struct MinimizeOptions {
  int starts = 8;
  double tol = 1e-10;             // scaled by |beta| + 1
  double switch_residual = 1e-4;  // gradient descent -> Newton
  int max_descent_iters = 4000;
  int max_newton_iters = 300;
  std::uint64_t seed = 0;
  double jitter = 0.2;  // fraction of the mean gap
  std::int64_t q_max = 2000;
  bool parallel = true;
};

struct BetaResult {
  double beta = std::numeric_limits<double>::quiet_NaN();
  Configuration config;
  double grad_residual = std::numeric_limits<double>::infinity();
  int starts_tried = 0;
  bool converged = false;
};

// Minimal average action among (p, q) periodic configurations.
BetaResult minimize_periodic(const TwistSystem& sys, std::int64_t p, std::int64_t q,
                             const MinimizeOptions& opts = {});
double beta_rational(const TwistSystem& sys, std::int64_t p, std::int64_t q, const MinimizeOptions& opts = {});

// Minimises over x_1..x_{q-1} with x_0 held fixed. The returned residual is
// the sup-norm of the full gradient, including the pinned component.
BetaResult minimize_pinned(const TwistSystem& sys, std::int64_t p, std::int64_t q, double x0,
                           const MinimizeOptions& opts = {});

struct IrrationalBeta {
  double value = std::numeric_limits<double>::quiet_NaN();
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::vector<Rational> used;
  std::vector<double> values;
};

// Brackets beta(omega) by convexity using continued-fraction convergents:
// secants across omega give upper bounds and secants extended past omega
// from one side give lower bounds.
IrrationalBeta beta_irrational(const TwistSystem& sys, double omega, double tol,
                               const MinimizeOptions& opts = {});

// Average action of the equispaced configuration x_k = x0 + k * omega * period.
double equispaced_average_action(const TwistSystem& sys, const RotationNumber& omega, double x0);

// Integrable-plus-potential model on the cylinder: S(q, Q) = l(Q - q) + V(q).
struct ConvexKinetic {
  std::function<double(double)> l;
  std::function<double(double)> dl;
  std::function<double(double)> ddl;

  static ConvexKinetic quadratic();  // l(v) = v^2 / 2
};

// V(x) = c0 + sum_m (cos_coef[m-1] cos 2 pi m x + sin_coef[m-1] sin 2 pi m x).
struct TrigPotential {
  double constant = 0.0;
  std::vector<double> cos_coef;
  std::vector<double> sin_coef;

  double value(double x) const;
  double d1(double x) const;
  double d2(double x) const;
  bool is_zero() const;
};

// The potential's mean is subtracted so that it integrates to zero.
TwistSystem make_toy_system(ConvexKinetic kinetic, TrigPotential potential);

}  // namespace billiards
