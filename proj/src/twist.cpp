#include "billiards/twist.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <limits>
#include <numbers>
#include <tuple>

#include "billiards/parallel.hpp"

namespace billiards {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double floor_div_offset(std::int64_t k, std::int64_t q, std::int64_t& r) {
  std::int64_t m = k / q;
  r = k % q;
  if (r < 0) {
    r += q;
    --m;
  }
  return static_cast<double>(m);
}

double gap_floor(const TwistSystem& sys) { return 1e-9 * sys.period; }

bool gap_ok(const TwistSystem& sys, double gap) { return gap > sys.min_gap && gap < sys.max_gap; }

// Pair terms T_k = terms(x_k, x_{k+1}) for k = 0..q-1.
std::vector<PairTerms> pair_terms(const TwistSystem& sys, const Configuration& cfg) {
  const std::size_t q = cfg.size();
  std::vector<PairTerms> t(q);
  for (std::size_t k = 0; k < q; ++k) {
    const double a = cfg.points[k];
    const double b = cfg.at(static_cast<std::int64_t>(k) + 1);
    if (!gap_ok(sys, b - a)) throw GapViolation();
    t[k] = sys.terms(a, b);
  }
  return t;
}

std::vector<double> gradient_from_terms(const std::vector<PairTerms>& t) {
  const std::size_t q = t.size();
  std::vector<double> g(q);
  for (std::size_t k = 0; k < q; ++k) g[k] = t[k].s1 + t[(k + q - 1) % q].s2;
  return g;
}

CyclicTridiagonal hessian_from_terms(const std::vector<PairTerms>& t) {
  const std::size_t q = t.size();
  CyclicTridiagonal h;
  h.diag.resize(q);
  for (std::size_t k = 0; k < q; ++k) h.diag[k] = t[k].s11 + t[(k + q - 1) % q].s22;
  if (q == 1) {
    h.diag[0] += 2.0 * t[0].s12;
    return h;
  }
  if (q == 2) {
    h.off = {t[0].s12 + t[1].s12};
    return h;
  }
  h.off.resize(q - 1);
  for (std::size_t k = 0; k + 1 < q; ++k) h.off[k] = t[k].s12;
  h.corner = t[q - 1].s12;
  return h;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::optional<std::vector<double>> solve_tridiagonal(const std::vector<double>& sub, const std::vector<double>& diag,
                                                     const std::vector<double>& sup, const std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(n), x(n);
  double piv = diag[0];
  if (piv == 0.0 || !std::isfinite(piv)) return std::nullopt;
  x[0] = rhs[0] / piv;
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = sup[k - 1] / piv;
    piv = diag[k] - sub[k] * c[k];
    if (piv == 0.0 || !std::isfinite(piv)) return std::nullopt;
    x[k] = (rhs[k] - sub[k] * x[k - 1]) / piv;
  }
  for (std::size_t k = n - 1; k-- > 0;) x[k] -= c[k + 1] * x[k + 1];
  return x;
}

}  // namespace

double Configuration::at(std::int64_t k) const {
  std::int64_t r = 0;
  const double m = floor_div_offset(k, static_cast<std::int64_t>(points.size()), r);
  return points[static_cast<std::size_t>(r)] + m * static_cast<double>(winding) * period;
}

Configuration equispaced(const TwistSystem& sys, std::int64_t p, std::int64_t q, double x0) {
  Configuration cfg;
  cfg.winding = p;
  cfg.period = sys.period;
  cfg.points.resize(static_cast<std::size_t>(q));
  const double gap = static_cast<double>(p) * sys.period / static_cast<double>(q);
  for (std::int64_t k = 0; k < q; ++k) cfg.points[static_cast<std::size_t>(k)] = x0 + static_cast<double>(k) * gap;
  return cfg;
}

bool admissible(const TwistSystem& sys, const Configuration& cfg) {
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    if (!gap_ok(sys, cfg.at(static_cast<std::int64_t>(k) + 1) - cfg.points[k])) return false;
  }
  return !cfg.points.empty();
}

double action(const TwistSystem& sys, const Configuration& cfg) {
  double total = 0.0;
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    const double a = cfg.points[k];
    const double b = cfg.at(static_cast<std::int64_t>(k) + 1);
    if (!gap_ok(sys, b - a)) throw GapViolation();
    total += sys.value(a, b);
  }
  return total;
}

std::vector<double> action_gradient(const TwistSystem& sys, const Configuration& cfg) {
  return gradient_from_terms(pair_terms(sys, cfg));
}

CyclicTridiagonal action_hessian(const TwistSystem& sys, const Configuration& cfg) {
  return hessian_from_terms(pair_terms(sys, cfg));
}

std::optional<std::vector<double>> solve_cyclic(const CyclicTridiagonal& m, const std::vector<double>& rhs) {
  const std::size_t n = m.diag.size();
  if (n == 0 || rhs.size() != n) return std::nullopt;
  if (n == 1) {
    if (m.diag[0] == 0.0) return std::nullopt;
    return std::vector<double>{rhs[0] / m.diag[0]};
  }
  if (n == 2) {
    const double a = m.diag[0], b = m.off[0], d = m.diag[1];
    const double det = a * d - b * b;
    if (det == 0.0 || !std::isfinite(det)) return std::nullopt;
    return std::vector<double>{(d * rhs[0] - b * rhs[1]) / det, (a * rhs[1] - b * rhs[0]) / det};
  }
  // Sherman-Morrison: A = T + u v^T with T tridiagonal.
  std::vector<double> sub(n, 0.0), sup(n - 1, 0.0);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    sup[k] = m.off[k];
    sub[k + 1] = m.off[k];
  }
  const double alpha = m.corner;  // A(n-1, 0)
  const double beta = m.corner;   // A(0, n-1)
  const double gamma = m.diag[0] != 0.0 ? -m.diag[0] : -1.0;
  std::vector<double> bb = m.diag;
  bb[0] -= gamma;
  bb[n - 1] -= alpha * beta / gamma;
  auto x = solve_tridiagonal(sub, bb, sup, rhs);
  if (!x) return std::nullopt;
  std::vector<double> u(n, 0.0);
  u[0] = gamma;
  u[n - 1] = alpha;
  auto z = solve_tridiagonal(sub, bb, sup, u);
  if (!z) return std::nullopt;
  const double denom = 1.0 + (*z)[0] + beta * (*z)[n - 1] / gamma;
  if (denom == 0.0 || !std::isfinite(denom)) return std::nullopt;
  const double fact = ((*x)[0] + beta * (*x)[n - 1] / gamma) / denom;
  for (std::size_t k = 0; k < n; ++k) (*x)[k] -= fact * (*z)[k];
  return x;
}

// ---------------------------------------------------------------------------
// Minimisation

namespace {

struct Candidate {
  Configuration config;
  double action = std::numeric_limits<double>::infinity();
  double residual = std::numeric_limits<double>::infinity();
  bool converged = false;
  bool collapsed = false;
};

// Largest t in [0, 1] keeping every gap inside the clipped window.
double max_step_fraction(const TwistSystem& sys, const Configuration& cfg, const std::vector<double>& step) {
  const std::size_t q = cfg.size();
  const double lo = sys.min_gap + gap_floor(sys);
  const double hi = sys.max_gap - gap_floor(sys);
  double t = 1.0;
  for (std::size_t k = 0; k < q; ++k) {
    const double gap = cfg.at(static_cast<std::int64_t>(k) + 1) - cfg.points[k];
    const double dg = step[(k + 1) % q] - step[k];
    if (dg < 0.0 && std::isfinite(lo)) t = std::min(t, (lo - gap) / dg);
    if (dg > 0.0 && std::isfinite(hi)) t = std::min(t, (hi - gap) / dg);
  }
  return std::max(t, 0.0);
}

Configuration moved(const Configuration& cfg, const std::vector<double>& step, double t) {
  Configuration out = cfg;
  for (std::size_t k = 0; k < cfg.size(); ++k) out.points[k] += t * step[k];
  return out;
}

double min_gap_of(const Configuration& cfg) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    m = std::min(m, cfg.at(static_cast<std::int64_t>(k) + 1) - cfg.points[k]);
  }
  return m;
}

// Descent from one start: adaptive gradient descent until the residual drops
// below opts.switch_residual, then damped Newton on the cyclic Hessian.
Candidate descend(const TwistSystem& sys, Configuration x, const MinimizeOptions& opts, bool pin_first) {
  const std::size_t q = x.size();
  const double mean_gap = static_cast<double>(x.winding) * sys.period / static_cast<double>(q);
  const double length_scale = std::max(std::abs(mean_gap), sys.period / static_cast<double>(q));

  auto masked_gradient = [&](const std::vector<double>& g) {
    std::vector<double> m = g;
    if (pin_first) m[0] = 0.0;
    return m;
  };

  double a = action(sys, x);
  std::vector<PairTerms> terms = pair_terms(sys, x);
  std::vector<double> grad = masked_gradient(gradient_from_terms(terms));
  double res = sup_norm(grad);
  auto tolerance = [&] { return opts.tol * (std::abs(a) / static_cast<double>(q) + 1.0); };

  // Phase 1: gradient descent.
  double step = 0.1 * length_scale / std::max(res, 1e-300);
  for (int it = 0; it < opts.max_descent_iters && res > opts.switch_residual && res > tolerance(); ++it) {
    std::vector<double> dir(q);
    for (std::size_t k = 0; k < q; ++k) dir[k] = -grad[k];
    const double t = std::min(step, max_step_fraction(sys, x, std::vector<double>(dir.begin(), dir.end())) * 0.5);
    if (t <= 0.0) break;
    Configuration trial = moved(x, dir, t);
    double a_trial = 0.0;
    try {
      a_trial = action(sys, trial);
    } catch (const GapViolation&) {
      step *= 0.5;
      continue;
    }
    if (a_trial < a) {
      x = std::move(trial);
      a = a_trial;
      terms = pair_terms(sys, x);
      grad = masked_gradient(gradient_from_terms(terms));
      res = sup_norm(grad);
      step = t * 1.25;
    } else {
      step = t * 0.5;
      if (step * res < 1e-16 * length_scale) break;
    }
  }

  // Phase 2: Levenberg-damped Newton.
  CyclicTridiagonal hess = hessian_from_terms(terms);
  double scale = 0.0;
  for (double d : hess.diag) scale = std::max(scale, std::abs(d));
  scale = std::max(scale, 1e-300);
  const double mu_floor = 1e-14 * scale;
  double mu = 1e-6 * scale;
  for (int it = 0; it < opts.max_newton_iters && res > tolerance(); ++it) {
    CyclicTridiagonal damped = hessian_from_terms(terms);
    for (double& d : damped.diag) d += mu;
    if (pin_first) {
      damped.diag[0] = 1.0;
      if (q == 2) {
        damped.off[0] = 0.0;
      } else if (q > 2) {
        damped.off[0] = 0.0;
        damped.corner = 0.0;
      }
    }
    std::vector<double> rhs(q);
    for (std::size_t k = 0; k < q; ++k) rhs[k] = -grad[k];
    auto delta = solve_cyclic(damped, rhs);
    double slope = 0.0;
    if (delta) {
      for (std::size_t k = 0; k < q; ++k) slope += (*delta)[k] * grad[k];
    }
    if (!delta || !(slope < 0.0)) {
      mu *= 10.0;
      if (mu > 1e12 * scale) break;
      continue;
    }
    if (pin_first) (*delta)[0] = 0.0;
    const double t = std::min(1.0, 0.9 * max_step_fraction(sys, x, *delta));
    if (t <= 0.0) {
      mu *= 10.0;
      if (mu > 1e12 * scale) break;
      continue;
    }
    Configuration trial = moved(x, *delta, t);
    double a_trial = 0.0;
    std::vector<PairTerms> trial_terms;
    try {
      a_trial = action(sys, trial);
      trial_terms = pair_terms(sys, trial);
    } catch (const GapViolation&) {
      mu *= 10.0;
      continue;
    }
    const std::vector<double> trial_grad = masked_gradient(gradient_from_terms(trial_terms));
    const double trial_res = sup_norm(trial_grad);
    const double noise = 1e-13 * (std::abs(a) + 1.0);
    if (a_trial < a - noise || (a_trial <= a + noise && trial_res < res)) {
      x = std::move(trial);
      a = a_trial;
      terms = std::move(trial_terms);
      grad = trial_grad;
      res = trial_res;
      mu = std::max(mu * 0.1, mu_floor);
    } else {
      mu *= 10.0;
      if (mu > 1e12 * scale) break;
    }
  }

  // Polish: a few undamped Newton steps past the tolerance, kept while the
  // residual keeps falling. Orbits fed to forward maps need the extra digits.
  for (int it = 0; it < 3 && res <= tolerance() && res > 0.0; ++it) {
    CyclicTridiagonal h = hessian_from_terms(terms);
    for (double& d : h.diag) d += mu_floor;
    if (pin_first) {
      h.diag[0] = 1.0;
      if (!h.off.empty()) h.off[0] = 0.0;
      h.corner = 0.0;
    }
    std::vector<double> rhs(q);
    for (std::size_t k = 0; k < q; ++k) rhs[k] = -grad[k];
    auto delta = solve_cyclic(h, rhs);
    if (!delta) break;
    if (pin_first) (*delta)[0] = 0.0;
    Configuration trial = moved(x, *delta, 1.0);
    if (!admissible(sys, trial)) break;
    const std::vector<PairTerms> trial_terms = pair_terms(sys, trial);
    const std::vector<double> trial_grad = masked_gradient(gradient_from_terms(trial_terms));
    const double trial_res = sup_norm(trial_grad);
    const double a_trial = action(sys, trial);
    if (!(trial_res < res) || a_trial > a + 1e-13 * (std::abs(a) + 1.0)) break;
    x = std::move(trial);
    a = a_trial;
    terms = trial_terms;
    grad = trial_grad;
    res = trial_res;
  }

  Candidate c;
  c.action = a;
  c.residual = sup_norm(gradient_from_terms(terms));
  c.converged = res <= tolerance();
  c.collapsed = std::isfinite(sys.min_gap) && min_gap_of(x) - sys.min_gap < 2.0 * gap_floor(sys);
  // Normalise so that x_0 lies in [0, period).
  const double shift = std::floor(x.points[0] / sys.period) * sys.period;
  if (!pin_first && shift != 0.0) {
    for (double& v : x.points) v -= shift;
  }
  c.config = std::move(x);
  return c;
}

double jitter_amplitude(const TwistSystem& sys, std::int64_t p, std::int64_t q, double jitter) {
  const double gap = static_cast<double>(p) * sys.period / static_cast<double>(q);
  double base = sys.period / static_cast<double>(q);
  if (std::isfinite(sys.min_gap)) base = std::min(base, gap - sys.min_gap);
  if (std::isfinite(sys.max_gap)) base = std::min(base, sys.max_gap - gap);
  return 0.5 * jitter * base;
}

void check_rotation(const TwistSystem& sys, std::int64_t p, std::int64_t q) {
  if (q < 1) throw std::invalid_argument("period q must be positive");
  const double gap = static_cast<double>(p) * sys.period / static_cast<double>(q);
  if (!gap_ok(sys, gap)) throw std::invalid_argument("rotation number outside the twist interval");
}

bool better(const Candidate& a, std::size_t ia, const Candidate& b, std::size_t ib) {
  if (a.converged != b.converged) return a.converged;
  return std::tie(a.action, a.residual, ia) < std::tie(b.action, b.residual, ib);
}

Candidate run_start(const TwistSystem& sys, Configuration start, const MinimizeOptions& opts, bool pin_first,
                    std::uint64_t seed) {
  Candidate c = descend(sys, start, opts, pin_first);
  if (c.collapsed && !pin_first) {
    // Restart once from a perturbed equispaced configuration.
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const std::int64_t q = static_cast<std::int64_t>(start.size());
    const double amp = jitter_amplitude(sys, start.winding, q, 0.1);
    std::uniform_real_distribution<double> u(-amp, amp);
    Configuration again = equispaced(sys, start.winding, q, start.points[0]);
    for (double& v : again.points) v += u(rng);
    Candidate retry = descend(sys, again, opts, false);
    if (better(retry, 0, c, 1)) c = std::move(retry);
  }
  return c;
}

BetaResult to_result(const Candidate& c, std::int64_t q, int tried) {
  BetaResult r;
  r.beta = c.action / static_cast<double>(q);
  r.config = c.config;
  r.grad_residual = c.residual;
  r.converged = c.converged;
  r.starts_tried = tried;
  return r;
}

}  // namespace

BetaResult minimize_periodic(const TwistSystem& sys, std::int64_t p, std::int64_t q, const MinimizeOptions& opts) {
  const Rational r = make_rational(p, q);
  check_rotation(sys, r.p, r.q);
  const int starts = std::max(1, opts.starts);
  const std::size_t total = 2 * static_cast<std::size_t>(starts);
  const double amp = jitter_amplitude(sys, r.p, r.q, opts.jitter);
  std::vector<Configuration> inits(total);
  for (int j = 0; j < starts; ++j) {
    const double phase = static_cast<double>(j) * sys.period / (static_cast<double>(r.q) * starts);
    inits[2 * j] = equispaced(sys, r.p, r.q, phase);
    std::mt19937_64 rng(opts.seed * 1000003ULL + static_cast<std::uint64_t>(j));
    std::uniform_real_distribution<double> u(-amp, amp);
    inits[2 * j + 1] = inits[2 * j];
    for (double& v : inits[2 * j + 1].points) v += u(rng);
  }
  std::vector<Candidate> results(total);
  auto body = [&](std::size_t i) { results[i] = run_start(sys, inits[i], opts, false, opts.seed + i); };
  if (opts.parallel) {
    parallel_for(total, body);
  } else {
    for (std::size_t i = 0; i < total; ++i) body(i);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i) {
    if (better(results[i], i, results[best], best)) best = i;
  }
  return to_result(results[best], r.q, static_cast<int>(total));
}

double beta_rational(const TwistSystem& sys, std::int64_t p, std::int64_t q, const MinimizeOptions& opts) {
  return minimize_periodic(sys, p, q, opts).beta;
}

BetaResult minimize_pinned(const TwistSystem& sys, std::int64_t p, std::int64_t q, double x0,
                           const MinimizeOptions& opts) {
  const Rational r = make_rational(p, q);
  check_rotation(sys, r.p, r.q);
  const Candidate c = run_start(sys, equispaced(sys, r.p, r.q, x0), opts, true, opts.seed);
  return to_result(c, r.q, 1);
}

IrrationalBeta beta_irrational(const TwistSystem& sys, double omega, double tol, const MinimizeOptions& opts) {
  IrrationalBeta out;
  const std::vector<Rational> all = convergents(std::abs(omega), opts.q_max);
  if (omega < 0.0) throw std::invalid_argument("negative rotation numbers are not supported");
  if (!all.empty() && std::abs(all.back().value() - omega) <= 1e-15 * std::max(1.0, omega)) {
    // Exactly rational input.
    const Rational r = all.back();
    const BetaResult res = minimize_periodic(sys, r.p, r.q, opts);
    out.value = out.lower = out.upper = res.beta;
    out.converged = res.converged;
    out.used = {r};
    out.values = {res.beta};
    return out;
  }
  if (!gap_ok(sys, omega * sys.period)) throw std::invalid_argument("rotation number outside the twist interval");
  for (const Rational& c : all) {
    if (!gap_ok(sys, c.value() * sys.period)) continue;
    const BetaResult res = minimize_periodic(sys, c.p, c.q, opts);
    out.used.push_back(c);
    out.values.push_back(res.beta);
    const std::size_t m = out.used.size();
    auto x = [&](std::size_t i) { return out.used[i].value(); };
    auto y = [&](std::size_t i) { return out.values[i]; };
    if (m >= 2) {
      const std::size_t i = m - 2, j = m - 1;
      if ((x(i) - omega) * (x(j) - omega) < 0.0) {
        const double secant = y(i) + (y(j) - y(i)) * (omega - x(i)) / (x(j) - x(i));
        out.upper = std::min(out.upper, secant);
      }
    }
    if (m >= 3) {
      const std::size_t i = m - 3, j = m - 1;
      if ((x(i) - omega) * (x(j) - omega) > 0.0) {
        const double ext = y(j) + (y(j) - y(i)) * (omega - x(j)) / (x(j) - x(i));
        out.lower = std::max(out.lower, ext);
      }
    }
    if (out.upper - out.lower < tol) {
      out.converged = true;
      break;
    }
  }
  if (std::isfinite(out.lower) && std::isfinite(out.upper)) {
    out.value = 0.5 * (out.lower + out.upper);
  } else if (!out.values.empty()) {
    out.value = out.values.back();
  }
  return out;
}

double equispaced_average_action(const TwistSystem& sys, const RotationNumber& omega, double x0) {
  if (omega.is_rational()) {
    const Rational& r = omega.as_rational();
    check_rotation(sys, r.p, r.q);
    return action(sys, equispaced(sys, r.p, r.q, x0)) / static_cast<double>(r.q);
  }
  const double shift = omega.value() * sys.period;
  if (!gap_ok(sys, shift)) throw std::invalid_argument("rotation number outside the twist interval");
  constexpr int kNodes = 4096;
  double sum = 0.0;
  for (int j = 0; j < kNodes; ++j) {
    const double t = sys.period * j / kNodes;
    sum += sys.value(t, t + shift);
  }
  return sum / kNodes;
}

// ---------------------------------------------------------------------------
// Toy model

ConvexKinetic ConvexKinetic::quadratic() {
  return {[](double v) { return 0.5 * v * v; }, [](double v) { return v; }, [](double) { return 1.0; }};
}

double TrigPotential::value(double x) const {
  double v = constant;
  for (std::size_t m = 0; m < cos_coef.size(); ++m) v += cos_coef[m] * std::cos(kTwoPi * (m + 1) * x);
  for (std::size_t m = 0; m < sin_coef.size(); ++m) v += sin_coef[m] * std::sin(kTwoPi * (m + 1) * x);
  return v;
}

double TrigPotential::d1(double x) const {
  double v = 0.0;
  for (std::size_t m = 0; m < cos_coef.size(); ++m) {
    const double w = kTwoPi * (m + 1);
    v -= cos_coef[m] * w * std::sin(w * x);
  }
  for (std::size_t m = 0; m < sin_coef.size(); ++m) {
    const double w = kTwoPi * (m + 1);
    v += sin_coef[m] * w * std::cos(w * x);
  }
  return v;
}

double TrigPotential::d2(double x) const {
  double v = 0.0;
  for (std::size_t m = 0; m < cos_coef.size(); ++m) {
    const double w = kTwoPi * (m + 1);
    v -= cos_coef[m] * w * w * std::cos(w * x);
  }
  for (std::size_t m = 0; m < sin_coef.size(); ++m) {
    const double w = kTwoPi * (m + 1);
    v -= sin_coef[m] * w * w * std::sin(w * x);
  }
  return v;
}

bool TrigPotential::is_zero() const {
  auto zero = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; });
  };
  return zero(cos_coef) && zero(sin_coef);
}

TwistSystem make_toy_system(ConvexKinetic kinetic, TrigPotential potential) {
  potential.constant = 0.0;
  TwistSystem sys;
  sys.name = "toy";
  sys.period = 1.0;
  sys.min_gap = -std::numeric_limits<double>::infinity();
  sys.max_gap = std::numeric_limits<double>::infinity();
  sys.value = [kinetic, potential](double x0, double x1) { return kinetic.l(x1 - x0) + potential.value(x0); };
  sys.terms = [kinetic, potential](double x0, double x1) {
    const double d = x1 - x0;
    PairTerms t;
    t.s = kinetic.l(d) + potential.value(x0);
    t.s1 = -kinetic.dl(d) + potential.d1(x0);
    t.s2 = kinetic.dl(d);
    t.s11 = kinetic.ddl(d) + potential.d2(x0);
    t.s12 = -kinetic.ddl(d);
    t.s22 = kinetic.ddl(d);
    return t;
  };
  return sys;
}

}  // namespace billiards
