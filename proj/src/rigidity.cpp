#include "billiards/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "billiards/parallel.hpp"
#include "billiards/roots.hpp"

namespace billiards {

namespace {

struct TheoremName {
  Theorem tag;
  const char* name;
};

constexpr TheoremName kTheoremNames[] = {
    {Theorem::T4_2, "T4.2"},     {Theorem::T4_3, "T4.3"},   {Theorem::T4_4, "T4.4"},
    {Theorem::C6_3, "C6.3"},     {Theorem::P6_9, "P6.9"},   {Theorem::CE6_5, "CE6.5"},
    {Theorem::T6_4, "T6.4"},     {Theorem::T6_10, "T6.10"}, {Theorem::Gutkin, "gutkin"},
    {Theorem::ConstWidth, "constwidth"}, {Theorem::Radon, "radon"},
};

constexpr double kSpreadTol = 1e-8;
constexpr double kIdentityTol = 1e-9;

double checked_beta(const TwistSystem& sys, std::int64_t p, std::int64_t q, const VerifyOptions& opts,
                    InequalityReport& report, Configuration* config = nullptr) {
  const BetaResult r = minimize_periodic(sys, p, q, opts.minimize);
  if (!r.converged) {
    report.valid = false;
    report.note = "minimisation did not converge";
  }
  if (config) *config = r.config;
  return r.beta;
}

std::string rational_str(std::int64_t p, std::int64_t q) { return RotationNumber::rational(p, q).str(); }

}  // namespace

std::string to_string(Theorem t) {
  for (const auto& entry : kTheoremNames) {
    if (entry.tag == t) return entry.name;
  }
  return "?";
}

Theorem parse_theorem(const std::string& name) {
  for (const auto& entry : kTheoremNames) {
    if (name == entry.name) return entry.tag;
  }
  if (name == "constant_width") return Theorem::ConstWidth;
  throw std::invalid_argument("unknown theorem '" + name + "'");
}

double InequalityReport::extra(const std::string& key) const {
  for (const auto& [k, v] : extras) {
    if (k == key) return v;
  }
  return std::numeric_limits<double>::quiet_NaN();
}

void finalize(InequalityReport& report, const Tolerances& tol) {
  report.holds = report.gap >= -tol.num_tol;
  report.equality = std::abs(report.gap) < tol.eq_tol;
}

std::string to_json_line(const InequalityReport& report) {
  nlohmann::ordered_json j;
  j["theorem"] = report.theorem;
  j["rho"] = report.rho;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["gap"] = report.gap;
  j["holds"] = report.holds;
  j["equality"] = report.equality;
  j["valid"] = report.valid;
  j["note"] = report.note;
  nlohmann::ordered_json extras = nlohmann::ordered_json::object();
  for (const auto& [k, v] : report.extras) extras[k] = v;
  j["extras"] = extras;
  return j.dump();
}

std::string csv_header() { return "domain,theorem,rho,lhs,rhs,gap,holds,equality"; }

namespace {

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string to_csv_row(const std::string& domain_id, const InequalityReport& report) {
  return fmt::format("{},{},{},{:.17g},{:.17g},{:.17g},{},{}", csv_field(domain_id), report.theorem, report.rho, report.lhs,
                     report.rhs, report.gap, report.holds ? "true" : "false", report.equality ? "true" : "false");
}

double model_beta(const SupportDomain& dom, ModelTag tag, const RotationNumber& rho, const VerifyOptions& opts,
                  bool& converged) {
  const TwistSystem sys = make_system(dom, tag);
  if (rho.is_rational()) {
    const Rational& r = rho.as_rational();
    const BetaResult res = minimize_periodic(sys, r.p, r.q, opts.minimize);
    converged = res.converged;
    return res.beta;
  }
  const IrrationalBeta res = beta_irrational(sys, rho.value(), std::min(rho.tol(), opts.irrational_tol), opts.minimize);
  converged = res.converged;
  return res.value;
}

InequalityReport verify_main_inequality(const SupportDomain& dom, Theorem theorem, const RotationNumber& rho,
                                        const VerifyOptions& opts) {
  ModelTag tag{};
  double scale = 0.0;
  switch (theorem) {
    case Theorem::T4_2:
      tag = ModelTag::birkhoff;
      scale = perimeter(dom) / kTwoPi;
      break;
    case Theorem::T4_3:
      tag = ModelTag::symplectic;
      scale = area(dom) / kPi;
      break;
    case Theorem::T4_4:
      tag = ModelTag::fourth;
      scale = perimeter(dom) / kTwoPi;
      break;
    default:
      throw std::invalid_argument("not a main inequality: " + to_string(theorem));
  }
  const double value = rho.value();
  if (!(value > 0.0 && value <= 0.5) || (theorem != Theorem::T4_2 && value >= 0.5)) {
    throw std::invalid_argument("rotation number " + rho.str() + " outside the range of " + to_string(theorem));
  }
  InequalityReport report;
  report.theorem = to_string(theorem);
  report.rho = rho.str();
  bool converged = false;
  report.lhs = model_beta(dom, tag, rho, opts, converged);
  report.rhs = scale * beta_disk(tag, value);
  report.gap = report.rhs - report.lhs;
  report.valid = converged;
  if (!converged) report.note = "minimisation did not converge";
  report.extras = {{"nontrivial_energy", nontrivial_energy(dom)}, {"ellipse_defect", ellipse_defect(dom)}};
  finalize(report, opts.tol);
  return report;
}

// ---------------------------------------------------------------------------
// Gutkin roots

std::vector<long double> gutkin_polynomial(int n) {
  if (n < 2) throw std::invalid_argument("gutkin polynomial needs n >= 2");
  std::vector<long double> p{0.0L, 1.0L};  // P_1 = t
  std::vector<long double> q{1.0L};        // Q_1 = 1
  for (int k = 1; k < n; ++k) {
    std::vector<long double> p_next(std::max(p.size(), q.size() + 1), 0.0L);
    std::vector<long double> q_next(std::max(q.size(), p.size() + 1), 0.0L);
    for (std::size_t i = 0; i < p.size(); ++i) {
      p_next[i] += p[i];
      q_next[i + 1] -= p[i];
    }
    for (std::size_t i = 0; i < q.size(); ++i) {
      q_next[i] += q[i];
      p_next[i + 1] += q[i];
    }
    p = std::move(p_next);
    q = std::move(q_next);
  }
  std::vector<long double> r(std::max(p.size(), q.size() + 1), 0.0L);
  for (std::size_t i = 0; i < p.size(); ++i) r[i] += p[i];
  for (std::size_t i = 0; i < q.size(); ++i) r[i + 1] -= static_cast<long double>(n) * q[i];
  // The t, t^2 coefficients cancel identically, and the constant term is 0.
  std::vector<long double> reduced(r.begin() + 3, r.end());
  while (!reduced.empty() && reduced.back() == 0.0L) reduced.pop_back();
  return reduced;
}

double gutkin_defect(int n, double delta) {
  const long double x = static_cast<long double>(kPi) * delta;
  const long double nl = static_cast<long double>(n);
  return static_cast<double>(std::abs(std::sin(nl * x) * std::cos(x) - nl * std::cos(nl * x) * std::sin(x)));
}

GutkinRootSet gutkin_roots(int n) {
  if (n < 2 || n > 64) throw std::invalid_argument("gutkin_roots needs 2 <= n <= 64");
  GutkinRootSet set;
  set.n = n;
  const std::vector<long double> poly = gutkin_polynomial(n);
  auto poly_rel = [&](double delta) {
    const long double t = std::tan(static_cast<long double>(kPi) * delta);
    long double value = 0.0L, scale = 0.0L, power = 1.0L;
    for (long double c : poly) {
      value += c * power;
      scale += std::abs(c) * power;
      power *= t;
    }
    return scale > 0.0L ? static_cast<double>(std::abs(value) / scale) : 0.0;
  };
  // n cos(n pi d) sin(pi d) - sin(n pi d) cos(pi d): same zeros on (0, 1/2)
  // as the reduced polynomial, without poles.
  const double nd = static_cast<double>(n);
  auto k = [&](double delta) {
    return nd * std::cos(nd * kPi * delta) * std::sin(kPi * delta) - std::sin(nd * kPi * delta) * std::cos(kPi * delta);
  };
  const int samples = 64 * n;
  double prev_x = 0.5 / samples;
  double prev_k = k(prev_x);
  for (int i = 2; i < samples; ++i) {
    const double x = 0.5 * i / samples;
    const double kx = k(x);
    if ((prev_k < 0.0) != (kx < 0.0)) {
      auto root = bisect(k, prev_x, x, 1e-16);
      if (root && poly_rel(*root) < 1e-9) set.roots.push_back(*root);
    }
    prev_x = x;
    prev_k = kx;
  }
  return set;
}

bool in_R(double rho, int n_max, double tol) {
  for (int n = 2; n <= n_max; ++n) {
    for (double root : gutkin_roots(n).roots) {
      if (std::abs(rho - root) <= tol) return false;
    }
  }
  return true;
}

InequalityReport gutkin_equality_check(int n, double eps, const VerifyOptions& opts) {
  const GutkinRootSet set = gutkin_roots(n);
  if (set.roots.empty()) throw std::invalid_argument(fmt::format("no Gutkin root for n = {}", n));
  const double delta = set.roots.front();
  const SupportDomain dom = named::gutkin(n, eps);
  const TwistSystem sys = make_system(dom, ModelTag::birkhoff);

  double residual = 0.0;
  const double step = kTwoPi * delta;
  for (int j = 0; j < 64; ++j) {
    const double phi = kTwoPi * j / 64.0;
    const double g = sys.terms(phi, phi + step).s1 + sys.terms(phi - step, phi).s2;
    residual = std::max(residual, std::abs(g));
  }

  constexpr double kBetaTol = 1e-6;
  const IrrationalBeta beta = beta_irrational(sys, delta, kBetaTol, opts.minimize);
  InequalityReport report;
  report.theorem = "gutkin";
  report.rho = fmt::format("{:.12g}", delta);
  report.lhs = beta.value;
  report.rhs = perimeter(dom) / kTwoPi * beta_disk(ModelTag::birkhoff, delta);
  report.gap = report.rhs - report.lhs;
  report.valid = beta.converged && residual < 1e-9;
  if (!beta.converged) report.note = "bracket did not close";
  if (residual >= 1e-9) report.note = "equispaced configuration is not critical";
  report.extras = {{"n", static_cast<double>(n)},
                   {"eps", eps},
                   {"criticality_residual", residual},
                   {"bracket_lower", beta.lower},
                   {"bracket_upper", beta.upper},
                   {"max_q", beta.used.empty() ? 0.0 : static_cast<double>(beta.used.back().q)}};
  Tolerances tol = opts.tol;
  tol.eq_tol = 3.0 * kBetaTol;
  finalize(report, tol);
  return report;
}

// ---------------------------------------------------------------------------
// Constant width and outer relations

InequalityReport constant_width_equality(const SupportDomain& dom, const VerifyOptions& opts) {
  double width_defect = 0.0;
  const int grid = dom.grid_size();
  for (int j = 0; j < grid; ++j) {
    const double phi = kTwoPi * j / grid;
    width_defect = std::max(width_defect, std::abs(dom.eval(phi, 0) + dom.eval(phi + kPi, 0) - 2.0 * dom.a0()));
  }
  InequalityReport report;
  report.theorem = "constwidth";
  report.rho = "1/2";
  report.lhs = checked_beta(make_system(dom, ModelTag::birkhoff), 1, 2, opts, report);
  report.rhs = -perimeter(dom) / kPi;
  report.gap = report.rhs - report.lhs;
  const bool constant_width = width_defect < 1e-10;
  if (!constant_width && report.note.empty()) report.note = "precondition failed: not of constant width";
  report.extras = {{"width_defect", width_defect}, {"constant_width", constant_width ? 1.0 : 0.0}};
  finalize(report, opts.tol);
  return report;
}

double triangle_midpoint_property(const SupportDomain& dom, const Configuration& cfg) {
  if (cfg.size() != 3) throw std::invalid_argument("triangle property needs a 3-periodic configuration");
  const double outer = std::abs(outer_polygon(dom, cfg).area);
  const double inner = std::abs(polygon_area(inscribed_polygon(dom, cfg)));
  return std::abs(outer - 4.0 * inner);
}

double quadrilateral_midpoint_property(const SupportDomain& dom, const Configuration& cfg) {
  if (cfg.size() != 4) throw std::invalid_argument("quadrilateral property needs a 4-periodic configuration");
  const double outer = std::abs(outer_polygon(dom, cfg).area);
  const double inner = std::abs(polygon_area(inscribed_polygon(dom, cfg)));
  return std::abs(outer - 2.0 * inner);
}

namespace {

InequalityReport outer_relation(const SupportDomain& dom, int q, double weight, const char* name,
                                const VerifyOptions& opts) {
  InequalityReport report;
  report.theorem = name;
  report.rho = rational_str(1, q);
  Configuration orbit;
  const double b_out = checked_beta(make_system(dom, ModelTag::outer), 1, q, opts, report, &orbit);
  const double b_sym = checked_beta(make_system(dom, ModelTag::symplectic), 1, q, opts, report);
  report.lhs = b_out + weight * b_sym;
  report.rhs = 0.0;
  report.gap = report.rhs - report.lhs;
  const double defect =
      q == 3 ? triangle_midpoint_property(dom, orbit) : quadrilateral_midpoint_property(dom, orbit);
  report.extras = {{"beta_out", b_out},
                   {"beta_symp", b_sym},
                   {"area_identity_defect", defect},
                   {"area_identity_ok", defect < kIdentityTol ? 1.0 : 0.0}};
  if (defect >= kIdentityTol && report.note.empty()) report.note = "area identity defect above 1e-9";
  finalize(report, opts.tol);
  return report;
}

}  // namespace

InequalityReport outer_third_relation(const SupportDomain& dom, const VerifyOptions& opts) {
  return outer_relation(dom, 3, 4.0, "C6.3", opts);
}

InequalityReport outer_quarter_relation(const SupportDomain& dom, const VerifyOptions& opts) {
  return outer_relation(dom, 4, 2.0, "P6.9", opts);
}

InequalityReport outer_counterexample(const SupportDomain& dom, int q, const VerifyOptions& opts) {
  if (q != 3 && q != 4) throw std::invalid_argument("counterexample check supports rotation numbers 1/3 and 1/4");
  InequalityReport report;
  report.theorem = "CE6.5";
  report.rho = rational_str(1, q);
  report.lhs = checked_beta(make_system(dom, ModelTag::outer), 1, q, opts, report);
  report.rhs = area(dom) / kPi * beta_disk(ModelTag::outer, 1.0 / q);
  report.gap = report.rhs - report.lhs;
  finalize(report, opts.tol);
  if (report.note.empty()) {
    if (report.gap > opts.tol.eq_tol) {
      report.note = "counterexample direction: beta_out below area/pi * disk value";
    } else if (report.gap < -opts.tol.eq_tol) {
      report.note = "reversed direction: beta_out above area/pi * disk value";
    } else {
      report.note = "equality";
    }
  }
  return report;
}

double invariant_curve_spread(const SupportDomain& dom, ModelTag tag, int q, int phases, const VerifyOptions& opts) {
  const TwistSystem sys = make_system(dom, tag);
  std::vector<double> values(static_cast<std::size_t>(phases));
  std::vector<char> ok(static_cast<std::size_t>(phases));
  parallel_for(values.size(), [&](std::size_t j) {
    const double x0 = kTwoPi / q * static_cast<double>(j) / phases;
    const BetaResult r = minimize_pinned(sys, 1, q, x0, opts.minimize);
    values[j] = r.beta;
    ok[j] = r.converged;
  });
  if (std::find(ok.begin(), ok.end(), 0) != ok.end()) return std::numeric_limits<double>::infinity();
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  return *hi - *lo;
}

namespace {

InequalityReport outer_rigidity(const SupportDomain& dom, int q, const char* name, bool hypothesis,
                                std::vector<std::pair<std::string, double>> extras, const std::string& missing,
                                const VerifyOptions& opts) {
  InequalityReport report;
  report.theorem = name;
  report.rho = rational_str(1, q);
  report.lhs = checked_beta(make_system(dom, ModelTag::outer), 1, q, opts, report);
  report.rhs = area(dom) / kPi * beta_disk(ModelTag::outer, 1.0 / q);
  report.gap = report.lhs - report.rhs;
  extras.emplace_back("hypothesis", hypothesis ? 1.0 : 0.0);
  extras.emplace_back("ellipse_defect", ellipse_defect(dom));
  report.extras = std::move(extras);
  finalize(report, opts.tol);
  if (!hypothesis) {
    // The theorem says nothing without its hypothesis.
    report.holds = true;
    report.equality = false;
    if (report.note.empty()) report.note = "hypothesis not certified: " + missing;
  }
  return report;
}

}  // namespace

InequalityReport outer_third_rigidity(const SupportDomain& dom, const VerifyOptions& opts) {
  const double spread = invariant_curve_spread(dom, ModelTag::outer, 3, 16, opts);
  return outer_rigidity(dom, 3, "T6.4", spread < kSpreadTol, {{"outer_spread", spread}},
                        "no invariant curve of 3-periodic outer orbits", opts);
}

InequalityReport outer_quarter_rigidity(const SupportDomain& dom, const VerifyOptions& opts) {
  const double outer_spread = invariant_curve_spread(dom, ModelTag::outer, 4, 16, opts);
  const double symp_spread = invariant_curve_spread(dom, ModelTag::symplectic, 4, 16, opts);
  return outer_rigidity(dom, 4, "T6.10", outer_spread < kSpreadTol && symp_spread < kSpreadTol,
                        {{"outer_spread", outer_spread}, {"symp_spread", symp_spread}},
                        "no invariant curves of 4-periodic outer and symplectic orbits", opts);
}

InequalityReport radon_relation(const SupportDomain& dom, const VerifyOptions& opts) {
  const RadonReport radon = radon_check(dom, 1e-8);
  return outer_rigidity(dom, 4, "radon", radon.is_radon,
                        {{"centrally_symmetric", radon.is_centrally_symmetric ? 1.0 : 0.0},
                         {"radon_defect", radon.max_defect}},
                        "not a centrally symmetric Radon curve", opts);
}

// ---------------------------------------------------------------------------
// Random domains and batch runs

SupportDomain random_domain(std::mt19937_64& rng) {
  for (;;) {
    std::vector<FourierMode> modes(8);
    for (int n = 2; n <= 8; ++n) {
      const double bound = 0.5 / (n * n * n);
      std::uniform_real_distribution<double> u(-bound, bound);
      modes[static_cast<std::size_t>(n - 1)].cos_coef = u(rng);
      modes[static_cast<std::size_t>(n - 1)].sin_coef = u(rng);
    }
    try {
      return SupportDomain(1.0, std::move(modes));
    } catch (const DomainError&) {
      // rejected: not strictly convex
    }
  }
}

std::vector<SupportDomain> random_domains(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<SupportDomain> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_domain(rng));
  return out;
}

std::vector<SuiteEntry> run_inequality_suite(const std::vector<SupportDomain>& domains,
                                             const std::vector<Theorem>& theorems,
                                             const std::vector<Rational>& rhos, const VerifyOptions& opts) {
  struct Task {
    std::size_t domain;
    Theorem theorem;
    Rational rho;
  };
  std::vector<Task> tasks;
  for (std::size_t d = 0; d < domains.size(); ++d) {
    for (Theorem t : theorems) {
      for (const Rational& r : rhos) {
        if (t != Theorem::T4_2 && r.p * 2 == r.q) continue;
        tasks.push_back({d, t, r});
      }
    }
  }
  std::vector<SuiteEntry> out(tasks.size());
  VerifyOptions inner = opts;
  inner.minimize.parallel = false;
  parallel_for(tasks.size(), [&](std::size_t i) {
    const Task& task = tasks[i];
    out[i].domain_index = task.domain;
    out[i].report = verify_main_inequality(domains[task.domain], task.theorem,
                                           RotationNumber::rational(task.rho.p, task.rho.q), inner);
  });
  return out;
}

}  // namespace billiards
