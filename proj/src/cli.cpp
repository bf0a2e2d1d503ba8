#include "billiards/cli.hpp"

#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "billiards/geometry.hpp"
#include "billiards/models.hpp"
#include "billiards/parallel.hpp"
#include "billiards/rigidity.hpp"
#include "billiards/rotation.hpp"
#include "billiards/svg.hpp"
#include "billiards/twist.hpp"

namespace billiards::cli {

namespace {

struct Settings {
  std::string domain = "disk:1";
  std::string domain_file;
  std::vector<std::string> models;
  std::vector<std::string> rots;
  std::string theorem;
  std::string format = "table";
  std::string out_path;
  std::string orbit_csv;
  std::string svg_path;
  std::uint64_t seed = 0;
  int starts = 8;
  int max_den = 10;
  double eq_tol = 1e-6;
  double num_tol = 1e-8;
  std::vector<std::string> vcos;
  std::vector<std::string> vsin;
  double kappa = 0.0;
  bool domain_given = false;
};

// Errors that map to the usage exit code.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SupportDomain load_domain(const Settings& s) {
  if (!s.domain_file.empty()) return domain_from_json(read_file(s.domain_file));
  return make_named(s.domain);
}

std::string domain_label(const Settings& s) { return s.domain_file.empty() ? s.domain : s.domain_file; }

std::vector<ModelTag> parse_models(const std::vector<std::string>& names, std::vector<ModelTag> fallback) {
  if (names.empty()) return fallback;
  std::vector<ModelTag> out;
  for (const auto& n : names) out.push_back(parse_model(n));
  return out;
}

std::vector<RotationNumber> parse_rots(const std::vector<std::string>& texts, const std::string& fallback) {
  std::vector<RotationNumber> out;
  if (texts.empty()) {
    out.push_back(RotationNumber::parse(fallback));
    return out;
  }
  for (const auto& t : texts) out.push_back(RotationNumber::parse(t));
  return out;
}

VerifyOptions verify_options(const Settings& s) {
  VerifyOptions v;
  v.minimize.seed = s.seed;
  v.minimize.starts = s.starts;
  v.tol.eq_tol = s.eq_tol;
  v.tol.num_tol = s.num_tol;
  return v;
}

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  throw UsageError("unsupported --format '" + format + "' for this command");
}

std::string num(double v) { return fmt::format("{:.17g}", v); }

// Scale of the disk comparison value: perimeter/2pi or area/pi.
double disk_scale(const SupportDomain& dom, ModelTag tag) {
  return (tag == ModelTag::birkhoff || tag == ModelTag::fourth) ? perimeter(dom) / kTwoPi : area(dom) / kPi;
}

// ---------------------------------------------------------------------------

int cmd_domain(const Settings& s, std::ostream& out) {
  check_format(s.format, {"table", "json"});
  const SupportDomain dom = load_domain(s);
  if (s.format == "json") {
    nlohmann::ordered_json j;
    j["domain"] = nlohmann::json::parse(domain_to_json(dom));
    j["perimeter"] = perimeter(dom);
    j["area"] = area(dom);
    j["min_support"] = dom.min_support();
    j["min_curvature_radius"] = dom.min_curvature_radius();
    out << j.dump() << "\n";
    return kAllHold;
  }
  out << fmt::format("{:<22}{}\n", "domain", domain_label(s));
  out << fmt::format("{:<22}{}\n", "modes", dom.max_mode());
  out << fmt::format("{:<22}{:.12f}\n", "a0", dom.a0());
  out << fmt::format("{:<22}{:.12f}\n", "perimeter", perimeter(dom));
  out << fmt::format("{:<22}{:.12f}\n", "area", area(dom));
  out << fmt::format("{:<22}{:.12f}\n", "min support", dom.min_support());
  out << fmt::format("{:<22}{:.12f}\n", "min curvature radius", dom.min_curvature_radius());
  out << fmt::format("{:<22}{:.3e}\n", "nontrivial energy", nontrivial_energy(dom));
  out << fmt::format("{:<22}{:.3e}\n", "ellipse defect", ellipse_defect(dom));
  return kAllHold;
}

struct BetaRow {
  ModelTag model;
  RotationNumber rho;
  double beta = 0.0;
  double residual = 0.0;  // gradient residual, or bracket width for decimals
  bool converged = false;
  BetaResult periodic;
  IrrationalBeta irrational;
};

int cmd_beta(const Settings& s, std::ostream& out) {
  check_format(s.format, {"table", "json", "csv"});
  const SupportDomain dom = load_domain(s);
  const auto models = parse_models(s.models, {ModelTag::birkhoff});
  const auto rots = parse_rots(s.rots, "1/3");
  std::vector<BetaRow> rows;
  for (ModelTag m : models) {
    for (const auto& r : rots) rows.push_back(BetaRow{m, r, 0.0, 0.0, false, {}, {}});
  }
  const VerifyOptions opts = verify_options(s);
  // Validate ranges up front so errors are reported as usage errors.
  for (const auto& row : rows) {
    const double v = row.rho.value();
    const bool half_ok = row.model == ModelTag::birkhoff;
    if (!(v > 0.0) || v > 0.5 || (!half_ok && v >= 0.5)) {
      throw UsageError(fmt::format("rotation number {} out of range for {}", row.rho.str(), to_string(row.model)));
    }
  }
  MinimizeOptions inner = opts.minimize;
  inner.parallel = false;
  parallel_for(rows.size(), [&](std::size_t i) {
    BetaRow& row = rows[i];
    const TwistSystem sys = make_system(dom, row.model);
    if (row.rho.is_rational()) {
      row.periodic = minimize_periodic(sys, row.rho.as_rational().p, row.rho.as_rational().q, inner);
      row.beta = row.periodic.beta;
      row.residual = row.periodic.grad_residual;
      row.converged = row.periodic.converged;
    } else {
      row.irrational = beta_irrational(sys, row.rho.value(), row.rho.tol(), inner);
      row.beta = row.irrational.value;
      row.residual = row.irrational.upper - row.irrational.lower;
      row.converged = row.irrational.converged;
    }
  });

  if (s.format == "table") {
    out << fmt::format("{:<11} {:>14} {:>20} {:>11} {}\n", "model", "rho", "beta", "residual", "converged");
    for (const auto& row : rows) {
      out << fmt::format("{:<11} {:>14} {:>20.12f} {:>11.3e} {}\n", to_string(row.model), row.rho.str(), row.beta,
                         row.residual, row.converged ? "yes" : "no");
    }
  } else if (s.format == "csv") {
    out << "model,rho,beta,residual,converged\n";
    for (const auto& row : rows) {
      out << fmt::format("{},{},{},{},{}\n", to_string(row.model), row.rho.str(), num(row.beta), num(row.residual),
                         row.converged ? "true" : "false");
    }
  } else {
    for (const auto& row : rows) {
      nlohmann::ordered_json j;
      j["model"] = to_string(row.model);
      j["rho"] = row.rho.str();
      j["beta"] = row.beta;
      if (row.rho.is_rational()) {
        j["points"] = row.periodic.config.points;
        j["winding"] = row.periodic.config.winding;
        j["grad_residual"] = row.periodic.grad_residual;
      } else {
        j["lower"] = row.irrational.lower;
        j["upper"] = row.irrational.upper;
        std::vector<std::string> used;
        for (const auto& c : row.irrational.used) used.push_back(c.str());
        j["convergents"] = used;
      }
      j["converged"] = row.converged;
      out << j.dump() << "\n";
    }
  }

  if (!s.orbit_csv.empty()) {
    for (const auto& row : rows) {
      if (!row.rho.is_rational()) continue;
      std::ofstream f(s.orbit_csv);
      if (!f) throw UsageError("cannot write '" + s.orbit_csv + "'");
      write_orbit_csv(f, dom, row.model, row.periodic.config);
      break;
    }
  }
  for (const auto& row : rows) {
    if (!row.converged) return kNoConvergence;
  }
  return kAllHold;
}

std::pair<int, double> gutkin_params(const Settings& s) {
  if (!s.domain_given) return {4, 0.02};
  const std::string prefix = "gutkin:";
  if (s.domain.rfind(prefix, 0) != 0) throw UsageError("--theorem gutkin needs --domain gutkin:n,eps");
  const std::string rest = s.domain.substr(prefix.size());
  const auto comma = rest.find(',');
  if (comma == std::string::npos) throw UsageError("--theorem gutkin needs --domain gutkin:n,eps");
  try {
    return {std::stoi(rest.substr(0, comma)), std::stod(rest.substr(comma + 1))};
  } catch (const std::exception&) {
    throw UsageError("bad gutkin parameters '" + rest + "'");
  }
}

int cmd_verify(const Settings& s, std::ostream& out) {
  check_format(s.format, {"table", "json", "csv"});
  const Theorem theorem = parse_theorem(s.theorem);
  const VerifyOptions opts = verify_options(s);
  std::vector<InequalityReport> reports;
  if (theorem == Theorem::Gutkin) {
    const auto [n, eps] = gutkin_params(s);
    reports.push_back(gutkin_equality_check(n, eps, opts));
  } else {
    const SupportDomain dom = load_domain(s);
    switch (theorem) {
      case Theorem::T4_2:
      case Theorem::T4_3:
      case Theorem::T4_4:
        for (const auto& r : parse_rots(s.rots, "1/3")) reports.push_back(verify_main_inequality(dom, theorem, r, opts));
        break;
      case Theorem::C6_3:
        reports.push_back(outer_third_relation(dom, opts));
        break;
      case Theorem::P6_9:
        reports.push_back(outer_quarter_relation(dom, opts));
        break;
      case Theorem::CE6_5:
        for (const auto& r : parse_rots(s.rots, "1/4")) {
          if (!r.is_rational() || r.as_rational().p != 1 || (r.as_rational().q != 3 && r.as_rational().q != 4)) {
            throw UsageError("CE6.5 accepts --rot 1/3 or 1/4");
          }
          reports.push_back(outer_counterexample(dom, static_cast<int>(r.as_rational().q), opts));
        }
        break;
      case Theorem::T6_4:
        reports.push_back(outer_third_rigidity(dom, opts));
        break;
      case Theorem::T6_10:
        reports.push_back(outer_quarter_rigidity(dom, opts));
        break;
      case Theorem::Radon:
        reports.push_back(radon_relation(dom, opts));
        break;
      case Theorem::ConstWidth:
        reports.push_back(constant_width_equality(dom, opts));
        break;
      case Theorem::Gutkin:
        break;
    }
  }

  const std::string label = theorem == Theorem::Gutkin ? "gutkin" : domain_label(s);
  if (s.format == "json") {
    for (const auto& r : reports) out << to_json_line(r) << "\n";
  } else if (s.format == "csv") {
    out << csv_header() << "\n";
    for (const auto& r : reports) out << to_csv_row(label, r) << "\n";
  } else {
    out << fmt::format("{:<11} {:>14} {:>18} {:>18} {:>11} {:>6} {:>9}  {}\n", "theorem", "rho", "lhs", "rhs", "gap",
                       "holds", "equality", "note");
    for (const auto& r : reports) {
      out << fmt::format("{:<11} {:>14} {:>18.12f} {:>18.12f} {:>11.3e} {:>6} {:>9}  {}\n", r.theorem, r.rho, r.lhs,
                         r.rhs, r.gap, r.holds ? "yes" : "no", r.equality ? "yes" : "no", r.note);
    }
  }
  bool invalid = false;
  for (const auto& r : reports) {
    if (r.valid && !r.holds) return kViolation;
    invalid = invalid || !r.valid;
  }
  return invalid ? kNoConvergence : kAllHold;
}

int cmd_sweep(const Settings& s, std::ostream& out, std::ostream& err) {
  check_format(s.format, {"csv", "json", "svg", "table"});
  if (s.max_den < 2) throw UsageError("--max-den must be at least 2");
  const SupportDomain dom = load_domain(s);
  const auto models = parse_models(s.models, {kAllModels.begin(), kAllModels.end()});
  std::vector<Rational> grid;
  if (s.rots.empty()) {
    grid = farey_range({0, 1}, {1, 2}, s.max_den, false, false);
  } else {
    for (const auto& r : parse_rots(s.rots, "")) {
      if (!r.is_rational()) throw UsageError("sweep accepts rational --rot values only");
      grid.push_back(r.as_rational());
    }
  }
  struct Row {
    ModelTag model;
    Rational rho;
    BetaResult result;
  };
  std::vector<Row> rows;
  for (ModelTag m : models) {
    for (const auto& r : grid) rows.push_back({m, r, {}});
  }
  MinimizeOptions inner = verify_options(s).minimize;
  inner.parallel = false;
  parallel_for(rows.size(), [&](std::size_t i) {
    rows[i].result = minimize_periodic(make_system(dom, rows[i].model), rows[i].rho.p, rows[i].rho.q, inner);
  });

  // Convexity of each curve across consecutive grid points.
  bool convex = true;
  for (ModelTag m : models) {
    std::vector<const Row*> curve;
    for (const auto& r : rows) {
      if (r.model == m) curve.push_back(&r);
    }
    for (std::size_t i = 1; i + 1 < curve.size(); ++i) {
      const double x0 = curve[i - 1]->rho.value(), x1 = curve[i]->rho.value(), x2 = curve[i + 1]->rho.value();
      const double y0 = curve[i - 1]->result.beta, y1 = curve[i]->result.beta, y2 = curve[i + 1]->result.beta;
      const double interp = y0 + (y2 - y0) * (x1 - x0) / (x2 - x0);
      if (y1 > interp + s.num_tol) {
        convex = false;
        err << fmt::format("convexity violated for {} at {}\n", to_string(m), curve[i]->rho.str());
      }
    }
  }

  auto render_svg = [&] {
    std::vector<PlotCurve> curves;
    for (ModelTag m : models) {
      PlotCurve c{to_string(m), {}};
      for (const auto& r : rows) {
        if (r.model == m) c.points.emplace_back(r.rho.value(), r.result.beta);
      }
      curves.push_back(std::move(c));
    }
    std::vector<Vec2> outline;
    for (int j = 0; j < 256; ++j) outline.push_back(boundary_position(dom, kTwoPi * j / 256.0));
    // Sample orbit: the first model at the grid point closest to 1/3.
    const Row* pick = nullptr;
    for (const auto& r : rows) {
      if (r.model != models.front()) continue;
      if (!pick || std::abs(r.rho.value() - 1.0 / 3.0) < std::abs(pick->rho.value() - 1.0 / 3.0)) pick = &r;
    }
    std::vector<Vec2> orbit;
    if (pick) orbit = orbit_polygon(dom, pick->model, pick->result.config);
    return render_sweep_svg(curves, outline, orbit, "beta sweep: " + domain_label(s));
  };

  if (s.format == "svg") {
    out << render_svg();
  } else if (s.format == "json") {
    for (const auto& r : rows) {
      nlohmann::ordered_json j;
      j["model"] = to_string(r.model);
      j["rho"] = r.rho.str();
      j["beta"] = r.result.beta;
      j["disk_scaled"] = disk_scale(dom, r.model) * beta_disk(r.model, r.rho.value());
      j["grad_residual"] = r.result.grad_residual;
      j["converged"] = r.result.converged;
      out << j.dump() << "\n";
    }
  } else if (s.format == "table") {
    out << fmt::format("{:<11} {:>8} {:>20} {:>20} {:>11}\n", "model", "rho", "beta", "disk_scaled", "residual");
    for (const auto& r : rows) {
      out << fmt::format("{:<11} {:>8} {:>20.12f} {:>20.12f} {:>11.3e}\n", to_string(r.model), r.rho.str(),
                         r.result.beta, disk_scale(dom, r.model) * beta_disk(r.model, r.rho.value()),
                         r.result.grad_residual);
    }
  } else {
    out << "model,rho,beta,disk_scaled,grad_residual,converged\n";
    for (const auto& r : rows) {
      out << fmt::format("{},{},{},{},{},{}\n", to_string(r.model), r.rho.str(), num(r.result.beta),
                         num(disk_scale(dom, r.model) * beta_disk(r.model, r.rho.value())),
                         num(r.result.grad_residual), r.result.converged ? "true" : "false");
    }
  }
  if (!s.svg_path.empty()) {
    std::ofstream f(s.svg_path);
    if (!f) throw UsageError("cannot write '" + s.svg_path + "'");
    f << render_svg();
  }
  for (const auto& r : rows) {
    if (!r.result.converged) return kNoConvergence;
  }
  return convex ? kAllHold : kViolation;
}

void add_terms(const std::vector<std::string>& specs, std::vector<double>& coefs) {
  for (const auto& spec : specs) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) throw UsageError("potential terms are written m:coef, got '" + spec + "'");
    int m = 0;
    double c = 0.0;
    try {
      std::size_t used = 0;
      m = std::stoi(spec.substr(0, colon), &used);
      if (used != colon) throw std::invalid_argument(spec);
      const std::string rest = spec.substr(colon + 1);
      c = std::stod(rest, &used);
      if (used != rest.size()) throw std::invalid_argument(spec);
    } catch (const std::exception&) {
      throw UsageError("bad potential term '" + spec + "'");
    }
    if (m < 1 || m > 64) throw UsageError("potential mode must be in 1..64");
    if (coefs.size() < static_cast<std::size_t>(m)) coefs.resize(static_cast<std::size_t>(m), 0.0);
    coefs[static_cast<std::size_t>(m - 1)] += c;
  }
}

int cmd_toy(const Settings& s, std::ostream& out) {
  check_format(s.format, {"table", "json", "csv"});
  if (s.max_den < 1) throw UsageError("--max-den must be positive");
  TrigPotential v;
  add_terms(s.vcos, v.cos_coef);
  add_terms(s.vsin, v.sin_coef);
  if (s.kappa != 0.0) {
    if (v.cos_coef.empty()) v.cos_coef.resize(1, 0.0);
    v.cos_coef[0] += s.kappa / kTwoPi;
  }
  const TwistSystem sys = make_toy_system(ConvexKinetic::quadratic(), v);
  std::vector<Rational> grid;
  if (s.rots.empty()) {
    grid = farey_range({0, 1}, {1, 1}, s.max_den, true, true);
  } else {
    for (const auto& r : parse_rots(s.rots, "")) {
      if (!r.is_rational()) throw UsageError("toy accepts rational --rot values only");
      grid.push_back(r.as_rational());
    }
  }
  std::vector<BetaResult> results(grid.size());
  MinimizeOptions inner = verify_options(s).minimize;
  inner.parallel = false;
  parallel_for(grid.size(), [&](std::size_t i) { results[i] = minimize_periodic(sys, grid[i].p, grid[i].q, inner); });

  bool holds = true, converged = true;
  double max_gap = 0.0;
  if (s.format == "table") {
    out << fmt::format("{:>8} {:>20} {:>20} {:>12}\n", "rho", "beta_V", "beta_0", "gap");
  } else if (s.format == "csv") {
    out << "rho,beta_V,beta_0,gap,converged\n";
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double rho = grid[i].value();
    const double beta0 = 0.5 * rho * rho;
    const double gap = beta0 - results[i].beta;
    holds = holds && gap >= -s.num_tol;
    converged = converged && results[i].converged;
    max_gap = std::max(max_gap, gap);
    if (s.format == "table") {
      out << fmt::format("{:>8} {:>20.12f} {:>20.12f} {:>12.3e}\n", grid[i].str(), results[i].beta, beta0, gap);
    } else if (s.format == "csv") {
      out << fmt::format("{},{},{},{},{}\n", grid[i].str(), num(results[i].beta), num(beta0), num(gap),
                         results[i].converged ? "true" : "false");
    } else {
      nlohmann::ordered_json j;
      j["rho"] = grid[i].str();
      j["beta_V"] = results[i].beta;
      j["beta_0"] = beta0;
      j["gap"] = gap;
      j["converged"] = results[i].converged;
      out << j.dump() << "\n";
    }
  }
  if (s.format == "table") out << fmt::format("max gap {:.6e}\n", max_gap);
  if (!converged) return kNoConvergence;
  return holds ? kAllHold : kViolation;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Mather beta functions of convex billiards and rigidity checks"};
  app.name("billiard_beta");
  app.require_subcommand(1);
  Settings s;

  auto add_domain = [&](CLI::App* sub) {
    sub->add_option("--domain", s.domain,
                    "disk:r[,cx,cy] | ellipse:a,b[,modes] | gutkin:n,eps | constwidth:eps[,n] | squeezed:eps");
    sub->add_option("--domain-file", s.domain_file, "JSON domain {\"a0\": ..., \"modes\": [[a1,b1], ...]}");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", s.format, "output format");
    sub->add_option("--out", s.out_path, "write output to this file");
    sub->add_option("--seed", s.seed, "random seed");
    sub->add_option("--starts", s.starts, "multi-start count")->check(CLI::PositiveNumber);
    sub->add_option("--eq-tol", s.eq_tol, "equality tolerance");
    sub->add_option("--num-tol", s.num_tol, "inequality slack");
  };

  CLI::App* domain = app.add_subcommand("domain", "describe a domain");
  add_domain(domain);
  domain->add_option("--format", s.format, "table|json");
  domain->add_option("--out", s.out_path, "write output to this file");

  CLI::App* beta = app.add_subcommand("beta", "minimal average action");
  add_domain(beta);
  beta->add_option("--model", s.models, "birkhoff,symplectic,outer,fourth")->delimiter(',');
  beta->add_option("--rot", s.rots, "rotation numbers: p/q or decimals")->delimiter(',');
  beta->add_option("--orbit-csv", s.orbit_csv, "orbit of the first rational row as CSV");
  beta->add_option("--format", s.format, "table|json|csv");
  beta->add_option("--out", s.out_path, "write output to this file");
  beta->add_option("--seed", s.seed, "random seed");
  beta->add_option("--starts", s.starts, "multi-start count")->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "check an inequality or equality case");
  add_domain(verify);
  verify->add_option("--theorem", s.theorem, "T4.2|T4.3|T4.4|C6.3|P6.9|CE6.5|T6.4|T6.10|gutkin|constwidth|radon")
      ->required();
  verify->add_option("--rot", s.rots, "rotation numbers")->delimiter(',');

  CLI::App* sweep = app.add_subcommand("sweep", "beta curves over a Farey grid in (0, 1/2)");
  add_domain(sweep);
  sweep->add_option("--model", s.models, "models (default: all four)")->delimiter(',');
  sweep->add_option("--rot", s.rots, "explicit rational grid")->delimiter(',');
  sweep->add_option("--max-den", s.max_den, "largest denominator of the grid");
  sweep->add_option("--svg", s.svg_path, "also write an SVG plot");

  CLI::App* toy = app.add_subcommand("toy", "integrable-plus-potential comparison beta_V <= beta_0");
  toy->add_option("--vcos", s.vcos, "cosine term m:coef of V (repeatable)");
  toy->add_option("--vsin", s.vsin, "sine term m:coef of V (repeatable)");
  toy->add_option("--kappa", s.kappa, "adds kappa cos(2 pi x) / (2 pi) to V");
  toy->add_option("--rot", s.rots, "explicit rational grid")->delimiter(',');
  toy->add_option("--max-den", s.max_den, "largest denominator of the grid in [0, 1]");

  add_common(verify);
  add_common(sweep);
  add_common(toy);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAllHold : kUsage;
  }
  // sweep defaults to CSV, every other command to a table.
  if (sweep->parsed() && sweep->get_option("--format")->count() == 0) s.format = "csv";
  for (CLI::App* sub : {domain, beta, verify, sweep}) {
    if (sub->parsed()) s.domain_given = sub->get_option("--domain")->count() > 0;
  }

  std::ostringstream buffer;
  int code = kAllHold;
  try {
    if (domain->parsed()) code = cmd_domain(s, buffer);
    if (beta->parsed()) code = cmd_beta(s, buffer);
    if (verify->parsed()) code = cmd_verify(s, buffer);
    if (sweep->parsed()) code = cmd_sweep(s, buffer, err);
    if (toy->parsed()) code = cmd_toy(s, buffer);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNoConvergence;
  }

  if (s.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream f(s.out_path, std::ios::binary);
    if (!f) {
      err << "error: cannot write '" << s.out_path << "'\n";
      return kUsage;
    }
    f << buffer.str();
  }
  return code;
}

}  // namespace billiards::cli
