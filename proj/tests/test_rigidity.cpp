#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "billiards/rigidity.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace billiards;
using doctest::Approx;

namespace {

// Numerator/denominator of tan(n x) in t = tan x from the binomial expansion
// of (1 + i t)^n, then (P - n t Q) / t^3 in ascending powers.
std::vector<double> binomial_gutkin(int n) {
  std::vector<double> p(n + 1, 0.0), q(n + 1, 0.0);
  double c = 1.0;
  for (int k = 0; k <= n; ++k) {
    const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
    (k % 2 ? p : q)[k] = sign * c;
    c = c * (n - k) / (k + 1);
  }
  std::vector<double> r(n + 2, 0.0);
  for (int k = 0; k <= n; ++k) {
    r[k] += p[k];
    r[k + 1] -= n * q[k];
  }
  for (int k = 0; k < 3; ++k) CHECK(std::abs(r[k]) < 1e-9);
  std::vector<double> out(r.begin() + 3, r.end());
  while (!out.empty() && std::abs(out.back()) < 1e-9) out.pop_back();
  return out;
}

double horner(const std::vector<double>& c, double t) {
  double v = 0.0;
  for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
  return v;
}

InequalityReport made(double gap) {
  InequalityReport r;
  r.gap = gap;
  finalize(r, Tolerances{});
  return r;
}

}  // namespace

TEST_CASE("report classification") {
  CHECK(made(0.1).holds);
  CHECK_FALSE(made(0.1).equality);
  CHECK(made(-5e-9).holds);
  CHECK(made(-5e-9).equality);
  CHECK_FALSE(made(-2e-8).holds);
  CHECK(made(5e-7).equality);
  CHECK_FALSE(made(2e-6).equality);
  for (Theorem t : {Theorem::T4_2, Theorem::T4_3, Theorem::T4_4, Theorem::C6_3, Theorem::P6_9, Theorem::CE6_5,
                    Theorem::T6_4, Theorem::T6_10, Theorem::Gutkin, Theorem::ConstWidth, Theorem::Radon}) {
    CHECK(parse_theorem(to_string(t)) == t);
  }
  CHECK_THROWS_AS(parse_theorem("T9.9"), std::invalid_argument);
}

TEST_CASE("main inequalities on model domains") {
  const SupportDomain disk = named::disk(1.0);
  const auto third = RotationNumber::rational(1, 3);
  for (Theorem t : {Theorem::T4_2, Theorem::T4_3, Theorem::T4_4}) {
    const InequalityReport r = verify_main_inequality(disk, t, third);
    CHECK(r.valid);
    CHECK(std::abs(r.gap) < 1e-8);
    CHECK(r.equality);
    CHECK(r.holds);
  }
  const InequalityReport ell = verify_main_inequality(named::ellipse(2.0, 1.0), Theorem::T4_3, third);
  CHECK(ell.equality);
  CHECK(ell.rhs == Approx(2.0 * -0.5 * std::sin(kTwoPi / 3)).epsilon(1e-9));
  const InequalityReport ell2 = verify_main_inequality(named::ellipse(2.0, 1.0), Theorem::T4_2, third);
  CHECK(ell2.holds);
  CHECK(ell2.gap > 1e-3);

  const InequalityReport g = verify_main_inequality(named::gutkin(4, 0.05), Theorem::T4_2, third);
  CHECK(g.holds);
  CHECK_FALSE(g.equality);
  CHECK(g.gap > 1e-6);
  CHECK(g.lhs < -std::sqrt(3.0));

  CHECK(verify_main_inequality(disk, Theorem::T4_2, RotationNumber::rational(1, 2)).equality);
  CHECK_THROWS_AS(verify_main_inequality(disk, Theorem::T4_3, RotationNumber::rational(1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_main_inequality(disk, Theorem::T4_2, RotationNumber::rational(2, 3)),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_main_inequality(disk, Theorem::C6_3, third), std::invalid_argument);

  // Decimal rotation numbers go through the convergent bracket.
  const InequalityReport dec = verify_main_inequality(named::disk(1.3), Theorem::T4_2, RotationNumber::parse("0.3"));
  CHECK(dec.valid);
  CHECK(dec.equality);
}

TEST_CASE("reports are scale consistent") {
  const SupportDomain dom = named::squeezed_disk(0.1);
  const SupportDomain big = scaled(dom, 2.0);
  const auto r = RotationNumber::rational(2, 5);
  for (auto [t, w] : std::vector<std::pair<Theorem, double>>{{Theorem::T4_2, 2.0}, {Theorem::T4_3, 4.0}, {Theorem::T4_4, 2.0}}) {
    const InequalityReport a = verify_main_inequality(dom, t, r);
    const InequalityReport b = verify_main_inequality(big, t, r);
    CHECK(b.lhs == Approx(w * a.lhs).epsilon(1e-8));
    CHECK(b.rhs == Approx(w * a.rhs).epsilon(1e-8));
  }
}

TEST_CASE("Gutkin polynomial and roots") {
  for (int n = 2; n <= 12; ++n) {
    const auto ours = gutkin_polynomial(n);
    const auto oracle = binomial_gutkin(n);
    REQUIRE(ours.size() >= oracle.size());
    for (std::size_t k = 0; k < ours.size(); ++k) {
      const double ref = k < oracle.size() ? oracle[k] : 0.0;
      CHECK(static_cast<double>(ours[k]) == Approx(ref).epsilon(1e-12));
    }
  }
  CHECK(binomial_gutkin(2) == std::vector<double>{2.0});
  CHECK(binomial_gutkin(3) == std::vector<double>{8.0});
  CHECK(binomial_gutkin(4) == std::vector<double>{20.0, 0.0, -4.0});

  CHECK(gutkin_roots(2).roots.empty());
  CHECK(gutkin_roots(3).roots.empty());
  const GutkinRootSet four = gutkin_roots(4);
  REQUIRE(four.roots.size() == 1);
  CHECK(std::abs(four.roots[0] - std::atan(std::sqrt(5.0)) / kPi) < 1e-10);
  CHECK_THROWS_AS(gutkin_roots(1), std::invalid_argument);
  CHECK_THROWS_AS(gutkin_roots(65), std::invalid_argument);

  for (int n = 4; n <= 40; ++n) {
    const GutkinRootSet set = gutkin_roots(n);
    // Oracle count: sign changes of the binomial polynomial in t = tan(pi d).
    if (n <= 14) {
      const auto poly = binomial_gutkin(n);
      int changes = 0;
      double prev = horner(poly, std::tan(kPi * 1e-4));
      for (int j = 2; j < 50000; ++j) {
        const double v = horner(poly, std::tan(kPi * 0.5 * j / 50000.0));
        if ((v > 0.0) != (prev > 0.0)) ++changes;
        prev = v;
      }
      CHECK(static_cast<int>(set.roots.size()) == changes);
    }
    for (std::size_t i = 0; i < set.roots.size(); ++i) {
      const double d = set.roots[i];
      CHECK(d > 0.0);
      CHECK(d < 0.5);
      if (i > 0) CHECK(d > set.roots[i - 1]);
      CHECK(gutkin_defect(n, d) < 1e-10);
      for (int q = 1; q <= 50; ++q) {
        const double p = std::round(d * q);
        CHECK(std::abs(d - p / q) > 1e-6);
      }
    }
  }
}

TEST_CASE("the set R") {
  CHECK(in_R(1.0 / 3.0, 32, 1e-9));
  CHECK(in_R(0.1, 32, 1e-9));
  CHECK_FALSE(in_R(std::atan(std::sqrt(5.0)) / kPi, 4, 1e-9));
  CHECK(in_R(std::atan(std::sqrt(5.0)) / kPi, 3, 1e-9));
  for (int q = 3; q <= 20; ++q) {
    for (int p = 1; 2 * p < q; ++p) CHECK(in_R(static_cast<double>(p) / q, 64, 1e-9));
  }
}

TEST_CASE("Gutkin equality mechanism") {
  const InequalityReport flat = gutkin_equality_check(4, 0.0);
  CHECK(flat.equality);
  CHECK(flat.extra("criticality_residual") < 1e-14);
  const InequalityReport r = gutkin_equality_check(4, 0.02);
  CHECK(r.valid);
  CHECK(r.equality);
  CHECK(std::abs(r.gap) < 3e-6);
  CHECK(r.extra("max_q") <= 2000);
  CHECK(r.extra("bracket_lower") <= r.extra("bracket_upper"));
  CHECK(gutkin_equality_check(4, 0.05).extra("criticality_residual") < 1e-9);
  CHECK_THROWS_AS(gutkin_equality_check(3, 0.02), std::invalid_argument);
}

TEST_CASE("constant width") {
  const SupportDomain cw = named::constant_width(0.05, 3);
  const InequalityReport r = constant_width_equality(cw);
  CHECK(r.lhs == Approx(-2.0).epsilon(1e-10));
  CHECK(r.rhs == Approx(-2.0).epsilon(1e-10));
  CHECK(r.equality);
  CHECK(r.extra("constant_width") == 1.0);

  // Oracle: beta(1/2) is minus the diameter; dense scan of boundary pairs.
  std::vector<Vec2> pts;
  for (int j = 0; j < 1500; ++j) pts.push_back(boundary_position(cw, kTwoPi * j / 1500.0));
  double diam = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (std::size_t j = i + 1; j < pts.size(); ++j) diam = std::max(diam, norm(pts[i] - pts[j]));
  }
  CHECK(std::abs(-diam - r.lhs) < 1e-4);

  CHECK(constant_width_equality(named::disk(1.0)).lhs == Approx(-2.0).epsilon(1e-12));
  const InequalityReport e = constant_width_equality(named::ellipse(2.0, 1.0));
  CHECK(e.lhs == Approx(-4.0).epsilon(1e-10));
  CHECK(e.rhs == Approx(-3.0839).epsilon(1e-4));
  CHECK(e.holds);
  CHECK_FALSE(e.equality);
  CHECK(e.extra("constant_width") == 0.0);
  CHECK(e.note.find("precondition") != std::string::npos);
}

TEST_CASE("outer billiard relations") {
  const SupportDomain disk = named::disk(1.0);
  const SupportDomain ell = named::ellipse(2.0, 1.0);
  const InequalityReport d3 = outer_third_relation(disk);
  CHECK(d3.extra("beta_out") == Approx(std::sqrt(3.0)).epsilon(1e-10));
  CHECK(d3.extra("beta_symp") == Approx(-std::sqrt(3.0) / 4).epsilon(1e-10));
  CHECK(std::abs(d3.lhs) < 1e-7);
  CHECK(d3.equality);
  CHECK(std::abs(outer_third_relation(ell).lhs) < 1e-7);
  const InequalityReport g3 = outer_third_relation(named::gutkin(4, 0.05));
  CHECK(g3.lhs < -1e-8);
  CHECK(g3.holds);
  CHECK(g3.extra("area_identity_defect") < 1e-9);

  const InequalityReport d4 = outer_quarter_relation(disk);
  CHECK(d4.extra("beta_out") == Approx(1.0).epsilon(1e-10));
  CHECK(d4.extra("beta_symp") == Approx(-0.5).epsilon(1e-10));
  CHECK(std::abs(d4.lhs) < 1e-7);
  CHECK(std::abs(outer_quarter_relation(ell).lhs) < 1e-7);
  const InequalityReport s4 = outer_quarter_relation(named::squeezed_disk(0.1));
  CHECK(s4.lhs <= 1e-8);
  CHECK(s4.extra("area_identity_defect") < 1e-9);

  for (const auto& dom : random_domains(6, 5)) {
    CHECK(outer_third_relation(dom).lhs <= 1e-8);
    CHECK(outer_quarter_relation(dom).lhs <= 1e-8);
  }
}

TEST_CASE("midpoint area identities") {
  std::vector<SupportDomain> doms{named::disk(1.0), named::ellipse(2.0, 1.0)};
  for (const auto& d : random_domains(4, 8)) doms.push_back(d);
  for (const auto& dom : doms) {
    const TwistSystem outer = make_system(dom, ModelTag::outer);
    const BetaResult t = minimize_periodic(outer, 1, 3);
    REQUIRE(t.converged);
    CHECK(triangle_midpoint_property(dom, t.config) < 1e-9);
    const BetaResult q = minimize_periodic(outer, 1, 4);
    REQUIRE(q.converged);
    CHECK(quadrilateral_midpoint_property(dom, q.config) < 1e-9);
  }
}

TEST_CASE("outer counterexample") {
  const InequalityReport d = outer_counterexample(named::disk(1.0), 4);
  CHECK(d.equality);
  const InequalityReport s = outer_counterexample(named::squeezed_disk(0.1), 4);
  CHECK(s.gap > 1e-4);
  CHECK(s.lhs < s.rhs);
  CHECK(s.note.find("counterexample") != std::string::npos);
  const InequalityReport e = outer_counterexample(named::ellipse(2.0, 1.0), 3);
  CHECK(std::abs(e.gap) < 1e-7);
  CHECK(e.rhs == Approx(2.0 * std::sqrt(3.0)).epsilon(1e-9));
  CHECK_THROWS_AS(outer_counterexample(named::disk(1.0), 5), std::invalid_argument);
}

TEST_CASE("rigidity under invariant curves") {
  CHECK(invariant_curve_spread(named::disk(1.0), ModelTag::outer, 3) < 1e-8);
  CHECK(invariant_curve_spread(named::ellipse(2.0, 1.0), ModelTag::outer, 4) < 1e-8);
  CHECK(invariant_curve_spread(named::squeezed_disk(0.1), ModelTag::outer, 3) > 1e-6);

  const InequalityReport d = outer_third_rigidity(named::disk(1.0));
  CHECK(d.extra("hypothesis") == 1.0);
  CHECK(d.equality);
  const InequalityReport e = outer_quarter_rigidity(named::ellipse(2.0, 1.0));
  CHECK(e.extra("hypothesis") == 1.0);
  CHECK(e.equality);
  const InequalityReport s = outer_third_rigidity(named::squeezed_disk(0.1));
  CHECK(s.extra("hypothesis") == 0.0);
  CHECK(s.holds);
  CHECK(s.note.find("hypothesis not certified") != std::string::npos);

  const InequalityReport radon = radon_relation(named::ellipse(2.0, 1.0));
  CHECK(radon.equality);
  const InequalityReport odd = radon_relation(named::gutkin(3, 0.05));
  CHECK(odd.extra("centrally_symmetric") == 0.0);
  CHECK(odd.holds);
}

TEST_CASE("report formats") {
  const InequalityReport r = verify_main_inequality(named::disk(1.0), Theorem::T4_2, RotationNumber::rational(1, 4));
  const auto j = nlohmann::json::parse(to_json_line(r));
  CHECK(j.at("theorem") == "T4.2");
  CHECK(j.at("rho") == "1/4");
  CHECK(j.at("lhs").get<double>() == r.lhs);
  CHECK(j.at("holds").get<bool>());
  CHECK(j.at("equality").get<bool>());
  CHECK(j.at("extras").contains("nontrivial_energy"));
  CHECK(to_json_line(r).find('\n') == std::string::npos);

  CHECK(csv_header() == "domain,theorem,rho,lhs,rhs,gap,holds,equality");
  const std::string row = to_csv_row("disk:1", r);
  CHECK(std::count(row.begin(), row.end(), ',') == 7);
  CHECK(row.rfind("disk:1,T4.2,1/4,", 0) == 0);
  CHECK(row.substr(row.size() - 10) == ",true,true");
  CHECK(to_csv_row("gutkin:4,0.05", r).rfind("\"gutkin:4,0.05\",T4.2,", 0) == 0);
  CHECK(to_csv_row("a\"b", r).rfind("\"a\"\"b\",", 0) == 0);
}

TEST_CASE("random domains") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const SupportDomain d = random_domain(rng);
    CHECK(d.a0() == 1.0);
    for (int j = 0; j < 720; ++j) {
      const double phi = kTwoPi * j / 720;
      CHECK(d.eval(phi, 0) + d.eval(phi, 2) > 0.0);
    }
  }
  const auto a = random_domains(5, 3);
  const auto b = random_domains(5, 3);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(domain_to_json(a[i]) == domain_to_json(b[i]));
}

TEST_CASE("inequality suite") {
  const auto doms = random_domains(3, 21);
  const std::vector<Rational> rhos{{1, 3}, {1, 2}};
  const auto entries = run_inequality_suite(doms, {Theorem::T4_2, Theorem::T4_3, Theorem::T4_4}, rhos);
  REQUIRE(entries.size() == 3 * 4);
  CHECK(entries[0].domain_index == 0);
  CHECK(entries[0].report.theorem == "T4.2");
  CHECK(entries[1].report.rho == "1/2");
  CHECK(entries[2].report.theorem == "T4.3");
  CHECK(entries[3].report.theorem == "T4.4");
  CHECK(entries[4].domain_index == 1);
  for (const auto& e : entries) {
    CHECK(e.report.valid);
    CHECK(e.report.holds);
  }
}

TEST_CASE("sin(2 pi n rho) = n sin(2 pi rho) has no solution in (0, 1/2)") {
  for (int n = 2; n <= 64; ++n) {
    double closest = INFINITY;
    for (int j = 1; j < 20000; ++j) {
      const double x = kTwoPi * 0.5 * j / 20000.0;
      closest = std::min(closest, n * std::sin(x) - std::abs(std::sin(n * x)));
    }
    CHECK(closest > 0.0);
  }
}
