#include <cmath>
#include <random>
#include <stdexcept>

#include "billiards/models.hpp"
#include "billiards/twist.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace billiards;
using doctest::Approx;

namespace {

TwistSystem toy(double kappa) {
  TrigPotential v;
  if (kappa != 0.0) v.cos_coef = {kappa};
  return make_toy_system(ConvexKinetic::quadratic(), v);
}

// Random ordered configuration with gaps kept 0.2 inside the admissible window.
Configuration random_config(const TwistSystem& sys, std::int64_t p, std::int64_t q, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-0.3, 0.3);
  const double mean = static_cast<double>(p) * sys.period / static_cast<double>(q);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<double> gaps(static_cast<std::size_t>(q));
    double sum = 0.0;
    for (auto& g : gaps) {
      g = mean * (1.0 + u(rng));
      sum += g;
    }
    Configuration cfg;
    cfg.winding = p;
    cfg.period = sys.period;
    double x = std::uniform_real_distribution<double>(0.0, sys.period)(rng);
    bool ok = true;
    for (double g : gaps) {
      cfg.points.push_back(x);
      const double step = g * static_cast<double>(p) * sys.period / sum;
      ok = ok && step > sys.min_gap + 0.2 && step < sys.max_gap - 0.2;
      x += step;
    }
    if (ok) return cfg;
  }
  throw std::runtime_error("no admissible configuration");
}

std::vector<TwistSystem> all_systems(const SupportDomain& dom) {
  std::vector<TwistSystem> out;
  for (ModelTag t : kAllModels) out.push_back(make_system(dom, t));
  return out;
}

// Dense Gaussian elimination with partial pivoting: oracle for solve_cyclic.
std::vector<double> dense_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
    }
    std::swap(a[c], a[piv]);
    std::swap(b[c], b[piv]);
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
      b[r] -= f * b[c];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
    x[i] = s / a[i][i];
  }
  return x;
}

std::vector<std::vector<double>> dense_of(const CyclicTridiagonal& m) {
  const std::size_t n = m.diag.size();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) a[i][i] = m.diag[i];
  for (std::size_t i = 0; i + 1 < n; ++i) a[i][i + 1] = a[i + 1][i] = m.off[i];
  if (n > 2) a[n - 1][0] = a[0][n - 1] = m.corner;
  return a;
}

}  // namespace

TEST_CASE("action of equispaced configurations") {
  const TwistSystem b = make_system(named::disk(1.0), ModelTag::birkhoff);
  CHECK(action(b, equispaced(b, 1, 3, 0.4)) == Approx(-3.0 * std::sqrt(3.0)).epsilon(1e-14));
  const TwistSystem t = toy(0.0);
  CHECK(action(t, equispaced(t, 2, 5, 0.1)) == Approx(5 * 0.4 * 0.4 / 2).epsilon(1e-14));

  std::mt19937_64 rng(3);
  for (const auto& sys : all_systems(named::gutkin(4, 0.05))) {
    Configuration cfg = random_config(sys, 1, 5, rng);
    const double a0 = action(sys, cfg);
    for (double& x : cfg.points) x += 2.0 * sys.period;
    CHECK(action(sys, cfg) == Approx(a0).epsilon(1e-13));
  }
  // Continuous rotations are symmetries of the disk.
  for (const auto& sys : all_systems(named::disk(1.0))) {
    Configuration cfg = random_config(sys, 1, 4, rng);
    const double a0 = action(sys, cfg);
    for (double& x : cfg.points) x += 0.377;
    CHECK(action(sys, cfg) == Approx(a0).epsilon(1e-13));
  }
}

TEST_CASE("inadmissible configurations are rejected") {
  const TwistSystem s = make_system(named::disk(1.0), ModelTag::symplectic);
  Configuration cfg{{0.0, 0.1, 3.5}, 1, kTwoPi};
  CHECK_FALSE(admissible(s, cfg));
  CHECK_THROWS_WITH_AS(action(s, cfg), "gap violation", GapViolation);
  CHECK_THROWS_AS(action_gradient(s, cfg), GapViolation);
  CHECK_THROWS_AS(minimize_periodic(s, 1, 2), std::invalid_argument);
}

TEST_CASE("gradient") {
  for (const auto& sys : all_systems(named::disk(1.0))) {
    for (double g : action_gradient(sys, equispaced(sys, 1, 5, 0.3))) CHECK(std::abs(g) < 1e-14);
  }
  std::mt19937_64 rng(11);
  std::vector<TwistSystem> systems;
  for (const auto& dom : testing_support::sample_domains(4)) {
    for (auto& s : all_systems(dom)) systems.push_back(std::move(s));
  }
  TrigPotential v{0.0, {0.03, -0.01}, {0.02}};
  systems.push_back(make_toy_system(ConvexKinetic::quadratic(), v));
  for (const auto& sys : systems) {
    for (auto [p, q] : std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 5}, {3, 7}}) {
      const Configuration cfg = random_config(sys, p, q, rng);
      INFO(sys.name, " ", p, "/", q);
      const std::vector<double> g = action_gradient(sys, cfg);
      for (std::size_t k = 0; k < cfg.size(); ++k) {
        auto f = [&](double x) {
          Configuration c = cfg;
          c.points[k] = x;
          return action(sys, c);
        };
        CHECK(std::abs(testing_support::central_difference(f, cfg.points[k], 1e-6) - g[k]) < 1e-5);
      }
    }
  }
}

TEST_CASE("toy gradient on an equispaced configuration is the potential slope") {
  const double kappa = 0.07;
  const TwistSystem sys = toy(kappa);
  const Configuration cfg = equispaced(sys, 2, 7, 0.1234);
  const std::vector<double> g = action_gradient(sys, cfg);
  for (std::size_t k = 0; k < cfg.size(); ++k) {
    CHECK(g[k] == Approx(-kappa * kTwoPi * std::sin(kTwoPi * cfg.points[k])).epsilon(1e-12));
  }
}

TEST_CASE("Hessian matches finite differences of the gradient") {
  std::mt19937_64 rng(5);
  for (const auto& sys : all_systems(named::gutkin(3, 0.05))) {
    for (int q : {3, 4, 6}) {
      const Configuration cfg = random_config(sys, 1, q, rng);
      const auto a = dense_of(action_hessian(sys, cfg));
      for (std::size_t j = 0; j < cfg.size(); ++j) {
        Configuration plus = cfg, minus = cfg;
        plus.points[j] += 1e-6;
        minus.points[j] -= 1e-6;
        const auto gp = action_gradient(sys, plus);
        const auto gm = action_gradient(sys, minus);
        for (std::size_t i = 0; i < cfg.size(); ++i) {
          CHECK(std::abs((gp[i] - gm[i]) / 2e-6 - a[i][j]) < 1e-5);
        }
      }
    }
  }
  // q = 1 and q = 2 use the toy model, which has no gap window.
  const TwistSystem t = make_toy_system(ConvexKinetic::quadratic(), TrigPotential{0.0, {0.04}, {0.01}});
  for (const Configuration& cfg : {Configuration{{0.2}, 1, 1.0}, Configuration{{0.1, 0.45}, 1, 1.0}}) {
    const auto a = dense_of(action_hessian(t, cfg));
    for (std::size_t j = 0; j < cfg.size(); ++j) {
      Configuration plus = cfg, minus = cfg;
      plus.points[j] += 1e-6;
      minus.points[j] -= 1e-6;
      const auto gp = action_gradient(t, plus);
      const auto gm = action_gradient(t, minus);
      for (std::size_t i = 0; i < cfg.size(); ++i) CHECK(std::abs((gp[i] - gm[i]) / 2e-6 - a[i][j]) < 1e-5);
    }
  }
}

TEST_CASE("cyclic tridiagonal solver agrees with dense elimination") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n = 1; n <= 12; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      CyclicTridiagonal m;
      for (int i = 0; i < n; ++i) m.diag.push_back(u(rng) + (trial % 2 ? 3.0 : 0.5));
      for (int i = 0; i + 1 < std::max(n, 2) && static_cast<int>(m.off.size()) < (n == 2 ? 1 : n - 1); ++i) {
        m.off.push_back(u(rng));
      }
      if (n > 2) m.corner = u(rng);
      std::vector<double> rhs;
      for (int i = 0; i < n; ++i) rhs.push_back(u(rng));
      const auto x = solve_cyclic(m, rhs);
      REQUIRE(x);
      const auto ref = dense_solve(dense_of(m), rhs);
      for (int i = 0; i < n; ++i) CHECK((*x)[i] == Approx(ref[i]).epsilon(1e-9));
    }
  }
  CyclicTridiagonal singular{{0.0}, {}, 0.0};
  CHECK_FALSE(solve_cyclic(singular, {1.0}));
}

TEST_CASE("minimal actions on the disk") {
  const SupportDomain disk = named::disk(1.0);
  const BetaResult b = minimize_periodic(make_system(disk, ModelTag::birkhoff), 1, 3);
  CHECK(b.converged);
  CHECK(b.beta == Approx(-std::sqrt(3.0)).epsilon(1e-12));
  CHECK(b.grad_residual < 1e-10);
  CHECK(b.starts_tried == 16);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(b.config.at(static_cast<std::int64_t>(k) + 1) - b.config.points[k] == Approx(kTwoPi / 3).epsilon(1e-8));
  }
  CHECK(beta_rational(make_system(disk, ModelTag::outer), 1, 4) == Approx(1.0).epsilon(1e-12));
  CHECK(beta_rational(make_system(disk, ModelTag::symplectic), 1, 4) == Approx(-0.5).epsilon(1e-12));
  CHECK(beta_rational(make_system(disk, ModelTag::fourth), 1, 3) == Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
  CHECK(beta_rational(make_system(disk, ModelTag::birkhoff), 1, 2) == Approx(-2.0).epsilon(1e-12));
  CHECK(beta_rational(make_system(disk, ModelTag::birkhoff), 2, 5) ==
        Approx(-2.0 * std::sin(2.0 * kPi / 5)).epsilon(1e-12));
  // Non-reduced input is reduced.
  CHECK(beta_rational(make_system(disk, ModelTag::birkhoff), 2, 6) == Approx(-std::sqrt(3.0)).epsilon(1e-12));
}

TEST_CASE("minimisation is deterministic and independent of threading") {
  const TwistSystem sys = make_system(named::squeezed_disk(0.1), ModelTag::outer);
  MinimizeOptions serial;
  serial.parallel = false;
  const BetaResult a = minimize_periodic(sys, 2, 7);
  const BetaResult b = minimize_periodic(sys, 2, 7, serial);
  CHECK(a.beta == b.beta);
  CHECK(a.config.points == b.config.points);
  MinimizeOptions seeded;
  seeded.seed = 42;
  const BetaResult c = minimize_periodic(sys, 2, 7, seeded);
  CHECK(c.beta == Approx(a.beta).epsilon(1e-11));
}

TEST_CASE("pinned minimisation") {
  const TwistSystem sys = make_system(named::gutkin(4, 0.05), ModelTag::birkhoff);
  const BetaResult free = minimize_periodic(sys, 1, 3);
  const BetaResult pinned = minimize_pinned(sys, 1, 3, free.config.points[0]);
  CHECK(pinned.converged);
  CHECK(pinned.config.points[0] == free.config.points[0]);
  CHECK(pinned.beta == Approx(free.beta).epsilon(1e-10));
  const BetaResult other = minimize_pinned(sys, 1, 3, free.config.points[0] + 0.3);
  CHECK(other.beta >= free.beta - 1e-12);
}

TEST_CASE("irrational rotation numbers") {
  const SupportDomain disk = named::disk(1.0);
  const double w = 1.0 / std::sqrt(8.0);
  const IrrationalBeta b = beta_irrational(make_system(disk, ModelTag::birkhoff), w, 1e-6);
  CHECK(b.converged);
  CHECK(std::abs(b.value + 2.0 * std::sin(kPi * w)) < 1e-6);
  CHECK(b.lower <= -2.0 * std::sin(kPi * w) + 1e-12);
  CHECK(b.upper >= -2.0 * std::sin(kPi * w) - 1e-12);
  for (const auto& r : b.used) CHECK(r.q <= 2000);

  const double g = (std::sqrt(5.0) - 1.0) / 4.0;
  const IrrationalBeta o = beta_irrational(make_system(disk, ModelTag::outer), g, 1e-6);
  CHECK(std::abs(o.value - std::tan(kPi * g)) < 1e-6);

  const IrrationalBeta r = beta_irrational(make_system(disk, ModelTag::birkhoff), 0.4, 1e-6);
  CHECK(r.used.size() == 1);
  CHECK(r.value == beta_rational(make_system(disk, ModelTag::birkhoff), 2, 5));

  MinimizeOptions tight;
  tight.q_max = 10;
  const IrrationalBeta capped = beta_irrational(make_system(disk, ModelTag::birkhoff), w, 1e-12, tight);
  CHECK_FALSE(capped.converged);
  CHECK(capped.lower < capped.upper);
}

TEST_CASE("equispaced average action") {
  const TwistSystem b = make_system(named::disk(1.0), ModelTag::birkhoff);
  CHECK(equispaced_average_action(b, RotationNumber::rational(1, 3), 0.71) ==
        Approx(-std::sqrt(3.0)).epsilon(1e-14));
  const double w = std::sqrt(2.0) - 1.0;
  CHECK(equispaced_average_action(toy(0.05), RotationNumber::irrational(w), 0.0) ==
        Approx(0.5 * w * w).epsilon(1e-13));

  // A_omega(x0) >= beta(omega) over 200 random triples.
  std::mt19937_64 rng(23);
  auto domains = testing_support::sample_domains(4);
  const std::vector<Rational> rhos{{1, 3}, {1, 4}, {2, 5}, {1, 5}, {3, 7}};
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const auto& dom = domains[rng() % domains.size()];
    const TwistSystem sys = make_system(dom, kAllModels[rng() % 4]);
    const Rational r = rhos[rng() % rhos.size()];
    const double x0 = std::uniform_real_distribution<double>(0.0, kTwoPi)(rng);
    const double avg = equispaced_average_action(sys, RotationNumber::rational(r.p, r.q), x0);
    CHECK(avg >= beta_rational(sys, r.p, r.q) - 1e-8);
    ++checked;
  }
  CHECK(checked == 200);
}

TEST_CASE("beta is convex along Farey scans") {
  const auto grid = farey_range({0, 1}, {1, 2}, 12, false, false);
  for (const auto& dom : {named::disk(1.0), named::gutkin(4, 0.05), named::squeezed_disk(0.1)}) {
    for (ModelTag tag : kAllModels) {
      const TwistSystem sys = make_system(dom, tag);
      std::vector<double> beta;
      for (const auto& r : grid) beta.push_back(beta_rational(sys, r.p, r.q));
      for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const double x0 = grid[i - 1].value(), x1 = grid[i].value(), x2 = grid[i + 1].value();
        const double interp = beta[i - 1] + (beta[i + 1] - beta[i - 1]) * (x1 - x0) / (x2 - x0);
        CHECK(beta[i] <= interp + 1e-8);
      }
    }
  }
}

TEST_CASE("toy model") {
  const TwistSystem free = toy(0.0);
  CHECK(beta_rational(free, 1, 3) == Approx(1.0 / 18).epsilon(1e-12));
  CHECK(beta_rational(free, 2, 5) == Approx(0.08).epsilon(1e-12));
  const TwistSystem kicked = make_toy_system(ConvexKinetic::quadratic(), TrigPotential{0.0, {0.05 / kTwoPi}, {}});
  CHECK(beta_rational(kicked, 1, 3) < 1.0 / 18);
  const BetaResult fixed = minimize_periodic(kicked, 0, 1);
  CHECK(fixed.converged);
  CHECK(fixed.beta == Approx(-0.05 / kTwoPi).epsilon(1e-10));
  CHECK(fixed.beta <= 0.0);

  // The mean of V is removed.
  const TwistSystem shifted = make_toy_system(ConvexKinetic::quadratic(), TrigPotential{3.0, {}, {}});
  CHECK(beta_rational(shifted, 1, 3) == Approx(1.0 / 18).epsilon(1e-12));
  CHECK(TrigPotential{}.is_zero());
}

TEST_CASE("rotation numbers") {
  CHECK(make_rational(4, 6) == Rational{2, 3});
  CHECK(make_rational(3, -9) == Rational{-1, 3});
  CHECK(RotationNumber::parse("2/6").as_rational() == Rational{1, 3});
  CHECK_FALSE(RotationNumber::parse("0.3").is_rational());
  CHECK_THROWS_AS(RotationNumber::parse("1/x"), std::invalid_argument);
  CHECK_THROWS_AS(RotationNumber::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(RotationNumber::parse("abc"), std::invalid_argument);

  const auto c = convergents(1.0 / std::sqrt(8.0), 2000);
  REQUIRE(c.size() >= 4);
  CHECK(c[0] == Rational{0, 1});
  CHECK(c[1] == Rational{1, 2});
  CHECK(c[2] == Rational{1, 3});
  CHECK(c[3] == Rational{5, 14});
  CHECK(c[4] == Rational{6, 17});
  for (const auto& r : c) CHECK(r.q <= 2000);
  const auto exact = convergents(0.4, 2000);
  CHECK(exact.back() == Rational{2, 5});

  const auto f = farey_range({0, 1}, {1, 2}, 5, false, false);
  CHECK(f.size() == 4);
  CHECK(f.front() == Rational{1, 5});
  CHECK(f.back() == Rational{2, 5});
}
