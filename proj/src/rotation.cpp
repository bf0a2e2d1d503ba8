#include "billiards/rotation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>

namespace billiards {

Rational make_rational(std::int64_t p, std::int64_t q) {
  if (q == 0) throw std::invalid_argument("zero denominator");
  if (q < 0) {
    p = -p;
    q = -q;
  }
  const std::int64_t g = std::gcd(p < 0 ? -p : p, q);
  return {p / g, q / g};
}

RotationNumber RotationNumber::rational(std::int64_t p, std::int64_t q) {
  RotationNumber r;
  r.rational_ = true;
  r.frac_ = make_rational(p, q);
  return r;
}

RotationNumber RotationNumber::irrational(double omega, double tol) {
  if (!std::isfinite(omega)) throw std::invalid_argument("rotation number must be finite");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");
  RotationNumber r;
  r.rational_ = false;
  r.omega_ = omega;
  r.tol_ = tol;
  return r;
}

RotationNumber RotationNumber::parse(const std::string& text) {
  const auto slash = text.find('/');
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad rotation number '" + text + "'");
    }
    if (used != s.size()) throw std::invalid_argument("bad rotation number '" + text + "'");
    return static_cast<std::int64_t>(v);
  };
  if (slash != std::string::npos) {
    return rational(to_int(text.substr(0, slash)), to_int(text.substr(slash + 1)));
  }
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rotation number '" + text + "'");
  }
  if (used != text.size()) throw std::invalid_argument("bad rotation number '" + text + "'");
  return irrational(v);
}

std::string RotationNumber::str() const {
  if (rational_) return frac_.str();
  return fmt::format("{:.12g}", omega_);
}

std::vector<Rational> convergents(double x, std::int64_t q_max) {
  if (!(x >= 0.0)) throw std::invalid_argument("convergents need x >= 0");
  std::vector<Rational> out;
  long double rest = x;
  std::int64_t p_prev = 0, q_prev = 1;  // p_{-2}, q_{-2}
  std::int64_t p_cur = 1, q_cur = 0;    // p_{-1}, q_{-1}
  for (int k = 0; k < 64; ++k) {
    const long double a_ld = std::floor(rest);
    if (a_ld > 1e15L) break;
    const auto a = static_cast<std::int64_t>(a_ld);
    const std::int64_t p_next = a * p_cur + p_prev;
    const std::int64_t q_next = a * q_cur + q_prev;
    if (q_next > q_max) break;
    out.push_back({p_next, q_next});
    p_prev = p_cur;
    q_prev = q_cur;
    p_cur = p_next;
    q_cur = q_next;
    const long double frac = rest - a_ld;
    // Terminates when x is (numerically) equal to the current convergent.
    if (frac < 1e-13L || std::abs(static_cast<long double>(x) - static_cast<long double>(p_cur) / q_cur) <
                             1e-16L * std::max(1.0, x)) {
      break;
    }
    rest = 1.0L / frac;
  }
  return out;
}

std::vector<Rational> farey_range(Rational lo, Rational hi, std::int64_t max_den, bool include_lo,
                                  bool include_hi) {
  std::vector<Rational> out;
  for (std::int64_t q = 1; q <= max_den; ++q) {
    // p/q in [lo, hi]
    const auto p_min = static_cast<std::int64_t>(std::ceil(static_cast<long double>(lo.p) * q / lo.q));
    const auto p_max = static_cast<std::int64_t>(std::floor(static_cast<long double>(hi.p) * q / hi.q));
    for (std::int64_t p = p_min; p <= p_max; ++p) {
      if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
      const Rational r{p, q};
      if (!include_lo && r == make_rational(lo.p, lo.q)) continue;
      if (!include_hi && r == make_rational(hi.p, hi.q)) continue;
      out.push_back(r);
    }
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a.p * b.q < b.p * a.q; });
  return out;
}

}  // namespace billiards
