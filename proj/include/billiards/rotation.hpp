#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace billiards {

// p/q in lowest terms, q > 0.
struct Rational {
  std::int64_t p = 0;
  std::int64_t q = 1;

  double value() const { return static_cast<double>(p) / static_cast<double>(q); }
  std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }
  friend bool operator==(const Rational&, const Rational&) = default;
};

Rational make_rational(std::int64_t p, std::int64_t q);

// A rotation number is either an exact rational or an irrational target
// approximated to within `tol`.
class RotationNumber {
 public:
  static RotationNumber rational(std::int64_t p, std::int64_t q);
  static RotationNumber irrational(double omega, double tol = 1e-6);
  // Accepts "p/q" (reduced to lowest terms) or a decimal literal.
  static RotationNumber parse(const std::string& text);

  bool is_rational() const { return rational_; }
  const Rational& as_rational() const { return frac_; }
  double value() const { return rational_ ? frac_.value() : omega_; }
  double tol() const { return tol_; }
  std::string str() const;

 private:
  bool rational_ = true;
  Rational frac_;
  double omega_ = 0.0;
  double tol_ = 0.0;
};

// Convergents p_k/q_k of the continued fraction of x >= 0, stopping once the
// denominator exceeds q_max or the expansion terminates.
std::vector<Rational> convergents(double x, std::int64_t q_max);

// Reduced fractions p/q in [lo, hi] with q <= max_den, increasing.
std::vector<Rational> farey_range(Rational lo, Rational hi, std::int64_t max_den, bool include_lo,
                                  bool include_hi);

}  // namespace billiards
