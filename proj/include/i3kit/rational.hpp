#pragma once

#include <map>
#include <string>
#include <string_view>

#include "i3kit/bigint.hpp"

namespace i3kit {

/// Exact rational number. Percentiles, country fractions and every I3 sum
/// stay in this form until display rounding; decomposition identities hold
/// as true equalities.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long numerator, long long denominator);
  Rational(BigInt numerator, BigInt denominator);

  /// Parses plain decimal notation, optionally with an exponent:
  /// "0.9" -> 9/10, "-1.25e2" -> -125. Exact, no float round-trip.
  static Rational from_decimal_string(std::string_view text);

  const BigInt& numerator() const { return num_; }
  const BigInt& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_negative() const { return num_.is_negative(); }
  bool is_integer() const { return den_ == BigInt(1); }
  int signum() const { return num_.signum(); }

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);
  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  static int compare(const Rational& lhs, const Rational& rhs);
  friend bool operator==(const Rational& a, const Rational& b) { return compare(a, b) == 0; }
  friend bool operator!=(const Rational& a, const Rational& b) { return compare(a, b) != 0; }
  friend bool operator<(const Rational& a, const Rational& b) { return compare(a, b) < 0; }
  friend bool operator<=(const Rational& a, const Rational& b) { return compare(a, b) <= 0; }
  friend bool operator>(const Rational& a, const Rational& b) { return compare(a, b) > 0; }
  friend bool operator>=(const Rational& a, const Rational& b) { return compare(a, b) >= 0; }

  double to_double() const;

  /// Fixed-point rendering with `places` digits after the point, rounding
  /// half away from zero ("99.95" at 1 place -> "100.0"). places = 0 yields
  /// a plain integer string.
  std::string to_decimal_string(int places) const;

  /// Integer string when the value is integral, otherwise fixed `places`.
  std::string to_auto_string(int places) const;

 private:
  BigInt num_;
  BigInt den_;  // always positive

  void normalize();
};

/// Sums many rationals by bucketing on the (reduced) denominator; the
/// workloads here produce only a handful of distinct denominators per group,
/// which keeps gcd work off the per-record path.
class RationalSum {
 public:
  void add(const Rational& value);
  Rational total() const;
  bool empty() const { return buckets_.empty(); }

 private:
  std::map<std::string, std::pair<BigInt, BigInt>> buckets_;  // den_string -> (num, den)
};

}  // namespace i3kit
