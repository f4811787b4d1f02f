#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace i3kit {

/// Arbitrary-precision signed integer, sized for exact rational bookkeeping
/// (common denominators across reference sets can exceed 64 bits by a wide
/// margin). Magnitude is stored as little-endian base-2^32 limbs.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long value);  // NOLINT(google-explicit-constructor)

  static BigInt from_string(std::string_view decimal_digits);

  bool is_zero() const { return limbs_.empty(); }
  bool is_negative() const { return negative_; }
  bool is_even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }
  int signum() const { return is_zero() ? 0 : (negative_ ? -1 : 1); }

  BigInt operator-() const;
  BigInt abs() const;

  BigInt& operator+=(const BigInt& rhs);
  BigInt& operator-=(const BigInt& rhs);
  BigInt& operator*=(const BigInt& rhs);
  friend BigInt operator+(BigInt lhs, const BigInt& rhs) { return lhs += rhs; }
  friend BigInt operator-(BigInt lhs, const BigInt& rhs) { return lhs -= rhs; }
  friend BigInt operator*(BigInt lhs, const BigInt& rhs) { return lhs *= rhs; }

  /// Truncated division: quotient rounds toward zero, remainder takes the
  /// dividend's sign. Divisor must be nonzero.
  static void divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem);
  friend BigInt operator/(const BigInt& lhs, const BigInt& rhs);
  friend BigInt operator%(const BigInt& lhs, const BigInt& rhs);

  /// Nonnegative gcd; gcd(0, 0) = 0. Binary algorithm, no division.
  static BigInt gcd(BigInt a, BigInt b);

  static int compare(const BigInt& lhs, const BigInt& rhs);
  friend bool operator==(const BigInt& a, const BigInt& b) { return compare(a, b) == 0; }
  friend bool operator!=(const BigInt& a, const BigInt& b) { return compare(a, b) != 0; }
  friend bool operator<(const BigInt& a, const BigInt& b) { return compare(a, b) < 0; }
  friend bool operator<=(const BigInt& a, const BigInt& b) { return compare(a, b) <= 0; }
  friend bool operator>(const BigInt& a, const BigInt& b) { return compare(a, b) > 0; }
  friend bool operator>=(const BigInt& a, const BigInt& b) { return compare(a, b) >= 0; }

  BigInt& shift_left(unsigned bits);
  BigInt& shift_right(unsigned bits);

  size_t bit_length() const;
  bool bit(size_t index) const;

  /// Rounds to nearest double; magnitudes beyond double range return +-inf.
  double to_double() const;
  std::string to_string() const;

  /// True when the value fits in int64 (used by fast accumulation paths).
  bool fits_int64() const;
  long long to_int64() const;  // precondition: fits_int64()

 private:
  std::vector<uint32_t> limbs_;  // little endian, no trailing zero limbs
  bool negative_ = false;        // always false for zero

  void trim();
  static int compare_abs(const BigInt& lhs, const BigInt& rhs);
  static void add_abs(const BigInt& lhs, const BigInt& rhs, BigInt& out);
  // precondition: |lhs| >= |rhs|
  static void sub_abs(const BigInt& lhs, const BigInt& rhs, BigInt& out);
  BigInt& mul_small(uint32_t factor);
  uint32_t divmod_small(uint32_t divisor);  // in place, returns remainder
};

}  // namespace i3kit
