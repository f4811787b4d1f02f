#include "i3kit/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace i3kit {

Rational::Rational(long long numerator, long long denominator)
    : num_(numerator), den_(denominator) {
  normalize();
}

Rational::Rational(BigInt numerator, BigInt denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
  normalize();
}

void Rational::normalize() {
  if (den_.is_zero()) throw std::domain_error("Rational: zero denominator");
  if (den_.is_negative()) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g != BigInt(1)) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

Rational Rational::from_decimal_string(std::string_view text) {
  size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    neg = text[i] == '-';
    ++i;
  }
  std::string digits;
  long long scale = 0;  // digits after the point
  bool seen_digit = false, seen_point = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (seen_point) ++scale;
      seen_digit = true;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      break;
    } else {
      throw std::invalid_argument("Rational: malformed decimal '" + std::string(text) + "'");
    }
  }
  long long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_neg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_neg = text[i] == '-';
      ++i;
    }
    if (i == text.size()) throw std::invalid_argument("Rational: malformed exponent");
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("Rational: malformed exponent");
      exponent = exponent * 10 + (text[i] - '0');
      if (exponent > 10000) throw std::invalid_argument("Rational: exponent out of range");
    }
    if (exp_neg) exponent = -exponent;
  }
  if (!seen_digit) throw std::invalid_argument("Rational: no digits in '" + std::string(text) + "'");

  BigInt num = BigInt::from_string(digits.empty() ? "0" : digits);
  if (neg) num = -num;
  long long power = exponent - scale;
  BigInt den(1);
  BigInt ten(10);
  for (long long k = 0; k < (power < 0 ? -power : power); ++k) {
    if (power > 0)
      num *= ten;
    else
      den *= ten;
  }
  return Rational(std::move(num), std::move(den));
}

Rational Rational::operator-() const {
  Rational out = *this;
  out.num_ = -out.num_;
  return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
  num_ = num_ * rhs.den_ + rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
  num_ = num_ * rhs.den_ - rhs.num_ * den_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
  num_ *= rhs.num_;
  den_ *= rhs.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
  if (rhs.num_.is_zero()) throw std::domain_error("Rational: division by zero");
  num_ *= rhs.den_;
  den_ *= rhs.num_;
  normalize();
  return *this;
}

int Rational::compare(const Rational& lhs, const Rational& rhs) {
  // denominators are positive, so cross multiplication preserves order
  return BigInt::compare(lhs.num_ * rhs.den_, rhs.num_ * lhs.den_);
}

double Rational::to_double() const {
  size_t nb = num_.bit_length();
  size_t db = den_.bit_length();
  if (nb <= 1000 && db <= 1000) return num_.to_double() / den_.to_double();
  // scale both down; anything beyond the top ~1000 bits cannot affect a double
  unsigned shift = static_cast<unsigned>((nb > db ? nb : db) - 1000);
  BigInt n = num_, d = den_;
  n.shift_right(shift);
  d.shift_right(shift);
  if (d.is_zero()) return num_.is_negative() ? -HUGE_VAL : HUGE_VAL;
  return n.to_double() / d.to_double();
}

std::string Rational::to_decimal_string(int places) const {
  if (places < 0) throw std::invalid_argument("Rational: negative places");
  BigInt scaled = num_.abs();
  for (int k = 0; k < places; ++k) scaled *= BigInt(10);
  BigInt q, r;
  BigInt::divmod(scaled, den_, q, r);
  // round half away from zero
  BigInt twice_rem = r * BigInt(2);
  if (twice_rem >= den_) q += BigInt(1);
  std::string digits = q.to_string();
  std::string out;
  if (places == 0) {
    out = digits;
  } else {
    if (digits.size() <= static_cast<size_t>(places))
      digits.insert(0, std::string(places + 1 - digits.size(), '0'));
    out = digits.substr(0, digits.size() - places) + "." + digits.substr(digits.size() - places);
  }
  if (num_.is_negative() && out.find_first_not_of("0.") != std::string::npos) out.insert(0, "-");
  return out;
}

std::string Rational::to_auto_string(int places) const {
  if (is_integer()) return num_.to_string();
  return to_decimal_string(places);
}

void RationalSum::add(const Rational& value) {
  if (value.is_zero()) return;
  std::string key = value.denominator().to_string();
  auto it = buckets_.find(key);
  if (it == buckets_.end()) {
    buckets_.emplace(std::move(key), std::make_pair(value.numerator(), value.denominator()));
  } else {
    it->second.first += value.numerator();
  }
}

Rational RationalSum::total() const {
  Rational acc(0);
  for (const auto& [key, bucket] : buckets_) acc += Rational(bucket.first, bucket.second);
  return acc;
}

}  // namespace i3kit
