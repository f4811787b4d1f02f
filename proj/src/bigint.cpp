#include "i3kit/bigint.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace i3kit {

namespace {
constexpr uint64_t kBase = uint64_t(1) << 32;
}

BigInt::BigInt(long long value) {
  negative_ = value < 0;
  // two's-complement-safe magnitude, including LLONG_MIN
  uint64_t mag = negative_ ? ~static_cast<uint64_t>(value) + 1 : static_cast<uint64_t>(value);
  while (mag != 0) {
    limbs_.push_back(static_cast<uint32_t>(mag & 0xffffffffu));
    mag >>= 32;
  }
  if (limbs_.empty()) negative_ = false;
}

BigInt BigInt::from_string(std::string_view s) {
  BigInt out;
  size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  if (i == s.size()) throw std::invalid_argument("BigInt: empty digit string");
  for (; i < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("BigInt: bad digit");
    out.mul_small(10);
    BigInt digit(static_cast<long long>(s[i] - '0'));
    add_abs(out, digit, out);
  }
  out.negative_ = neg && !out.is_zero();
  return out;
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) negative_ = false;
}

BigInt BigInt::operator-() const {
  BigInt out = *this;
  if (!out.is_zero()) out.negative_ = !out.negative_;
  return out;
}

BigInt BigInt::abs() const {
  BigInt out = *this;
  out.negative_ = false;
  return out;
}

int BigInt::compare_abs(const BigInt& lhs, const BigInt& rhs) {
  if (lhs.limbs_.size() != rhs.limbs_.size())
    return lhs.limbs_.size() < rhs.limbs_.size() ? -1 : 1;
  for (size_t i = lhs.limbs_.size(); i-- > 0;) {
    if (lhs.limbs_[i] != rhs.limbs_[i]) return lhs.limbs_[i] < rhs.limbs_[i] ? -1 : 1;
  }
  return 0;
}

int BigInt::compare(const BigInt& lhs, const BigInt& rhs) {
  if (lhs.negative_ != rhs.negative_) return lhs.negative_ ? -1 : 1;
  int cmp = compare_abs(lhs, rhs);
  return lhs.negative_ ? -cmp : cmp;
}

void BigInt::add_abs(const BigInt& lhs, const BigInt& rhs, BigInt& out) {
  const std::vector<uint32_t>& a = lhs.limbs_;
  const std::vector<uint32_t>& b = rhs.limbs_;
  std::vector<uint32_t> result(std::max(a.size(), b.size()) + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < result.size(); ++i) {
    uint64_t sum = carry;
    if (i < a.size()) sum += a[i];
    if (i < b.size()) sum += b[i];
    result[i] = static_cast<uint32_t>(sum & 0xffffffffu);
    carry = sum >> 32;
  }
  out.limbs_ = std::move(result);
  out.trim();
}

void BigInt::sub_abs(const BigInt& lhs, const BigInt& rhs, BigInt& out) {
  const std::vector<uint32_t>& a = lhs.limbs_;
  const std::vector<uint32_t>& b = rhs.limbs_;
  std::vector<uint32_t> result(a.size(), 0);
  int64_t borrow = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    int64_t diff = static_cast<int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (diff < 0) {
      diff += static_cast<int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    result[i] = static_cast<uint32_t>(diff);
  }
  out.limbs_ = std::move(result);
  out.trim();
}

BigInt& BigInt::operator+=(const BigInt& rhs) {
  if (negative_ == rhs.negative_) {
    add_abs(*this, rhs, *this);
    // sign unchanged; trim() never flips it for nonzero results
    if (is_zero()) negative_ = false;
    return *this;
  }
  int cmp = compare_abs(*this, rhs);
  if (cmp == 0) {
    limbs_.clear();
    negative_ = false;
  } else if (cmp > 0) {
    sub_abs(*this, rhs, *this);
  } else {
    bool sign = rhs.negative_;
    sub_abs(rhs, *this, *this);
    negative_ = sign;
  }
  if (is_zero()) negative_ = false;
  return *this;
}

BigInt& BigInt::operator-=(const BigInt& rhs) { return *this += -rhs; }

BigInt& BigInt::operator*=(const BigInt& rhs) {
  if (is_zero() || rhs.is_zero()) {
    limbs_.clear();
    negative_ = false;
    return *this;
  }
  const std::vector<uint32_t>& a = limbs_;
  const std::vector<uint32_t>& b = rhs.limbs_;
  std::vector<uint32_t> result(a.size() + b.size(), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    uint64_t carry = 0;
    uint64_t ai = a[i];
    for (size_t j = 0; j < b.size(); ++j) {
      uint64_t cur = result[i + j] + ai * b[j] + carry;
      result[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + b.size();
    while (carry != 0) {
      uint64_t cur = result[k] + carry;
      result[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  bool sign = negative_ != rhs.negative_;
  limbs_ = std::move(result);
  trim();
  negative_ = sign && !is_zero();
  return *this;
}

BigInt& BigInt::mul_small(uint32_t factor) {
  uint64_t carry = 0;
  for (uint32_t& limb : limbs_) {
    uint64_t cur = static_cast<uint64_t>(limb) * factor + carry;
    limb = static_cast<uint32_t>(cur & 0xffffffffu);
    carry = cur >> 32;
  }
  while (carry != 0) {
    limbs_.push_back(static_cast<uint32_t>(carry & 0xffffffffu));
    carry >>= 32;
  }
  trim();
  return *this;
}

uint32_t BigInt::divmod_small(uint32_t divisor) {
  uint64_t rem = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    uint64_t cur = (rem << 32) | limbs_[i];
    limbs_[i] = static_cast<uint32_t>(cur / divisor);
    rem = cur % divisor;
  }
  trim();
  return static_cast<uint32_t>(rem);
}

BigInt& BigInt::shift_left(unsigned bits) {
  if (is_zero() || bits == 0) return *this;
  unsigned limb_shift = bits / 32;
  unsigned bit_shift = bits % 32;
  std::vector<uint32_t> result(limbs_.size() + limb_shift + 1, 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t cur = static_cast<uint64_t>(limbs_[i]) << bit_shift;
    result[i + limb_shift] |= static_cast<uint32_t>(cur & 0xffffffffu);
    result[i + limb_shift + 1] |= static_cast<uint32_t>(cur >> 32);
  }
  limbs_ = std::move(result);
  trim();
  return *this;
}

BigInt& BigInt::shift_right(unsigned bits) {
  unsigned limb_shift = bits / 32;
  unsigned bit_shift = bits % 32;
  if (limb_shift >= limbs_.size()) {
    limbs_.clear();
    negative_ = false;
    return *this;
  }
  std::vector<uint32_t> result(limbs_.size() - limb_shift, 0);
  for (size_t i = 0; i < result.size(); ++i) {
    uint64_t cur = limbs_[i + limb_shift] >> bit_shift;
    if (bit_shift != 0 && i + limb_shift + 1 < limbs_.size())
      cur |= static_cast<uint64_t>(limbs_[i + limb_shift + 1]) << (32 - bit_shift);
    result[i] = static_cast<uint32_t>(cur & 0xffffffffu);
  }
  limbs_ = std::move(result);
  trim();
  return *this;
}

size_t BigInt::bit_length() const {
  if (limbs_.empty()) return 0;
  uint32_t top = limbs_.back();
  size_t bits = (limbs_.size() - 1) * 32;
  while (top != 0) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

bool BigInt::bit(size_t index) const {
  size_t limb = index / 32;
  if (limb >= limbs_.size()) return false;
  return (limbs_[limb] >> (index % 32)) & 1u;
}

void BigInt::divmod(const BigInt& num, const BigInt& den, BigInt& quot, BigInt& rem) {
  if (den.is_zero()) throw std::domain_error("BigInt: division by zero");
  BigInt n_abs = num.abs();
  BigInt d_abs = den.abs();
  BigInt q, r;
  if (compare_abs(n_abs, d_abs) < 0) {
    r = n_abs;
  } else {
    // shift-subtract long division over the dividend's bits
    size_t nbits = n_abs.bit_length();
    q.limbs_.assign((nbits + 31) / 32, 0);
    for (size_t i = nbits; i-- > 0;) {
      r.shift_left(1);
      if (n_abs.bit(i)) {
        if (r.limbs_.empty())
          r.limbs_.push_back(1);
        else
          r.limbs_[0] |= 1u;
      }
      if (compare_abs(r, d_abs) >= 0) {
        sub_abs(r, d_abs, r);
        q.limbs_[i / 32] |= (uint32_t(1) << (i % 32));
      }
    }
    q.trim();
  }
  q.negative_ = (num.negative_ != den.negative_) && !q.is_zero();
  r.negative_ = num.negative_ && !r.is_zero();
  quot = std::move(q);
  rem = std::move(r);
}

BigInt operator/(const BigInt& lhs, const BigInt& rhs) {
  BigInt q, r;
  BigInt::divmod(lhs, rhs, q, r);
  return q;
}

BigInt operator%(const BigInt& lhs, const BigInt& rhs) {
  BigInt q, r;
  BigInt::divmod(lhs, rhs, q, r);
  return r;
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.negative_ = false;
  b.negative_ = false;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  unsigned shift = 0;
  while (a.is_even() && b.is_even()) {
    a.shift_right(1);
    b.shift_right(1);
    ++shift;
  }
  while (a.is_even()) a.shift_right(1);
  while (!b.is_zero()) {
    while (b.is_even()) b.shift_right(1);
    if (compare_abs(a, b) > 0) std::swap(a, b);
    sub_abs(b, a, b);
  }
  a.shift_left(shift);
  return a;
}

double BigInt::to_double() const {
  // top 64 bits of the magnitude carry all double precision
  if (limbs_.empty()) return 0.0;
  size_t bits = bit_length();
  double value;
  if (bits <= 64) {
    uint64_t mag = 0;
    for (size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
    value = static_cast<double>(mag);
  } else {
    BigInt top = *this;
    top.negative_ = false;
    top.shift_right(static_cast<unsigned>(bits - 64));
    uint64_t mag = 0;
    for (size_t i = top.limbs_.size(); i-- > 0;) mag = (mag << 32) | top.limbs_[i];
    value = std::ldexp(static_cast<double>(mag), static_cast<int>(bits - 64));
  }
  return negative_ ? -value : value;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  BigInt work = *this;
  std::string digits;
  while (!work.is_zero()) {
    uint32_t chunk = work.divmod_small(1000000000u);
    if (work.is_zero()) {
      digits.insert(0, std::to_string(chunk));
    } else {
      std::string part = std::to_string(chunk);
      digits.insert(0, std::string(9 - part.size(), '0') + part);
    }
  }
  return negative_ ? "-" + digits : digits;
}

bool BigInt::fits_int64() const {
  if (limbs_.size() > 2) return false;
  if (limbs_.size() < 2) return true;
  uint64_t mag = (static_cast<uint64_t>(limbs_[1]) << 32) | limbs_[0];
  if (negative_) return mag <= (uint64_t(1) << 63);
  return mag < (uint64_t(1) << 63);
}

long long BigInt::to_int64() const {
  uint64_t mag = 0;
  for (size_t i = limbs_.size(); i-- > 0;) mag = (mag << 32) | limbs_[i];
  if (negative_) {
    if (mag == (uint64_t(1) << 63)) return std::numeric_limits<long long>::min();
    return -static_cast<long long>(mag);
  }
  return static_cast<long long>(mag);
}

}  // namespace i3kit
