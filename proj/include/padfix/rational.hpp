#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include "padfix/arith.hpp"

namespace padfix {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational in lowest terms with a positive denominator.
class RationalPoint {
public:
  RationalPoint() = default;
  RationalPoint(BigInt num) : num_(std::move(num)), den_(1) {}
  RationalPoint(i64 num) : num_(num), den_(1) {}
  RationalPoint(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_ == 0) throw RangeError("RationalPoint: zero denominator");
    normalize();
  }

  /// Accepts "a", "-a", "a/b", "-a/b" with decimal digits.
  static RationalPoint parse(std::string_view text) {
    auto parse_int = [&](std::string_view s) {
      std::size_t i = 0;
      if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
      if (i == s.size()) throw RangeError("bad rational: '" + std::string(text) + "'");
      for (std::size_t k = i; k < s.size(); ++k)
        if (s[k] < '0' || s[k] > '9') throw RangeError("bad rational: '" + std::string(text) + "'");
      return BigInt(std::string(s[0] == '+' ? s.substr(1) : s));
    };
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) return RationalPoint(parse_int(text));
    return RationalPoint(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
  }

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_integer() const { return den_ == 1; }

  /// Larger of the bit lengths of |num| and den.
  std::size_t height_bits() const {
    const BigInt a = abs(num_);
    const std::size_t nb = a == 0 ? 0 : msb(a) + 1;
    const std::size_t db = msb(den_) + 1;
    return nb > db ? nb : db;
  }

  std::string str() const {
    if (den_ == 1) return num_.str();
    return num_.str() + "/" + den_.str();
  }

  friend RationalPoint operator+(const RationalPoint& a, const RationalPoint& b) {
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalPoint operator*(const RationalPoint& a, const RationalPoint& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalPoint pow(const RationalPoint& a, unsigned e) {
    RationalPoint r;
    r.num_ = boost::multiprecision::pow(a.num_, e);
    r.den_ = boost::multiprecision::pow(a.den_, e);
    return r;
  }

  friend bool operator==(const RationalPoint& a, const RationalPoint& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const RationalPoint& a, const RationalPoint& b) {
    const BigInt l = a.num_ * b.den_, r = b.num_ * a.den_;
    if (l < r) return std::strong_ordering::less;
    if (l > r) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

private:
  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = gcd(abs(num_), den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  BigInt num_ = 0;
  BigInt den_ = 1;
};

}  // namespace padfix
