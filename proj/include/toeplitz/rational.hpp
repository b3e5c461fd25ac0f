#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <utility>

#include "toeplitz/error.hpp"

namespace toeplitz {

using Integer = boost::multiprecision::cpp_int;

inline Integer gcd(const Integer& x, const Integer& y) {
  return boost::multiprecision::gcd(x, y);
}

inline Integer lcm(const Integer& x, const Integer& y) {
  if (x == 0 || y == 0) return 0;
  return boost::multiprecision::abs(x / gcd(x, y) * y);
}

inline bool fits_int64(const Integer& x) {
  return x >= std::numeric_limits<std::int64_t>::min() &&
         x <= std::numeric_limits<std::int64_t>::max();
}

inline std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x))
    throw Error(Errc::invalid_argument, "integer " + x.str() + " exceeds 64 bits");
  return x.convert_to<std::int64_t>();
}

inline double to_double(const Integer& x) { return x.convert_to<double>(); }

/// log(x) for x > 0, accurate even when x overflows a double.
inline double log_of(const Integer& x) {
  if (x <= 0) throw Error(Errc::invalid_argument, "log of non-positive integer");
  const auto bits = boost::multiprecision::msb(x);
  if (bits < 1000) return std::log(to_double(x));
  const unsigned shift = static_cast<unsigned>(bits - 60);
  return std::log(to_double(x >> shift)) + shift * std::log(2.0);
}

inline Integer floor_div(const Integer& num, const Integer& den) {
  Integer q = num / den;
  if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
  return q;
}

inline Integer mod_floor(const Integer& x, const Integer& m) {
  Integer r = x % m;
  if (r < 0) r += m;
  return r;
}

// Exact rational in lowest terms with a positive denominator.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
    normalize();
  }

  const Integer& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }

  bool is_integer() const { return den_ == 1; }
  int sign() const { return num_.sign(); }

  Integer floor() const { return floor_div(num_, den_); }
  Integer ceil() const { return -floor_div(-num_, den_); }

  /// Fractional part in [0, 1).
  Rational frac() const { return Rational(mod_floor(num_, den_), den_); }

  double to_double() const {
    if (boost::multiprecision::msb(boost::multiprecision::abs(num_) + 1) < 1000 &&
        boost::multiprecision::msb(den_) < 1000)
      return num_.convert_to<double>() / den_.convert_to<double>();
    const double l = std::log(std::abs(num_.convert_to<double>())) - log_of(den_);
    return (num_ < 0 ? -1.0 : 1.0) * std::exp(l);
  }

  Rational inverse() const {
    if (num_ == 0) throw Error(Errc::invalid_argument, "inverse of zero");
    return Rational(den_, num_);
  }

  std::string str() const { return den_ == 1 ? num_.str() : num_.str() + "/" + den_.str(); }

  Rational operator-() const { return Rational(-num_, den_, Normalized{}); }

  friend Rational operator+(const Rational& x, const Rational& y) {
    if (x.den_ == y.den_) return Rational(x.num_ + y.num_, x.den_);
    return Rational(x.num_ * y.den_ + y.num_ * x.den_, x.den_ * y.den_);
  }
  friend Rational operator-(const Rational& x, const Rational& y) { return x + (-y); }
  friend Rational operator*(const Rational& x, const Rational& y) {
    if (x.den_ == 1 && y.den_ == 1) return Rational(x.num_ * y.num_, Integer(1), Normalized{});
    return Rational(x.num_ * y.num_, x.den_ * y.den_);
  }
  friend Rational operator/(const Rational& x, const Rational& y) { return x * y.inverse(); }

  Rational& operator+=(const Rational& y) { return *this = *this + y; }
  Rational& operator-=(const Rational& y) { return *this = *this - y; }
  Rational& operator*=(const Rational& y) { return *this = *this * y; }

  friend bool operator==(const Rational& x, const Rational& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& x, const Rational& y) {
    const Integer lhs = x.num_ * y.den_;
    const Integer rhs = y.num_ * x.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

 private:
  struct Normalized {};
  Rational(Integer n, Integer d, Normalized) : num_(std::move(n)), den_(std::move(d)) {}

  void normalize() {
    if (den_ == 0) throw Error(Errc::invalid_argument, "zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const Integer g = gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  Integer num_;
  Integer den_;
};

inline Rational max(const Rational& x, const Rational& y) { return x < y ? y : x; }

}  // namespace toeplitz
