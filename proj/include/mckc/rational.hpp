#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mckc {

/// Exact rational number over 64-bit integers.
///
/// All arithmetic runs through 128-bit intermediates and throws
/// std::overflow_error if a reduced result no longer fits in 64 bits.
/// Silent wraparound is never acceptable here: rationals are the ground
/// truth for the oracles and the gap instances.
class Rat {
 public:
  constexpr Rat() : num_(0), den_(1) {}
  Rat(std::int64_t n) : num_(n), den_(1) {}
  Rat(std::int64_t n, std::int64_t d);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Nearest rational within |x - p/q| <= tol, by continued fractions.
  /// Used to snap LP output back into exact arithmetic.
  static Rat from_double(double x, double tol = 1e-9);

  double to_double() const { return double(num_) / double(den_); }

  std::int64_t floor() const;
  std::int64_t ceil() const;
  bool is_integer() const { return den_ == 1; }

  Rat operator-() const;
  Rat& operator+=(const Rat& o);
  Rat& operator-=(const Rat& o);
  Rat& operator*=(const Rat& o);
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b);
  friend bool operator>(const Rat& a, const Rat& b) { return b < a; }
  friend bool operator<=(const Rat& a, const Rat& b) { return !(b < a); }
  friend bool operator>=(const Rat& a, const Rat& b) { return !(a < b); }

  /// "7" for integers, "7/3" otherwise.
  std::string str() const;
  /// Parses "7", "-7/3". Throws std::invalid_argument on junk.
  static Rat parse(const std::string& s);

 private:
  std::int64_t num_;
  std::int64_t den_;  // always > 0
};

inline Rat min(const Rat& a, const Rat& b) { return a < b ? a : b; }
inline Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }
inline Rat abs(const Rat& a) { return a < Rat(0) ? -a : a; }

/// A distance that may be the infinity sentinel.  Infinity compares
/// greater than every finite value; arithmetic on infinities is not
/// provided (the code never needs it).
class Dist {
 public:
  constexpr Dist() : finite_(true), v_() {}
  Dist(Rat v) : finite_(true), v_(v) {}
  static Dist infinity() {
    Dist d;
    d.finite_ = false;
    return d;
  }

  bool is_infinite() const { return !finite_; }
  const Rat& value() const {
    if (!finite_) throw std::logic_error("value() on infinite distance");
    return v_;
  }

  friend bool operator==(const Dist& a, const Dist& b) {
    if (a.finite_ != b.finite_) return false;
    return !a.finite_ || a.v_ == b.v_;
  }
  friend bool operator<(const Dist& a, const Dist& b) {
    if (!a.finite_) return false;
    if (!b.finite_) return true;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const Dist& a, const Dist& b) { return !(b < a); }

  std::string str() const { return finite_ ? v_.str() : "inf"; }

 private:
  bool finite_;
  Rat v_;
};

}  // namespace mckc
