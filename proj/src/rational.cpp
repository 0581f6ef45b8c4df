#include "mckc/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

namespace mckc {

namespace {

using I128 = __int128;

std::int64_t checked_narrow(I128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw std::overflow_error("rational overflow");
  return std::int64_t(v);
}

I128 gcd128(I128 a, I128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    I128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace

Rat::Rat(std::int64_t n, std::int64_t d) {
  if (d == 0) throw std::domain_error("rational with zero denominator");
  I128 nn = n, dd = d;
  if (dd < 0) {
    nn = -nn;
    dd = -dd;
  }
  I128 g = gcd128(nn, dd);
  if (g > 1) {
    nn /= g;
    dd /= g;
  }
  num_ = checked_narrow(nn);
  den_ = checked_narrow(dd);
}

Rat Rat::from_double(double x, double tol) {
  if (!std::isfinite(x)) throw std::domain_error("from_double on non-finite value");
  // Continued-fraction expansion, stop once within tolerance.
  double target = x;
  std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double v = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(v);
    if (fl > 9e17 || fl < -9e17) break;
    std::int64_t a = std::int64_t(fl);
    I128 p2 = I128(a) * p1 + p0;
    I128 q2 = I128(a) * q1 + q0;
    if (p2 > INT64_MAX || p2 < INT64_MIN || q2 > INT64_MAX) break;
    p0 = p1;
    q0 = q1;
    p1 = std::int64_t(p2);
    q1 = std::int64_t(q2);
    if (q1 > 0 && std::abs(double(p1) / double(q1) - target) <= tol) return Rat(p1, q1);
    double frac = v - double(a);
    if (frac == 0.0) break;
    v = 1.0 / frac;
    if (!std::isfinite(v)) break;
  }
  if (q1 == 0) throw std::overflow_error("from_double: no convergent");
  return Rat(p1, q1);
}

std::int64_t Rat::floor() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ < 0) --q;
  return q;
}

std::int64_t Rat::ceil() const {
  std::int64_t q = num_ / den_;
  if (num_ % den_ != 0 && num_ > 0) ++q;
  return q;
}

Rat Rat::operator-() const {
  Rat r;
  r.num_ = checked_narrow(-I128(num_));
  r.den_ = den_;
  return r;
}

Rat& Rat::operator+=(const Rat& o) {
  I128 n = I128(num_) * o.den_ + I128(o.num_) * den_;
  I128 d = I128(den_) * o.den_;
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = checked_narrow(n);
  den_ = checked_narrow(d);
  return *this;
}

Rat& Rat::operator-=(const Rat& o) { return *this += -o; }

Rat& Rat::operator*=(const Rat& o) {
  // Cross-reduce before multiplying to keep intermediates small.
  I128 g1 = gcd128(num_, o.den_), g2 = gcd128(o.num_, den_);
  I128 n = (I128(num_) / g1) * (I128(o.num_) / (g2 ? g2 : 1));
  I128 d = (I128(den_) / (g2 ? g2 : 1)) * (I128(o.den_) / g1);
  if (g1 == 0) {  // num_ == 0
    num_ = 0;
    den_ = 1;
    return *this;
  }
  I128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = checked_narrow(n);
  den_ = checked_narrow(d);
  return *this;
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this *= Rat(o.den_, o.num_);
}

bool operator<(const Rat& a, const Rat& b) {
  return I128(a.num_) * b.den_ < I128(b.num_) * a.den_;
}

std::string Rat::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

Rat Rat::parse(const std::string& s) {
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      std::size_t pos = 0;
      std::int64_t n = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument("trailing junk");
      return Rat(n);
    }
    std::size_t p1 = 0, p2 = 0;
    std::int64_t n = std::stoll(s.substr(0, slash), &p1);
    std::int64_t d = std::stoll(s.substr(slash + 1), &p2);
    if (p1 != slash || p2 != s.size() - slash - 1) throw std::invalid_argument("trailing junk");
    return Rat(n, d);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument("rational out of range: " + s);
  }
}

}  // namespace mckc
