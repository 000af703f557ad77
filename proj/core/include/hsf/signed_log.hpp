#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace hsf {

// Real number carried as sign * exp(lg). The §4.2 scales span hundreds of
// orders of magnitude, so all rectangle geometry lives in this representation.
struct SignedLog {
  int sign = 0;       // -1, 0, +1
  double lg = -std::numeric_limits<double>::infinity();  // log|value|; -inf iff sign==0

  static SignedLog zero() { return {0, -std::numeric_limits<double>::infinity()}; }
  static SignedLog one() { return {1, 0.0}; }
  static SignedLog from_double(double v) {
    if (v == 0.0) return zero();
    return {v > 0 ? 1 : -1, std::log(std::fabs(v))};
  }
  static SignedLog from_log(double lg_abs, int sign = 1) { return {sign, lg_abs}; }

  bool is_zero() const { return sign == 0; }
  double to_double() const { return sign == 0 ? 0.0 : sign * std::exp(lg); }
  SignedLog abs() const { return {sign == 0 ? 0 : 1, lg}; }
  SignedLog neg() const { return {-sign, lg}; }

  friend SignedLog operator*(SignedLog a, SignedLog b) {
    if (a.sign == 0 || b.sign == 0) return zero();
    return {a.sign * b.sign, a.lg + b.lg};
  }
  friend SignedLog operator/(SignedLog a, SignedLog b) {
    if (a.sign == 0) return zero();
    return {a.sign * b.sign, a.lg - b.lg};
  }

  // exact sign-aware comparison of values
  friend bool operator<(SignedLog a, SignedLog b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    if (a.sign > 0) return a.lg < b.lg;
    return a.lg > b.lg;
  }
  friend bool operator<=(SignedLog a, SignedLog b) { return !(b < a); }

  std::string str() const;
};

// a + b with rounding directed by `dir` (-1: toward -inf, +1: toward +inf, 0: nearest).
SignedLog add_rounded(SignedLog a, SignedLog b, int dir);

// One-ulp outward nudge of the log magnitude in value direction `dir`.
SignedLog nudge(SignedLog v, int dir);

// Closed interval [lo, hi] with outward-rounded endpoint arithmetic on logs.
struct LogInterval {
  SignedLog lo, hi;

  static LogInterval point(SignedLog v) { return {v, v}; }
  static LogInterval symmetric(SignedLog half_width) {
    return {half_width.abs().neg(), half_width.abs()};
  }

  bool contains(const LogInterval& inner) const {
    return lo <= inner.lo && inner.hi <= hi;
  }
  LogInterval scaled(SignedLog c) const {
    LogInterval r{nudge(lo * c, -1), nudge(hi * c, +1)};
    if (c.sign < 0) std::swap(r.lo, r.hi);
    return r;
  }
  LogInterval shifted(SignedLog c) const {
    return {add_rounded(lo, c, -1), add_rounded(hi, c, +1)};
  }
  friend LogInterval operator+(const LogInterval& a, const LogInterval& b) {
    return {add_rounded(a.lo, b.lo, -1), add_rounded(a.hi, b.hi, +1)};
  }
  SignedLog mag() const {  // max |x| over the interval
    SignedLog a = lo.abs(), b = hi.abs();
    return a < b ? b : a;
  }
};

}  // namespace hsf
