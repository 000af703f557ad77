#include "hsf/signed_log.hpp"

#include <algorithm>
#include <sstream>

namespace hsf {

std::string SignedLog::str() const {
  std::ostringstream os;
  if (sign == 0) {
    os << "0";
  } else if (lg > -700 && lg < 700) {
    os << to_double();
  } else {
    os << (sign < 0 ? "-" : "") << "exp(" << lg << ")";
  }
  return os.str();
}

SignedLog nudge(SignedLog v, int dir) {
  if (dir == 0 || v.sign == 0) return v;
  // growing |v| moves the value away from zero in the direction of its sign
  bool grow = (dir > 0) == (v.sign > 0);
  double inf = std::numeric_limits<double>::infinity();
  v.lg = std::nextafter(v.lg, grow ? inf : -inf);
  return v;
}

SignedLog add_rounded(SignedLog a, SignedLog b, int dir) {
  if (a.sign == 0) return nudge(b, 0 /*exact*/), b;
  if (b.sign == 0) return a;
  SignedLog big = a, small = b;
  if (big.abs() < small.abs()) std::swap(big, small);
  double d = small.lg - big.lg;  // <= 0
  SignedLog r;
  if (big.sign == small.sign) {
    r = SignedLog{big.sign, big.lg + std::log1p(std::exp(d))};
  } else {
    if (d == 0.0) return SignedLog::zero();  // exact cancellation
    r = SignedLog{big.sign, big.lg + std::log1p(-std::exp(d))};
  }
  return nudge(r, dir);
}

}  // namespace hsf
