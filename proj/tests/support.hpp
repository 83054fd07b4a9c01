#pragma once

#include <mpfr.h>

#include <algorithm>

#include "cmdeg/real.hpp"

namespace cmdeg::test {

// Relative difference measured against max(1, |b|).
inline Real scaled_error(const Real& a, const Real& b) {
  Real denom = abs(b);
  if (denom < 1L) denom = Real(1L, b.precision());
  return abs(a - b) / denom;
}

inline bool within_bits(const Real& a, const Real& b, long bits) {
  return scaled_error(a, b) < ldexp(Real(1L, 64), -bits);
}

// Wraps a raw MPFR computation as an oracle value.
template <class F>
Real mpfr_oracle(long bits, F&& f) {
  Real out(bits);
  f(out.get(), MPFR_RNDN);
  return out;
}

}  // namespace cmdeg::test
