#pragma once

#include <string>
#include <vector>

#include "cmdeg/errors.hpp"
#include "cmdeg/real.hpp"

namespace cmdeg::detail {

/// Bits lost when `sum` was formed from summands of magnitude up to `largest`.
inline long cancelled_bits(const Real& sum, const Real& largest) {
  if (largest.is_zero()) return 0;
  if (sum.is_zero()) return largest.precision();
  return std::max(0L, largest.exponent() - sum.exponent());
}

inline long bit_length(long n) {
  long b = 0;
  while (n > 0) {
    ++b;
    n >>= 1;
  }
  return b;
}

/// Sums the terms produced by `terms_at(bits)`, re-evaluating at higher
/// precision until the cancellation between terms leaves at least
/// working + guard/2 good bits. `extra` seeds the first attempt.
template <class TermsAt>
Real sum_with_cancellation(TermsAt&& terms_at, const PrecisionPolicy& policy, long extra, const char* what) {
  for (int attempt = 0; attempt < 6; ++attempt) {
    const long bits = policy.internal_bits() + extra;
    std::vector<Real> terms = terms_at(bits);
    Real sum(bits), largest(bits);
    for (const Real& x : terms) {
      sum += x;
      if (abs(x) > largest) largest = abs(x);
    }
    const long lost = cancelled_bits(sum, largest) + bit_length(static_cast<long>(terms.size()));
    if (bits - lost >= policy.working_bits + policy.guard_bits / 2) return sum.rounded(policy.working_bits);
    extra = lost + policy.guard_bits + extra / 2 + 8;
    if (extra > 64 * policy.working_bits) break;
  }
  throw PrecisionUnreachable(std::string(what) + ": cancellation exceeds the precision budget");
}

}  // namespace cmdeg::detail
