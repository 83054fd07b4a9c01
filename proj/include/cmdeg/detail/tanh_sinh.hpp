#pragma once

// Tanh-sinh (double exponential) quadrature on a finite interval, refined
// by halving the step so each level doubles the node count and reuses the
// previous level's sum.

#include <cmath>
#include <numbers>
#include <vector>

#include "cmdeg/real.hpp"

namespace cmdeg::detail {

class TanhSinh {
 public:
  explicit TanhSinh(long bits) : bits_(bits), half_pi_(pi(bits) / 2L) {
    // Beyond u_max the weights fall below 2^-bits.
    u_max_ = std::log(2.0 * static_cast<double>(bits) * std::log(2.0) / std::numbers::pi) + 0.5;
  }

  long bits() const { return bits_; }

  /// Adds the contribution of nodes u = k * 2^-level (k odd, or all k when
  /// level == 0) on [a, b] to `acc`.
  template <class F>
  long add_level(const Real& a, const Real& b, int level, F&& f, Real& acc) const {
    const Real half_width = (b - a) / 2L;
    const Real mid = (a + b) / 2L;
    const long count = static_cast<long>(std::ceil(u_max_ * std::ldexp(1.0, level)));
    const long stride = level == 0 ? 1 : 2;
    const long start = level == 0 ? 0 : 1;
    long evals = 0;
    for (long k = start; k <= count; k += stride) {
      Real u = ldexp(Real(k, bits_), -level);
      Real v = half_pi_ * sinh(u);
      Real cv = cosh(v);
      Real weight = half_pi_ * cosh(u) / (cv * cv) * half_width;
      if (weight.is_zero()) break;
      // 1 - tanh(v) = 2 / (e^{2v} + 1), computed without cancellation.
      Real gap = 2L / (exp(2L * v) + 1L);
      Real offset = half_width * gap;
      if (k == 0) {
        acc += weight * f(mid);
        ++evals;
      } else {
        Real left = a + offset;
        Real right = b - offset;
        if (left > a) {
          acc += weight * f(left);
          ++evals;
        }
        if (right < b) {
          acc += weight * f(right);
          ++evals;
        }
      }
    }
    return evals;
  }

 private:
  long bits_;
  Real half_pi_;
  double u_max_ = 4.0;
};

}  // namespace cmdeg::detail
