#pragma once

// ln Gamma, digamma and polygamma functions on the positive real axis.
//
// Both evaluators shift the argument upward with the functional equations
//
//   psi^(k)(w) = psi^(k)(w + 1) + (-1)^(k+1) k! / w^(k+1)
//   ln Gamma(w) = ln Gamma(w + 1) - ln w
//
// until it reaches max(10, working_bits / 3), then sum the Stirling-type
// asymptotic series
//
//   psi^(k)(w) ~ (-1)^(k-1) [ (k-1)!/w^k + k!/(2 w^(k+1))
//                             + sum_{j>=1} B_2j (2j+k-1)! / ((2j)! w^(2j+k)) ]
//   psi(w)     ~ ln w - 1/(2w) - sum_{j>=1} B_2j / (2j w^(2j))
//   ln Gamma(w) ~ (w - 1/2) ln w - w + ln(2 pi)/2 + sum_{j>=1} B_2j / (2j (2j-1) w^(2j-1))
//
// The series is cut at the first term below the target; if the terms start
// growing before that, the shift is doubled. Accuracy is relative to
// max(1, |value|): the absolute error is below
// 2^-(working_bits - guard_bits) * max(1, |value|).

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "cmdeg/bernoulli.hpp"
#include "cmdeg/errors.hpp"
#include "cmdeg/real.hpp"

namespace cmdeg {

inline constexpr long kMaxShifts = 1'000'000;

namespace detail {

inline long shift_threshold(const PrecisionPolicy& policy) { return std::max<long>(10, policy.working_bits / 3); }

inline void require_positive(const Real& t, const char* what) {
  if (!(t > 0L)) throw NonPositiveArgument(std::string(what) + " requires t > 0, got " + t.to_string(12));
}

inline long ceil_log2(long n) {
  long b = 0;
  while ((1L << b) < n) ++b;
  return b;
}

// Asymptotic series for psi^(k), k = k_min..k_max, at a common large w.
// Returns false when some order's terms turn around before reaching the
// relative target 2^-bits.
inline bool polygamma_series(int k_min, int k_max, const Real& w, long bits, std::vector<Real>& out) {
  out.assign(static_cast<size_t>(k_max - k_min + 1), Real(bits));
  const Real winv = 1L / w;
  const Real winv2 = winv * winv;
  for (int k = k_min; k <= k_max; ++k) {
    Real& sum = out[static_cast<size_t>(k - k_min)];
    Real lead(bits);
    // pw = w^-(k+2) for the first Bernoulli term (k >= 1), w^-2 for k = 0.
    Real pw(bits);
    if (k == 0) {
      sum = log(w) - winv / 2L;
      lead = abs(sum);
      pw = winv2;
    } else {
      Integer fact_km1;
      mpz_fac_ui(fact_km1.get_mpz_t(), static_cast<unsigned long>(k - 1));
      Real wk = pow(winv, static_cast<long>(k));
      sum = Real(fact_km1, bits) * wk;
      sum += Real(Integer(fact_km1 * k), bits) * wk * winv / 2L;
      lead = sum;
      pw = wk * winv2;
    }
    const Real tol = ldexp(lead, -bits);
    // ratio = (2j+k-1)!/(2j)!, or 1/(2j) for the digamma case.
    Rational ratio;
    if (k == 0) {
      ratio = Rational(1, 2);
    } else {
      Integer num;
      mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(k + 1));
      ratio = Rational(num, 2);
      ratio.canonicalize();
    }
    Real prev_mag(bits);
    bool converged = false;
    for (long j = 1; j < 4096; ++j) {
      Rational coef = bernoulli(2 * j) * ratio;
      Real term = Real(coef, bits) * pw;
      Real mag = abs(term);
      if (j > 1 && mag > prev_mag) break;
      if (k == 0) sum -= term; else sum += term;
      if (mag < tol) {
        converged = true;
        break;
      }
      prev_mag = mag;
      pw *= winv2;
      if (k == 0) {
        ratio = Rational(1, 2 * (j + 1));
      } else {
        ratio *= Rational((2 * j + k) * (2 * j + k + 1), (2 * j + 1) * (2 * j + 2));
        ratio.canonicalize();
      }
    }
    if (!converged) return false;
    if (k >= 1 && k % 2 == 0) sum = -sum;  // (-1)^(k-1)
  }
  return true;
}

}  // namespace detail

/// psi^(k)(t) for k = k_min..k_max in one pass (shared shift and powers).
inline std::vector<Real> polygamma_range(int k_min, int k_max, const Real& t, const PrecisionPolicy& policy = {}) {
  policy.validate();
  if (k_min < 0 || k_max < k_min) throw InvalidIndex("polygamma order range must satisfy 0 <= k_min <= k_max");
  detail::require_positive(t, "polygamma");

  auto evaluate = [&](long working) {
    long target = std::max<long>(10, working / 3);
    while (true) {
      Real tt = t.rounded(std::max(t.precision(), working));
      long shifts = 0;
      if (tt < target) {
        Real gap = Real(target, 64) - tt;
        shifts = static_cast<long>(std::ceil(gap.to_double()));
      }
      if (shifts > kMaxShifts)
        throw PrecisionUnreachable("polygamma: shift budget exceeded for t=" + t.to_string(12));
      const long bits = working + policy.guard_bits + 8 + detail::ceil_log2(shifts + 2) + detail::ceil_log2(k_max + 2);
      tt = t.rounded(std::max(t.precision(), bits));
      Real w = tt + shifts;
      std::vector<Real> series;
      if (!detail::polygamma_series(k_min, k_max, w, bits, series)) {
        target *= 2;
        continue;
      }
      // Shift correction sum_{i<shifts} 1/(t+i)^(k+1), accumulated per order.
      std::vector<Real> corr(series.size(), Real(bits));
      for (long i = 0; i < shifts; ++i) {
        Real x = 1L / (tt + i);
        Real xp = pow(x, static_cast<long>(k_min + 1));
        for (int k = k_min; k <= k_max; ++k) {
          corr[static_cast<size_t>(k - k_min)] += xp;
          xp *= x;
        }
      }
      std::vector<Real> out;
      out.reserve(series.size());
      Integer fact = 1;
      for (int k = 1; k <= k_min; ++k) fact *= k;
      for (int k = k_min; k <= k_max; ++k) {
        if (k > 0 && k > k_min) fact *= k;
        Real c = corr[static_cast<size_t>(k - k_min)] * Real(fact, bits);
        // psi^(k)(t) = psi^(k)(t+N) + (-1)^(k+1) k! sum 1/(t+i)^(k+1)
        Real v = (k % 2 == 1) ? series[static_cast<size_t>(k - k_min)] + c : series[static_cast<size_t>(k - k_min)] - c;
        out.push_back(v.rounded(working));
      }
      return out;
    }
  };

  std::vector<Real> result = evaluate(policy.working_bits);
  if (policy.agreement_check) {
    std::vector<Real> check = evaluate(2 * policy.working_bits);
    for (size_t i = 0; i < result.size(); ++i) {
      Real scale = max_abs(check[i], Real(1L, 64));
      if (abs(result[i] - check[i]) > ldexp(abs(scale), -(policy.working_bits - policy.guard_bits)))
        throw PrecisionUnreachable("polygamma: two-precision agreement check failed");
    }
  }
  return result;
}

/// psi^(k)(t), t > 0. k = 0 is the digamma function.
inline Real polygamma(int k, const Real& t, const PrecisionPolicy& policy = {}) {
  return std::move(polygamma_range(k, k, t, policy).front());
}

inline Real digamma(const Real& t, const PrecisionPolicy& policy = {}) { return polygamma(0, t, policy); }

inline Real trigamma(const Real& t, const PrecisionPolicy& policy = {}) { return polygamma(1, t, policy); }

/// ln Gamma(t), t > 0.
inline Real log_gamma(const Real& t, const PrecisionPolicy& policy = {}) {
  policy.validate();
  detail::require_positive(t, "log_gamma");

  auto evaluate = [&](long working) {
    long target = std::max<long>(10, working / 3);
    while (true) {
      long shifts = 0;
      if (t < target) shifts = static_cast<long>(std::ceil((Real(target, 64) - t.rounded(64)).to_double()));
      if (shifts > kMaxShifts)
        throw PrecisionUnreachable("log_gamma: shift budget exceeded for t=" + t.to_string(12));
      // The asymptotic part is O(w ln w); the extra bits cover its
      // cancellation against ln prod(t+i) near the zeros at t = 1, 2.
      const long bits = working + policy.guard_bits + 16 + detail::ceil_log2(shifts + 2);
      Real tt = t.rounded(std::max(t.precision(), bits));
      Real w = tt + shifts;
      const Real winv = 1L / w;
      const Real winv2 = winv * winv;
      Real sum = (w - Rational(1, 2)) * log(w) - w + log(2L * pi(bits)) / 2L;
      const Real tol = ldexp(max_abs(sum, Real(1L, 64)), -bits);
      Real pw = winv;
      Real prev(bits);
      bool converged = false;
      for (long j = 1; j < 4096; ++j) {
        Real term = Real(Rational(bernoulli(2 * j) / Rational(2 * j * (2 * j - 1))), bits) * pw;
        Real mag = abs(term);
        if (j > 1 && mag > prev) break;
        sum += term;
        if (mag < abs(tol)) {
          converged = true;
          break;
        }
        prev = mag;
        pw *= winv2;
      }
      if (!converged) {
        target *= 2;
        continue;
      }
      if (shifts > 0) {
        Real prod(1L, bits);
        for (long i = 0; i < shifts; ++i) prod *= tt + i;
        sum -= log(prod);
      }
      return sum.rounded(working);
    }
  };

  Real result = evaluate(policy.working_bits);
  if (policy.agreement_check) {
    Real check = evaluate(2 * policy.working_bits);
    Real scale = abs(max_abs(check, Real(1L, 64)));
    if (abs(result - check) > ldexp(scale, -(policy.working_bits - policy.guard_bits)))
      throw PrecisionUnreachable("log_gamma: two-precision agreement check failed");
  }
  return result;
}

}  // namespace cmdeg
