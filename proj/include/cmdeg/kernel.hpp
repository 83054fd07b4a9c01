#pragma once

// The Laplace kernel of Q,
//
//   h(s) = s / (1 - e^-s) - 1 - s/2 - s^2/12 + s^4/720,
//   Q(t) = int_0^inf h(s) e^(-ts) ds,
//
// its first four derivatives, and the Maclaurin coefficients of the
// numerator of h''''. Because h, ..., h''' vanish at 0+, four integrations
// by parts give t^4 Q(t) = int_0^inf h''''(s) e^(-ts) ds, so positivity of
// h'''' is what makes t^4 Q(t) completely monotonic.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "cmdeg/bernoulli.hpp"
#include "cmdeg/detail/cancellation.hpp"
#include "cmdeg/detail/tanh_sinh.hpp"
#include "cmdeg/errors.hpp"
#include "cmdeg/polygamma.hpp"
#include "cmdeg/real.hpp"

namespace cmdeg {

/// Derivative order 0..4 of the kernel.
class KernelOrder {
 public:
  explicit KernelOrder(int j) : j_(j) {
    if (j < 0 || j > 4) throw InvalidIndex("kernel order must be in 0..4, got " + std::to_string(j));
  }
  int value() const { return j_; }

 private:
  int j_;
};

/// Below this s the kernel is summed from its Maclaurin series.
inline const Rational kKernelSeriesCrossover{1, 4};

namespace detail {

// Closed forms h^(j)(s) = N_j(s, x) / (c_j (1 - x)^(j+1)) with x = e^-s.
// N_j is the numerator of the exponential-rational form divided through by
// e^((j+1)s); each monomial is coef * s^sp * x^xp.
struct Monomial {
  Rational coef;
  int s_power;
  int x_power;
};

struct ClosedForm {
  long denominator;
  std::vector<Monomial> numerator;
};

inline const std::array<ClosedForm, 5>& kernel_closed_forms() {
  static const std::array<ClosedForm, 5> forms = [] {
    std::array<ClosedForm, 5> f;
    // h = [s - (1 + s/2 + s^2/12 - s^4/720)(1 - x)] / (1 - x)
    f[0] = {1,
            {{1, 1, 0},
             {-1, 0, 0},
             {Rational(-1, 2), 1, 0},
             {Rational(-1, 12), 2, 0},
             {Rational(1, 720), 4, 0},
             {1, 0, 1},
             {Rational(1, 2), 1, 1},
             {Rational(1, 12), 2, 1},
             {Rational(-1, 720), 4, 1}}};
    // h' = [(s^3 - 30s + 90) - 2s(s^2 + 60)x + (s^3 - 30s - 90)x^2] / (180 (1-x)^2)
    f[1] = {180,
            {{1, 3, 0}, {-30, 1, 0}, {90, 0, 0}, {-2, 3, 1}, {-120, 1, 1}, {1, 3, 2}, {-30, 1, 2}, {-90, 0, 2}}};
    // h'' = [(s^2 - 10) - 3(s^2 - 20s + 30)x + 3(s^2 + 20s + 30)x^2 + (10 - s^2)x^3] / (60 (1-x)^3)
    f[2] = {60,
            {{1, 2, 0},
             {-10, 0, 0},
             {-3, 2, 1},
             {60, 1, 1},
             {-90, 0, 1},
             {3, 2, 2},
             {60, 1, 2},
             {90, 0, 2},
             {10, 0, 3},
             {-1, 2, 3}}};
    // h''' = [s + (90 - 34s)x - 114s x^2 - 2(17s + 45)x^3 + s x^4] / (30 (1-x)^4)
    f[3] = {30, {{1, 1, 0}, {90, 0, 1}, {-34, 1, 1}, {-114, 1, 2}, {-34, 1, 3}, {-90, 0, 3}, {1, 1, 4}}};
    // h'''' = [1 + 5(6s - 25)x + 10(33s - 35)x^2 + 10(33s + 35)x^3 + 5(6s + 25)x^4 - x^5] / (30 (1-x)^5)
    f[4] = {30,
            {{1, 0, 0},
             {30, 1, 1},
             {-125, 0, 1},
             {330, 1, 2},
             {-350, 0, 2},
             {330, 1, 3},
             {350, 0, 3},
             {30, 1, 4},
             {125, 0, 4},
             {-1, 0, 5}}};
    return f;
  }();
  return forms;
}

inline Real kernel_closed_form(int j, const Real& s, const PrecisionPolicy& policy) {
  const ClosedForm& form = kernel_closed_forms()[static_cast<size_t>(j)];
  const long inner = policy.internal_bits();
  auto terms_at = [&](long bits) {
    Real ss = s.rounded(std::max(bits, s.precision()));
    Real x = exp(-ss);
    std::vector<Real> out;
    out.reserve(form.numerator.size());
    for (const Monomial& mono : form.numerator)
      out.push_back(Real(mono.coef, bits) * pow(ss, static_cast<long>(mono.s_power)) *
                    pow(x, static_cast<long>(mono.x_power)));
    return out;
  };
  // Keep the guard bits through the final division.
  Real num = detail::sum_with_cancellation(terms_at, policy.with_working(inner), 0, "kernel_h");
  Real one_minus_x = -expm1(-s.rounded(std::max(inner, s.precision())));
  Real den = Real(form.denominator, inner) * pow(one_minus_x, static_cast<long>(j + 1));
  return (num / den).rounded(policy.working_bits);
}

// h^(j)(s) = sum_{k>=3} B_2k s^(2k-j) / (2k-j)!, convergent for |s| < 2 pi.
inline Real kernel_series(int j, const Real& s, const PrecisionPolicy& policy) {
  const long bits = policy.internal_bits() + 8;
  Real ss = s.rounded(std::max(bits, s.precision()));
  Real sum(bits);
  Real first(bits);
  Integer fact;
  for (long k = 3; k < 4096; ++k) {
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(2 * k - j));
    Real term = Real(Rational(bernoulli(2 * k) / Rational(fact)), bits) * pow(ss, 2 * k - j);
    sum += term;
    if (k == 3) first = abs(term);
    if (abs(term) < ldexp(first, -bits)) break;
  }
  return sum.rounded(policy.working_bits);
}

}  // namespace detail

/// h^(j)(s) for s > 0, j in 0..4.
inline Real kernel_h(KernelOrder order, const Real& s, const PrecisionPolicy& policy = {}) {
  policy.validate();
  detail::require_positive(s, "kernel_h");
  if (s < kKernelSeriesCrossover) return detail::kernel_series(order.value(), s, policy);
  return detail::kernel_closed_form(order.value(), s, policy);
}

inline Real kernel_h(int j, const Real& s, const PrecisionPolicy& policy = {}) {
  return kernel_h(KernelOrder(j), s, policy);
}

/// Numerator of the k-th Maclaurin coefficient of the bracket in h'''':
/// 5^k + (110k - 350) 3^k + 5(3k - 50) 2^(2k-1) + (165k + 350) 2^k + 30k + 125.
/// Valid for k >= 1; it vanishes for k = 1..6.
inline Integer h4_series_numerator(long k) {
  if (k < 1) throw InvalidIndex("h4 series numerator needs k >= 1");
  const auto pw = [](unsigned long base, unsigned long e) {
    Integer r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, e);
    return r;
  };
  const unsigned long uk = static_cast<unsigned long>(k);
  return pw(5, uk) + Integer(110 * k - 350) * pw(3, uk) + Integer(5 * (3 * k - 50)) * pw(2, 2 * uk - 1) +
         Integer(165 * k + 350) * pw(2, uk) + Integer(30 * k + 125);
}

/// c_k with h''''(s) = 1/(30 (e^s - 1)^5) sum_{k>=7} c_k s^k.
struct KernelCoefficient {
  long k;
  Rational value;
};

inline Rational h4_series_value(long k) {
  if (k < 7) throw InvalidIndex("h4 series starts at k = 7, got " + std::to_string(k));
  Integer fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(k));
  return make_rational(h4_series_numerator(k), fact);
}

/// The k-th coefficient; a nonpositive coefficient is a hard error.
inline KernelCoefficient h4_series_coefficient(long k) {
  Rational c = h4_series_value(k);
  if (c <= 0) throw Error("NonPositiveCoefficient", "h4 series coefficient c_" + std::to_string(k) + " <= 0");
  return {k, std::move(c)};
}

struct PositivityScan {
  long k_max = 0;
  long checked = 0;
  bool all_positive = true;
  std::optional<long> first_failure;
};

/// Checks c_k > 0 exactly for 7 <= k <= k_max. This is evidence over a
/// finite range, not a proof for all k.
inline PositivityScan h4_positivity_scan(long k_max) {
  if (k_max < 7) throw InvalidIndex("positivity scan needs k_max >= 7, got " + std::to_string(k_max));
  PositivityScan scan;
  scan.k_max = k_max;
  for (long k = 7; k <= k_max; ++k) {
    ++scan.checked;
    if (sgn(h4_series_numerator(k)) <= 0) {
      scan.all_positive = false;
      scan.first_failure = k;
      break;
    }
  }
  return scan;
}

/// 1/(30 (e^s - 1)^5) sum_{k=7}^{k_max} c_k s^k.
inline Real h4_series_partial(const Real& s, long k_max, long bits) {
  Real ss = s.rounded(std::max(bits, s.precision()));
  Real sum(bits);
  for (long k = 7; k <= k_max; ++k) sum += Real(h4_series_value(k), bits) * pow(ss, k);
  return sum / (30L * pow(expm1(ss), 5));
}

struct QuadratureParams {
  double tolerance = 1e-20;
  int max_level = 12;
  double panel_width = 2.0;
};

struct LaplaceResult {
  Real value;
  Real error_estimate;  // last refinement difference plus the tail bound
  Real tail_bound;
  Real cutoff;
  int levels = 0;
  long evaluations = 0;
};

namespace detail {

// int_S^inf (s/2 + s^4/720) e^-ts ds, which dominates the tail of the
// Laplace integral because 0 < h(s) <= s/2 + s^4/720.
inline Real laplace_tail_bound(const Real& cutoff, const Real& t) {
  const long bits = cutoff.precision();
  // int_S^inf s^n e^-ts ds = e^-tS sum_{i=0}^{n} n!/i! S^i / t^(n-i+1)
  auto moment = [&](long n) {
    Real sum(bits);
    Integer ratio = 1;  // n!/i!, built from i = n downward
    for (long i = n; i >= 0; --i) {
      sum += Real(ratio, bits) * pow(cutoff, i) / pow(t, n - i + 1);
      ratio *= i;
    }
    return sum;
  };
  return exp(-(t * cutoff)) * (moment(1) / 2L + moment(4) / 720L);
}

}  // namespace detail

/// int_0^inf h(s) e^-ts ds by panelled tanh-sinh quadrature. The interval
/// is cut at S = max(1, 40/t), doubled until the tail bound is under a
/// quarter of the tolerance; node count doubles per level until two levels
/// agree to a quarter of the tolerance.
inline LaplaceResult laplace_reconstruct(const Real& t, const QuadratureParams& quad = {},
                                         const PrecisionPolicy& policy = {}) {
  policy.validate();
  detail::require_positive(t, "laplace_reconstruct");
  if (!(quad.tolerance > 0) || quad.max_level < 1 || !(quad.panel_width > 0))
    throw InvalidArgument("invalid quadrature parameters");
  const long bits = policy.internal_bits() + 16;
  const Real tt = t.rounded(std::max(bits, t.precision()));
  const Real tol(quad.tolerance, bits);
  const Real quarter = tol / 4L;

  Real cutoff = Real(40L, bits) / tt;
  if (cutoff < 1L) cutoff = Real(1L, bits);
  Real tail = detail::laplace_tail_bound(cutoff, tt);
  for (int i = 0; tail > quarter; ++i) {
    if (i > 200) throw QuadratureNotConverged("laplace_reconstruct: tail bound does not shrink");
    cutoff *= 2L;
    tail = detail::laplace_tail_bound(cutoff, tt);
  }

  const long panels = std::max(1L, static_cast<long>(std::ceil(cutoff.to_double() / quad.panel_width)));
  const Real width = cutoff / panels;
  const PrecisionPolicy inner = policy.with_working(bits);
  auto integrand = [&](const Real& s) { return kernel_h(0, s, inner) * exp(-(tt * s)); };

  detail::TanhSinh rule(bits);
  Real acc(bits);
  long evals = 0;
  auto add_level = [&](int level) {
    for (long p = 0; p < panels; ++p) {
      Real a = width * p;
      Real b = width * (p + 1);
      evals += rule.add_level(a, b, level, integrand, acc);
    }
  };

  add_level(0);
  Real previous = acc;
  for (int level = 1; level <= quad.max_level; ++level) {
    add_level(level);
    Real estimate = ldexp(acc, -level);
    Real diff = abs(estimate - previous);
    if (level >= 3 && diff < quarter) {
      LaplaceResult r;
      r.value = estimate.rounded(policy.working_bits);
      r.error_estimate = (diff + tail).rounded(64);
      r.tail_bound = tail.rounded(64);
      r.cutoff = cutoff.rounded(64);
      r.levels = level;
      r.evaluations = evals;
      return r;
    }
    previous = std::move(estimate);
  }
  throw QuadratureNotConverged("laplace_reconstruct: no convergence within " + std::to_string(quad.max_level) +
                               " levels at t=" + t.to_string(12));
}

}  // namespace cmdeg
