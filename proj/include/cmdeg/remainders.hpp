#pragma once

// Remainders of the Stirling expansion of ln Gamma,
//
//   R_n(t) = (-1)^n [ ln Gamma(t) - (t - 1/2) ln t + t - ln(2 pi)/2
//                     - sum_{k=1}^{n} B_2k / (2k (2k-1) t^(2k-1)) ],
//
// and the signed derivatives phi_{n,m}(t) = (-1)^m R_n^(m)(t). All
// t-derivatives are symbolic: ln Gamma turns into polygamma functions and
// the partial sum is differentiated term by term in exact arithmetic, so no
// finite differences ever enter a sign decision.

#include <algorithm>
#include <cmath>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmdeg/bernoulli.hpp"
#include "cmdeg/detail/cancellation.hpp"
#include "cmdeg/errors.hpp"
#include "cmdeg/polygamma.hpp"
#include "cmdeg/real.hpp"

namespace cmdeg {

enum class Special {
  Q,             // psi'(t) - 1/t - 1/(2t^2) - 1/(6t^3) + 1/(30t^5) = phi_{2,2}
  PsiGap,        // ln t - 1/(2t) - psi(t)                            = phi_{0,1}
  TrigammaGap3,  // 1/t + 1/(2t^2) + 1/(6t^3) - psi'(t)               = phi_{1,2}
};

inline std::string to_string(Special s) {
  switch (s) {
    case Special::Q: return "Q";
    case Special::PsiGap: return "PsiGap";
    case Special::TrigammaGap3: return "TrigammaGap3";
  }
  return "?";
}

inline std::optional<Special> parse_special(const std::string& name) {
  if (name == "Q") return Special::Q;
  if (name == "PsiGap") return Special::PsiGap;
  if (name == "TrigammaGap3") return Special::TrigammaGap3;
  return std::nullopt;
}

struct RemainderLimits {
  int max_n = 8;
  int max_m = 6;
};

/// Identifies phi_{n,m}. Named specials are aliases of particular (n, m).
struct RemainderSpec {
  int n = 0;
  int m = 0;
  std::optional<Special> special;

  static RemainderSpec of(int n, int m) { return {n, m, std::nullopt}; }

  static RemainderSpec named(Special s) {
    switch (s) {
      case Special::Q: return {2, 2, s};
      case Special::PsiGap: return {0, 1, s};
      case Special::TrigammaGap3: return {1, 2, s};
    }
    throw InvalidSpec("unknown special");
  }

  std::string label() const {
    if (special) return to_string(*special);
    return "phi(" + std::to_string(n) + "," + std::to_string(m) + ")";
  }

  void validate(const RemainderLimits& limits = {}) const {
    if (n < 0 || m < 0) throw InvalidSpec("remainder indices must be >= 0");
    if (n > limits.max_n || m > limits.max_m)
      throw InvalidSpec("remainder (" + std::to_string(n) + "," + std::to_string(m) + ") exceeds configured maxima (" +
                        std::to_string(limits.max_n) + "," + std::to_string(limits.max_m) + ")");
  }

  friend bool operator==(const RemainderSpec& a, const RemainderSpec& b) {
    return a.n == b.n && a.m == b.m && a.special == b.special;
  }
};

/// a t ln t + b ln t + c + d ln(2 pi) + sum_e c_e t^e, with exact coefficients.
struct LogLaurent {
  Rational t_log_t;
  Rational log_t;
  Rational constant;
  Rational log_2pi;
  std::map<long, Rational> powers;

  LogLaurent derivative() const {
    LogLaurent d;
    d.log_t = t_log_t;
    d.constant = t_log_t;
    if (log_t != 0) d.powers[-1] += log_t;
    for (const auto& [e, c] : powers) {
      if (e == 0 || c == 0) continue;
      d.powers[e - 1] += c * Rational(e);
    }
    std::erase_if(d.powers, [](const auto& kv) { return kv.second == 0; });
    return d;
  }

  LogLaurent derivative(int order) const {
    LogLaurent d = *this;
    for (int i = 0; i < order; ++i) d = d.derivative();
    return d;
  }

  /// Individual summands at `t`, for cancellation tracking.
  std::vector<Real> terms(const Real& t, long bits) const {
    std::vector<Real> out;
    Real tt = t.rounded(std::max(bits, t.precision()));
    Real lt(bits);
    if (t_log_t != 0 || log_t != 0) lt = log(tt);
    if (t_log_t != 0) out.push_back(Real(t_log_t, bits) * tt * lt);
    if (log_t != 0) out.push_back(Real(log_t, bits) * lt);
    if (constant != 0) out.push_back(Real(constant, bits));
    if (log_2pi != 0) out.push_back(Real(log_2pi, bits) * log(2L * pi(bits)));
    for (const auto& [e, c] : powers) out.push_back(Real(c, bits) * pow(tt, e));
    return out;
  }

  Real evaluate(const Real& t, long bits) const {
    Real s(bits);
    for (const Real& x : terms(t, bits)) s += x;
    return s;
  }
};

/// (t - 1/2) ln t - t + ln(2 pi)/2 + sum_{k=1}^{n} B_2k / (2k (2k-1) t^(2k-1)).
inline LogLaurent stirling_partial_sum(int n) {
  LogLaurent p;
  p.t_log_t = 1;
  p.log_t = Rational(-1, 2);
  p.powers[1] = -1;
  p.log_2pi = Rational(1, 2);
  for (long k = 1; k <= n; ++k) {
    Rational c = bernoulli(2 * k) / Rational(2 * k * (2 * k - 1));
    c.canonicalize();
    p.powers[1 - 2 * k] += c;
  }
  return p;
}

/// m-th derivative of the degree-n Stirling partial sum at t.
inline Real asymptotic_partial_sum(int n, int m, const Real& t, const PrecisionPolicy& policy = {}) {
  policy.validate();
  if (n < 0 || m < 0) throw InvalidSpec("partial sum indices must be >= 0");
  detail::require_positive(t, "asymptotic_partial_sum");
  const LogLaurent p = stirling_partial_sum(n).derivative(m);
  const long extra = p.t_log_t != 0 || p.log_t != 0 ? 8 : 0;
  return detail::sum_with_cancellation([&](long bits) { return p.terms(t, bits); }, policy, extra,
                                       "asymptotic_partial_sum");
}

namespace detail {

inline long cancellation_seed(const RemainderSpec& spec, const Real& t) {
  // For large t, phi_{n,m} ~ t^-(2n+1+m) while its pieces are ~ t^-m or
  // t ln t, so about (2n+2) log2 t bits cancel.
  const double lt = std::max(0.0, std::log2(std::max(1.0, t.to_double())));
  return static_cast<long>(std::ceil((2 * spec.n + 2) * lt)) + 8;
}

}  // namespace detail

/// phi^(i)(t) for i = 0..max_order, where phi = phi_{n,m}.
inline std::vector<Real> remainder_derivatives(const RemainderSpec& spec, int max_order, const Real& t,
                                               const PrecisionPolicy& policy = {},
                                               const RemainderLimits& limits = {}) {
  policy.validate();
  spec.validate(limits);
  if (max_order < 0) throw InvalidIndex("derivative order must be >= 0");
  detail::require_positive(t, "remainder");

  const int m = spec.m;
  const int sign = (spec.n + spec.m) % 2 == 0 ? 1 : -1;
  std::vector<LogLaurent> parts;
  parts.reserve(static_cast<size_t>(max_order + 1));
  {
    LogLaurent p = stirling_partial_sum(spec.n).derivative(m);
    for (int i = 0; i <= max_order; ++i) {
      parts.push_back(p);
      p = p.derivative();
    }
  }

  long extra = detail::cancellation_seed(spec, t);
  for (int attempt = 0; attempt < 6; ++attempt) {
    const long bits = policy.internal_bits() + extra;
    PrecisionPolicy inner = policy.with_working(bits);
    // L^(M) = ln Gamma for M = 0, psi^(M-1) otherwise.
    std::vector<Real> gamma_part;
    gamma_part.reserve(static_cast<size_t>(max_order + 1));
    const int first_psi = std::max(0, m - 1);
    const int last_psi = m + max_order - 1;
    if (m == 0) gamma_part.push_back(log_gamma(t, inner));
    if (last_psi >= first_psi) {
      for (Real& v : polygamma_range(first_psi, last_psi, t, inner)) gamma_part.push_back(std::move(v));
    }

    std::vector<Real> out;
    out.reserve(static_cast<size_t>(max_order + 1));
    long worst = 0;
    for (int i = 0; i <= max_order; ++i) {
      std::vector<Real> terms = parts[static_cast<size_t>(i)].terms(t, bits);
      Real sum = gamma_part[static_cast<size_t>(i)];
      Real largest = abs(sum);
      for (const Real& x : terms) {
        sum -= x;
        if (abs(x) > largest) largest = abs(x);
      }
      worst = std::max(worst, detail::cancelled_bits(sum, largest) +
                                  detail::bit_length(static_cast<long>(terms.size()) + 1));
      out.push_back(sign > 0 ? sum : -sum);
    }
    if (bits - worst >= policy.working_bits + policy.guard_bits / 2) {
      for (Real& v : out) v = v.rounded(policy.working_bits);
      return out;
    }
    extra = worst + policy.guard_bits + extra / 2 + 8;
    if (extra > 64 * policy.working_bits) break;
  }
  throw PrecisionUnreachable("remainder " + spec.label() + ": cancellation exceeds the precision budget at t=" +
                             t.to_string(12));
}

/// phi_{n,m}(t) = (-1)^m R_n^(m)(t).
inline Real remainder_value(const RemainderSpec& spec, const Real& t, const PrecisionPolicy& policy = {},
                            const RemainderLimits& limits = {}) {
  return std::move(remainder_derivatives(spec, 0, t, policy, limits).front());
}

/// Q^(j)(t) straight from the explicit formula
/// Q = psi' - 1/t - 1/(2t^2) - 1/(6t^3) + 1/(30t^5); independent of the
/// generic remainder assembly.
inline Real q_derivative(int j, const Real& t, const PrecisionPolicy& policy = {}) {
  policy.validate();
  if (j < 0) throw InvalidIndex("derivative order must be >= 0");
  detail::require_positive(t, "q_derivative");
  struct PowerTerm {
    long power;
    Rational coef;
  };
  static const PowerTerm kTerms[] = {{1, Rational(-1)}, {2, Rational(-1, 2)}, {3, Rational(-1, 6)}, {5, Rational(1, 30)}};
  const double lt = std::max(0.0, std::log2(std::max(1.0, t.to_double())));
  const long extra = static_cast<long>(std::ceil(7 * lt)) + 8;
  auto terms_at = [&](long bits) {
    std::vector<Real> out;
    out.push_back(polygamma(j + 1, t, policy.with_working(bits)));
    Real tt = t.rounded(std::max(bits, t.precision()));
    for (const auto& [p, c] : kTerms) {
      // d^j t^-p = (-1)^j p (p+1) ... (p+j-1) t^-(p+j)
      Integer rising = 1;
      for (long i = 0; i < j; ++i) rising *= p + i;
      Rational coef = c * Rational(rising);
      if (j % 2 == 1) coef = -coef;
      out.push_back(Real(coef, bits) * pow(tt, -(p + j)));
    }
    return out;
  };
  return detail::sum_with_cancellation(terms_at, policy, extra, "q_derivative");
}

inline Real q_value(const Real& t, const PrecisionPolicy& policy = {}) { return q_derivative(0, t, policy); }

/// Leading behaviour of phi_{n,m} as t -> 0+: phi ~ c t^-order, or
/// phi ~ c ln t when `logarithmic` (order 0).
struct SmallTAsymptotics {
  long order = 0;
  bool logarithmic = false;
  Rational leading_coefficient;

  /// lim_{t->0+} (-t phi'(t) / phi(t)).
  Rational limit() const { return Rational(order); }
};

/// Exact pole order of phi_{n,m} at 0 from its term structure, using
/// t^M psi^(M-1)(t) -> (-1)^M (M-1)! and ln Gamma(t) = -ln t + O(t).
inline SmallTAsymptotics small_t_asymptotics(const RemainderSpec& spec, const RemainderLimits& limits = {}) {
  spec.validate(limits);
  const int m = spec.m;
  LogLaurent singular = stirling_partial_sum(spec.n).derivative(m);
  // singular := L^(m) - P^(m), restricted to its singular part.
  std::map<long, Rational> poles;
  for (const auto& [e, c] : singular.powers)
    if (e < 0) poles[e] -= c;
  Rational log_coef = -singular.log_t;
  if (m == 0) {
    log_coef += Rational(-1);
  } else {
    Integer f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m - 1));
    poles[-m] += (m % 2 == 0 ? Rational(f) : Rational(-f));
  }
  const Rational sign = (spec.n + spec.m) % 2 == 0 ? Rational(1) : Rational(-1);
  SmallTAsymptotics out;
  for (const auto& [e, c] : poles) {
    if (c != 0) {
      out.order = -e;
      out.leading_coefficient = sign * c;
      return out;
    }
  }
  if (log_coef != 0) {
    out.logarithmic = true;
    out.leading_coefficient = sign * log_coef;
  }
  return out;
}

}  // namespace cmdeg
