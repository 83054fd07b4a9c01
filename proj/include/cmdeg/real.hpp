#pragma once

// Arbitrary-precision real numbers (MPFR) and exact rationals (GMP).
//
// A Real carries its own precision in bits. Binary arithmetic between two
// Reals produces a result at the larger of the two precisions, so mixing a
// 128-bit and a 256-bit value never silently loses the extra bits.

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdlib>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "cmdeg/errors.hpp"

namespace cmdeg {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr long kMinPrecisionBits = 24;

/// Builds a rational in lowest terms; throws InvalidArgument on a zero
/// denominator.
inline Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw InvalidArgument("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses an exact decimal such as "-4.05", "1e-3" or "7/20" into a Rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InvalidArgument("empty number");
  if (auto slash = s.find('/'); slash != std::string::npos) {
    Integer num, den;
    if (num.set_str(s.substr(0, slash), 10) != 0 || den.set_str(s.substr(slash + 1), 10) != 0)
      throw InvalidArgument("malformed rational '" + s + "'");
    return make_rational(num, den);
  }
  long exp10 = 0;
  if (auto e = s.find_first_of("eE"); e != std::string::npos) {
    char* end = nullptr;
    std::string tail = s.substr(e + 1);
    exp10 = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0') throw InvalidArgument("malformed exponent in '" + s + "'");
    s.resize(e);
  }
  bool negative = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  std::string digits;
  bool seen_point = false, seen_digit = false;
  for (char c : s) {
    if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --exp10;
    } else {
      throw InvalidArgument("malformed number '" + std::string(text) + "'");
    }
  }
  if (!seen_digit) throw InvalidArgument("malformed number '" + std::string(text) + "'");
  Integer mant(digits, 10);
  if (negative) mant = -mant;
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exp10)));
  return exp10 >= 0 ? Rational(mant * scale) : make_rational(mant, scale);
}

class Real {
 public:
  explicit Real(long bits = 128) {
    mpfr_init2(v_, clamp(bits));
    mpfr_set_zero(v_, 1);
  }
  Real(long value, long bits) : Real(bits) { mpfr_set_si(v_, value, MPFR_RNDN); }
  Real(int value, long bits) : Real(static_cast<long>(value), bits) {}
  Real(double value, long bits) : Real(bits) { mpfr_set_d(v_, value, MPFR_RNDN); }
  Real(const Integer& value, long bits) : Real(bits) { mpfr_set_z(v_, value.get_mpz_t(), MPFR_RNDN); }
  Real(const Rational& value, long bits) : Real(bits) { mpfr_set_q(v_, value.get_mpq_t(), MPFR_RNDN); }

  Real(const Real& other) {
    mpfr_init2(v_, mpfr_get_prec(other.v_));
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  Real(Real&& other) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, other.v_);
  }
  Real& operator=(const Real& other) {
    if (this != &other) {
      mpfr_set_prec(v_, mpfr_get_prec(other.v_));
      mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& other) noexcept {
    mpfr_swap(v_, other.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  /// Parses a decimal string, correctly rounded to `bits`.
  static Real parse(std::string_view text, long bits) {
    Real r(bits);
    std::string s(text);
    char* end = nullptr;
    if (s.empty()) throw InvalidArgument("empty real");
    mpfr_strtofr(r.v_, s.c_str(), &end, 10, MPFR_RNDN);
    if (end == s.c_str() || *end != '\0') throw InvalidArgument("malformed real '" + s + "'");
    return r;
  }

  long precision() const { return static_cast<long>(mpfr_get_prec(v_)); }

  /// Copy rounded (or widened) to the given precision.
  Real rounded(long bits) const {
    Real r(bits);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  /// floor(log2|x|) + 1 for nonzero finite x (the MPFR exponent).
  long exponent() const { return is_zero() || !is_finite() ? 0 : static_cast<long>(mpfr_get_exp(v_)); }

  /// Number of significant decimal digits that round-trip at this precision.
  int round_trip_digits() const { return static_cast<int>(mpfr_get_str_ndigits(10, mpfr_get_prec(v_))); }

  /// Scientific notation with `digits` significant digits, e.g. "1.1600733e-2".
  std::string to_string(int digits) const {
    if (mpfr_nan_p(v_)) return "nan";
    if (mpfr_inf_p(v_)) return sign() > 0 ? "inf" : "-inf";
    if (is_zero()) return "0";
    digits = std::max(digits, 1);
    mpfr_exp_t exp10 = 0;
    char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v_, MPFR_RNDN);
    std::string mant(raw);
    mpfr_free_str(raw);
    std::string out;
    if (mant[0] == '-') {
      out.push_back('-');
      mant.erase(0, 1);
    }
    out.push_back(mant[0]);
    if (mant.size() > 1) {
      out.push_back('.');
      out.append(mant, 1, std::string::npos);
    }
    out += "e" + std::to_string(static_cast<long>(exp10) - 1);
    return out;
  }

  /// Lossless decimal form at this precision.
  std::string to_decimal() const { return to_string(round_trip_digits()); }

  Real operator-() const {
    Real r(precision());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  Real& operator+=(const Real& b) { return apply(b, mpfr_add); }
  Real& operator-=(const Real& b) { return apply(b, mpfr_sub); }
  Real& operator*=(const Real& b) { return apply(b, mpfr_mul); }
  Real& operator/=(const Real& b) { return apply(b, mpfr_div); }

  Real& operator+=(long b) { mpfr_add_si(v_, v_, b, MPFR_RNDN); return *this; }
  Real& operator-=(long b) { mpfr_sub_si(v_, v_, b, MPFR_RNDN); return *this; }
  Real& operator*=(long b) { mpfr_mul_si(v_, v_, b, MPFR_RNDN); return *this; }
  Real& operator/=(long b) { mpfr_div_si(v_, v_, b, MPFR_RNDN); return *this; }

  Real& operator+=(const Rational& b) { mpfr_add_q(v_, v_, b.get_mpq_t(), MPFR_RNDN); return *this; }
  Real& operator-=(const Rational& b) { mpfr_sub_q(v_, v_, b.get_mpq_t(), MPFR_RNDN); return *this; }
  Real& operator*=(const Rational& b) { mpfr_mul_q(v_, v_, b.get_mpq_t(), MPFR_RNDN); return *this; }
  Real& operator/=(const Rational& b) { mpfr_div_q(v_, v_, b.get_mpq_t(), MPFR_RNDN); return *this; }

  friend Real operator+(Real a, const Real& b) { return widen(std::move(a), b) += b; }
  friend Real operator-(Real a, const Real& b) { return widen(std::move(a), b) -= b; }
  friend Real operator*(Real a, const Real& b) { return widen(std::move(a), b) *= b; }
  friend Real operator/(Real a, const Real& b) { return widen(std::move(a), b) /= b; }

  friend Real operator+(Real a, long b) { return a += b; }
  friend Real operator-(Real a, long b) { return a -= b; }
  friend Real operator*(Real a, long b) { return a *= b; }
  friend Real operator/(Real a, long b) { return a /= b; }
  friend Real operator+(long a, Real b) { return b += a; }
  friend Real operator-(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }
  friend Real operator*(long a, Real b) { return b *= a; }
  friend Real operator/(long a, const Real& b) {
    Real r(b.precision());
    mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
    return r;
  }

  friend Real operator+(Real a, const Rational& b) { return a += b; }
  friend Real operator-(Real a, const Rational& b) { return a -= b; }
  friend Real operator*(Real a, const Rational& b) { return a *= b; }
  friend Real operator/(Real a, const Rational& b) { return a /= b; }
  friend Real operator*(const Rational& a, Real b) { return b *= a; }

  friend bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.v_, b.v_) != 0; }
  friend std::partial_ordering operator<=>(const Real& a, const Real& b) {
    if (mpfr_unordered_p(a.v_, b.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp(a.v_, b.v_);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
  friend std::partial_ordering operator<=>(const Real& a, long b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_si(a.v_, b);
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }
  friend std::partial_ordering operator<=>(const Real& a, const Rational& b) {
    if (mpfr_nan_p(a.v_)) return std::partial_ordering::unordered;
    int c = mpfr_cmp_q(a.v_, b.get_mpq_t());
    return c < 0 ? std::partial_ordering::less
                 : (c > 0 ? std::partial_ordering::greater : std::partial_ordering::equivalent);
  }

  friend std::ostream& operator<<(std::ostream& os, const Real& x) { return os << x.to_string(20); }

 private:
  static mpfr_prec_t clamp(long bits) { return static_cast<mpfr_prec_t>(std::max(bits, kMinPrecisionBits)); }

  static Real widen(Real a, const Real& b) {
    if (b.precision() > a.precision()) mpfr_prec_round(a.v_, mpfr_get_prec(b.v_), MPFR_RNDN);
    return a;
  }

  Real& apply(const Real& b, int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
    if (b.precision() > precision()) mpfr_prec_round(v_, mpfr_get_prec(b.v_), MPFR_RNDN);
    op(v_, v_, b.v_, MPFR_RNDN);
    return *this;
  }

  mpfr_t v_;
};

namespace detail {
template <class F>
Real unary(const Real& x, F f) {
  Real r(x.precision());
  f(r.get(), x.get(), MPFR_RNDN);
  return r;
}
}  // namespace detail

inline Real abs(const Real& x) { return detail::unary(x, mpfr_abs); }
inline Real sqrt(const Real& x) { return detail::unary(x, mpfr_sqrt); }
inline Real exp(const Real& x) { return detail::unary(x, mpfr_exp); }
inline Real expm1(const Real& x) { return detail::unary(x, mpfr_expm1); }
inline Real log(const Real& x) { return detail::unary(x, mpfr_log); }
inline Real log1p(const Real& x) { return detail::unary(x, mpfr_log1p); }
inline Real tanh(const Real& x) { return detail::unary(x, mpfr_tanh); }
inline Real sinh(const Real& x) { return detail::unary(x, mpfr_sinh); }
inline Real cosh(const Real& x) { return detail::unary(x, mpfr_cosh); }

inline Real pow(const Real& x, long n) {
  Real r(x.precision());
  mpfr_pow_si(r.get(), x.get(), n, MPFR_RNDN);
  return r;
}

inline Real pow(const Real& x, const Real& y) {
  Real r(std::max(x.precision(), y.precision()));
  mpfr_pow(r.get(), x.get(), y.get(), MPFR_RNDN);
  return r;
}

/// x * 2^e, exact.
inline Real ldexp(const Real& x, long e) {
  Real r(x.precision());
  mpfr_mul_2si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

inline Real pi(long bits) {
  Real r(bits);
  mpfr_const_pi(r.get(), MPFR_RNDN);
  return r;
}

inline const Real& max_abs(const Real& a, const Real& b) { return mpfr_cmpabs(a.get(), b.get()) >= 0 ? a : b; }

/// Working precision and the extra bits spent to protect it.
///
/// `working_bits` is the precision of returned values. Internal evaluation
/// runs at working_bits + guard_bits (plus whatever cancellation estimates
/// call for). With `agreement_check` set, evaluators recompute at doubled
/// precision and throw PrecisionUnreachable when the two disagree beyond
/// the guard.
struct PrecisionPolicy {
  long working_bits = 128;
  long guard_bits = 16;
  bool agreement_check = false;

  void validate() const {
    if (working_bits < kMinPrecisionBits)
      throw InvalidArgument("working_bits must be >= " + std::to_string(kMinPrecisionBits));
    if (guard_bits < 8) throw InvalidArgument("guard_bits must be >= 8");
  }

  long internal_bits() const { return working_bits + guard_bits; }

  PrecisionPolicy with_working(long bits) const {
    PrecisionPolicy p = *this;
    p.working_bits = bits;
    return p;
  }
};

}  // namespace cmdeg
