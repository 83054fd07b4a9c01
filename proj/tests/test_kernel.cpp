#include <gtest/gtest.h>

#include <chrono>

#include "cmdeg/kernel.hpp"
#include "cmdeg/remainders.hpp"
#include "support.hpp"

using cmdeg::PrecisionPolicy;
using cmdeg::Rational;
using cmdeg::Real;
using cmdeg::test::within_bits;

namespace {

const PrecisionPolicy kPolicy{};

Real R(const char* text, long bits = 128) { return Real(cmdeg::parse_rational(text), bits); }

// h(s) = s/(1 - e^-s) - 1 - s/2 - s^2/12 + s^4/720, evaluated directly at
// high precision.
Real direct_h(const Real& s) {
  const long bits = 1024;
  const Real x = s.rounded(bits);
  const Real x2 = x * x;
  return (x / -cmdeg::expm1(-x) - 1L - x / 2L - x2 / 12L + x2 * x2 / 720L).rounded(128);
}

}  // namespace

TEST(Kernel, FrozenValueAtOne) {
  // Independent 40-digit evaluation.
  const Real expected = Real::parse("3.226242488197994055756066456711410241106e-5", 128);
  EXPECT_TRUE(within_bits(cmdeg::kernel_h(0, R("1"), kPolicy), expected, 120));
  EXPECT_TRUE(within_bits(cmdeg::kernel_h(0, R("1"), kPolicy), direct_h(R("1")), 120));
}

TEST(Kernel, MatchesDirectFormula) {
  for (const char* s : {"0.01", "0.2", "0.3", "2", "7.5", "40"}) {
    const Real v = cmdeg::kernel_h(0, R(s), kPolicy);
    EXPECT_LT(abs(v - direct_h(R(s))) / v, Real(1e-35, 64)) << s;
  }
}

TEST(Kernel, SixthOrderContactAtZero) {
  const Real s = R("1e-3");
  const Real scaled = cmdeg::kernel_h(0, s, kPolicy) / cmdeg::pow(s, 6);
  EXPECT_LT(abs(scaled - Real(Rational(1, 30240), 128)), Real(1e-7, 64));
}

TEST(Kernel, BoundaryLimits) {
  const Real s = R("1e-4");
  for (int j = 0; j <= 3; ++j) EXPECT_LT(abs(cmdeg::kernel_h(j, s, kPolicy)), Real(1e-8, 64)) << "j=" << j;
}

TEST(Kernel, PositiveOnLogGrid) {
  const Real lo = cmdeg::log(R("1e-2")), hi = cmdeg::log(R("50"));
  for (int i = 0; i <= 120; ++i) {
    const Real s = cmdeg::exp(lo + (hi - lo) * Real(Rational(i, 120), 128));
    for (int j = 0; j <= 4; ++j) EXPECT_GT(cmdeg::kernel_h(j, s, kPolicy), 0L) << "j=" << j << " s=" << s;
  }
}

TEST(Kernel, LargeSLimit) {
  // h'''' -> 24/720 = 1/30 as s -> inf
  EXPECT_LT(abs(cmdeg::kernel_h(4, R("60"), kPolicy) - Real(Rational(1, 30), 128)), Real(1e-20, 64));
}

TEST(Kernel, DerivativeChain) {
  const long w = kPolicy.working_bits;
  const PrecisionPolicy fine = kPolicy.with_working(2 * w);
  const Real h = cmdeg::ldexp(Real(1L, 2 * w), -w / 3);
  for (int j = 0; j <= 3; ++j) {
    for (const char* s : {"0.1", "0.24", "0.26", "1", "3.5", "20"}) {
      const Real x = R(s, 2 * w);
      const Real diff = (cmdeg::kernel_h(j, x + h, fine) - cmdeg::kernel_h(j, x - h, fine)) / (2L * h);
      const Real exact = cmdeg::kernel_h(j + 1, x, kPolicy);
      EXPECT_LT(abs(diff - exact) / abs(exact), cmdeg::ldexp(Real(1L, 64), -w / 4)) << "j=" << j << " s=" << s;
    }
  }
}

TEST(Kernel, SeriesAndClosedFormAgreeAtCrossover) {
  const Real s(cmdeg::kKernelSeriesCrossover, 128);
  for (int j = 0; j <= 4; ++j) {
    const Real a = cmdeg::detail::kernel_series(j, s, kPolicy);
    const Real b = cmdeg::detail::kernel_closed_form(j, s, kPolicy);
    EXPECT_TRUE(within_bits(a, b, 118)) << "j=" << j;
    EXPECT_LT(abs(a - b) / abs(b), cmdeg::ldexp(Real(1L, 64), -118)) << "j=" << j;
  }
}

TEST(Kernel, ClosedFormMatchesCoefficientSeries) {
  // Tail bound: c_k <= 5^(k+1)/k! once k > 60, so the tail past K is below
  // 5^(K+2) s^(K+1) / (K+1)! / (1 - 5s/(K+2)) before the prefactor.
  const long K = 60;
  for (const char* text : {"0.5", "1", "2.5", "5"}) {
    const Real s = R(text, 256);
    const Real partial = cmdeg::h4_series_partial(s, K, 256);
    const Real closed = cmdeg::kernel_h(4, s, kPolicy.with_working(256));
    Real fact(1L, 256);
    for (long i = 2; i <= K + 1; ++i) fact *= i;
    const Real geometric = Real(1L, 256) - 5L * s / (K + 2);
    const Real tail = cmdeg::pow(Real(5L, 256), K + 2) * cmdeg::pow(s, K + 1) / fact / geometric /
                      (30L * cmdeg::pow(cmdeg::expm1(s), 5));
    EXPECT_LE(abs(closed - partial), tail + cmdeg::ldexp(abs(closed), -200)) << "s=" << text;
  }
}

TEST(Kernel, CoefficientsMatchKnownValues) {
  const Rational expected[] = {Rational(5, 7), Rational(25, 14), Rational(193, 84), Rational(85, 42), Rational(5065, 3696)};
  for (long k = 7; k <= 11; ++k) {
    const auto c = cmdeg::h4_series_coefficient(k);
    EXPECT_EQ(c.k, k);
    EXPECT_EQ(2 * c.value, expected[k - 7]) << "k=" << k;
  }
  EXPECT_EQ(cmdeg::h4_series_coefficient(7).value, Rational(5, 14));
  EXPECT_EQ(cmdeg::h4_series_coefficient(11).value, Rational(5065, 7392));
}

TEST(Kernel, NumeratorVanishesBelowSeven) {
  for (long k = 1; k <= 6; ++k) EXPECT_EQ(cmdeg::h4_series_numerator(k), 0) << "k=" << k;
  EXPECT_THROW(cmdeg::h4_series_coefficient(6), cmdeg::InvalidIndex);
}

TEST(Kernel, PositivityScan) {
  const auto start = std::chrono::steady_clock::now();
  const auto scan = cmdeg::h4_positivity_scan(200);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_TRUE(scan.all_positive);
  EXPECT_EQ(scan.checked, 194);
  EXPECT_FALSE(scan.first_failure.has_value());
  EXPECT_LT(seconds, 5.0);
  EXPECT_TRUE(cmdeg::h4_positivity_scan(7).all_positive);
  EXPECT_THROW(cmdeg::h4_positivity_scan(6), cmdeg::InvalidIndex);
}

TEST(Kernel, LaplaceReconstructsQ) {
  for (const char* t : {"1", "5", "10"}) {
    const auto r = cmdeg::laplace_reconstruct(R(t), {}, kPolicy);
    EXPECT_LT(abs(r.value - cmdeg::q_value(R(t), kPolicy)), Real(1e-20, 64)) << "t=" << t;
    EXPECT_LT(r.error_estimate, Real(1e-20, 64));
    EXPECT_GT(r.cutoff, 0L);
  }
  const auto at10 = cmdeg::laplace_reconstruct(R("10"), {}, kPolicy);
  const auto at100 = cmdeg::laplace_reconstruct(R("100"), {}, kPolicy);
  EXPECT_LT(at100.value, at10.value);
}

TEST(Kernel, LaplaceTailBoundDominates) {
  // 0 < h(s) <= s/2 + s^4/720
  for (const char* s : {"0.01", "1", "10", "100", "1000"}) {
    const Real x = R(s);
    EXPECT_LE(cmdeg::kernel_h(0, x, kPolicy), x / 2L + cmdeg::pow(x, 4) / 720L) << s;
  }
}

TEST(Kernel, RejectsBadArguments) {
  EXPECT_THROW(cmdeg::kernel_h(5, R("1")), cmdeg::InvalidIndex);
  EXPECT_THROW(cmdeg::kernel_h(-1, R("1")), cmdeg::InvalidIndex);
  EXPECT_THROW(cmdeg::kernel_h(0, R("0")), cmdeg::NonPositiveArgument);
  EXPECT_THROW(cmdeg::laplace_reconstruct(R("-1")), cmdeg::NonPositiveArgument);
  cmdeg::QuadratureParams starved;
  starved.max_level = 1;
  EXPECT_THROW(cmdeg::laplace_reconstruct(R("1"), starved, kPolicy), cmdeg::QuadratureNotConverged);
}
