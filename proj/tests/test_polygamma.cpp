#include <gtest/gtest.h>

#include <boost/math/special_functions/polygamma.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "cmdeg/polygamma.hpp"
#include "support.hpp"

using cmdeg::PrecisionPolicy;
using cmdeg::Rational;
using cmdeg::Real;
using cmdeg::test::mpfr_oracle;
using cmdeg::test::scaled_error;
using cmdeg::test::within_bits;

namespace {

const PrecisionPolicy kPolicy{};  // 128 working bits, 16 guard bits
const long kContractBits = kPolicy.working_bits - kPolicy.guard_bits;

Real R(const char* text, long bits = 128) { return Real(cmdeg::parse_rational(text), bits); }

Real zeta(unsigned long s, long bits) {
  return mpfr_oracle(bits, [&](mpfr_ptr r, mpfr_rnd_t rnd) { mpfr_zeta_ui(r, s, rnd); });
}

Real factorial(long k, long bits) {
  return mpfr_oracle(bits, [&](mpfr_ptr r, mpfr_rnd_t rnd) { mpfr_fac_ui(r, static_cast<unsigned long>(k), rnd); });
}

}  // namespace

TEST(Polygamma, TrigammaAtOneIsBasel) {
  const Real pi = cmdeg::pi(256);
  const Real expected = pi * pi / 6L;
  EXPECT_TRUE(within_bits(cmdeg::trigamma(R("1"), kPolicy), expected, kContractBits));
  EXPECT_TRUE(within_bits(cmdeg::trigamma(R("2"), kPolicy), expected - 1L, kContractBits));
}

TEST(Polygamma, TrigammaWithinBaselPartialSumBounds) {
  // sum_{n<=N} 1/n^2 + 1/(N+1) < pi^2/6 < sum_{n<=N} 1/n^2 + 1/N
  const long n_max = 20000;
  Real partial(256);
  for (long n = n_max; n >= 1; --n) partial += Real(1L, 256) / (Real(n, 256) * n);
  const Real v = cmdeg::trigamma(R("1"), kPolicy);
  EXPECT_GT(v, partial + Real(Rational(1, n_max + 1), 256));
  EXPECT_LT(v, partial + Real(Rational(1, n_max), 256));
}

TEST(Polygamma, IntegerPointsMatchZeta) {
  // psi^(k)(1) = (-1)^(k+1) k! zeta(k+1)
  for (int k = 1; k <= 12; ++k) {
    Real expected = factorial(k, 256) * zeta(static_cast<unsigned long>(k + 1), 256);
    if (k % 2 == 0) expected = -expected;
    EXPECT_TRUE(within_bits(cmdeg::polygamma(k, R("1"), kPolicy), expected, kContractBits)) << "k=" << k;
  }
}

TEST(Polygamma, DigammaMatchesMpfr) {
  for (const char* t : {"0.001", "0.1", "0.5", "1", "1.4616321449683623", "3", "17.25", "1000", "1e6"}) {
    const Real x = R(t);
    const Real oracle = mpfr_oracle(256, [&](mpfr_ptr r, mpfr_rnd_t rnd) { mpfr_digamma(r, x.rounded(256).get(), rnd); });
    EXPECT_TRUE(within_bits(cmdeg::digamma(x, kPolicy), oracle, kContractBits)) << "t=" << t;
  }
}

TEST(Polygamma, LogGammaMatchesMpfr) {
  for (const char* t : {"0.001", "0.5", "1.5", "2.5", "10", "123.456", "1e5"}) {
    const Real x = R(t);
    const Real oracle = mpfr_oracle(256, [&](mpfr_ptr r, mpfr_rnd_t rnd) { mpfr_lngamma(r, x.rounded(256).get(), rnd); });
    EXPECT_TRUE(within_bits(cmdeg::log_gamma(x, kPolicy), oracle, kContractBits)) << "t=" << t;
  }
}

TEST(Polygamma, LogGammaSpecialValues) {
  EXPECT_LT(abs(cmdeg::log_gamma(R("1"), kPolicy)), cmdeg::ldexp(Real(1L, 64), -kContractBits));
  EXPECT_LT(abs(cmdeg::log_gamma(R("2"), kPolicy)), cmdeg::ldexp(Real(1L, 64), -kContractBits));
  const Real ln_sqrt_pi = cmdeg::log(cmdeg::pi(256)) / 2L;
  EXPECT_TRUE(within_bits(cmdeg::log_gamma(R("0.5"), kPolicy), ln_sqrt_pi, kContractBits));
}

TEST(Polygamma, MatchesBoostFiftyDigits) {
  using boost::multiprecision::cpp_bin_float_50;
  const PrecisionPolicy wide = kPolicy.with_working(192);
  for (int k : {0, 1, 2, 3, 5, 8}) {
    for (const char* t : {"0.25", "1.75", "6.5", "40"}) {
      const cpp_bin_float_50 oracle = boost::math::polygamma(k, cpp_bin_float_50(t));
      const Real expected = Real::parse(oracle.str(50, std::ios_base::scientific), 256);
      // Boost carries about 50 significant digits, so compare at 192 bits.
      EXPECT_LT(scaled_error(cmdeg::polygamma(k, R(t, 192), wide), expected), Real(1e-45, 64)) << "k=" << k << " t=" << t;
    }
  }
}

TEST(Polygamma, RecurrenceResidual) {
  // psi^(k)(t) - psi^(k)(t+1) = (-1)^(k+1) k! / t^(k+1)
  for (int k = 0; k <= 6; ++k) {
    for (const char* t : {"0.1", "0.7", "2", "9.5", "50"}) {
      const Real x = R(t);
      Real step = factorial(k, 192) / cmdeg::pow(x.rounded(192), k + 1);
      if (k % 2 == 0) step = -step;
      const Real lhs = cmdeg::polygamma(k, x, kPolicy) - cmdeg::polygamma(k, x + 1L, kPolicy);
      EXPECT_TRUE(within_bits(lhs, step, kContractBits - 2)) << "k=" << k << " t=" << t;
    }
  }
}

TEST(Polygamma, SmallTLimits) {
  // t^k psi^(k-1)(t) -> (-1)^k (k-1)!
  const Real t = R("1e-6");
  const Real one(1L, 128);
  EXPECT_LT(abs(t * cmdeg::digamma(t, kPolicy) + one), Real(1e-5, 64));
  EXPECT_LT(abs(t * t * cmdeg::trigamma(t, kPolicy) - one), Real(1e-5, 64));
  EXPECT_LT(abs(cmdeg::pow(t, 3) * cmdeg::polygamma(2, t, kPolicy) + 2L), Real(2e-5, 64));
}

TEST(Polygamma, TwoPrecisionAgreement) {
  const PrecisionPolicy fine = kPolicy.with_working(2 * kPolicy.working_bits);
  for (int k = 0; k <= 6; ++k) {
    for (const char* t : {"0.003", "0.4", "1", "3.3", "77", "12345"}) {
      const Real x = R(t, 512);
      EXPECT_TRUE(within_bits(cmdeg::polygamma(k, x, kPolicy), cmdeg::polygamma(k, x, fine), kContractBits))
          << "k=" << k << " t=" << t;
    }
  }
  for (const char* t : {"0.003", "0.5", "2.25", "999"}) {
    const Real x = R(t, 512);
    EXPECT_TRUE(within_bits(cmdeg::log_gamma(x, kPolicy), cmdeg::log_gamma(x, fine), kContractBits)) << "t=" << t;
  }
}

TEST(Polygamma, FiniteDifferenceConsistency) {
  const long w = kPolicy.working_bits;
  const PrecisionPolicy fine = kPolicy.with_working(2 * w);
  const Real h = cmdeg::ldexp(Real(1L, 2 * w), -w / 3);
  for (int k = 0; k <= 5; ++k) {
    for (const char* t : {"0.3", "1", "4.5", "30"}) {
      const Real x = R(t, 2 * w);
      const Real diff = (cmdeg::polygamma(k, x + h, fine) - cmdeg::polygamma(k, x - h, fine)) / (2L * h);
      const Real exact = cmdeg::polygamma(k + 1, x, kPolicy);
      EXPECT_LT(abs(diff - exact) / abs(exact), cmdeg::ldexp(Real(1L, 64), -w / 4)) << "k=" << k << " t=" << t;
    }
  }
}

TEST(Polygamma, AgreementCheckOption) {
  PrecisionPolicy p = kPolicy;
  p.agreement_check = true;
  EXPECT_EQ(cmdeg::polygamma(3, R("0.9"), p), cmdeg::polygamma(3, R("0.9"), kPolicy));
}

TEST(Polygamma, PrecisionIsCarried) {
  const PrecisionPolicy p = kPolicy.with_working(200);
  EXPECT_EQ(cmdeg::polygamma(1, R("2"), p).precision(), 200);
  EXPECT_EQ((Real(1L, 64) + Real(1L, 300)).precision(), 300);
}

TEST(Polygamma, RejectsBadArguments) {
  EXPECT_THROW(cmdeg::polygamma(1, R("0"), kPolicy), cmdeg::NonPositiveArgument);
  EXPECT_THROW(cmdeg::polygamma(0, Real(-1L, 128), kPolicy), cmdeg::NonPositiveArgument);
  EXPECT_THROW(cmdeg::log_gamma(R("0"), kPolicy), cmdeg::NonPositiveArgument);
  EXPECT_THROW(cmdeg::polygamma(-1, R("1"), kPolicy), cmdeg::InvalidIndex);
  PrecisionPolicy bad;
  bad.working_bits = 8;
  EXPECT_THROW(cmdeg::polygamma(1, R("1"), bad), cmdeg::InvalidArgument);
}
