#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "aasum/arith_core.hpp"
#include "aasum/errors.hpp"
#include "aasum/exact_num.hpp"

namespace aasum {
namespace {

TEST(BigRational, CanonicalForm) {
  const BigRational q(BigInt(6), BigInt(-4));
  EXPECT_EQ(q.numerator(), -3);
  EXPECT_EQ(q.denominator(), 2);
  EXPECT_EQ(q.to_string(), "-3/2");
  EXPECT_EQ(BigRational(4).to_string(), "4");
  EXPECT_EQ(BigRational(4).to_fraction_string(), "4/1");
  EXPECT_THROW(BigRational(BigInt(1), BigInt(0)), DomainError);
}

TEST(BigRational, ParseAndErrors) {
  EXPECT_EQ(BigRational::parse("10/4"), BigRational(5, 2));
  EXPECT_EQ(BigRational::parse("-7"), BigRational(-7));
  EXPECT_THROW(BigRational::parse("1/0"), ParseError);
  EXPECT_THROW(BigRational::parse("1/"), ParseError);
  EXPECT_THROW(BigRational::parse("abc"), ParseError);
  EXPECT_THROW(BigRational::parse(""), ParseError);
}

TEST(BigRational, FractionStringRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 2000; ++i) {
    const BigInt num = BigInt(static_cast<long>(rng() % 2'000'001)) - 1'000'000;
    const BigInt den = BigInt(static_cast<long>(rng() % 100'000 + 1));
    BigRational q(num, den);
    q = q.pow(static_cast<long>(rng() % 4));
    ASSERT_EQ(BigRational::parse(q.to_fraction_string()), q);
    ASSERT_EQ(BigRational::parse(q.to_string()), q);
  }
}

TEST(BigRational, Arithmetic) {
  const BigRational a(1, 3);
  const BigRational b(1, 6);
  EXPECT_EQ(a + b, BigRational(1, 2));
  EXPECT_EQ(a - b, b);
  EXPECT_EQ(a * b, BigRational(1, 18));
  EXPECT_EQ(a / b, BigRational(2));
  EXPECT_EQ(a.pow(-2), BigRational(9));
  EXPECT_LT(b, a);
  EXPECT_THROW(a / BigRational(0), DomainError);
}

TEST(Bernoulli, KnownValues) {
  EXPECT_EQ(bernoulli_number(0), BigRational(1));
  EXPECT_EQ(bernoulli_number(1), BigRational(-1, 2));
  EXPECT_EQ(bernoulli_number(2), BigRational(1, 6));
  EXPECT_EQ(bernoulli_number(3), BigRational(0));
  EXPECT_EQ(bernoulli_number(4), BigRational(-1, 30));
  EXPECT_EQ(bernoulli_number(12), BigRational(-691, 2730));
  EXPECT_EQ(bernoulli_number(20), BigRational(BigInt(-174611), BigInt(330)));
  EXPECT_THROW(bernoulli_number(201), DomainError);
}

TEST(Bernoulli, RecurrenceHolds) {
  for (unsigned m = 1; m <= 60; ++m) {
    BigRational s;
    for (unsigned j = 0; j <= m; ++j) {
      s += BigRational(binomial(m + 1, j)) * bernoulli_number(j);
    }
    ASSERT_TRUE(s.is_zero()) << m;
  }
}

TEST(Bernoulli, PolynomialIdentities) {
  for (unsigned m = 0; m <= 10; ++m) {
    EXPECT_EQ(bernoulli_poly(m, BigRational(0)), bernoulli_number(m));
    // B_m(x + 1) - B_m(x) = m x^{m-1}
    for (long x = -3; x <= 3; ++x) {
      const BigRational bx(x);
      const BigRational lhs = bernoulli_poly(m, bx + BigRational(1)) - bernoulli_poly(m, bx);
      const BigRational rhs = m == 0 ? BigRational(0) : BigRational(static_cast<long long>(m)) * bx.pow(m - 1);
      ASSERT_EQ(lhs, rhs) << m << " " << x;
    }
  }
  EXPECT_EQ(bernoulli_poly(1, BigRational(1, 4)), BigRational(-1, 4));
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(4, 2), 6);
  EXPECT_EQ(binomial(9, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  BigInt row = 0;
  for (unsigned j = 0; j <= 36; ++j) {
    row += binomial(36, j);
  }
  EXPECT_EQ(row, BigInt(1) << 36);
}

BigRational brute(u64 n, unsigned r, bool coprime) {
  BigInt acc = 0;
  for (u64 m = 1; m <= n; ++m) {
    if (!coprime || gcd(m, n) == 1) {
      BigInt p;
      mpz_ui_pow_ui(p.get_mpz_t(), m, r);
      acc += p;
    }
  }
  return BigRational(acc);
}

TEST(PowerSums, FaulhaberMatchesDirect) {
  EXPECT_EQ(faulhaber_sum(3, 2), BigRational(14));
  EXPECT_EQ(faulhaber_sum(1, 5), BigRational(1));
  EXPECT_EQ(faulhaber_sum(10, 0), BigRational(10));
  for (u64 n = 1; n <= 100; ++n) {
    for (unsigned r = 0; r <= 8; ++r) {
      ASSERT_EQ(faulhaber_sum(n, r), brute(n, r, false)) << n << " " << r;
    }
  }
}

TEST(PowerSums, CoprimeMatchesDirect) {
  EXPECT_EQ(coprime_power_sum(6, 1), BigRational(6));
  EXPECT_EQ(coprime_power_sum(1, 7), BigRational(1));
  EXPECT_EQ(coprime_power_sum(12, 2), BigRational(196));
  for (u64 n = 1; n <= 200; ++n) {
    for (unsigned r = 0; r <= 6; ++r) {
      ASSERT_EQ(coprime_power_sum(n, r), brute(n, r, true)) << n << " " << r;
    }
  }
}

TEST(PowerSums, PrintedPrefactorOvercountsByN) {
  EXPECT_EQ(coprime_power_sum_misprinted(6, 1), BigRational(36));
  for (u64 n = 2; n <= 40; ++n) {
    EXPECT_EQ(coprime_power_sum_misprinted(n, 3), coprime_power_sum(n, 3) * to_rational(n));
  }
}

TEST(PowerSums, BinomialBernoulliSum) {
  EXPECT_EQ(sum_binom_bernoulli(0), BigRational(1));
  EXPECT_EQ(sum_binom_bernoulli(1), BigRational(1));
  EXPECT_EQ(sum_binom_bernoulli(6), BigRational(7, 2));
  for (unsigned r = 1; r <= 40; ++r) {
    ASSERT_EQ(sum_binom_bernoulli(r), BigRational(static_cast<long long>(r) + 1) / BigRational(2));
  }
}

TEST(Multisection, CosineFormMatchesBinomialSum) {
  EXPECT_EQ(multisection_binomial_sum(4, 2), 8);
  for (u64 n = 0; n <= 40; ++n) {
    for (u64 r = 1; r <= 12; ++r) {
      const double exact = multisection_binomial_sum(n, r).get_d();
      ASSERT_NEAR(multisection_cosine_form(n, r), exact, 1e-9 * std::max(1.0, exact)) << n << " " << r;
    }
  }
}

TEST(LogSums, CoprimeLogSum) {
  EXPECT_EQ(coprime_log_sum(1), 0.0);
  EXPECT_NEAR(coprime_log_sum(4), std::log(3.0), 1e-12);
  EXPECT_NEAR(coprime_log_sum(6), std::log(5.0), 1e-12);
  for (u64 n = 1; n <= 500; ++n) {
    double direct = 0.0;
    for (u64 l = 1; l <= n; ++l) {
      if (gcd(l, n) == 1) {
        direct += std::log(static_cast<double>(l));
      }
    }
    ASSERT_NEAR(coprime_log_sum(n), direct, 1e-10 * std::max(1.0, direct)) << n;
  }
}

TEST(LogSums, FactorialGammaAndStirling) {
  EXPECT_EQ(log_factorial(0), 0.0);
  EXPECT_NEAR(log_factorial(10), std::log(3628800.0), 1e-12);
  EXPECT_NEAR(log_gamma(0.5), 0.5 * std::log(std::numbers::pi), 1e-14);
  EXPECT_THROW(log_gamma(0.0), DomainError);
  for (u64 n = 1; n <= 1000; ++n) {
    const auto [lo, hi] = stirling_bracket(n);
    const double v = log_factorial(n);
    ASSERT_GT(v, lo) << n;
    ASSERT_LT(v, hi) << n;
  }
}

TEST(LogSums, GaussLegendre) {
  for (u64 n = 1; n <= 200; ++n) {
    double lhs = 0.0;
    for (u64 j = 1; j <= n; ++j) {
      lhs += log_gamma(static_cast<double>(j) / static_cast<double>(n));
    }
    const double nd = static_cast<double>(n);
    const double rhs = 0.5 * (nd - 1.0) * std::log(2.0 * std::numbers::pi) - 0.5 * std::log(nd);
    ASSERT_NEAR(lhs, rhs, 1e-9) << n;
  }
}

TEST(CompensatedSum, RecoversSmallTerms) {
  CompensatedSum s;
  s.add(1.0);
  for (int i = 0; i < 1000; ++i) {
    s.add(1e-16);
  }
  s.add(-1.0);
  EXPECT_NEAR(s.value(), 1e-13, 1e-18);
}

}  // namespace
}  // namespace aasum
