#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "aasum/aa_sums.hpp"
#include "aasum/errors.hpp"

namespace aasum {
namespace {

// Exponential-sum oracle written independently of the library.
double coprime_exp_real(u64 k, u64 j) {
  double s = 0.0;
  for (u64 m = 1; m <= k; ++m) {
    if (std::gcd(m, k) == 1) {
      s += std::cos(2.0 * std::numbers::pi * static_cast<double>(m * j % k) / static_cast<double>(k));
    }
  }
  return s;
}

TEST(Ramanujan, SmallValues) {
  EXPECT_EQ(ramanujan(2, 1), -1);
  EXPECT_EQ(ramanujan(2, 2), 1);
  EXPECT_EQ(ramanujan(6, 4), -1);
  for (u64 j = 1; j <= 50; ++j) EXPECT_EQ(ramanujan(1, j), 1);
  for (u64 k = 1; k <= 100; ++k) EXPECT_EQ(ramanujan(k, k), static_cast<std::int64_t>(euler_phi(k)));
}

TEST(Ramanujan, ExponentialFormAgrees) {
  EXPECT_NEAR(ramanujan_exp(1, 5).real(), 1.0, 1e-9);
  EXPECT_NEAR(ramanujan_exp(6, 6).real(), 2.0, 1e-9);
  EXPECT_NEAR(ramanujan_exp(5, 1).real(), -1.0, 1e-9);
  for (u64 k = 1; k <= 50; ++k) {
    for (u64 j = 1; j <= 50; ++j) {
      const auto z = ramanujan_exp(k, j);
      ASSERT_NEAR(z.real(), static_cast<double>(ramanujan(k, j)), 1e-6);
      ASSERT_NEAR(z.imag(), 0.0, 1e-9);
      ASSERT_NEAR(coprime_exp_real(k, j), z.real(), 1e-9);
    }
  }
}

TEST(Ramanujan, Periodic) {
  for (u64 k = 1; k <= 30; ++k) {
    for (u64 j = 1; j <= 30; ++j) ASSERT_EQ(ramanujan(k, j + k), ramanujan(k, j));
  }
}

TEST(Cohen, SmallValues) {
  EXPECT_EQ(cohen(2, 2, 4), BigInt(3));
  EXPECT_EQ(cohen(2, 2, 1), BigInt(-1));
  for (u64 k = 1; k <= 40; ++k) {
    for (u64 j = 1; j <= 40; ++j) ASSERT_EQ(cohen(1, k, j), BigInt(ramanujan(k, j)));
  }
}

TEST(Cohen, ExponentialFormAndRowAgree) {
  for (unsigned a = 2; a <= 3; ++a) {
    for (u64 k = 1; checked_pow(k, a) <= 400; ++k) {
      const u64 ka = checked_pow(k, a);
      const auto row = cohen_exp_row(a, k, ka + 3);
      ASSERT_EQ(row.size(), ka + 3);
      for (u64 j = 1; j <= ka + 3; ++j) {
        const double exact = cohen(a, k, j).get_d();
        ASSERT_NEAR(cohen_exp(a, k, j).real(), exact, 1e-6) << a << " " << k << " " << j;
        ASSERT_NEAR(row[j - 1].real(), exact, 1e-6);
        ASSERT_NEAR(row[j - 1].imag(), 0.0, 1e-6);
      }
    }
  }
}

TEST(Cohen, Periodic) {
  for (unsigned a = 1; a <= 3; ++a) {
    for (u64 k = 1; k <= 6; ++k) {
      const u64 ka = checked_pow(k, a);
      for (u64 j = 1; j <= 50; ++j) ASSERT_EQ(cohen(a, k, j + ka), cohen(a, k, j));
    }
  }
}

TEST(AndersonApostol, Specializations) {
  const ArithFn phi = ArithFn::euler_phi();
  const ArithFn one = ArithFn::one();
  const ArithFn id = ArithFn::id_power(1);
  const ArithFn mu = ArithFn::mobius();
  EXPECT_EQ(anderson_apostol(phi, one, 2, 2), Value(2));
  EXPECT_EQ(anderson_apostol(one, one, 6, 6), Value(4));
  for (u64 k = 1; k <= 40; ++k) {
    for (u64 j = 1; j <= 40; ++j) {
      ASSERT_EQ(anderson_apostol(id, mu, k, j), Value(static_cast<long long>(ramanujan(k, j))));
      ASSERT_EQ(anderson_apostol(phi, one, k, j), Value(static_cast<long long>(std::gcd(k, j))));
      ASSERT_EQ(anderson_apostol(one, one, k, j),
                Value(static_cast<long long>(divisors(std::gcd(k, j)).size())));
    }
  }
}

TEST(GenAA, ReducesToKnownSums) {
  for (u64 k = 1; k <= 30; ++k) {
    for (u64 j = 1; j <= 30; ++j) {
      SumSpec s{1, ArithFn::euler_phi(), ArithFn::id_power(2), ArithFn::one(), k};
      ASSERT_EQ(gen_aa(s, j), anderson_apostol(s.f, s.g, k, j));
    }
  }
  for (u64 k = 1; k <= 20; ++k) {
    for (u64 j = 1; j <= 20; ++j) {
      SumSpec s{2, ArithFn::power(2), ArithFn::mobius(), ArithFn::one(), k};
      ASSERT_EQ(gen_aa(s, j), Value(BigRational(cohen(2, k, j))));
    }
  }
  SumSpec s{2, ArithFn::euler_phi(), ArithFn::one(), ArithFn::one(), 2};
  EXPECT_EQ(gen_aa(s, 4), Value(2));
}

TEST(GenAA, DirectDefinition) {
  // Literal double loop over d | k, d^a | j.
  const ArithFn f = ArithFn::jordan(2), g = ArithFn::mobius(), h = ArithFn::id_power(1);
  for (unsigned a = 1; a <= 3; ++a) {
    for (u64 k = 1; k <= 12; ++k) {
      for (u64 j = 1; j <= 60; ++j) {
        Value expected(0);
        for (u64 d = 1; d <= k; ++d) {
          if (k % d != 0) continue;
          const u64 da = checked_pow(d, a);
          if (j % da != 0) continue;
          expected += f(d) * g(k / d) * h(j / da);
        }
        ASSERT_EQ(gen_aa(SumSpec{a, f, g, h, k}, j), expected);
      }
    }
  }
}

TEST(GenAA, ZeroArgument) {
  SumSpec s{2, ArithFn::euler_phi(), ArithFn::one(), ArithFn::one(), 6};
  EXPECT_EQ(gen_aa(s, 0), Value(6));  // every d | 6 counts: sum phi(d) = 6
  s.h = ArithFn::id_power(1);
  EXPECT_THROW(gen_aa(s, 0), PreconditionError);
}

TEST(GenAA, DependsOnlyOnGcdWithKa) {
  const ArithFn f = ArithFn::euler_phi(), g = ArithFn::id_power(1);
  for (unsigned a = 1; a <= 2; ++a) {
    for (u64 K = 1; K <= 24; ++K) {
      const u64 ka = checked_pow(K, a);
      for (u64 k : divisors(K)) {
        const SumSpec s{a, f, g, ArithFn::one(), k};
        for (u64 j = 1; j <= ka; ++j) ASSERT_EQ(gen_aa(s, j), gen_aa(s, std::gcd(j, ka)));
      }
    }
  }
}

}  // namespace
}  // namespace aasum
