#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <thread>

#include "aasum/arith_core.hpp"
#include "aasum/errors.hpp"

namespace aasum {
namespace {

// Independent oracles: plain loops, no factorization.
int mobius_naive(u64 n) {
  int sign = 1;
  for (u64 p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) {
        return 0;
      }
      sign = -sign;
    }
  }
  return n > 1 ? -sign : sign;
}

u64 phi_naive(u64 n) {
  u64 count = 0;
  for (u64 m = 1; m <= n; ++m) {
    count += std::gcd(m, n) == 1;
  }
  return count;
}

TEST(Factorize, SmallValues) {
  EXPECT_TRUE(factorize(1).factors().empty());
  const auto& f = factorize(360);
  ASSERT_EQ(f.factors().size(), 3u);
  EXPECT_EQ(f.factors()[0], (PrimePower{2, 3}));
  EXPECT_EQ(f.factors()[1], (PrimePower{3, 2}));
  EXPECT_EQ(f.factors()[2], (PrimePower{5, 1}));
  EXPECT_EQ(f.divisor_count(), 24u);
  EXPECT_EQ(f.big_omega(), 6u);
  EXPECT_FALSE(f.is_squarefree());
  EXPECT_TRUE(factorize(30).is_squarefree());
}

TEST(Factorize, LargePrimeAndZero) {
  const u64 p = 1'000'000'007ULL;
  EXPECT_EQ(factorize(p).factors().size(), 1u);
  EXPECT_EQ(factorize(p * 3).factors()[1].prime, p);
  EXPECT_THROW(factorize(0), DomainError);
}

TEST(Factorize, ProductReconstructsValue) {
  for (u64 n = 1; n <= 5000; ++n) {
    u64 prod = 1;
    for (const auto& pp : factorize(n).factors()) {
      for (unsigned e = 0; e < pp.exponent; ++e) {
        prod *= pp.prime;
      }
    }
    ASSERT_EQ(prod, n);
  }
}

TEST(Divisors, MatchTrialDivision) {
  for (u64 n = 1; n <= 500; ++n) {
    std::vector<u64> expected;
    for (u64 d = 1; d <= n; ++d) {
      if (n % d == 0) {
        expected.push_back(d);
      }
    }
    ASSERT_EQ(divisors(n), expected) << n;
  }
}

TEST(ClassicalFunctions, MatchNaiveOracles) {
  for (u64 n = 1; n <= 1000; ++n) {
    ASSERT_EQ(mobius(n), mobius_naive(n)) << n;
    ASSERT_EQ(euler_phi(n), phi_naive(n)) << n;
  }
  EXPECT_EQ(big_omega(1), 0u);
  EXPECT_EQ(big_omega(12), 3u);
}

TEST(ClassicalFunctions, MobiusSumsToIdentity) {
  for (u64 n = 1; n <= 300; ++n) {
    int s = 0;
    for (u64 d : divisors(n)) {
      s += mobius(d);
    }
    ASSERT_EQ(s, n == 1 ? 1 : 0);
  }
}

TEST(JordanTotient, OrderOneIsPhiAndOrderTwoIsKnown) {
  for (u64 n = 1; n <= 200; ++n) {
    ASSERT_EQ(jordan_totient(1, n), to_rational(euler_phi(n)));
  }
  EXPECT_EQ(jordan_totient(2, 6), BigRational(24));  // 36 (1 - 1/4)(1 - 1/9)
  EXPECT_EQ(jordan_totient(0, 1), BigRational(1));
  EXPECT_EQ(jordan_totient(0, 6), BigRational(0));
  // phi_{-1}(p) = p^{-1} - 1
  EXPECT_EQ(jordan_totient(-1, 7), BigRational(1, 7) - BigRational(1));
}

TEST(GcdLcm, Basics) {
  EXPECT_EQ(gcd(12, 18), 6u);
  EXPECT_EQ(gcd(0, 5), 5u);
  EXPECT_EQ(lcm(4, 6), 12u);
  const std::vector<u64> ks{4, 6, 10};
  EXPECT_EQ(lcm_list(ks), 60u);
  EXPECT_THROW(lcm_list(std::vector<u64>{}), PreconditionError);
  EXPECT_THROW(lcm(1ULL << 40, (1ULL << 40) - 1), std::overflow_error);
}

TEST(GeneralizedGcd, Examples) {
  EXPECT_EQ(generalized_gcd(12, 6, 2), 2u);
  EXPECT_EQ(generalized_gcd(0, 6, 2), 6u);
  EXPECT_EQ(generalized_gcd(2, 2, 2), 1u);
  EXPECT_EQ(generalized_gcd(8, 12, 1), 4u);
}

TEST(GeneralizedGcd, MaximalityScan) {
  // Largest d | k with d^a | j, by scanning every divisor.
  for (unsigned a = 1; a <= 3; ++a) {
    for (u64 k = 1; k <= 36; ++k) {
      for (u64 j = 0; j <= 300; ++j) {
        u64 best = 0;
        for (u64 d = 1; d <= k; ++d) {
          u64 da = 1;
          for (unsigned i = 0; i < a; ++i) {
            da *= d;
          }
          if (k % d == 0 && (j == 0 || j % da == 0)) {
            best = d;
          }
        }
        ASSERT_EQ(generalized_gcd(j, k, a), best) << j << " " << k << " " << a;
      }
    }
  }
}

TEST(GeneralizedGcd, ReducesToGcdAtAEqualsOne) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const u64 j = rng() % 100000 + 1;
    const u64 k = rng() % 100000 + 1;
    ASSERT_EQ(generalized_gcd(j, k, 1), gcd(j, k));
  }
}

TEST(Powers, OverflowDetection) {
  u64 out = 0;
  EXPECT_TRUE(try_pow(10, 19, out));
  EXPECT_EQ(out, 10'000'000'000'000'000'000ULL);
  EXPECT_FALSE(try_pow(10, 20, out));
  EXPECT_EQ(checked_pow(7, 0), 1u);
  EXPECT_THROW(checked_pow(2, 64), std::overflow_error);
}

TEST(Memo, ConcurrentAccessIsConsistent) {
  std::vector<std::jthread> threads;
  std::vector<u64> sums(4, 0);
  for (int t = 0; t < 4; ++t) {
    threads.emplace_back([t, &sums] {
      for (u64 n = 20000; n < 24000; ++n) {
        sums[t] += divisors(n).size() + euler_phi(n);
      }
    });
  }
  threads.clear();
  EXPECT_EQ(sums[0], sums[1]);
  EXPECT_EQ(sums[2], sums[3]);
  EXPECT_EQ(sums[0], sums[3]);
}

}  // namespace
}  // namespace aasum
