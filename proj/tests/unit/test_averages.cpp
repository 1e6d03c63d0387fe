#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "aasum/aa_sums.hpp"
#include "aasum/averages.hpp"
#include "aasum/errors.hpp"

namespace aasum {
namespace {

const ArithFn kOne = ArithFn::one();
const ArithFn kId = ArithFn::id_power(1);
const ArithFn kPhi = ArithFn::euler_phi();
const ArithFn kMu = ArithFn::mobius();

Slot slot(ArithFn f, ArithFn g, ArithFn h = ArithFn::one()) { return Slot{f, g, h}; }

// Literal s^(a)_{f,g,h}(k, j) by scanning d = 1..k.
Value brute_s(unsigned a, const Slot& s, u64 k, u64 j) {
  Value out(0);
  for (u64 d = 1; d <= k; ++d) {
    if (k % d != 0) continue;
    u64 da = 1;
    for (unsigned i = 0; i < a; ++i) da *= d;
    if (j % da != 0) continue;
    out += s.f(d) * s.g(k / d) * (j == 0 ? Value(1) : s.h(j / da));
  }
  return out;
}

u64 brute_lcm(const std::vector<u64>& ks) {
  u64 K = 1;
  for (u64 k : ks) K = std::lcm(K, k);
  return K;
}

u64 ipow(u64 b, unsigned e) {
  u64 r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// sum_{j=1}^{K^a} weight(j) prod_i s_i(k_i, j).
template <class Weight>
Value brute_u(unsigned a, const std::vector<u64>& ks, const std::vector<Slot>& slots, Weight w) {
  const u64 ka = ipow(brute_lcm(ks), a);
  Value total(0);
  for (u64 j = 1; j <= ka; ++j) {
    Value p = w(j);
    for (std::size_t i = 0; i < ks.size(); ++i) p *= brute_s(a, slots[i], ks[i], j);
    total += p;
  }
  return total;
}

TEST(Averages, DirectExamples) {
  const auto t = TupleInstance::uniform(1, {2}, slot(kPhi, kOne), kId);
  EXPECT_EQ(u_direct(t), Value(5));
  const auto e = TupleInstance::uniform(1, {2, 2}, slot(kId, kMu));
  EXPECT_EQ(u_direct(e), Value(2));
  // A trivial slot with k = 1 contributes a factor of one.
  const auto with_one = TupleInstance(1, {1, 6}, {slot(kOne, kOne), slot(kPhi, kId)}, kId);
  const auto without = TupleInstance::uniform(1, {6}, slot(kPhi, kId), kId);
  EXPECT_EQ(u_direct(with_one), u_direct(without));
}

TEST(Averages, DirectMatchesBruteForce) {
  const std::vector<Slot> menu = {slot(kPhi, kOne), slot(kId, kMu), slot(kOne, kOne, kId),
                                  slot(ArithFn::jordan(2), kOne, kMu)};
  for (unsigned a = 1; a <= 2; ++a) {
    for (u64 k1 = 1; k1 <= 6; ++k1) {
      for (u64 k2 = 1; k2 <= 6; ++k2) {
        for (const auto& s1 : menu) {
          for (const auto& s2 : menu) {
            const std::vector<u64> ks{k1, k2};
            const TupleInstance t(a, ks, {s1, s2}, ArithFn::id_power(2));
            ASSERT_EQ(u_direct(t), brute_u(a, ks, {s1, s2}, [](u64 j) { return Value(static_cast<long long>(j * j)); }));
          }
        }
      }
    }
  }
}

TEST(Averages, BudgetExceeded) {
  const auto t = TupleInstance::uniform(2, {30, 7}, slot(kPhi, kOne));
  EXPECT_THROW(u_direct(t, 1000), BudgetExceededError);
  EXPECT_NO_THROW(u_direct(t, 1'000'000));
}

TEST(Averages, CompletelyMultiplicativeForms) {
  const std::vector<Slot> menu = {slot(kPhi, kOne), slot(kId, kMu), slot(kOne, kOne, kId),
                                  slot(kPhi, kOne, ArithFn::power(-1))};
  for (unsigned a = 1; a <= 2; ++a) {
    for (u64 k1 = 1; k1 <= 6; ++k1) {
      for (u64 k2 = 1; k2 <= 4; ++k2) {
        for (const auto& s1 : menu) {
          for (const auto& s2 : menu) {
            const TupleInstance t(a, {k1, k2}, {s1, s2}, ArithFn::id_power(2));
            ASSERT_EQ(u_thm1_rhs(t), u_direct(t));
            if (s1.h.is_completely_multiplicative() && s2.h.is_completely_multiplicative()) {
              ASSERT_EQ(u_thm1_cm_rhs(t), u_direct(t));
            }
          }
        }
      }
    }
  }
  const auto bad = TupleInstance::uniform(1, {4}, slot(kPhi, kOne), kPhi);
  EXPECT_THROW(u_thm1_rhs(bad), PreconditionError);
}

TEST(Averages, CompletelyAdditiveForms) {
  const auto t = TupleInstance::uniform(1, {4}, slot(kId, kMu), ArithFn::big_omega());
  Value expected(0);
  for (u64 j = 1; j <= 4; ++j) {
    expected += Value(static_cast<long long>(big_omega(j) * ramanujan(4, j)));
  }
  EXPECT_EQ(u_thm2_rhs(t), expected);
  EXPECT_EQ(u_thm2_cm_rhs(t), expected);
  for (u64 k1 = 1; k1 <= 6; ++k1) {
    for (u64 k2 = 1; k2 <= 6; ++k2) {
      const TupleInstance tl(2, {k1, k2}, {slot(kPhi, kOne), slot(kOne, kOne, kId)}, ArithFn::log());
      const double direct = u_direct(tl).to_double();
      ASSERT_NEAR(u_thm2_rhs(tl).to_double(), direct, 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
  EXPECT_THROW(u_thm2_rhs(TupleInstance::uniform(1, {4}, slot(kPhi, kOne), kId)), PreconditionError);
}

TEST(Averages, PowerWeightClosedForms) {
  const auto t = TupleInstance::uniform(1, {2}, slot(kPhi, kOne));
  EXPECT_EQ(u_tilde_idr_closed(t, 1), Value(5));
  EXPECT_EQ(u_tilde_idr_conv_closed(t, 1), Value(5));
  EXPECT_EQ(u_tilde_idr_conv_closed(t, 1, ConvForm::misprinted) / Value(2), Value(3));
  EXPECT_THROW(u_tilde_idr_closed(t, 0), PreconditionError);
  const std::vector<Slot> menu = {slot(kPhi, kOne), slot(kId, kMu), slot(ArithFn::jordan(2), kMu)};
  for (unsigned a = 1; a <= 2; ++a) {
    for (u64 k1 = 1; k1 <= 6; ++k1) {
      for (u64 k2 = 1; k2 <= 6; ++k2) {
        for (const auto& s : menu) {
          const auto tt = TupleInstance::uniform(a, {k1, k2}, s);
          const auto moments = u_direct_power_moments(tt, 4);
          for (unsigned r = 1; r <= 4; ++r) {
            ASSERT_EQ(u_tilde_idr_closed(tt, r), moments[r]);
            ASSERT_EQ(u_tilde_idr_conv_closed(tt, r), moments[r]);
            ASSERT_EQ(conv_repr(tt.with_weight(ArithFn::id_power(r))), moments[r]);
            ASSERT_EQ(conv_repr_remark(tt.with_weight(ArithFn::id_power(r))), moments[r]);
          }
        }
      }
    }
  }
}

TEST(Averages, PowerMomentsMatchBruteForce) {
  const std::vector<u64> ks{4, 6};
  const std::vector<Slot> slots{slot(kPhi, kOne), slot(kId, kMu)};
  const TupleInstance t(2, ks, slots);
  const auto moments = u_direct_power_moments(t, 5);
  for (unsigned r = 0; r <= 5; ++r) {
    ASSERT_EQ(moments[r], brute_u(2, ks, slots, [r](u64 j) { return Value(to_rational(ipow(j, r))); }));
  }
}

TEST(Averages, GcdSumWeighted) {
  const auto t = TupleInstance::uniform(1, {2}, slot(kId, kOne));
  EXPECT_EQ(gcdsum_weighted(t, 1, GcdSumSide::f), Value(BigRational(5, 2)));
  EXPECT_EQ(gcdsum_weighted_direct(t, 1, GcdSumSide::f), Value(BigRational(5, 2)));
  const auto ones = TupleInstance::uniform(2, {1, 1}, slot(ArithFn::id_power(2), kOne));
  EXPECT_EQ(gcdsum_weighted(ones, 3, GcdSumSide::f), Value(1));
  const auto t23 = TupleInstance::uniform(1, {2, 3}, slot(kId, kOne));
  BigRational brute;
  for (u64 j = 1; j <= 6; ++j) brute += to_rational(j * j * std::gcd<u64>(2, j) * std::gcd<u64>(3, j));
  brute /= BigRational(36);
  EXPECT_EQ(gcdsum_weighted(t23, 2, GcdSumSide::f), Value(brute));
  EXPECT_EQ(gcdsum_weighted_gcd_form(t23, 2), Value(brute));
  for (unsigned a = 1; a <= 2; ++a) {
    for (u64 k1 = 1; k1 <= 8; ++k1) {
      for (u64 k2 = 1; k2 <= 5; ++k2) {
        for (const auto side : {GcdSumSide::f, GcdSumSide::g}) {
          const auto tt = TupleInstance::uniform(a, {k1, k2}, slot(kPhi, kPhi));
          for (unsigned r = 1; r <= 3; ++r) {
            ASSERT_EQ(gcdsum_weighted(tt, r, side), gcdsum_weighted_direct(tt, r, side));
          }
        }
      }
    }
  }
}

TEST(Averages, PhiConvolutionClosedForm) {
  for (unsigned a = 1; a <= 2; ++a) {
    for (u64 k1 = 1; k1 <= 6; ++k1) {
      for (u64 k2 = 1; k2 <= 6; ++k2) {
        const std::vector<u64> ks{k1, k2};
        const auto t = TupleInstance::uniform(a, ks, slot(kPhi, kOne));
        const BigRational norm = to_rational(t.Ka());
        for (unsigned r = 1; r <= 3; ++r) {
          ASSERT_EQ(Value(gcdsum_phi_conv_closed(ks, a, r)) * Value(norm.pow(r)),
                    u_direct_power_moments(t, r)[r]);
        }
      }
    }
  }
}

TEST(Averages, LogWeight) {
  const auto trivial = TupleInstance::uniform(1, {1}, slot(kOne, kOne));
  const auto b = u_tilde_log_bracket(trivial);
  const auto theta = b.theta(0.0);
  ASSERT_TRUE(theta.has_value());
  EXPECT_NEAR(*theta, 12.0 * (1.0 - 0.5 * std::log(2.0 * M_PI)), 1e-9);
  EXPECT_EQ(u_tilde_log_conv(trivial), 0.0);
  const auto t2 = TupleInstance::uniform(1, {2}, slot(kPhi, kOne));
  EXPECT_NEAR(u_tilde_log_conv(t2), 2.0 * std::log(2.0), 1e-10);
  for (u64 k1 = 1; k1 <= 8; ++k1) {
    for (u64 k2 = 1; k2 <= 8; ++k2) {
      const auto t = TupleInstance::uniform(2, {k1, k2}, slot(kPhi, kOne), ArithFn::log());
      const double direct = u_direct(t).to_double();
      const auto th = u_tilde_log_bracket(t).theta(direct);
      ASSERT_TRUE(th.has_value());
      ASSERT_GT(*th, 0.0);
      ASSERT_LT(*th, 1.0);
      ASSERT_NEAR(u_tilde_log_conv(t), direct, 1e-9 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST(Averages, GammaWeight) {
  const auto t = TupleInstance::uniform(2, {2}, slot(kPhi, kOne));
  const auto p = gamma_weight_check(t);
  EXPECT_NEAR(p.lhs, p.rhs, 1e-8 * (1 + std::abs(p.lhs)));
  double brute = 0.0;
  for (u64 j = 1; j <= 4; ++j) brute += std::lgamma(j / 4.0) * static_cast<double>(std::gcd<u64>(2 * 2, j) >= 4 ? 2 : 1);
  EXPECT_NEAR(p.lhs, brute, 1e-12);
  const std::vector<u64> ks{2, 3};
  const auto t23 = TupleInstance::uniform(2, ks, slot(kPhi, kOne));
  EXPECT_NEAR(gamma_weight_phi_closed(ks, 2), gamma_weight_check(t23).lhs, 1e-8);
  EXPECT_THROW(gamma_weight_check(TupleInstance::uniform(1, {2}, slot(kPhi, kOne))), PreconditionError);
  EXPECT_NO_THROW(gamma_weight_check(TupleInstance::uniform(1, {2}, slot(kPhi, kOne)), true));
}

TEST(Averages, BinomialWeight) {
  const auto t = TupleInstance::uniform(1, {2}, slot(kPhi, kOne));
  const auto c = binom_weight_check(t, true);
  EXPECT_EQ(c.lhs, Value(6));
  EXPECT_NEAR(c.rhs, 6.0, 1e-9);
  const auto big = TupleInstance::uniform(2, {7}, slot(kPhi, kOne));
  EXPECT_THROW(binom_weight_check(big), BudgetExceededError);
}

TEST(Averages, BernoulliWeight) {
  const auto t = TupleInstance::uniform(2, {2}, slot(kPhi, kOne));
  EXPECT_EQ(bernoulli_weight_direct(t, 1), Value(-1));
  EXPECT_EQ(bernoulli_weight_closed(t, 1), Value(-1));
  for (u64 k1 = 1; k1 <= 6; ++k1) {
    for (u64 k2 = 1; k2 <= 4; ++k2) {
      const auto tt = TupleInstance::uniform(2, {k1, k2}, slot(kPhi, kOne));
      EXPECT_EQ(bernoulli_weight_closed(tt, 1), Value(BigRational(-BigInt(static_cast<long>(k1 * k2)), BigInt(2))));
      for (unsigned m = 0; m <= 5; ++m) {
        ASSERT_EQ(bernoulli_weight_closed(tt, m), bernoulli_weight_direct(tt, m));
      }
    }
  }
  EXPECT_THROW(bernoulli_weight_closed(TupleInstance::uniform(1, {2}, slot(kPhi, kOne)), 1), PreconditionError);
}

TEST(Averages, OrbicyclicFunction) {
  const std::vector<u64> a{2, 2}, b{2, 3};
  EXPECT_EQ(e_function_direct(a), BigRational(1));
  EXPECT_EQ(e_function_direct(b), BigRational(0));
  for (u64 k = 1; k <= 50; ++k) {
    const std::vector<u64> ks{k};
    EXPECT_EQ(s1_special(ks), to_rational(euler_phi(k)) / BigRational(to_rational(2 * k)) +
                                  e_function_direct(ks) / BigRational(2));
    EXPECT_EQ(s_r_direct(ks, 1), s1_special(ks));
  }
  for (u64 k1 = 1; k1 <= 10; ++k1) {
    for (u64 k2 = 1; k2 <= 10; ++k2) {
      const std::vector<u64> ks{k1, k2};
      const BigRational e = e_function_direct(ks);
      ASSERT_EQ(e, e_function_divisor_form(ks));
      ASSERT_TRUE(e.is_integer());
      ASSERT_GE(e, BigRational(0));
      for (unsigned r = 1; r <= 3; ++r) ASSERT_EQ(s_r_closed(ks, r), s_r_direct(ks, r));
    }
  }
}

TEST(Averages, AndersonApostolAnalogues) {
  const std::vector<Slot> pairs{slot(kPhi, kOne), slot(ArithFn::jordan(2), kMu)};
  for (u64 k1 = 1; k1 <= 8; ++k1) {
    for (u64 k2 = 1; k2 <= 8; ++k2) {
      const std::vector<u64> ks{k1, k2};
      for (unsigned r = 1; r <= 3; ++r) {
        ASSERT_EQ(s_tilde_r_closed(ks, pairs, r), s_tilde_r_direct(ks, pairs, r));
      }
    }
  }
  for (u64 k = 1; k <= 12; ++k) {
    for (unsigned r = 1; r <= 3; ++r) {
      const auto t = TupleInstance::uniform(2, {k}, slot(kPhi, kId));
      const Value normalized = u_direct_power_moments(t, r)[r] / Value(to_rational(t.Ka()).pow(r));
      ASSERT_EQ(single_power_average_closed(2, kPhi, kId, k, r), normalized);
    }
  }
}

}  // namespace
}  // namespace aasum
