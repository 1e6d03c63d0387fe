#pragma once

// Weighted averages of products of generalized Anderson-Apostol sums.
//
// Every quantity has a direct evaluator (literal summation over
// j = 1..K^a, or 0..K^a where the weight requires it) and one or more
// closed forms over the divisor lattice d_1 | k_1, ..., d_n | k_n. The
// direct evaluators are the oracles the closed forms are checked against.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "aasum/arith_core.hpp"
#include "aasum/arith_fn.hpp"
#include "aasum/value.hpp"

namespace aasum {

inline constexpr u64 kDefaultTermBudget = 1'000'000;

/// One (f_i, g_i, h_i) triple of a tuple instance.
struct Slot {
  ArithFn f = ArithFn::one();
  ArithFn g = ArithFn::one();
  ArithFn h = ArithFn::one();
};

/// An evaluation context: exponent a, moduli k_1..k_n, one slot per
/// modulus and a weight. K = lcm(k_1..k_n) is fixed at construction.
class TupleInstance {
 public:
  TupleInstance(unsigned a, std::vector<u64> ks, std::vector<Slot> slots,
                ArithFn weight = ArithFn::one());
  /// All slots equal to `slot`.
  static TupleInstance uniform(unsigned a, std::vector<u64> ks, const Slot& slot,
                               ArithFn weight = ArithFn::one());

  unsigned a() const { return a_; }
  std::size_t n() const { return ks_.size(); }
  std::span<const u64> ks() const { return ks_; }
  const std::vector<Slot>& slots() const { return slots_; }
  const ArithFn& weight() const { return weight_; }
  u64 K() const { return K_; }
  /// K^a; throws std::overflow_error beyond 64 bits.
  u64 Ka() const;
  /// True iff the weight and every f_i, g_i, h_i are rational valued.
  bool exact_pipeline() const;
  bool h_all_one() const;
  /// f_i(d) g_i(k_i/d) >= 0 for every d | k_i and every slot.
  bool coefficients_nonnegative() const;

  TupleInstance with_weight(ArithFn weight) const;
  TupleInstance with_slots(std::vector<Slot> slots) const;

 private:
  unsigned a_;
  std::vector<u64> ks_;
  std::vector<Slot> slots_;
  ArithFn weight_;
  u64 K_;
};

/// One point d = (d_1..d_n) of the divisor lattice.
struct DivisorTuple {
  std::span<const u64> d;
  u64 lcm;          // lcm(d_1..d_n)
  u64 quotient;     // L = K / lcm
  const Value& coefficient;  // prod_i f_i(d_i) g_i(k_i/d_i)
};

/// Depth-first enumeration of all d_i | k_i.
void for_each_divisor_tuple(const TupleInstance& t,
                            const std::function<void(const DivisorTuple&)>& visit);

// ---------------------------------------------------------------------------
// Direct evaluators.

/// P(j) = prod_i s^(a)_{f_i,g_i,h_i}(k_i, j) for j >= 1 (j = 0 requires h = 1).
Value slot_product(const TupleInstance& t, u64 j);

/// U = sum_{j=1}^{K^a} w(j) prod_i s^(a)_{f_i,g_i,h_i}(k_i, j).
/// Throws BudgetExceededError when K^a > budget.
Value u_direct(const TupleInstance& t, u64 budget = kDefaultTermBudget);

/// sum_{j=1}^{K^a} j^r P(j) for r = 0..max_r in one pass (weight ignored).
std::vector<Value> u_direct_power_moments(const TupleInstance& t, unsigned max_r,
                                          u64 budget = kDefaultTermBudget);

// ---------------------------------------------------------------------------
// Completely multiplicative / completely additive weights.

/// Divisor-lattice form for completely multiplicative w and arbitrary h_i.
Value u_thm1_rhs(const TupleInstance& t);
/// Variant that also requires every h_i completely multiplicative.
Value u_thm1_cm_rhs(const TupleInstance& t);
/// Two-part divisor-lattice form for completely additive w.
Value u_thm2_rhs(const TupleInstance& t);
Value u_thm2_cm_rhs(const TupleInstance& t);

// ---------------------------------------------------------------------------
// Power weights id_r with h_i = 1 (the stored weight is ignored). The closed
// forms need r >= 1 and throw PreconditionError for r = 0.

/// K^{ar}/2 prod (f_i*g_i)(k_i) + K^{a(r+1)}/(r+1) sum_m binom(r+1,2m) B_{2m}
/// K^{-2am} sum_d lcm(d)^{a(2m-1)} prod f_i(d_i) g_i(k_i/d_i).
Value u_tilde_idr_closed(const TupleInstance& t, unsigned r);

/// Which arithmetic function the gcd-sum corollaries substitute.
enum class GcdSumSide {
  f,  // f_i * mu in place of f_i, g_i = 1
  g,  // g_i * mu in place of g_i, f_i = 1
};

/// (1/K^{ar}) sum_{j=1}^{K^a} j^r prod_i (sum over d_i|k_i, d_i^a|j of
/// (F_i*mu)(d_i) or (G_i*mu)(k_i/d_i)), by direct summation.
Value gcdsum_weighted_direct(const TupleInstance& t, unsigned r, GcdSumSide side,
                             u64 budget = kDefaultTermBudget);
/// gcdsum_weighted_direct for r = 0..max_r in one pass.
std::vector<Value> gcdsum_weighted_direct_moments(const TupleInstance& t, unsigned max_r,
                                                  GcdSumSide side, u64 budget = kDefaultTermBudget);
/// The corresponding closed form with leading term (1/2) prod F_i(k_i).
Value gcdsum_weighted(const TupleInstance& t, unsigned r, GcdSumSide side);
/// For a = 1: (1/K^r) sum_{j=1}^{K} j^r prod_i f_i(gcd(k_i, j)).
Value gcdsum_weighted_gcd_form(const TupleInstance& t, unsigned r);

enum class ConvForm {
  corrected,   // sum_{d|K^a} phi_{1-2m}(d) ...
  misprinted,  // with the spurious extra factor d
};

/// Convolution form of sum_{j<=K^a} j^r P(j) (unnormalized, multiply of K^{ar}).
Value u_tilde_idr_conv_closed(const TupleInstance& t, unsigned r,
                              ConvForm form = ConvForm::corrected);

/// f_i = phi, g_i = 1 specialization, normalized by K^{ar}:
/// (1/2) prod k_i + (1/(r+1)) sum_m binom(r+1,2m) B_{2m} sum_{d|K^a}
/// phi_{1-2m}(d) prod_i (K^a/d, k_i^a)_a.
BigRational gcdsum_phi_conv_closed(std::span<const u64> ks, unsigned a, unsigned r,
                                   ConvForm form = ConvForm::corrected);

// ---------------------------------------------------------------------------
// Logarithmic weight.

/// U with w = log = main + theta * width for some theta in (0, 1).
struct ThetaBracket {
  double main = 0.0;
  double width = 0.0;

  /// (value - main) / width, or nullopt when width == 0.
  std::optional<double> theta(double value) const;
};

ThetaBracket u_tilde_log_bracket(const TupleInstance& t);

/// (log . P) * phi (K^a) + sum_{d|K^a} P(K^a/d) * coprime log sum over d.
double u_tilde_log_conv(const TupleInstance& t);

// ---------------------------------------------------------------------------
// Dirichlet-convolution representations (h_i = 1).

/// Completely multiplicative w: (w P) * Psi (K^a).
/// Completely additive w: (w P) * phi (K^a) + P * Psi (K^a).
Value conv_repr(const TupleInstance& t);

/// The same quantity through P^(1) = prod s^(1)(k_i, .) at divisors of K,
/// with Psi^(a), Phi^(a) and w^a / w(d^a).
Value conv_repr_remark(const TupleInstance& t);

// ---------------------------------------------------------------------------
// Gamma, binomial and Bernoulli-polynomial weights (h_i = 1, a >= 2).

struct RealPair {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// sum_{j=1}^{K^a} log Gamma(j/K^a) P(j) vs its three-term closed form.
/// a = 1 is rejected unless `allow_a1` is set.
RealPair gamma_weight_check(const TupleInstance& t, bool allow_a1 = false);

/// The f_i = phi, g_i = 1 form with middle term -(k_1...k_n)/2 log(2 pi K^a).
double gamma_weight_phi_closed(std::span<const u64> ks, unsigned a);

struct BinomCheck {
  Value lhs;
  double rhs = 0.0;
};

inline constexpr u64 kMaxBinomialWeightKa = 36;

/// lhs = sum_{j=0}^{K^a} binom(K^a, j) P(j), exact; rhs = the cosine form.
/// Throws BudgetExceededError when K^a > max_ka.
BinomCheck binom_weight_check(const TupleInstance& t, bool allow_a1 = false,
                              u64 max_ka = kMaxBinomialWeightKa);

/// sum_{j=0}^{K^a-1} B_m(j/K^a) P(j), direct.
Value bernoulli_weight_direct(const TupleInstance& t, unsigned m,
                              u64 budget = kDefaultTermBudget);
/// B_m / K^{a(m-1)} sum_d lcm(d)^{a(m-1)} prod f_i(d_i) g_i(k_i/d_i).
Value bernoulli_weight_closed(const TupleInstance& t, unsigned m, bool allow_a1 = false);

// ---------------------------------------------------------------------------
// The orbicyclic function E and its relatives (a = 1).

/// (1/K) sum_{j=1}^{K} prod c_{k_i}(j).
BigRational e_function_direct(std::span<const u64> ks);
/// sum_d prod d_i mu(k_i/d_i) / lcm(d).
BigRational e_function_divisor_form(std::span<const u64> ks);

/// g_m = sum_d prod d_i mu(k_i/d_i) / lcm(d)^{1-2m}.
BigRational g_m_helper(std::span<const u64> ks, unsigned m);
/// S_r = (1/K^{r+1}) sum_{j=1}^{K} j^r prod c_{k_i}(j).
BigRational s_r_direct(std::span<const u64> ks, unsigned r);
/// prod phi(k_i)/(2K) + (1/(r+1)) sum_m binom(r+1,2m) B_{2m}/K^{2m} g_m.
BigRational s_r_closed(std::span<const u64> ks, unsigned r);
/// prod phi(k_i)/(2K) + E/2.
BigRational s1_special(std::span<const u64> ks);

/// Anderson-Apostol analogues with per-slot (f_i, g_i); h_i is ignored.
Value e_tilde(std::span<const u64> ks, const std::vector<Slot>& pairs);
Value g_tilde_m_helper(std::span<const u64> ks, const std::vector<Slot>& pairs, unsigned m);
Value s_tilde_r_direct(std::span<const u64> ks, const std::vector<Slot>& pairs, unsigned r);
Value s_tilde_r_closed(std::span<const u64> ks, const std::vector<Slot>& pairs, unsigned r);

/// Single-modulus normalized power average:
/// (1/k^{ar}) sum_{j=1}^{k^a} j^r s^(a)_{f,g,1}(k, j)
/// = (1/2)(f*g)(k) + (1/(r+1)) sum_m binom(r+1,2m) B_{2m} (f * id_{a(1-2m)} g)(k),
/// evaluated through ArithFn combinators.
Value single_power_average_closed(unsigned a, const ArithFn& f, const ArithFn& g, u64 k,
                                  unsigned r);

}  // namespace aasum
