#include "aasum/averages.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <unordered_map>

#include "aasum/aa_sums.hpp"
#include "aasum/errors.hpp"

namespace aasum {

// ---------------------------------------------------------------------------
// TupleInstance

TupleInstance::TupleInstance(unsigned a, std::vector<u64> ks, std::vector<Slot> slots,
                             ArithFn weight)
    : a_(a), ks_(std::move(ks)), slots_(std::move(slots)), weight_(std::move(weight)), K_(1) {
  if (a_ == 0) {
    throw DomainError("TupleInstance: a must be positive");
  }
  if (ks_.empty()) {
    throw PreconditionError("TupleInstance: need at least one modulus");
  }
  if (slots_.size() != ks_.size()) {
    throw PreconditionError("TupleInstance: one (f, g, h) slot per modulus");
  }
  for (u64 k : ks_) {
    if (k == 0) {
      throw DomainError("TupleInstance: moduli must be positive");
    }
  }
  K_ = lcm_list(ks_);
}

TupleInstance TupleInstance::uniform(unsigned a, std::vector<u64> ks, const Slot& slot,
                                     ArithFn weight) {
  std::vector<Slot> slots(ks.size(), slot);
  return TupleInstance(a, std::move(ks), std::move(slots), std::move(weight));
}

u64 TupleInstance::Ka() const { return checked_pow(K_, a_); }

bool TupleInstance::exact_pipeline() const {
  if (!weight_.is_exact()) {
    return false;
  }
  for (const auto& s : slots_) {
    if (!s.f.is_exact() || !s.g.is_exact() || !s.h.is_exact()) {
      return false;
    }
  }
  return true;
}

bool TupleInstance::h_all_one() const {
  for (const auto& s : slots_) {
    if (!s.h.is_identically_one()) {
      return false;
    }
  }
  return true;
}

bool TupleInstance::coefficients_nonnegative() const {
  for (std::size_t i = 0; i < n(); ++i) {
    for (u64 d : divisors(ks_[i])) {
      if ((slots_[i].f(d) * slots_[i].g(ks_[i] / d)).sign() < 0) {
        return false;
      }
    }
  }
  return true;
}

TupleInstance TupleInstance::with_weight(ArithFn weight) const {
  return TupleInstance(a_, ks_, slots_, std::move(weight));
}

TupleInstance TupleInstance::with_slots(std::vector<Slot> slots) const {
  return TupleInstance(a_, ks_, std::move(slots), weight_);
}

// ---------------------------------------------------------------------------
// Internals

namespace {

/// Per-slot precomputation: divisors d of k, d^a (0 when it overflows), and
/// the coefficient f(d) g(k/d).
struct SlotTable {
  u64 k = 1;
  std::vector<u64> divs;
  std::vector<u64> div_pow;
  std::vector<Value> coeff;
  ArithFn h = ArithFn::one();
  bool h_one = true;

  bool qualifies(std::size_t idx, u64 j) const {
    return j == 0 || (div_pow[idx] != 0 && j % div_pow[idx] == 0);
  }
};

std::vector<SlotTable> build_tables(const TupleInstance& t) {
  std::vector<SlotTable> tables;
  tables.reserve(t.n());
  for (std::size_t i = 0; i < t.n(); ++i) {
    SlotTable st;
    st.k = t.ks()[i];
    st.divs = divisors(st.k);
    st.h = t.slots()[i].h;
    st.h_one = st.h.is_identically_one();
    for (u64 d : st.divs) {
      u64 da = 0;
      st.div_pow.push_back(try_pow(d, t.a(), da) ? da : 0);
      st.coeff.push_back(t.slots()[i].f(d) * t.slots()[i].g(st.k / d));
    }
    tables.push_back(std::move(st));
  }
  return tables;
}

Value power_of(const Value& base, unsigned exponent) {
  Value out(1);
  for (unsigned i = 0; i < exponent; ++i) {
    out *= base;
  }
  return out;
}

Value product_at(const std::vector<SlotTable>& tables, u64 j) {
  Value product(1);
  for (const auto& st : tables) {
    Value sum;
    for (std::size_t idx = 0; idx < st.divs.size(); ++idx) {
      if (!st.qualifies(idx, j)) {
        continue;
      }
      if (st.h_one) {
        sum += st.coeff[idx];
      } else {
        sum += st.coeff[idx] * st.h(j / st.div_pow[idx]);
      }
    }
    if (sum.is_zero()) {
      return Value(sum.is_exact() ? Value(0) : Value::real(0.0));
    }
    product *= sum;
  }
  return product;
}

/// Memoizes P(j) by the set of qualifying divisors (d_i | k_i with
/// d_i^a | j), which determines P(j) completely when every h_i = 1.
class ProductCache {
 public:
  explicit ProductCache(std::vector<SlotTable> tables) : tables_(std::move(tables)) {
    for (const auto& st : tables_) {
      bits_ += st.divs.size();
    }
  }

  std::size_t index(u64 j) {
    if (bits_ <= 64) {
      std::uint64_t key = 0;
      unsigned bit = 0;
      for (const auto& st : tables_) {
        for (std::size_t idx = 0; idx < st.divs.size(); ++idx, ++bit) {
          if (st.qualifies(idx, j)) {
            key |= std::uint64_t{1} << bit;
          }
        }
      }
      auto [it, inserted] = narrow_.try_emplace(key, products_.size());
      if (inserted) {
        products_.push_back(product_at(tables_, j));
      }
      return it->second;
    }
    std::string key;
    key.reserve(bits_);
    for (const auto& st : tables_) {
      for (std::size_t idx = 0; idx < st.divs.size(); ++idx) {
        key.push_back(st.qualifies(idx, j) ? '1' : '0');
      }
    }
    auto [it, inserted] = wide_.try_emplace(std::move(key), products_.size());
    if (inserted) {
      products_.push_back(product_at(tables_, j));
    }
    return it->second;
  }

  const Value& product(std::size_t idx) const { return products_[idx]; }
  std::size_t size() const { return products_.size(); }

 private:
  std::vector<SlotTable> tables_;
  std::size_t bits_ = 0;
  std::unordered_map<std::uint64_t, std::size_t> narrow_;
  std::unordered_map<std::string, std::size_t> wide_;
  std::vector<Value> products_;
};

void require_h_one(const TupleInstance& t, const char* what) {
  if (!t.h_all_one()) {
    throw PreconditionError(std::string(what) + " requires h_i = one for every slot");
  }
}

void require_budget(u64 terms, u64 budget, const char* what) {
  if (terms > budget) {
    throw BudgetExceededError(std::string(what) + ": " + std::to_string(terms) +
                              " terms exceed the budget of " + std::to_string(budget));
  }
}

void require_positive_r(unsigned r, const char* what) {
  if (r == 0) {
    throw PreconditionError(std::string(what) + " holds for r >= 1 (the 1/2 term comes from B_1)");
  }
}

void require_theorem3_a(const TupleInstance& t, bool allow_a1, const char* what) {
  if (t.a() < 2 && !allow_a1) {
    throw PreconditionError(std::string(what) + " is stated for a >= 2");
  }
}

BigInt to_bigint(unsigned __int128 x) {
  BigInt hi(static_cast<unsigned long>(static_cast<std::uint64_t>(x >> 64)));
  BigInt lo(static_cast<unsigned long>(static_cast<std::uint64_t>(x)));
  return (hi << 64) + lo;
}

/// sum_{j=first}^{last} j^e P(j) for e = 0..max_e, h_i = 1. 0^0 = 1.
std::vector<Value> masked_power_moments(const TupleInstance& t, u64 first, u64 last,
                                        unsigned max_e) {
  ProductCache cache(build_tables(t));
  std::vector<Value> out(max_e + 1);
  if (first > last) {
    return out;
  }
  const long double top = static_cast<long double>(std::max<u64>(last, 1));
  const long double count = static_cast<long double>(last - first + 1);
  const bool narrow = std::log2(top) * max_e + std::log2(count) < 126.0L;

  if (narrow) {
    std::vector<std::vector<unsigned __int128>> acc;
    for (u64 j = first; j <= last; ++j) {
      const std::size_t idx = cache.index(j);
      if (idx >= acc.size()) {
        acc.resize(idx + 1, std::vector<unsigned __int128>(max_e + 1, 0));
      }
      if (cache.product(idx).is_zero()) {
        continue;
      }
      unsigned __int128 p = 1;
      auto& row = acc[idx];
      for (unsigned e = 0; e <= max_e; ++e) {
        row[e] += p;
        p *= j;
      }
    }
    for (std::size_t idx = 0; idx < acc.size(); ++idx) {
      if (cache.product(idx).is_zero()) {
        continue;
      }
      for (unsigned e = 0; e <= max_e; ++e) {
        out[e] += cache.product(idx) * Value(BigRational(to_bigint(acc[idx][e])));
      }
    }
    return out;
  }

  std::vector<std::vector<BigInt>> acc;
  BigInt p;
  for (u64 j = first; j <= last; ++j) {
    const std::size_t idx = cache.index(j);
    if (idx >= acc.size()) {
      acc.resize(idx + 1, std::vector<BigInt>(max_e + 1, 0));
    }
    if (cache.product(idx).is_zero()) {
      continue;
    }
    p = 1;
    auto& row = acc[idx];
    for (unsigned e = 0; e <= max_e; ++e) {
      row[e] += p;
      p *= static_cast<unsigned long>(j);
    }
  }
  for (std::size_t idx = 0; idx < acc.size(); ++idx) {
    for (unsigned e = 0; e <= max_e; ++e) {
      out[e] += cache.product(idx) * Value(BigRational(acc[idx][e]));
    }
  }
  return out;
}

/// Sums of per-divisor-tuple quantities that recur across the closed forms.
struct LatticeSums {
  Value over_lcm_pow_a;   // sum coef / lcm^a
  Value plain;            // sum coef
  Value lcm_pow_a;        // sum coef lcm^a
  double log_lcm = 0.0;   // sum coef log(lcm)
};

LatticeSums lattice_sums(const TupleInstance& t) {
  LatticeSums s;
  CompensatedSum log_acc;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (dt.coefficient.is_zero()) {
      return;
    }
    const BigRational la = to_rational(dt.lcm).pow(t.a());
    s.over_lcm_pow_a += dt.coefficient / Value(la);
    s.plain += dt.coefficient;
    s.lcm_pow_a += dt.coefficient * Value(la);
    log_acc.add(dt.coefficient.to_double() * std::log(static_cast<double>(dt.lcm)));
  });
  s.log_lcm = log_acc.value();
  return s;
}

/// prod_i (f_i * g_i)(k_i).
Value convolution_product(const TupleInstance& t) {
  Value out(1);
  for (std::size_t i = 0; i < t.n(); ++i) {
    Value sum;
    for (u64 d : divisors(t.ks()[i])) {
      sum += t.slots()[i].f(d) * t.slots()[i].g(t.ks()[i] / d);
    }
    out *= sum;
  }
  return out;
}

BigRational rational_power(u64 base, long exponent) { return to_rational(base).pow(exponent); }

}  // namespace

void for_each_divisor_tuple(const TupleInstance& t,
                            const std::function<void(const DivisorTuple&)>& visit) {
  const auto tables = build_tables(t);
  const std::size_t n = tables.size();
  std::vector<u64> d(n);
  std::vector<u64> running_lcm(n + 1, 1);
  std::vector<Value> running_coef(n + 1, Value(1));
  std::vector<std::size_t> pos(n, 0);

  // Iterative odometer over the per-slot divisor lists.
  std::size_t level = 0;
  while (true) {
    if (level == n) {
      const DivisorTuple dt{d, running_lcm[n], t.K() / running_lcm[n], running_coef[n]};
      visit(dt);
      if (n == 0) {
        return;
      }
      --level;
      ++pos[level];
      continue;
    }
    if (pos[level] == tables[level].divs.size()) {
      if (level == 0) {
        return;
      }
      pos[level] = 0;
      --level;
      ++pos[level];
      continue;
    }
    const std::size_t idx = pos[level];
    d[level] = tables[level].divs[idx];
    running_lcm[level + 1] = lcm(running_lcm[level], d[level]);
    running_coef[level + 1] = running_coef[level] * tables[level].coeff[idx];
    ++level;
  }
}

// ---------------------------------------------------------------------------
// Direct evaluators

Value slot_product(const TupleInstance& t, u64 j) {
  if (j == 0 && !t.h_all_one()) {
    throw PreconditionError("slot_product: j = 0 needs h_i = one");
  }
  return product_at(build_tables(t), j);
}

Value u_direct(const TupleInstance& t, u64 budget) {
  const u64 ka = t.Ka();
  require_budget(ka, budget, "u_direct");
  const ArithFn& w = t.weight();

  if (!t.h_all_one()) {
    const auto tables = build_tables(t);
    Value acc;
    for (u64 j = 1; j <= ka; ++j) {
      Value p = product_at(tables, j);
      if (!p.is_zero()) {
        acc += w(j) * p;
      }
    }
    return acc;
  }

  ProductCache cache(build_tables(t));
  std::vector<Value> weight_sums;
  std::vector<CompensatedSum> real_sums;
  const bool real_weight = !w.is_exact();
  for (u64 j = 1; j <= ka; ++j) {
    const std::size_t idx = cache.index(j);
    if (idx >= weight_sums.size()) {
      weight_sums.resize(idx + 1);
      real_sums.resize(idx + 1);
    }
    if (cache.product(idx).is_zero()) {
      continue;
    }
    if (real_weight) {
      real_sums[idx].add(w.eval_real(j));
    } else {
      weight_sums[idx] += w(j);
    }
  }
  if (real_weight) {
    CompensatedSum total;
    for (std::size_t idx = 0; idx < real_sums.size(); ++idx) {
      total.add(cache.product(idx).to_double() * real_sums[idx].value());
    }
    return Value::real(total.value());
  }
  Value acc;
  for (std::size_t idx = 0; idx < weight_sums.size(); ++idx) {
    if (!cache.product(idx).is_zero()) {
      acc += cache.product(idx) * weight_sums[idx];
    }
  }
  return acc;
}

std::vector<Value> u_direct_power_moments(const TupleInstance& t, unsigned max_r, u64 budget) {
  const u64 ka = t.Ka();
  require_budget(ka, budget, "u_direct_power_moments");
  if (t.h_all_one()) {
    return masked_power_moments(t, 1, ka, max_r);
  }
  const auto tables = build_tables(t);
  std::vector<Value> out(max_r + 1);
  for (u64 j = 1; j <= ka; ++j) {
    Value p = product_at(tables, j);
    if (p.is_zero()) {
      continue;
    }
    const BigRational jj = to_rational(j);
    BigRational power(1);
    for (unsigned r = 0; r <= max_r; ++r) {
      out[r] += p * Value(power);
      power *= jj;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Theorems for completely multiplicative / additive weights

namespace {

enum class HForm { literal, completely_multiplicative };

/// sum_{l=1}^{L^a} weight(l) prod_i h_i(m_i l), where m_i = (lcm/d_i)^a in
/// the literal form and m_i = 1 in the factored form. `weight` may be null
/// for the plain sum.
Value inner_l_sum(const TupleInstance& t, const DivisorTuple& dt, const ArithFn* weight,
                  HForm form) {
  const u64 la = checked_pow(dt.quotient, t.a());
  std::vector<u64> shift(t.n(), 1);
  if (form == HForm::literal) {
    for (std::size_t i = 0; i < t.n(); ++i) {
      shift[i] = checked_pow(dt.lcm / dt.d[i], t.a());
    }
  }
  Value acc;
  for (u64 l = 1; l <= la; ++l) {
    Value term = weight != nullptr ? (*weight)(l) : Value(1);
    if (term.is_zero()) {
      continue;
    }
    for (std::size_t i = 0; i < t.n(); ++i) {
      const ArithFn& h = t.slots()[i].h;
      if (!h.is_identically_one()) {
        term *= h(shift[i] * l);
      }
    }
    acc += term;
  }
  return acc;
}

/// prod_i h_i(lcm/d_i)^a
Value h_power_factor(const TupleInstance& t, const DivisorTuple& dt) {
  Value out(1);
  for (std::size_t i = 0; i < t.n(); ++i) {
    out *= power_of(t.slots()[i].h(dt.lcm / dt.d[i]), t.a());
  }
  return out;
}

void require_cm_weight(const TupleInstance& t, const char* what) {
  if (!t.weight().is_completely_multiplicative()) {
    throw PreconditionError(std::string(what) + " requires a completely multiplicative weight");
  }
}

void require_ca_weight(const TupleInstance& t, const char* what) {
  if (!t.weight().is_completely_additive()) {
    throw PreconditionError(std::string(what) + " requires a completely additive weight");
  }
}

void require_cm_h(const TupleInstance& t, const char* what) {
  for (const auto& s : t.slots()) {
    if (!s.h.is_completely_multiplicative()) {
      throw PreconditionError(std::string(what) + " requires completely multiplicative h_i");
    }
  }
}

}  // namespace

Value u_thm1_rhs(const TupleInstance& t) {
  require_cm_weight(t, "u_thm1_rhs");
  Value acc;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (dt.coefficient.is_zero()) {
      return;
    }
    acc += power_of(t.weight()(dt.lcm), t.a()) * dt.coefficient *
           inner_l_sum(t, dt, &t.weight(), HForm::literal);
  });
  return acc;
}

Value u_thm1_cm_rhs(const TupleInstance& t) {
  require_cm_weight(t, "u_thm1_cm_rhs");
  require_cm_h(t, "u_thm1_cm_rhs");
  Value acc;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (dt.coefficient.is_zero()) {
      return;
    }
    acc += power_of(t.weight()(dt.lcm), t.a()) * dt.coefficient * h_power_factor(t, dt) *
           inner_l_sum(t, dt, &t.weight(), HForm::completely_multiplicative);
  });
  return acc;
}

Value u_thm2_rhs(const TupleInstance& t) {
  require_ca_weight(t, "u_thm2_rhs");
  Value first;
  Value second;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (dt.coefficient.is_zero()) {
      return;
    }
    const Value w_lcm = t.weight()(checked_pow(dt.lcm, t.a()));
    first += w_lcm * dt.coefficient * inner_l_sum(t, dt, nullptr, HForm::literal);
    second += dt.coefficient * inner_l_sum(t, dt, &t.weight(), HForm::literal);
  });
  return first + second;
}

Value u_thm2_cm_rhs(const TupleInstance& t) {
  require_ca_weight(t, "u_thm2_cm_rhs");
  require_cm_h(t, "u_thm2_cm_rhs");
  Value first;
  Value second;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (dt.coefficient.is_zero()) {
      return;
    }
    const Value scaled = dt.coefficient * h_power_factor(t, dt);
    const Value w_lcm = t.weight()(checked_pow(dt.lcm, t.a()));
    first += w_lcm * scaled *
             inner_l_sum(t, dt, nullptr, HForm::completely_multiplicative);
    second += scaled * inner_l_sum(t, dt, &t.weight(), HForm::completely_multiplicative);
  });
  return first + second;
}

// ---------------------------------------------------------------------------
// Power weights

Value u_tilde_idr_closed(const TupleInstance& t, unsigned r) {
  require_positive_r(r, "u_tilde_idr_closed");
  require_h_one(t, "u_tilde_idr_closed");
  const u64 K = t.K();
  const long a = t.a();
  Value lead = Value(rational_power(K, a * r) / BigRational(2)) * convolution_product(t);

  Value tail;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    const long lcm_exp = a * (2 * static_cast<long>(m) - 1);
    Value lattice;
    for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
      if (!dt.coefficient.is_zero()) {
        lattice += Value(rational_power(dt.lcm, lcm_exp)) * dt.coefficient;
      }
    });
    const BigRational c = BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m) /
                          rational_power(K, 2 * a * static_cast<long>(m));
    tail += Value(c) * lattice;
  }
  const BigRational scale = rational_power(K, a * (static_cast<long>(r) + 1)) /
                            BigRational(static_cast<long long>(r + 1));
  return lead + Value(scale) * tail;
}

namespace {

TupleInstance gcdsum_substituted(const TupleInstance& t, GcdSumSide side) {
  std::vector<Slot> slots;
  for (const auto& s : t.slots()) {
    if (side == GcdSumSide::f) {
      slots.push_back({ArithFn::dirichlet(s.f, ArithFn::mobius()), ArithFn::one(), ArithFn::one()});
    } else {
      slots.push_back({ArithFn::one(), ArithFn::dirichlet(s.g, ArithFn::mobius()), ArithFn::one()});
    }
  }
  return TupleInstance(t.a(), std::vector<u64>(t.ks().begin(), t.ks().end()), std::move(slots),
                       ArithFn::one());
}

}  // namespace

Value gcdsum_weighted_direct(const TupleInstance& t, unsigned r, GcdSumSide side, u64 budget) {
  return gcdsum_weighted_direct_moments(t, r, side, budget)[r];
}

std::vector<Value> gcdsum_weighted_direct_moments(const TupleInstance& t, unsigned max_r,
                                                  GcdSumSide side, u64 budget) {
  const TupleInstance sub = gcdsum_substituted(t, side);
  auto moments = u_direct_power_moments(sub, max_r, budget);
  const BigRational ka = to_rational(t.Ka());
  BigRational norm(1);
  for (auto& m : moments) {
    m /= Value(norm);
    norm *= ka;
  }
  return moments;
}

Value gcdsum_weighted(const TupleInstance& t, unsigned r, GcdSumSide side) {
  require_positive_r(r, "gcdsum_weighted");
  const TupleInstance sub = gcdsum_substituted(t, side);
  Value lead(BigRational(1, 2));
  for (std::size_t i = 0; i < t.n(); ++i) {
    const ArithFn& base = side == GcdSumSide::f ? t.slots()[i].f : t.slots()[i].g;
    lead *= base(t.ks()[i]);
  }
  const long a = t.a();
  Value tail;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    const long e = a * (2 * static_cast<long>(m) - 1);
    Value lattice;
    for_each_divisor_tuple(sub, [&](const DivisorTuple& dt) {
      if (!dt.coefficient.is_zero()) {
        lattice += Value(rational_power(dt.lcm, e)) * dt.coefficient;
      }
    });
    tail += Value(BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m) /
                  rational_power(t.K(), e)) *
            lattice;
  }
  return lead + tail / Value(BigRational(static_cast<long long>(r + 1)));
}

Value gcdsum_weighted_gcd_form(const TupleInstance& t, unsigned r) {
  if (t.a() != 1) {
    throw PreconditionError("gcdsum_weighted_gcd_form is the a = 1 reading");
  }
  Value acc;
  for (u64 j = 1; j <= t.K(); ++j) {
    Value term(rational_power(j, r));
    for (std::size_t i = 0; i < t.n(); ++i) {
      term *= t.slots()[i].f(gcd(t.ks()[i], j));
    }
    acc += term;
  }
  return acc / Value(rational_power(t.K(), r));
}

Value u_tilde_idr_conv_closed(const TupleInstance& t, unsigned r, ConvForm form) {
  require_positive_r(r, "u_tilde_idr_conv_closed");
  require_h_one(t, "u_tilde_idr_conv_closed");
  const u64 ka = t.Ka();
  const auto tables = build_tables(t);
  Value bracket = Value(BigRational(1, 2)) * product_at(tables, ka);
  Value tail;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    const long order = 1 - 2 * static_cast<long>(m);
    Value inner;
    for (u64 d : divisors(ka)) {
      Value p = product_at(tables, ka / d);
      if (p.is_zero()) {
        continue;
      }
      BigRational weight = jordan_totient(order, d);
      if (form == ConvForm::misprinted) {
        weight *= to_rational(d);
      }
      inner += Value(weight) * p;
    }
    tail += Value(BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m)) * inner;
  }
  bracket += tail / Value(BigRational(static_cast<long long>(r + 1)));
  return Value(rational_power(t.K(), static_cast<long>(t.a()) * r)) * bracket;
}

BigRational gcdsum_phi_conv_closed(std::span<const u64> ks, unsigned a, unsigned r,
                                   ConvForm form) {
  require_positive_r(r, "gcdsum_phi_conv_closed");
  const u64 ka = checked_pow(lcm_list(ks), a);
  BigRational lead(1, 2);
  for (u64 k : ks) {
    lead *= to_rational(k);
  }
  BigRational tail;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    const long order = 1 - 2 * static_cast<long>(m);
    BigRational inner;
    for (u64 d : divisors(ka)) {
      BigRational term = jordan_totient(order, d);
      if (form == ConvForm::misprinted) {
        term *= to_rational(d);
      }
      for (u64 k : ks) {
        term *= to_rational(generalized_gcd(ka / d, k, a));
      }
      inner += term;
    }
    tail += BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m) * inner;
  }
  return lead + tail / BigRational(static_cast<long long>(r + 1));
}

// ---------------------------------------------------------------------------
// Logarithmic weight

std::optional<double> ThetaBracket::theta(double value) const {
  if (width == 0.0) {
    return std::nullopt;
  }
  return (value - main) / width;
}

ThetaBracket u_tilde_log_bracket(const TupleInstance& t) {
  require_h_one(t, "u_tilde_log_bracket");
  const LatticeSums s = lattice_sums(t);
  const double ka = static_cast<double>(t.Ka());
  ThetaBracket out;
  out.main = ka * (std::log(ka) - 1.0) * s.over_lcm_pow_a.to_double() -
             0.5 * static_cast<double>(t.a()) * s.log_lcm +
             0.5 * std::log(2.0 * std::numbers::pi * ka) * s.plain.to_double();
  out.width = s.lcm_pow_a.to_double() / (12.0 * ka);
  return out;
}

double u_tilde_log_conv(const TupleInstance& t) {
  require_h_one(t, "u_tilde_log_conv");
  const u64 ka = t.Ka();
  const auto tables = build_tables(t);
  CompensatedSum acc;
  for (u64 d : divisors(ka)) {
    const double p = product_at(tables, d).to_double();
    if (p != 0.0 && d > 1) {
      acc.add(std::log(static_cast<double>(d)) * p * static_cast<double>(euler_phi(ka / d)));
    }
    const double q = product_at(tables, ka / d).to_double();
    if (q != 0.0) {
      acc.add(q * coprime_log_sum(d));
    }
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Convolution representations

Value conv_repr(const TupleInstance& t) {
  require_h_one(t, "conv_repr");
  const ArithFn& w = t.weight();
  const u64 ka = t.Ka();
  const auto tables = build_tables(t);
  if (w.is_completely_multiplicative()) {
    Value acc;
    for (u64 d : divisors(ka)) {
      Value p = product_at(tables, d);
      if (!p.is_zero()) {
        acc += w(d) * p * psi_weight(w, ka / d);
      }
    }
    return acc;
  }
  if (w.is_completely_additive()) {
    Value first;
    Value second;
    for (u64 d : divisors(ka)) {
      Value p = product_at(tables, d);
      if (p.is_zero()) {
        continue;
      }
      first += w(d) * p * Value(to_rational(euler_phi(ka / d)));
      second += p * psi_weight(w, ka / d);
    }
    return first + second;
  }
  throw PreconditionError("conv_repr requires a completely multiplicative or additive weight");
}

Value conv_repr_remark(const TupleInstance& t) {
  require_h_one(t, "conv_repr_remark");
  const ArithFn& w = t.weight();
  const unsigned a = t.a();
  const u64 K = t.K();
  // prod_i s^(1)_{f_i,g_i,1}(k_i, d): the a = 1 sums share the coefficients.
  const TupleInstance first_order = TupleInstance(1, std::vector<u64>(t.ks().begin(), t.ks().end()),
                                                  t.slots(), w);
  const auto tables = build_tables(first_order);
  if (w.is_completely_multiplicative()) {
    Value acc;
    for (u64 d : divisors(K)) {
      Value p = product_at(tables, d);
      if (!p.is_zero()) {
        acc += power_of(w(d), a) * p * psi_weight_a(a, w, K / d);
      }
    }
    return acc;
  }
  if (w.is_completely_additive()) {
    Value first;
    Value second;
    for (u64 d : divisors(K)) {
      Value p = product_at(tables, d);
      if (p.is_zero()) {
        continue;
      }
      first += w(checked_pow(d, a)) * p * Value(to_rational(phi_a(a, K / d)));
      second += p * psi_weight_a(a, w, K / d);
    }
    return first + second;
  }
  throw PreconditionError("conv_repr_remark requires a completely multiplicative or additive weight");
}

// ---------------------------------------------------------------------------
// Gamma, binomial, Bernoulli weights

RealPair gamma_weight_check(const TupleInstance& t, bool allow_a1) {
  require_h_one(t, "gamma_weight_check");
  require_theorem3_a(t, allow_a1, "gamma_weight_check");
  const u64 ka = t.Ka();
  ProductCache cache(build_tables(t));
  std::vector<CompensatedSum> sums;
  for (u64 j = 1; j <= ka; ++j) {
    const std::size_t idx = cache.index(j);
    if (idx >= sums.size()) {
      sums.resize(idx + 1);
    }
    if (!cache.product(idx).is_zero()) {
      sums[idx].add(log_gamma(static_cast<double>(j) / static_cast<double>(ka)));
    }
  }
  CompensatedSum lhs;
  for (std::size_t idx = 0; idx < sums.size(); ++idx) {
    lhs.add(cache.product(idx).to_double() * sums[idx].value());
  }

  const LatticeSums s = lattice_sums(t);
  const double kad = static_cast<double>(ka);
  const double two_pi = 2.0 * std::numbers::pi;
  const double rhs = 0.5 * kad * std::log(two_pi) * s.over_lcm_pow_a.to_double() -
                     0.5 * std::log(two_pi * kad) * convolution_product(t).to_double() +
                     0.5 * static_cast<double>(t.a()) * s.log_lcm;
  return {lhs.value(), rhs};
}

double gamma_weight_phi_closed(std::span<const u64> ks, unsigned a) {
  const TupleInstance t = TupleInstance::uniform(
      a, std::vector<u64>(ks.begin(), ks.end()), Slot{ArithFn::euler_phi(), ArithFn::one(), ArithFn::one()});
  const LatticeSums s = lattice_sums(t);
  double product_k = 1.0;
  for (u64 k : ks) {
    product_k *= static_cast<double>(k);
  }
  const double kad = static_cast<double>(t.Ka());
  const double two_pi = 2.0 * std::numbers::pi;
  return 0.5 * kad * std::log(two_pi) * s.over_lcm_pow_a.to_double() -
         0.5 * product_k * std::log(two_pi * kad) + 0.5 * static_cast<double>(a) * s.log_lcm;
}

BinomCheck binom_weight_check(const TupleInstance& t, bool allow_a1, u64 max_ka) {
  require_h_one(t, "binom_weight_check");
  require_theorem3_a(t, allow_a1, "binom_weight_check");
  const u64 ka = t.Ka();
  require_budget(ka, max_ka, "binom_weight_check");
  const auto tables = build_tables(t);

  BinomCheck out;
  for (u64 j = 0; j <= ka; ++j) {
    Value p = product_at(tables, j);
    if (!p.is_zero()) {
      out.lhs += Value(BigRational(binomial(ka, j))) * p;
    }
  }

  CompensatedSum rhs;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (dt.coefficient.is_zero()) {
      return;
    }
    const u64 la = checked_pow(dt.lcm, t.a());
    const u64 qa = checked_pow(dt.quotient, t.a());
    CompensatedSum inner;
    for (u64 l = 1; l <= la; ++l) {
      const double sign = ((l * qa) % 2 == 0) ? 1.0 : -1.0;
      const double c = std::cos(std::numbers::pi * static_cast<double>(l) / static_cast<double>(la));
      inner.add(sign * std::pow(c, static_cast<double>(ka)));
    }
    rhs.add(dt.coefficient.to_double() / static_cast<double>(la) * inner.value());
  });
  out.rhs = std::ldexp(rhs.value(), static_cast<int>(ka));
  return out;
}

Value bernoulli_weight_direct(const TupleInstance& t, unsigned m, u64 budget) {
  require_h_one(t, "bernoulli_weight_direct");
  const u64 ka = t.Ka();
  require_budget(ka, budget, "bernoulli_weight_direct");
  // B_m(j/N) = N^{-m} sum_e binom(m, e) B_{m-e} N^{m-e} j^e, summed through
  // the moments sum_j j^e P(j) over j = 0..N-1.
  const auto moments = masked_power_moments(t, 0, ka - 1, m);
  const BigRational n = to_rational(ka);
  Value acc;
  for (unsigned e = 0; e <= m; ++e) {
    const BigRational& b = bernoulli_number(m - e);
    if (b.is_zero()) {
      continue;
    }
    acc += Value(BigRational(binomial(m, e)) * b * n.pow(static_cast<long>(m - e))) * moments[e];
  }
  return acc / Value(n.pow(m));
}

Value bernoulli_weight_closed(const TupleInstance& t, unsigned m, bool allow_a1) {
  require_h_one(t, "bernoulli_weight_closed");
  require_theorem3_a(t, allow_a1, "bernoulli_weight_closed");
  const long e = static_cast<long>(t.a()) * (static_cast<long>(m) - 1);
  Value lattice;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (!dt.coefficient.is_zero()) {
      lattice += Value(rational_power(dt.lcm, e)) * dt.coefficient;
    }
  });
  return Value(bernoulli_number(m) / rational_power(t.K(), e)) * lattice;
}

// ---------------------------------------------------------------------------
// E and relatives

namespace {

const Slot& ramanujan_slot() {
  static const Slot slot{ArithFn::id_power(1), ArithFn::mobius(), ArithFn::one()};
  return slot;
}

std::vector<u64> to_vector(std::span<const u64> ks) { return {ks.begin(), ks.end()}; }

/// sum_{j=1}^{K} j^r prod_i c_{k_i}(j), exact.
BigInt ramanujan_power_sum(std::span<const u64> ks, unsigned r) {
  const u64 K = lcm_list(ks);
  BigInt acc = 0;
  for (u64 j = 1; j <= K; ++j) {
    BigInt term = 1;
    for (u64 k : ks) {
      term *= static_cast<long>(ramanujan(k, j));
      if (term == 0) {
        break;
      }
    }
    if (term != 0) {
      BigInt jr;
      mpz_ui_pow_ui(jr.get_mpz_t(), j, r);
      acc += term * jr;
    }
  }
  return acc;
}

BigRational phi_product_over_2k(std::span<const u64> ks) {
  BigRational p(1);
  for (u64 k : ks) {
    p *= to_rational(euler_phi(k));
  }
  return p / (BigRational(2) * to_rational(lcm_list(ks)));
}

}  // namespace

BigRational e_function_direct(std::span<const u64> ks) {
  return BigRational(ramanujan_power_sum(ks, 0)) / to_rational(lcm_list(ks));
}

BigRational e_function_divisor_form(std::span<const u64> ks) { return g_m_helper(ks, 0); }

BigRational g_m_helper(std::span<const u64> ks, unsigned m) {
  const TupleInstance t = TupleInstance::uniform(1, to_vector(ks), ramanujan_slot());
  Value acc;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (!dt.coefficient.is_zero()) {
      acc += dt.coefficient * Value(rational_power(dt.lcm, 2 * static_cast<long>(m) - 1));
    }
  });
  return acc.exact();
}

BigRational s_r_direct(std::span<const u64> ks, unsigned r) {
  return BigRational(ramanujan_power_sum(ks, r)) / rational_power(lcm_list(ks), r + 1);
}

BigRational s_r_closed(std::span<const u64> ks, unsigned r) {
  require_positive_r(r, "s_r_closed");
  const u64 K = lcm_list(ks);
  BigRational tail;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    tail += BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m) /
            rational_power(K, 2 * static_cast<long>(m)) * g_m_helper(ks, m);
  }
  return phi_product_over_2k(ks) + tail / BigRational(static_cast<long long>(r + 1));
}

BigRational s1_special(std::span<const u64> ks) {
  return phi_product_over_2k(ks) + e_function_divisor_form(ks) / BigRational(2);
}

namespace {

Value aa_power_sum(std::span<const u64> ks, const std::vector<Slot>& pairs, unsigned r) {
  if (pairs.size() != ks.size()) {
    throw PreconditionError("one (f, g) pair per modulus");
  }
  const u64 K = lcm_list(ks);
  Value acc;
  for (u64 j = 1; j <= K; ++j) {
    Value term(rational_power(j, r));
    for (std::size_t i = 0; i < ks.size() && !term.is_zero(); ++i) {
      term *= anderson_apostol(pairs[i].f, pairs[i].g, ks[i], j);
    }
    acc += term;
  }
  return acc;
}

std::vector<Slot> strip_h(const std::vector<Slot>& pairs) {
  std::vector<Slot> out;
  for (const auto& p : pairs) {
    out.push_back({p.f, p.g, ArithFn::one()});
  }
  return out;
}

}  // namespace

Value e_tilde(std::span<const u64> ks, const std::vector<Slot>& pairs) {
  return aa_power_sum(ks, pairs, 0) / Value(to_rational(lcm_list(ks)));
}

Value g_tilde_m_helper(std::span<const u64> ks, const std::vector<Slot>& pairs, unsigned m) {
  const TupleInstance t(1, to_vector(ks), strip_h(pairs));
  Value acc;
  for_each_divisor_tuple(t, [&](const DivisorTuple& dt) {
    if (!dt.coefficient.is_zero()) {
      acc += dt.coefficient * Value(rational_power(dt.lcm, 2 * static_cast<long>(m) - 1));
    }
  });
  return acc;
}

Value s_tilde_r_direct(std::span<const u64> ks, const std::vector<Slot>& pairs, unsigned r) {
  return aa_power_sum(ks, pairs, r) / Value(rational_power(lcm_list(ks), r + 1));
}

Value s_tilde_r_closed(std::span<const u64> ks, const std::vector<Slot>& pairs, unsigned r) {
  require_positive_r(r, "s_tilde_r_closed");
  const TupleInstance t(1, to_vector(ks), strip_h(pairs));
  const u64 K = t.K();
  Value lead = convolution_product(t) / Value(BigRational(2) * to_rational(K));
  Value tail;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    tail += Value(BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m) /
                  rational_power(K, 2 * static_cast<long>(m))) *
            g_tilde_m_helper(ks, pairs, m);
  }
  return lead + tail / Value(BigRational(static_cast<long long>(r + 1)));
}

Value single_power_average_closed(unsigned a, const ArithFn& f, const ArithFn& g, u64 k,
                                  unsigned r) {
  require_positive_r(r, "single_power_average_closed");
  Value out = Value(BigRational(1, 2)) * ArithFn::dirichlet(f, g)(k);
  Value tail;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    const long s = static_cast<long>(a) * (1 - 2 * static_cast<long>(m));
    const ArithFn twisted = ArithFn::dirichlet(f, ArithFn::pointwise(ArithFn::power(s), g));
    tail += Value(BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m)) * twisted(k);
  }
  return out + tail / Value(BigRational(static_cast<long long>(r + 1)));
}

}  // namespace aasum
