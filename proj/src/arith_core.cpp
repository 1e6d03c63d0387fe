#include "aasum/arith_core.hpp"

#include <algorithm>
#include <array>
#include <memory>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "aasum/errors.hpp"

namespace aasum {

namespace {

// Read-mostly memo table. Entries are never evicted, so references handed
// out stay valid for the lifetime of the process.
template <typename T>
class MemoTable {
 public:
  template <typename Make>
  const T& get(u64 key, Make&& make) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = map_.find(key); it != map_.end()) {
        return *it->second;
      }
    }
    auto fresh = std::make_unique<const T>(make());
    std::unique_lock lock(mutex_);
    auto [it, inserted] = map_.try_emplace(key, std::move(fresh));
    return *it->second;
  }

 private:
  std::shared_mutex mutex_;
  std::unordered_map<u64, std::unique_ptr<const T>> map_;
};

MemoTable<Factorization>& factorization_table() {
  static MemoTable<Factorization> table;
  return table;
}

MemoTable<std::vector<u64>>& divisor_table() {
  static MemoTable<std::vector<u64>> table;
  return table;
}

Factorization trial_divide(u64 n) {
  std::vector<PrimePower> factors;
  auto strip = [&](u64 p) {
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) {
      factors.push_back({p, e});
    }
  };
  const u64 original = n;
  strip(2);
  strip(3);
  strip(5);
  // 2,3,5 wheel: candidates 7, 11, 13, 17, 19, 23, 29, 31, then +30.
  static constexpr std::array<u64, 8> kGaps = {4, 2, 4, 2, 4, 6, 2, 6};
  u64 p = 7;
  std::size_t gap = 0;
  while (p <= n / p) {
    strip(p);
    p += kGaps[gap];
    gap = (gap + 1) % kGaps.size();
  }
  if (n > 1) {
    factors.push_back({n, 1});
  }
  return Factorization(original, std::move(factors));
}

}  // namespace

Factorization::Factorization(u64 value, std::vector<PrimePower> factors)
    : value_(value), factors_(std::move(factors)) {}

bool Factorization::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& pp) { return pp.exponent == 1; });
}

unsigned Factorization::big_omega() const {
  unsigned total = 0;
  for (const auto& pp : factors_) {
    total += pp.exponent;
  }
  return total;
}

u64 Factorization::divisor_count() const {
  u64 count = 1;
  for (const auto& pp : factors_) {
    count *= pp.exponent + 1;
  }
  return count;
}

const Factorization& factorize(u64 n) {
  if (n == 0) {
    throw DomainError("factorize: 0 has no factorization");
  }
  return factorization_table().get(n, [n] { return trial_divide(n); });
}

const std::vector<u64>& divisors(u64 n) {
  if (n == 0) {
    throw DomainError("divisors: n must be positive");
  }
  return divisor_table().get(n, [n] {
    std::vector<u64> out{1};
    for (const auto& pp : factorize(n).factors()) {
      const std::size_t previous = out.size();
      u64 power = 1;
      for (unsigned e = 1; e <= pp.exponent; ++e) {
        power *= pp.prime;
        for (std::size_t i = 0; i < previous; ++i) {
          out.push_back(out[i] * power);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  });
}

int mobius(u64 n) {
  const auto& f = factorize(n);
  if (!f.is_squarefree()) {
    return 0;
  }
  return f.factors().size() % 2 == 0 ? 1 : -1;
}

u64 euler_phi(u64 n) {
  u64 result = n;
  for (const auto& pp : factorize(n).factors()) {
    result = result / pp.prime * (pp.prime - 1);
  }
  return result;
}

unsigned big_omega(u64 n) { return factorize(n).big_omega(); }

BigRational jordan_totient(long order, u64 n) {
  BigRational acc;
  for (u64 d : divisors(n)) {
    const int mu = mobius(n / d);
    if (mu == 0) {
      continue;
    }
    BigRational term = BigRational(BigInt(static_cast<unsigned long>(d))).pow(order);
    if (mu > 0) {
      acc += term;
    } else {
      acc -= term;
    }
  }
  return acc;
}

u64 gcd(u64 a, u64 b) { return std::gcd(a, b); }

u64 lcm(u64 a, u64 b) {
  if (a == 0 || b == 0) {
    return 0;
  }
  u64 out = 0;
  if (__builtin_mul_overflow(a / std::gcd(a, b), b, &out)) {
    throw std::overflow_error("lcm exceeds 64 bits");
  }
  return out;
}

u64 lcm_list(std::span<const u64> values) {
  if (values.empty()) {
    throw PreconditionError("lcm_list: empty sequence");
  }
  u64 acc = 1;
  for (u64 v : values) {
    acc = lcm(acc, v);
  }
  return acc;
}

u64 generalized_gcd(u64 j, u64 k, unsigned a) {
  if (k == 0 || a == 0) {
    throw DomainError("generalized_gcd: k and a must be positive");
  }
  if (j == 0) {
    return k;
  }
  u64 result = 1;
  for (const auto& pp : factorize(k).factors()) {
    unsigned valuation = 0;
    u64 rest = j;
    while (rest % pp.prime == 0) {
      rest /= pp.prime;
      ++valuation;
    }
    const unsigned e = std::min(pp.exponent, valuation / a);
    for (unsigned i = 0; i < e; ++i) {
      result *= pp.prime;
    }
  }
  return result;
}

bool try_pow(u64 base, unsigned exponent, u64& out) {
  u64 acc = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(acc, base, &acc)) {
      return false;
    }
  }
  out = acc;
  return true;
}

u64 checked_pow(u64 base, unsigned exponent) {
  u64 out = 0;
  if (!try_pow(base, exponent, out)) {
    throw std::overflow_error(std::to_string(base) + "^" + std::to_string(exponent) +
                              " exceeds 64 bits");
  }
  return out;
}

}  // namespace aasum
