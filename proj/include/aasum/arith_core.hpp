#pragma once

// Integer foundations: factorization, divisors, gcd/lcm, the generalized gcd
// (j, k^a)_a and the classical multiplicative functions.

#include <cstdint>
#include <span>
#include <vector>

#include "aasum/exact_num.hpp"

namespace aasum {

using u64 = std::uint64_t;

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition of a positive integer. Primes are strictly
/// increasing, exponents positive; 1 has no factors.
class Factorization {
 public:
  Factorization(u64 value, std::vector<PrimePower> factors);

  u64 value() const { return value_; }
  std::span<const PrimePower> factors() const { return factors_; }
  bool is_squarefree() const;
  /// Number of prime factors counted with multiplicity.
  unsigned big_omega() const;
  u64 divisor_count() const;

 private:
  u64 value_;
  std::vector<PrimePower> factors_;
};

/// Trial division with a 2,3,5 wheel. Throws DomainError for n = 0.
/// Results are memoized process-wide; the cache is safe for concurrent use.
const Factorization& factorize(u64 n);

/// Ascending divisors of n (memoized like factorize).
const std::vector<u64>& divisors(u64 n);

int mobius(u64 n);
u64 euler_phi(u64 n);
unsigned big_omega(u64 n);

/// phi_order(n) = sum_{d|n} d^order mu(n/d); any integer order.
BigRational jordan_totient(long order, u64 n);

u64 gcd(u64 a, u64 b);
/// Throws std::overflow_error when the lcm exceeds 64 bits.
u64 lcm(u64 a, u64 b);
/// Throws PreconditionError on an empty list.
u64 lcm_list(std::span<const u64> values);

/// Largest d with d | k and d^a | j. Every d qualifies for j = 0, so
/// the result is k there. Requires k >= 1, a >= 1.
u64 generalized_gcd(u64 j, u64 k, unsigned a);

/// base^exponent, throws std::overflow_error on 64-bit overflow.
u64 checked_pow(u64 base, unsigned exponent);

/// Returns true and stores base^exponent when it fits in 64 bits.
bool try_pow(u64 base, unsigned exponent, u64& out);

}  // namespace aasum
