#pragma once

// Ramanujan, Cohen, Anderson-Apostol and generalized Anderson-Apostol sums.
// Each family has a divisor form; the first two also have an exponential
// form, evaluated in double precision as an independent cross-check.

#include <complex>
#include <vector>
#include <cstdint>

#include "aasum/arith_core.hpp"
#include "aasum/arith_fn.hpp"
#include "aasum/value.hpp"

namespace aasum {

/// c_k(j) = sum_{d | gcd(j,k)} d mu(k/d).
std::int64_t ramanujan(u64 k, u64 j);

/// sum over 1 <= m <= k, gcd(m,k) = 1 of exp(2 pi i m j / k).
std::complex<double> ramanujan_exp(u64 k, u64 j);

/// c_k^(a)(j) = sum over d | k with d^a | j of d^a mu(k/d).
BigInt cohen(unsigned a, u64 k, u64 j);

/// sum over 1 <= m <= k^a with (m, k^a)_a = 1 of exp(2 pi i m j / k^a).
std::complex<double> cohen_exp(unsigned a, u64 k, u64 j);

/// cohen_exp(a, k, j) for j = 1..j_max. The admissible residues and the
/// k^a-th roots of unity are tabulated once per row.
std::vector<std::complex<double>> cohen_exp_row(unsigned a, u64 k, u64 j_max);

/// s_k(j) = sum_{d | gcd(k,j)} f(d) g(k/d).
Value anderson_apostol(const ArithFn& f, const ArithFn& g, u64 k, u64 j);

/// Parameters of s^(a)_{f,g,h}(k, .).
struct SumSpec {
  unsigned a = 1;
  ArithFn f = ArithFn::one();
  ArithFn g = ArithFn::one();
  ArithFn h = ArithFn::one();
  u64 k = 1;
};

/// s^(a)_{f,g,h}(k, j) = sum over d | k with d^a | j of f(d) g(k/d) h(j/d^a).
/// j = 0 is accepted only when h is identically one (then every d | k
/// qualifies); otherwise it throws PreconditionError.
Value gen_aa(const SumSpec& spec, u64 j);

}  // namespace aasum
