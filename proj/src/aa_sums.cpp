#include "aasum/aa_sums.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "aasum/errors.hpp"

namespace aasum {

namespace {

void require_positive(u64 k, u64 j, const char* what) {
  if (k == 0 || j == 0) {
    throw DomainError(std::string(what) + ": k and j must be positive");
  }
}

// exp(2 pi i num/den) with the phase reduced exactly before conversion.
std::complex<double> unit_root(u64 num, u64 den) {
  const double angle =
      2.0 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

u64 mul_mod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

}  // namespace

std::int64_t ramanujan(u64 k, u64 j) {
  require_positive(k, j, "ramanujan");
  std::int64_t acc = 0;
  for (u64 d : divisors(gcd(j, k))) {
    acc += static_cast<std::int64_t>(d) * mobius(k / d);
  }
  return acc;
}

std::complex<double> ramanujan_exp(u64 k, u64 j) {
  require_positive(k, j, "ramanujan_exp");
  std::complex<double> acc{0.0, 0.0};
  for (u64 m = 1; m <= k; ++m) {
    if (gcd(m, k) == 1) {
      acc += unit_root(mul_mod(m, j, k), k);
    }
  }
  return acc;
}

BigInt cohen(unsigned a, u64 k, u64 j) {
  require_positive(k, j, "cohen");
  if (a == 0) {
    throw DomainError("cohen: a must be positive");
  }
  BigInt acc = 0;
  for (u64 d : divisors(k)) {
    u64 da = 0;
    if (!try_pow(d, a, da) || j % da != 0) {
      continue;
    }
    const int mu = mobius(k / d);
    if (mu != 0) {
      acc += BigInt(static_cast<unsigned long>(da)) * mu;
    }
  }
  return acc;
}

std::complex<double> cohen_exp(unsigned a, u64 k, u64 j) {
  require_positive(k, j, "cohen_exp");
  if (a == 0) {
    throw DomainError("cohen_exp: a must be positive");
  }
  const u64 modulus = checked_pow(k, a);
  std::complex<double> acc{0.0, 0.0};
  for (u64 m = 1; m <= modulus; ++m) {
    if (generalized_gcd(m, k, a) == 1) {
      acc += unit_root(mul_mod(m, j, modulus), modulus);
    }
  }
  return acc;
}

std::vector<std::complex<double>> cohen_exp_row(unsigned a, u64 k, u64 j_max) {
  require_positive(k, std::max<u64>(j_max, 1), "cohen_exp_row");
  if (a == 0) {
    throw DomainError("cohen_exp_row: a must be positive");
  }
  const u64 modulus = checked_pow(k, a);
  std::vector<u64> residues;
  for (u64 m = 1; m <= modulus; ++m) {
    if ((a == 1 ? gcd(m, k) : generalized_gcd(m, k, a)) == 1) {
      residues.push_back(m);
    }
  }
  std::vector<std::complex<double>> roots(modulus);
  for (u64 t = 0; t < modulus; ++t) {
    roots[t] = unit_root(t, modulus);
  }
  // Residue-outer order: the phase of m at j+1 is the phase at j plus m.
  std::vector<std::complex<double>> row(j_max, {0.0, 0.0});
  for (u64 m : residues) {
    u64 phase = 0;
    for (u64 j = 1; j <= j_max; ++j) {
      phase += m;
      if (phase >= modulus) {
        phase -= modulus;
      }
      row[j - 1] += roots[phase];
    }
  }
  return row;
}

Value anderson_apostol(const ArithFn& f, const ArithFn& g, u64 k, u64 j) {
  require_positive(k, j, "anderson_apostol");
  Value acc;
  for (u64 d : divisors(gcd(k, j))) {
    acc += f(d) * g(k / d);
  }
  return acc;
}

Value gen_aa(const SumSpec& spec, u64 j) {
  if (spec.k == 0 || spec.a == 0) {
    throw DomainError("gen_aa: k and a must be positive");
  }
  const bool h_one = spec.h.is_identically_one();
  if (j == 0 && !h_one) {
    throw PreconditionError("gen_aa: j = 0 needs h = one (h(0) is undefined)");
  }
  Value acc;
  for (u64 d : divisors(spec.k)) {
    u64 da = 0;
    if (j != 0 && (!try_pow(d, spec.a, da) || j % da != 0)) {
      continue;
    }
    Value term = spec.f(d) * spec.g(spec.k / d);
    if (!h_one) {
      term *= spec.h(j / da);
    }
    acc += term;
  }
  return acc;
}

}  // namespace aasum
