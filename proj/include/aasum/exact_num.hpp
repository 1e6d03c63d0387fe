#pragma once

// Exact rationals, Bernoulli numbers and polynomials, binomials, and the
// classical closed-form power/log sums used by the identity checks. Real
// valued helpers (log-factorial, log-Gamma) live here as well.

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>

#include <gmpxx.h>

namespace aasum {

using BigInt = mpz_class;

std::string to_string(const BigInt& value);

/// Arbitrary-precision rational, always in canonical form
/// (gcd(|num|, den) = 1, den >= 1).
class BigRational {
 public:
  BigRational() = default;
  BigRational(long long value);  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& value);  // NOLINT(google-explicit-constructor)
  BigRational(const BigInt& numerator, const BigInt& denominator);

  /// Parses "p", "-p" or "p/q". Throws ParseError on malformed text or q = 0.
  static BigRational parse(std::string_view text);

  BigInt numerator() const { return q_.get_num(); }
  BigInt denominator() const { return q_.get_den(); }
  bool is_integer() const { return q_.get_den() == 1; }
  bool is_zero() const { return sgn(q_) == 0; }
  int sign() const { return sgn(q_); }
  double to_double() const { return q_.get_d(); }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;
  /// Always "p/q" (denominator 1 is spelled out).
  std::string to_fraction_string() const;

  BigRational pow(long exponent) const;
  BigRational abs() const;

  BigRational& operator+=(const BigRational& rhs);
  BigRational& operator-=(const BigRational& rhs);
  BigRational& operator*=(const BigRational& rhs);
  BigRational& operator/=(const BigRational& rhs);
  BigRational operator-() const;

  friend BigRational operator+(BigRational lhs, const BigRational& rhs) { return lhs += rhs; }
  friend BigRational operator-(BigRational lhs, const BigRational& rhs) { return lhs -= rhs; }
  friend BigRational operator*(BigRational lhs, const BigRational& rhs) { return lhs *= rhs; }
  friend BigRational operator/(BigRational lhs, const BigRational& rhs) { return lhs /= rhs; }

  friend bool operator==(const BigRational& lhs, const BigRational& rhs) {
    return cmp(lhs.q_, rhs.q_) == 0;
  }
  friend std::strong_ordering operator<=>(const BigRational& lhs, const BigRational& rhs) {
    return cmp(lhs.q_, rhs.q_) <=> 0;
  }

  const mpq_class& raw() const { return q_; }

 private:
  mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const BigRational& value);

inline BigRational to_rational(std::uint64_t value) {
  return BigRational(BigInt(static_cast<unsigned long>(value)));
}

// ---------------------------------------------------------------------------
// Bernoulli numbers and polynomials (convention B_1 = -1/2).

inline constexpr unsigned kMaxBernoulliIndex = 200;

/// Exact B_m for 0 <= m <= 200, from the recurrence
/// sum_{j=0}^{m} binom(m+1, j) B_j = [m = 0]. The table is built once.
const BigRational& bernoulli_number(unsigned m);

/// B_m(x) = sum_j binom(m, j) B_j x^{m-j}.
BigRational bernoulli_poly(unsigned m, const BigRational& x);

BigInt binomial(std::uint64_t n, std::uint64_t k);

// ---------------------------------------------------------------------------
// Closed-form power sums.

/// sum_{m=1}^{N} m^r via N^r/2 + (1/(r+1)) sum_m binom(r+1,2m) B_{2m} N^{r+1-2m}
/// for r >= 1; N for r = 0.
BigRational faulhaber_sum(std::uint64_t n, unsigned r);

/// sum over 1 <= m <= N with gcd(m, N) = 1 of m^r, via
/// (N^r / (r+1)) sum_m binom(r+1, 2m) B_{2m} phi_{1-2m}(N); N = 1 gives 1.
BigRational coprime_power_sum(std::uint64_t n, unsigned r);

/// The same expansion with the N^{r+1} prefactor as it is commonly quoted.
/// It overcounts by a factor N; kept only as a regression witness.
BigRational coprime_power_sum_misprinted(std::uint64_t n, unsigned r);

/// sum_{m=0}^{floor(r/2)} binom(r+1, 2m) B_{2m}; equals (r+1)/2 for r >= 1 and 1 at r = 0.
BigRational sum_binom_bernoulli(unsigned r);

/// sum_{m=0}^{floor(n/stride)} binom(n, m*stride), exact.
BigInt multisection_binomial_sum(std::uint64_t n, std::uint64_t stride);

/// (2^n / stride) sum_{l=1}^{stride} cos^n(pi l/stride) cos(pi l n/stride).
double multisection_cosine_form(std::uint64_t n, std::uint64_t stride);

// ---------------------------------------------------------------------------
// Real-valued helpers (double precision).

/// log(n!) by compensated summation of logs for n <= 10^6, log-Gamma beyond.
double log_factorial(std::uint64_t n);

/// log Gamma(x) for x > 0. Throws DomainError for x <= 0.
double log_gamma(double x);

/// Open interval (lower, upper) that log(n!) occupies according to
/// log(n!) = n log n - n + (1/2) log n + log sqrt(2 pi) + theta/(12 n), 0 < theta < 1.
std::pair<double, double> stirling_bracket(std::uint64_t n);

/// sum over 1 <= l <= N, gcd(l, N) = 1 of log l, via
/// sum_{d|N} mu(N/d) log(d!) - phi(N) sum_{p|N} log p / (p - 1).
double coprime_log_sum(std::uint64_t n);

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace aasum
