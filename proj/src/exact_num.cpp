#include "aasum/exact_num.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "aasum/arith_core.hpp"
#include "aasum/errors.hpp"

namespace aasum {

std::string to_string(const BigInt& value) { return value.get_str(); }

BigRational::BigRational(long long value) : q_(mpz_class(static_cast<long>(value))) {
  static_assert(sizeof(long) == sizeof(long long));
}

BigRational::BigRational(const BigInt& value) : q_(value) {}

BigRational::BigRational(const BigInt& numerator, const BigInt& denominator)
    : q_(numerator, denominator) {
  if (denominator == 0) {
    throw DomainError("BigRational: zero denominator");
  }
  q_.canonicalize();
}

BigRational BigRational::parse(std::string_view text) {
  auto parse_integer = [&](std::string_view digits, std::size_t offset, bool allow_sign) {
    std::size_t i = 0;
    if (allow_sign && !digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
      ++i;
    }
    if (i == digits.size()) {
      throw ParseError("expected digits", offset + i);
    }
    for (std::size_t p = i; p < digits.size(); ++p) {
      if (digits[p] < '0' || digits[p] > '9') {
        throw ParseError("unexpected character '" + std::string(1, digits[p]) + "'", offset + p);
      }
    }
    std::string s(digits);
    if (s[0] == '+') {
      s.erase(0, 1);
    }
    return BigInt(s, 10);
  };

  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    return BigRational(parse_integer(text, 0, true));
  }
  BigInt num = parse_integer(text.substr(0, slash), 0, true);
  BigInt den = parse_integer(text.substr(slash + 1), slash + 1, false);
  if (den == 0) {
    throw ParseError("zero denominator", slash + 1);
  }
  return BigRational(num, den);
}

std::string BigRational::to_string() const { return q_.get_str(); }

std::string BigRational::to_fraction_string() const {
  return q_.get_num().get_str() + "/" + q_.get_den().get_str();
}

BigRational BigRational::pow(long exponent) const {
  if (exponent < 0) {
    if (is_zero()) {
      throw DomainError("BigRational::pow: zero to a negative power");
    }
    BigRational inv;
    mpq_inv(inv.q_.get_mpq_t(), q_.get_mpq_t());
    return inv.pow(-exponent);
  }
  BigRational out;
  mpz_pow_ui(out.q_.get_num_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
  mpz_pow_ui(out.q_.get_den_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
  return out;  // powers of coprime parts stay coprime
}

BigRational BigRational::abs() const {
  BigRational out;
  out.q_ = ::abs(q_);
  return out;
}

BigRational& BigRational::operator+=(const BigRational& rhs) {
  q_ += rhs.q_;
  return *this;
}

BigRational& BigRational::operator-=(const BigRational& rhs) {
  q_ -= rhs.q_;
  return *this;
}

BigRational& BigRational::operator*=(const BigRational& rhs) {
  q_ *= rhs.q_;
  return *this;
}

BigRational& BigRational::operator/=(const BigRational& rhs) {
  if (rhs.is_zero()) {
    throw DomainError("BigRational: division by zero");
  }
  q_ /= rhs.q_;
  return *this;
}

BigRational BigRational::operator-() const {
  BigRational out;
  out.q_ = -q_;
  return out;
}

std::ostream& operator<<(std::ostream& os, const BigRational& value) {
  return os << value.to_string();
}

// ---------------------------------------------------------------------------

namespace {

std::vector<BigRational> build_bernoulli_table() {
  std::vector<BigRational> table(kMaxBernoulliIndex + 1);
  table[0] = 1;
  for (unsigned m = 1; m <= kMaxBernoulliIndex; ++m) {
    if (m >= 3 && m % 2 == 1) {
      continue;  // zero
    }
    // sum_{j=0}^{m} binom(m+1, j) B_j = 0  =>  B_m = -(1/(m+1)) sum_{j<m} binom(m+1, j) B_j
    BigRational acc;
    for (unsigned j = 0; j < m; ++j) {
      if (!table[j].is_zero()) {
        acc += BigRational(binomial(m + 1, j)) * table[j];
      }
    }
    table[m] = -acc / BigRational(static_cast<long long>(m + 1));
  }
  return table;
}

}  // namespace

const BigRational& bernoulli_number(unsigned m) {
  static const std::vector<BigRational> table = build_bernoulli_table();
  if (m > kMaxBernoulliIndex) {
    throw DomainError("bernoulli_number: index above " + std::to_string(kMaxBernoulliIndex));
  }
  return table[m];
}

BigRational bernoulli_poly(unsigned m, const BigRational& x) {
  // Horner in x over the coefficients binom(m, j) B_j of x^{m-j}.
  BigRational acc;
  for (unsigned j = 0; j <= m; ++j) {
    acc *= x;
    const BigRational& b = bernoulli_number(j);
    if (!b.is_zero()) {
      acc += BigRational(binomial(m, j)) * b;
    }
  }
  return acc;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  BigInt out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

BigRational faulhaber_sum(std::uint64_t n, unsigned r) {
  if (n == 0) {
    throw DomainError("faulhaber_sum: N must be positive");
  }
  if (r == 0) {
    // The N^r/2 term stems from B_1 and is absent for r = 0.
    return to_rational(n);
  }
  const BigRational big_n(BigInt(static_cast<unsigned long>(n)));
  BigRational acc;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    acc += BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m) *
           big_n.pow(static_cast<long>(r + 1 - 2 * m));
  }
  return big_n.pow(r) / BigRational(2) + acc / BigRational(static_cast<long long>(r + 1));
}

namespace {

BigRational coprime_power_sum_with_prefactor(std::uint64_t n, unsigned r, unsigned prefactor_exp) {
  if (n == 0) {
    throw DomainError("coprime_power_sum: N must be positive");
  }
  if (n == 1) {
    return 1;
  }
  BigRational acc;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    acc += BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m) *
           jordan_totient(1 - 2 * static_cast<long>(m), n);
  }
  const BigRational big_n(BigInt(static_cast<unsigned long>(n)));
  return big_n.pow(prefactor_exp) / BigRational(static_cast<long long>(r + 1)) * acc;
}

}  // namespace

BigRational coprime_power_sum(std::uint64_t n, unsigned r) {
  return coprime_power_sum_with_prefactor(n, r, r);
}

BigRational coprime_power_sum_misprinted(std::uint64_t n, unsigned r) {
  return coprime_power_sum_with_prefactor(n, r, r + 1);
}

BigRational sum_binom_bernoulli(unsigned r) {
  BigRational acc;
  for (unsigned m = 0; 2 * m <= r; ++m) {
    acc += BigRational(binomial(r + 1, 2 * m)) * bernoulli_number(2 * m);
  }
  return acc;
}

BigInt multisection_binomial_sum(std::uint64_t n, std::uint64_t stride) {
  if (stride == 0) {
    throw DomainError("multisection_binomial_sum: stride must be positive");
  }
  BigInt acc = 0;
  for (std::uint64_t j = 0; j <= n; j += stride) {
    acc += binomial(n, j);
  }
  return acc;
}

double multisection_cosine_form(std::uint64_t n, std::uint64_t stride) {
  if (stride == 0) {
    throw DomainError("multisection_cosine_form: stride must be positive");
  }
  CompensatedSum acc;
  for (std::uint64_t l = 1; l <= stride; ++l) {
    const double c = std::cos(std::numbers::pi * static_cast<double>(l) / static_cast<double>(stride));
    // cos(pi l n / stride) only depends on l n mod 2 stride
    const double phase = static_cast<double>((l * n) % (2 * stride)) / static_cast<double>(stride);
    acc.add(std::pow(c, static_cast<double>(n)) * std::cos(std::numbers::pi * phase));
  }
  return std::ldexp(acc.value(), static_cast<int>(n)) / static_cast<double>(stride);
}

// ---------------------------------------------------------------------------

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

double log_factorial(std::uint64_t n) {
  constexpr std::uint64_t kSummationLimit = 1'000'000;
  if (n > kSummationLimit) {
    return log_gamma(static_cast<double>(n) + 1.0);
  }
  CompensatedSum acc;
  for (std::uint64_t i = 2; i <= n; ++i) {
    acc.add(std::log(static_cast<double>(i)));
  }
  return acc.value();
}

double log_gamma(double x) {
  if (!(x > 0.0)) {
    throw DomainError("log_gamma: argument must be positive");
  }
  return std::lgamma(x);
}

std::pair<double, double> stirling_bracket(std::uint64_t n) {
  if (n == 0) {
    throw DomainError("stirling_bracket: n must be positive");
  }
  const double x = static_cast<double>(n);
  const double lower = x * std::log(x) - x + 0.5 * std::log(x) + 0.5 * std::log(2.0 * std::numbers::pi);
  return {lower, lower + 1.0 / (12.0 * x)};
}

double coprime_log_sum(std::uint64_t n) {
  if (n == 0) {
    throw DomainError("coprime_log_sum: N must be positive");
  }
  CompensatedSum acc;
  for (u64 d : divisors(n)) {
    const int mu = mobius(n / d);
    if (mu != 0) {
      acc.add(mu * log_factorial(d));
    }
  }
  double prime_part = 0.0;
  for (const PrimePower& pp : factorize(n).factors()) {
    prime_part += std::log(static_cast<double>(pp.prime)) / static_cast<double>(pp.prime - 1);
  }
  acc.add(-static_cast<double>(euler_phi(n)) * prime_part);
  return acc.value();
}

}  // namespace aasum
