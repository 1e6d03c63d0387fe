#pragma once

#include <iosfwd>
#include <string>
#include <variant>

#include "aasum/exact_num.hpp"

namespace aasum {

/// The value of an arithmetic function: exact rational or double.
/// Arithmetic stays exact while both operands are exact and degrades to
/// double as soon as one operand is real.
class Value {
 public:
  Value() : v_(BigRational{}) {}
  Value(BigRational exact) : v_(std::move(exact)) {}  // NOLINT(google-explicit-constructor)
  Value(long long integer) : v_(BigRational{integer}) {}  // NOLINT(google-explicit-constructor)
  Value(int integer) : v_(BigRational{integer}) {}  // NOLINT(google-explicit-constructor)
  static Value real(double x) { return Value(Real{x}); }

  bool is_exact() const { return std::holds_alternative<BigRational>(v_); }
  /// Throws DomainMismatchError when the value is real.
  const BigRational& exact() const;
  double to_double() const;
  bool is_zero() const;
  int sign() const;

  /// Exact values print as "p" / "p/q", reals with 17 significant digits.
  std::string to_string() const;

  Value& operator+=(const Value& rhs);
  Value& operator-=(const Value& rhs);
  Value& operator*=(const Value& rhs);
  Value& operator/=(const Value& rhs);
  Value operator-() const;

  friend Value operator+(Value lhs, const Value& rhs) { return lhs += rhs; }
  friend Value operator-(Value lhs, const Value& rhs) { return lhs -= rhs; }
  friend Value operator*(Value lhs, const Value& rhs) { return lhs *= rhs; }
  friend Value operator/(Value lhs, const Value& rhs) { return lhs /= rhs; }

  /// Exact comparison when both sides are exact, bitwise double equality otherwise.
  friend bool operator==(const Value& lhs, const Value& rhs);

 private:
  struct Real {
    double x;
  };
  explicit Value(Real r) : v_(r.x) {}

  std::variant<BigRational, double> v_;
};

std::ostream& operator<<(std::ostream& os, const Value& value);

/// 17 significant digits, the serialization format for reals.
std::string format_real(double x);

}  // namespace aasum
