#include "aasum/value.hpp"

#include <cstdio>
#include <ostream>

#include "aasum/errors.hpp"

namespace aasum {

const BigRational& Value::exact() const {
  if (const auto* q = std::get_if<BigRational>(&v_)) {
    return *q;
  }
  throw DomainMismatchError("real value where an exact value is required");
}

double Value::to_double() const {
  if (const auto* q = std::get_if<BigRational>(&v_)) {
    return q->to_double();
  }
  return std::get<double>(v_);
}

bool Value::is_zero() const {
  if (const auto* q = std::get_if<BigRational>(&v_)) {
    return q->is_zero();
  }
  return std::get<double>(v_) == 0.0;
}

int Value::sign() const {
  if (const auto* q = std::get_if<BigRational>(&v_)) {
    return q->sign();
  }
  const double x = std::get<double>(v_);
  return (x > 0.0) - (x < 0.0);
}

std::string Value::to_string() const {
  if (const auto* q = std::get_if<BigRational>(&v_)) {
    return q->to_string();
  }
  return format_real(std::get<double>(v_));
}

namespace {

template <typename ExactOp, typename RealOp>
void combine(std::variant<BigRational, double>& lhs, const std::variant<BigRational, double>& rhs,
             ExactOp exact_op, RealOp real_op) {
  auto* lq = std::get_if<BigRational>(&lhs);
  const auto* rq = std::get_if<BigRational>(&rhs);
  if (lq != nullptr && rq != nullptr) {
    exact_op(*lq, *rq);
    return;
  }
  const double l = lq != nullptr ? lq->to_double() : std::get<double>(lhs);
  const double r = rq != nullptr ? rq->to_double() : std::get<double>(rhs);
  lhs = real_op(l, r);
}

}  // namespace

Value& Value::operator+=(const Value& rhs) {
  combine(v_, rhs.v_, [](BigRational& a, const BigRational& b) { a += b; },
          [](double a, double b) { return a + b; });
  return *this;
}

Value& Value::operator-=(const Value& rhs) {
  combine(v_, rhs.v_, [](BigRational& a, const BigRational& b) { a -= b; },
          [](double a, double b) { return a - b; });
  return *this;
}

Value& Value::operator*=(const Value& rhs) {
  combine(v_, rhs.v_, [](BigRational& a, const BigRational& b) { a *= b; },
          [](double a, double b) { return a * b; });
  return *this;
}

Value& Value::operator/=(const Value& rhs) {
  combine(v_, rhs.v_, [](BigRational& a, const BigRational& b) { a /= b; },
          [](double a, double b) { return a / b; });
  return *this;
}

Value Value::operator-() const {
  if (const auto* q = std::get_if<BigRational>(&v_)) {
    return Value(-*q);
  }
  return Value::real(-std::get<double>(v_));
}

bool operator==(const Value& lhs, const Value& rhs) {
  const auto* lq = std::get_if<BigRational>(&lhs.v_);
  const auto* rq = std::get_if<BigRational>(&rhs.v_);
  if (lq != nullptr && rq != nullptr) {
    return *lq == *rq;
  }
  return lhs.to_double() == rhs.to_double();
}

std::ostream& operator<<(std::ostream& os, const Value& value) { return os << value.to_string(); }

std::string format_real(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace aasum
