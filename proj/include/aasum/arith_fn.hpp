#pragma once

// Arithmetic functions as immutable expression trees. Builtins cover the
// functions the identities are stated for; combinators build Dirichlet
// convolutions, pointwise products and rational multiples.
//
// Textual syntax (used by the CLI and by ArithFn::to_string):
//
//   expr   := term ('*' term)*          Dirichlet convolution
//   term   := factor ('.' factor)*      pointwise product
//   factor := rational ':' factor       scaling by a rational constant
//           | '(' expr ')'
//           | one | id | id^r | pow^s | mu | phi | jordan[m] | log | bigomega
//   rational := ['-'] digits ['/' digits]
//
// r is a nonnegative integer, s and m are integers (possibly negative).

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "aasum/arith_core.hpp"
#include "aasum/exact_num.hpp"
#include "aasum/value.hpp"

namespace aasum {

enum class FnClass {
  completely_multiplicative,
  completely_additive,
  multiplicative,
  general,
};

enum class FnDomain { rational, real };

const char* to_string(FnClass cls);

class ArithFn {
 public:
  enum class Kind {
    one,
    id_power,
    power,
    mobius,
    euler_phi,
    jordan,
    log,
    big_omega,
    dirichlet,
    pointwise,
    scale,
  };

  static ArithFn one();
  /// n -> n^r, r >= 0.
  static ArithFn id_power(unsigned r);
  /// n -> n^s for any integer s (rational valued when s < 0).
  static ArithFn power(long s);
  static ArithFn mobius();
  static ArithFn euler_phi();
  static ArithFn jordan(long order);
  static ArithFn log();
  static ArithFn big_omega();

  static ArithFn dirichlet(const ArithFn& lhs, const ArithFn& rhs);
  static ArithFn pointwise(const ArithFn& lhs, const ArithFn& rhs);
  static ArithFn scale(const BigRational& factor, const ArithFn& operand);

  /// Re-declares the multiplicativity class of f. Complete classes are
  /// spot-checked on 50 random pairs a, b <= 10^4 (coprime and not),
  /// the multiplicative class on 50 random coprime pairs; a failed check
  /// throws PreconditionError.
  static ArithFn declare(const ArithFn& f, FnClass cls);

  /// Parses the textual syntax above. Throws ParseError with the offset.
  static ArithFn parse(std::string_view text);

  /// Evaluates at n >= 1 (DomainError for n = 0).
  Value operator()(u64 n) const;
  /// Throws DomainMismatchError for real-domain functions.
  BigRational eval_exact(u64 n) const;
  double eval_real(u64 n) const;

  Kind kind() const;
  FnClass fn_class() const;
  FnDomain domain() const;
  bool is_exact() const { return domain() == FnDomain::rational; }
  bool is_completely_multiplicative() const {
    return fn_class() == FnClass::completely_multiplicative;
  }
  bool is_completely_additive() const { return fn_class() == FnClass::completely_additive; }
  /// Multiplicative in the ordinary sense (includes completely multiplicative).
  bool is_multiplicative() const;
  /// Structural test for the constant function 1 (one, id^0, pow^0).
  bool is_identically_one() const;

  /// Exponent of id_power/power, order of jordan; 0 otherwise.
  long parameter() const;

  std::string to_string() const;

  friend bool operator==(const ArithFn& lhs, const ArithFn& rhs);

  struct Node;  // opaque expression node

 private:
  explicit ArithFn(std::shared_ptr<const Node> node);
  static Value eval_node(const Node& node, u64 n);

  std::shared_ptr<const Node> node_;
};

/// Samples the multiplicativity law for `cls` on `samples` pseudo-random
/// pairs below `bound` (fixed seed). Returns false on the first violation.
bool spot_check_class(const ArithFn& f, FnClass cls, int samples = 50, u64 bound = 10000);

/// Psi(m) = sum over 1 <= l <= m with gcd(l, m) = 1 of w(l).
Value psi_weight(const ArithFn& w, u64 m);

/// Psi^(a)(N) = sum over 1 <= l <= N^a with (l, N^a)_a = 1 of w(l).
Value psi_weight_a(unsigned a, const ArithFn& w, u64 n);

/// Phi^(a)(N) = #{1 <= l <= N^a : (l, N^a)_a = 1}.
u64 phi_a(unsigned a, u64 n);

}  // namespace aasum
