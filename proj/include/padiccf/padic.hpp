#pragma once

#include <optional>
#include <span>
#include <vector>

#include "padiccf/rational.hpp"

namespace padiccf {

/// An odd prime p >= 3 (and below 2^31, which keeps digit arithmetic in
/// machine words).
class Prime {
 public:
  explicit Prime(long p);
  long value() const { return p_; }
  BigInt big() const { return BigInt(p_); }
  BigInt power(unsigned long e) const;

  friend bool operator==(const Prime&, const Prime&) = default;

 private:
  long p_;
};

bool is_prime(long n);

/// p-adic valuation; std::nullopt stands for +infinity (the valuation of 0).
using Valuation = std::optional<long>;

Valuation vp(const Rational& q, const Prime& p);
/// Valuation of a nonzero big integer.
long vp(const BigInt& n, const Prime& p);

/// |q|_p as an exact power of p. `zero` is set for q = 0; otherwise the
/// value is p^exponent with exponent = -v_p(q).
struct PAdicAbs {
  bool zero = false;
  long exponent = 0;

  friend bool operator==(const PAdicAbs&, const PAdicAbs&) = default;
  /// Total order on absolute values, 0 smallest.
  friend bool operator<(const PAdicAbs& a, const PAdicAbs& b) {
    if (a.zero || b.zero) return a.zero && !b.zero;
    return a.exponent < b.exponent;
  }
};

PAdicAbs abs_p(const Rational& q, const Prime& p);
PAdicAbs operator*(const PAdicAbs& a, const PAdicAbs& b);

/// True when the denominator of q is a power of p.
bool in_z_one_over_p(const Rational& q, const Prime& p);

/// q mod p^e in [0, p^e) for q with v_p(q) >= 0.
BigInt residue(const Rational& q, const Prime& p, unsigned long e);

/// Base-p Hensel digits x_lo..x_hi of q, each in [0, p-1]. Indices below
/// v_p(q) hold 0. Throws InputError when lo > hi.
std::vector<long> canonical_digits(const Rational& q, const Prime& p, long lo, long hi);

/// Sum of digits[i] * p^(lo + i).
Rational digits_value(std::span<const long> digits, const Prime& p, long lo);

/// Multiplicative Weil height max(1, max|z_i|_inf) * max(1, max|z_i|_p) of a
/// point in Z[1/p]^N. Throws InputError on entries outside Z[1/p].
Rational weil_height(std::span<const Rational> z, const Prime& p);

/// Truncated p-adic number u * p^v + O(p^(v + N)).
///
/// A value that is indistinguishable from zero at its precision is stored
/// with unit 0, relative precision 0 and `valuation` equal to the absolute
/// precision it is known to (i.e. the value is O(p^valuation)). The exact
/// zero is a separate marker with infinite precision.
class PAdicApprox {
 public:
  /// Reduction of an exact rational to relative precision N >= 1.
  static PAdicApprox reduce(const Rational& q, const Prime& p, long precision);
  static PAdicApprox exact_zero(const Prime& p);
  /// O(p^absolute_precision).
  static PAdicApprox big_o(const Prime& p, long absolute_precision);
  /// unit * p^valuation + O(p^(valuation + precision)); unit is reduced mod
  /// p^precision and must be prime to p.
  static PAdicApprox from_parts(const Prime& p, long valuation, const BigInt& unit, long precision);

  const Prime& prime() const { return p_; }
  bool is_exact_zero() const { return exact_zero_; }
  /// True for exact zero and for O(p^k) values.
  bool is_zero() const { return exact_zero_ || unit_ == 0; }
  long valuation() const { return valuation_; }
  const BigInt& unit() const { return unit_; }
  /// Relative precision N.
  long precision() const { return precision_; }
  /// v + N; meaningless for the exact zero.
  long absolute_precision() const { return valuation_ + precision_; }

  /// True when q reduces to this value, i.e. q - value has valuation at
  /// least the absolute precision.
  bool matches(const Rational& q) const;

  PAdicApprox operator-() const;
  friend PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b);
  friend PAdicApprox operator-(const PAdicApprox& a, const PAdicApprox& b) { return a + (-b); }
  friend PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b);
  /// Throws InputError when the value is indistinguishable from 0.
  PAdicApprox inverse() const;

 private:
  PAdicApprox(Prime p) : p_(p) {}

  Prime p_;
  bool exact_zero_ = false;
  long valuation_ = 0;
  BigInt unit_ = 0;
  long precision_ = 0;
};

/// Square root of d in Q_p to relative precision N. The branch is fixed by
/// requiring the unit part to be congruent to the smallest positive square
/// root of d's unit part mod p. Returns nullopt when v_p(d) is odd or the
/// unit part is a non-residue.
std::optional<PAdicApprox> hensel_sqrt(const Rational& d, const Prime& p, long precision);

/// Modular helpers shared with the floor and quadratic modules.
BigInt mod_inverse(const BigInt& a, const BigInt& m);
/// Smallest root r in [0, p) of r^2 = a mod p, or nullopt.
std::optional<long> sqrt_mod_prime(long a, long p);

}  // namespace padiccf
