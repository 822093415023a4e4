#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace padiccf {

/// Raised for malformed user input (bad rational strings, invalid specs,
/// violated preconditions). The CLI maps it to exit code 2.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an internal identity that must hold exactly does not.
/// The CLI maps it to exit code 3.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using BigInt = mpz_class;

/// Arbitrary-precision rational, always kept in lowest terms with a
/// positive denominator. Zero is 0/1.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  explicit Rational(const BigInt& value) : value_(value) {}
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& value) : value_(value) { value_.canonicalize(); }

  /// Parses "n" or "n/d". Rejects zero denominators and fractions that are
  /// not in lowest terms; no decimal notation.
  static Rational parse(std::string_view text);

  /// "n" for integers, "n/d" otherwise.
  std::string str() const { return value_.get_str(); }

  const BigInt& num() const { return value_.get_num(); }
  const BigInt& den() const { return value_.get_den(); }
  const mpq_class& mpq() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }

  Rational abs() const { return Rational(::abs(value_)); }
  /// Throws InputError on zero.
  Rational inverse() const;
  Rational pow(unsigned long exponent) const;

  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return cmp(a.value_, b.value_) == 0; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class value_;
};

Rational max(const Rational& a, const Rational& b);

/// Parses a comma separated list of rationals, e.g. "0,8/3,-1/3".
std::vector<Rational> parse_rational_list(std::string_view text);
std::string join_rationals(const std::vector<Rational>& values, std::string_view sep = ",");

/// Floor of a rational as an integer.
BigInt floor(const Rational& q);

/// Exact comparison base^exponent vs limit for rational base >= 0 and
/// rational exponent r/q > 0: returns sign(base^(r/q) - limit^1) computed
/// as sign(base^r - limit^q).
int compare_rational_power(const Rational& base, const Rational& exponent, const Rational& limit);

}  // namespace padiccf
