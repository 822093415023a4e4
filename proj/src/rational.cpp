#include "padiccf/rational.hpp"

#include <cctype>

namespace padiccf {

namespace {

bool parse_integer(std::string_view text, BigInt& out) {
  if (text.empty()) return false;
  std::size_t i = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (i == text.size()) return false;
  for (std::size_t j = i; j < text.size(); ++j) {
    if (!std::isdigit(static_cast<unsigned char>(text[j]))) return false;
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return out.set_str(digits, 10) == 0;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational::Rational(const BigInt& num, const BigInt& den) : value_(num, den) {
  if (den == 0) throw InputError("rational with zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  text = trim(text);
  const auto slash = text.find('/');
  BigInt num;
  if (slash == std::string_view::npos) {
    if (!parse_integer(text, num)) throw InputError("malformed rational '" + std::string(text) + "'");
    return Rational(num);
  }
  BigInt den;
  std::string_view num_part = text.substr(0, slash);
  std::string_view den_part = text.substr(slash + 1);
  if (!parse_integer(num_part, num) || !parse_integer(den_part, den) || den_part[0] == '-' ||
      den_part[0] == '+') {
    throw InputError("malformed rational '" + std::string(text) + "'");
  }
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (g != 1 && num != 0) throw InputError("rational '" + std::string(text) + "' is not in lowest terms");
  if (num == 0 && den != 1) throw InputError("zero must be written as 0 or 0/1");
  return Rational(num, den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw InputError("inverse of zero");
  return Rational(mpq_class(1 / value_));
}

Rational Rational::pow(unsigned long exponent) const {
  BigInt n, d;
  mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), exponent);
  mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), exponent);
  return Rational(n, d);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw InputError("division by zero");
  value_ /= o.value_;
  return *this;
}

Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  text = trim(text);
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(Rational::parse(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string join_rationals(const std::vector<Rational>& values, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += values[i].str();
  }
  return out;
}

BigInt floor(const Rational& q) {
  BigInt out;
  mpz_fdiv_q(out.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
  return out;
}

int compare_rational_power(const Rational& base, const Rational& exponent, const Rational& limit) {
  if (base.sign() < 0 || exponent.sign() <= 0 || limit.sign() < 0) {
    throw InputError("compare_rational_power needs base >= 0, exponent > 0, limit >= 0");
  }
  // base^(r/q) vs limit  <=>  base^r vs limit^q
  if (!exponent.num().fits_ulong_p() || !exponent.den().fits_ulong_p()) {
    throw InputError("exponent too large");
  }
  const unsigned long r = exponent.num().get_ui();
  const unsigned long q = exponent.den().get_ui();
  const Rational lhs = base.pow(r);
  const Rational rhs = limit.pow(q);
  return lhs < rhs ? -1 : (rhs < lhs ? 1 : 0);
}

}  // namespace padiccf
