#include "padiccf/padic.hpp"

#include <algorithm>
#include <string>

namespace padiccf {

namespace {

using u128 = unsigned __int128;

long powmod(long base, long exp, long mod) {
  u128 result = 1;
  u128 b = static_cast<u128>(base % mod);
  while (exp > 0) {
    if (exp & 1) result = result * b % static_cast<u128>(mod);
    b = b * b % static_cast<u128>(mod);
    exp >>= 1;
  }
  return static_cast<long>(result);
}

BigInt mod_floor(const BigInt& a, const BigInt& m) {
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Rational power_of_p(const Prime& p, long e) {
  if (e >= 0) return Rational(p.power(static_cast<unsigned long>(e)));
  return Rational(BigInt(1), p.power(static_cast<unsigned long>(-e)));
}

}  // namespace

bool is_prime(long n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (long d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

Prime::Prime(long p) : p_(p) {
  if (p < 3 || p >= (1L << 31) || !is_prime(p)) {
    throw InputError("p must be an odd prime below 2^31, got " + std::to_string(p));
  }
}

BigInt Prime::power(unsigned long e) const {
  BigInt out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(p_), e);
  return out;
}

long vp(const BigInt& n, const Prime& p) {
  if (n == 0) throw InputError("valuation of zero integer");
  BigInt rest;
  const BigInt pp = p.big();
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t()));
}

Valuation vp(const Rational& q, const Prime& p) {
  if (q.is_zero()) return std::nullopt;
  return vp(q.num(), p) - vp(q.den(), p);
}

PAdicAbs abs_p(const Rational& q, const Prime& p) {
  const Valuation v = vp(q, p);
  if (!v) return {true, 0};
  return {false, -*v};
}

PAdicAbs operator*(const PAdicAbs& a, const PAdicAbs& b) {
  if (a.zero || b.zero) return {true, 0};
  return {false, a.exponent + b.exponent};
}

bool in_z_one_over_p(const Rational& q, const Prime& p) {
  BigInt rest;
  const BigInt pp = p.big();
  mpz_remove(rest.get_mpz_t(), q.den().get_mpz_t(), pp.get_mpz_t());
  return rest == 1;
}

BigInt mod_inverse(const BigInt& a, const BigInt& m) {
  BigInt out;
  if (mpz_invert(out.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw InputError("value not invertible modulo " + m.get_str());
  }
  return out;
}

BigInt residue(const Rational& q, const Prime& p, unsigned long e) {
  if (q.is_zero() || e == 0) return 0;
  if (*vp(q, p) < 0) throw InputError("residue of a non-integral p-adic value");
  const BigInt modulus = p.power(e);
  const BigInt inv = mod_inverse(q.den(), modulus);
  return mod_floor(BigInt(q.num() * inv), modulus);
}

std::vector<long> canonical_digits(const Rational& q, const Prime& p, long lo, long hi) {
  if (lo > hi) throw InputError("canonical_digits: lo > hi");
  const auto width = static_cast<unsigned long>(hi - lo + 1);
  std::vector<long> digits(width, 0);
  if (q.is_zero()) return digits;

  // x = q * p^-lo; drop digits below index lo so x is p-integral.
  Rational x = q * power_of_p(p, -lo);
  const long v = *vp(x, p);
  if (v < 0) {
    const auto k = static_cast<unsigned long>(-v);
    const Rational y = x * Rational(p.power(k));
    const BigInt low = residue(y, p, k);
    x = (y - Rational(low)) / Rational(p.power(k));
  }
  BigInt r = residue(x, p, width);
  const BigInt pp = p.big();
  for (unsigned long i = 0; i < width; ++i) {
    BigInt d;
    mpz_fdiv_qr(r.get_mpz_t(), d.get_mpz_t(), r.get_mpz_t(), pp.get_mpz_t());
    digits[i] = d.get_si();
  }
  return digits;
}

Rational digits_value(std::span<const long> digits, const Prime& p, long lo) {
  Rational sum;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] != 0) sum += Rational(digits[i]) * power_of_p(p, lo + static_cast<long>(i));
  }
  return sum;
}

Rational weil_height(std::span<const Rational> z, const Prime& p) {
  Rational arch = 1;
  long padic_exp = 0;
  for (const auto& zi : z) {
    if (!in_z_one_over_p(zi, p)) throw InputError("weil_height: " + zi.str() + " is not in Z[1/p]");
    arch = max(arch, zi.abs());
    const PAdicAbs a = abs_p(zi, p);
    if (!a.zero) padic_exp = std::max(padic_exp, a.exponent);
  }
  return arch * Rational(p.power(static_cast<unsigned long>(padic_exp)));
}

// ---------------------------------------------------------------------------
// PAdicApprox

PAdicApprox PAdicApprox::reduce(const Rational& q, const Prime& p, long precision) {
  if (precision < 1) throw InputError("precision must be >= 1");
  if (q.is_zero()) return exact_zero(p);
  PAdicApprox out(p);
  out.valuation_ = *vp(q, p);
  out.precision_ = precision;
  out.unit_ = residue(q * power_of_p(p, -out.valuation_), p, static_cast<unsigned long>(precision));
  return out;
}

PAdicApprox PAdicApprox::exact_zero(const Prime& p) {
  PAdicApprox out(p);
  out.exact_zero_ = true;
  return out;
}

PAdicApprox PAdicApprox::big_o(const Prime& p, long absolute_precision) {
  PAdicApprox out(p);
  out.valuation_ = absolute_precision;
  return out;
}

PAdicApprox PAdicApprox::from_parts(const Prime& p, long valuation, const BigInt& unit, long precision) {
  if (precision < 1) throw InputError("precision must be >= 1");
  PAdicApprox out(p);
  out.valuation_ = valuation;
  out.precision_ = precision;
  out.unit_ = mod_floor(unit, p.power(static_cast<unsigned long>(precision)));
  if (out.unit_ % p.big() == 0) throw InputError("unit part divisible by p");
  return out;
}

bool PAdicApprox::matches(const Rational& q) const {
  if (exact_zero_) return q.is_zero();
  const Rational value = Rational(unit_) * power_of_p(p_, valuation_);
  const Valuation v = vp(q - value, p_);
  return !v || *v >= absolute_precision();
}

PAdicApprox PAdicApprox::operator-() const {
  if (is_zero()) return *this;
  PAdicApprox out = *this;
  out.unit_ = mod_floor(BigInt(-unit_), p_.power(static_cast<unsigned long>(precision_)));
  return out;
}

PAdicApprox operator+(const PAdicApprox& a, const PAdicApprox& b) {
  if (!(a.p_ == b.p_)) throw InputError("PAdicApprox operands with different primes");
  if (a.exact_zero_) return b;
  if (b.exact_zero_) return a;
  const long abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
  const long base = std::min(a.valuation_, b.valuation_);
  if (abs_prec <= base) return PAdicApprox::big_o(a.p_, abs_prec);

  const BigInt modulus = a.p_.power(static_cast<unsigned long>(abs_prec - base));
  BigInt sum = a.unit_ * a.p_.power(static_cast<unsigned long>(a.valuation_ - base)) +
               b.unit_ * a.p_.power(static_cast<unsigned long>(b.valuation_ - base));
  sum = mod_floor(sum, modulus);
  if (sum == 0) return PAdicApprox::big_o(a.p_, abs_prec);

  const long t = vp(sum, a.p_);
  PAdicApprox out(a.p_);
  out.valuation_ = base + t;
  out.precision_ = abs_prec - out.valuation_;
  out.unit_ = mod_floor(BigInt(sum / a.p_.power(static_cast<unsigned long>(t))),
                        a.p_.power(static_cast<unsigned long>(out.precision_)));
  return out;
}

PAdicApprox operator*(const PAdicApprox& a, const PAdicApprox& b) {
  if (!(a.p_ == b.p_)) throw InputError("PAdicApprox operands with different primes");
  if (a.exact_zero_ || b.exact_zero_) return PAdicApprox::exact_zero(a.p_);
  // O(p^k) * (u p^v + ...) is O(p^(k + v)); both cases share the formula.
  if (a.unit_ == 0 || b.unit_ == 0) return PAdicApprox::big_o(a.p_, a.valuation_ + b.valuation_);
  PAdicApprox out(a.p_);
  out.valuation_ = a.valuation_ + b.valuation_;
  out.precision_ = std::min(a.precision_, b.precision_);
  out.unit_ = mod_floor(BigInt(a.unit_ * b.unit_), a.p_.power(static_cast<unsigned long>(out.precision_)));
  return out;
}

PAdicApprox PAdicApprox::inverse() const {
  if (is_zero()) throw InputError("inverse of a value indistinguishable from 0");
  PAdicApprox out(p_);
  out.valuation_ = -valuation_;
  out.precision_ = precision_;
  out.unit_ = mod_inverse(unit_, p_.power(static_cast<unsigned long>(precision_)));
  return out;
}

// ---------------------------------------------------------------------------

std::optional<long> sqrt_mod_prime(long a, long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  if (powmod(a, (p - 1) / 2, p) != 1) return std::nullopt;

  // Tonelli-Shanks.
  long q = p - 1;
  long s = 0;
  while (q % 2 == 0) {
    q /= 2;
    ++s;
  }
  long z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  long m = s;
  long c = powmod(z, q, p);
  long t = powmod(a, q, p);
  long r = powmod(a, (q + 1) / 2, p);
  while (t != 1) {
    long i = 0;
    long t2 = t;
    while (t2 != 1) {
      t2 = static_cast<long>(static_cast<u128>(t2) * t2 % static_cast<u128>(p));
      ++i;
    }
    long b = c;
    for (long j = 0; j < m - i - 1; ++j) b = static_cast<long>(static_cast<u128>(b) * b % static_cast<u128>(p));
    m = i;
    c = static_cast<long>(static_cast<u128>(b) * b % static_cast<u128>(p));
    t = static_cast<long>(static_cast<u128>(t) * c % static_cast<u128>(p));
    r = static_cast<long>(static_cast<u128>(r) * b % static_cast<u128>(p));
  }
  return std::min(r, p - r);
}

std::optional<PAdicApprox> hensel_sqrt(const Rational& d, const Prime& p, long precision) {
  if (precision < 1) throw InputError("precision must be >= 1");
  if (d.is_zero()) return PAdicApprox::exact_zero(p);
  const long v = *vp(d, p);
  if (v % 2 != 0) return std::nullopt;

  const BigInt modulus = p.power(static_cast<unsigned long>(precision));
  const BigInt unit = residue(d * power_of_p(p, -v), p, static_cast<unsigned long>(precision));
  const auto root = sqrt_mod_prime(BigInt(unit % p.big()).get_si(), p.value());
  if (!root) return std::nullopt;

  // Newton iteration doubles the number of correct digits each step.
  BigInt y = *root;
  for (long correct = 1; correct < precision; correct *= 2) {
    const BigInt f = y * y - unit;
    const BigInt inv = mod_inverse(BigInt(2 * y), modulus);
    y = mod_floor(BigInt(y - f * inv), modulus);
  }
  return PAdicApprox::from_parts(p, v / 2, y, precision);
}

}  // namespace padiccf
