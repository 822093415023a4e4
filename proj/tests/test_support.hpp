#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "padiccf/padic.hpp"

namespace padiccf::testing {

inline Rational R(const char* text) { return Rational::parse(text); }

/// Random nonzero rational with |num|, den <= bound.
inline Rational random_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound);
  std::uniform_int_distribution<long> den(1, bound);
  long n = 0;
  while (n == 0) n = num(rng);
  return Rational(BigInt(n), BigInt(den(rng)));
}

inline std::vector<Rational> W(std::initializer_list<const char*> items) {
  std::vector<Rational> out;
  for (auto s : items) out.push_back(R(s));
  return out;
}

/// Random n / p^m (m in 1..max_scale, p not dividing n) in balanced digit
/// range, so that both Browkin and |x|_p > 1 hold.
inline Rational random_browkin_letter(std::mt19937_64& rng, const Prime& p, unsigned long max_scale = 2) {
  std::uniform_int_distribution<unsigned long> scale(1, max_scale);
  const unsigned long m = scale(rng);
  const long half = (p.power(m + 1).get_si() - 1) / 2;
  std::uniform_int_distribution<long> num(-half, half);
  long n = 0;
  while (n % p.value() == 0) n = num(rng);
  return Rational(BigInt(n), p.power(m));
}

}  // namespace padiccf::testing
