#pragma once

#include <optional>
#include <span>
#include <vector>

#include "padiccf/continued_fraction.hpp"

namespace padiccf {

/// P(X) = a X^2 - b X + c vanishing at [a_0, ..., a_w, period, period, ...]
/// where the preperiod is a_0..a_w (a_0 = 0) and the period is
/// a_{w+1}..a_l. With the continuants of a_0..a_l:
///   a = B_{w-1} B_l - B_w B_{l-1}
///   b = B_{w-1} A_l - B_w A_{l-1} + A_{w-1} B_l - A_w B_{l-1}
///   c = A_{w-1} A_l - A_w A_{l-1}
struct QuadraticCertificate {
  Rational a, b, c;
  std::vector<Rational> preperiod;
  std::vector<Rational> period;
  /// Set when a = b = c = 0.
  bool degenerate = false;

  Rational evaluate(const Rational& x) const { return a * x * x - b * x + c; }
};

/// Throws InputError on an empty period, a preperiod not starting with 0, or
/// a letter a_i (i >= 1) with |a_i|_p <= 1.
QuadraticCertificate periodic_to_quadratic(const Prime& p, std::span<const Rational> preperiod,
                                           std::span<const Rational> period);

/// Preperiod followed by as many periods as needed to reach `letters`.
std::vector<Rational> unroll(const QuadraticCertificate& cert, std::size_t letters);

/// Rational roots of P (both, or the single root of a linear P).
std::vector<Rational> rational_roots(const QuadraticCertificate& cert);

struct RootCheck {
  std::size_t letters = 0;
  /// P is identically zero; the valuations carry no information.
  bool degenerate = false;
  /// v_p(P(x_N)) for the truncation x_N; nullopt means P(x_N) = 0.
  Valuation truncation_valuation;
  /// Set when the limit is a rational root of P, identified as the root
  /// p-adically closest to x_N (ties leave it unset).
  std::optional<Rational> exact_rational_limit;

  /// The reported valuation: +infinity when the limit is an exact rational
  /// root, otherwise the truncation valuation.
  Valuation valuation() const { return exact_rational_limit ? Valuation{} : truncation_valuation; }
};

/// Evaluates P at x_N = eval_cf of the word unrolled to >= N letters.
/// Throws InputError when N < |preperiod| + |period|.
RootCheck verify_root(const QuadraticCertificate& cert, const Prime& p, std::size_t letters);

/// True when the truncation valuations strictly increase along the ladder.
bool valuations_increase(const QuadraticCertificate& cert, const Prime& p, std::span<const std::size_t> ladder);

struct PalindromeWitness {
  bool symmetric = false;
  /// The off-diagonal entries of prod (a_i 1; 1 0): A_m and B_{m-1} of the
  /// word [0, a_1, ..., a_m].
  Rational A_m;
  Rational B_m_minus_1;
};

/// Symmetry of the continuant matrix of a_1..a_m. Throws InputError when a
/// letter is zero or not fixed by s.
PalindromeWitness palindrome_symmetry(std::span<const Rational> letters, const FloorFunction& s);

/// For a_0 = 0 returns B_{n-1}/B_n, equal to [0, a_n, ..., a_1]. For
/// |a_0|_p > 1 returns A_n/A_{n-1}, equal to [a_n, ..., a_0]; B_n/B_{n-1}
/// never involves a_0 and equals [a_n, ..., a_1] instead. The equality is
/// checked exactly and a mismatch throws InvariantError. Throws InputError
/// for n = 0 or any other a_0.
Rational reversal_quotient(std::span<const Rational> word, const Prime& p);

}  // namespace padiccf
