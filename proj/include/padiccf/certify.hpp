#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padiccf/combinatorics.hpp"
#include "padiccf/continued_fraction.hpp"
#include "padiccf/floor.hpp"
#include "padiccf/padic.hpp"
#include "padiccf/rational.hpp"
#include "padiccf/words.hpp"

namespace padiccf {

/// Largest integer k0 >= 0 with p^k0 <= C^t, i.e. floor(t log C / log p),
/// by integer comparison. Requires C > 1 and t > 0.
unsigned long log_ratio_floor(const Rational& t, const Rational& C, const Prime& p);

/// Exponent multiplying log C / log p in the definition of k:
/// spade max(3, 6c + 2); club 1 when c = 0, else 4 + 6c.
Rational k_multiplier(WitnessKind kind, const Rational& c);

/// Least admissible k with |a_n|_p >= p^k. Throws InputError when C_inf <= 1
/// or c < 0.
unsigned long required_k(WitnessKind kind, const Prime& p, const Rational& c, const Rational& C_inf);

/// Bits of the dyadic grid used for certified upper roundings.
inline constexpr unsigned kRootBits = 20;

/// Least C = k / 2^bits with C^n >= M, or the exact rational n-th root of M
/// when it exists. M > 0, n >= 1.
Rational root_upper_bound(const Rational& M, unsigned long n, unsigned bits = kRootBits);

/// Dyadic upper rounding of (T + sqrt(T^2 + 4)) / 2, the positive root of
/// x^2 - T x - 1. T >= 0.
Rational golden_bound(const Rational& T, unsigned bits = kRootBits);

/// Growth data for alpha = [0, a_1, ..., a_L]. Every bound is re-checked
/// against the continuants by exact comparison.
struct GrowthBounds {
  std::uint64_t n_first = 1, n_last = 0;
  /// Least certified C with max(|A_n|, |B_n|) <= C^n on n_first..n_last.
  Rational observed_C_inf;
  /// Set when observed_C_inf is an exact n-th root at observed_argmax.
  bool observed_exact = false;
  std::uint64_t observed_argmax = 0;
  /// max |a_i|_inf
  Rational T;
  /// min(golden_bound(T), T + 1); valid for every n when all |a_i| <= T.
  Rational closed_form_C_inf;
  /// max over n of (sum_{i<=n} -v_p(a_i)) / n, so |B_n|_p <= p^(e n).
  Rational C_p_exponent;
  /// max_i -v_p(a_i); |B_n|_p <= p^(e n) for every n over this alphabet.
  long C_p_letter_exponent = 0;
};

/// Throws InputError on an empty word or a letter with |a|_p <= 1, and
/// InvariantError if a certified bound fails its exact re-check.
GrowthBounds growth_bounds(std::span<const Rational> letters, const Prime& p);
/// Uses a_1, a_2, ... of the record. Needs at least two partial quotients.
GrowthBounds growth_bounds(const ExpansionRecord& rec);

struct Condition {
  WitnessKind kind = WitnessKind::spade;
  Rational c;
  friend bool operator==(const Condition&, const Condition&) = default;
};

/// Witnesses of the condition on the examined prefix.
struct ConditionEvidence {
  Condition condition;
  std::string source;  // "hint" or "detector"
  std::vector<Witness> family;
  std::uint64_t largest_u = 0;
  Rational fraction_consumed;
  bool enough = false;
};

/// Least c among the profile ratios whose family (ratio <= c) has at least
/// min_witnesses members and a member spanning half the prefix.
std::optional<Rational> least_supported_c(const Detection& detection, std::size_t min_witnesses);

struct LetterExponentCheck {
  long min_exponent = 0;
  std::uint64_t first_index = 0;  // 1-based position of the minimum
  std::optional<unsigned long> required;
  bool passed = false;
};

/// v_p(B_n alpha - A_n) = sum_{j<=n+1} -v_p(a_j) for alpha = [0, a_1..a_L].
struct ApproximationCheck {
  std::uint64_t n = 0;
  long expected = 0;
  Valuation observed;
  bool passed = false;
};

struct CertifyOptions {
  std::optional<Condition> hint;
  std::size_t min_witnesses = 3;
  unsigned threads = 0;
};

struct Certificate {
  static constexpr const char* kVersion = "1";
  static constexpr const char* kScope = "evidence-only";
  static constexpr const char* kDisclaimer =
      "Finite-prefix evidence for the hypotheses on the examined range only; it does not prove the "
      "hypotheses for the infinite word and makes no claim about transcendence.";

  Certificate(const Prime& p_, FloorFunction floor_, WordSpec word_, std::uint64_t length_)
      : p(p_), floor(std::move(floor_)), word(std::move(word_)), length(length_) {}

  Prime p;
  FloorFunction floor;
  WordSpec word;
  std::uint64_t length;

  std::optional<Condition> hint;
  /// Choice made from the detector profiles alone.
  std::optional<Condition> detected;
  /// Evidence for the condition in force (hint when given, else detected).
  std::optional<ConditionEvidence> evidence;

  GrowthBounds bounds;
  Rational C_inf_used;
  std::optional<unsigned long> k;
  LetterExponentCheck letters;
  std::vector<ApproximationCheck> approximation;

  bool ultimately_periodic_evidence = false;
  std::vector<PeriodCandidate> periods;

  std::vector<std::string> failures;

  bool evidenced() const { return failures.empty(); }
  /// "hypotheses-evidenced" or "failed(reason,...)".
  std::string verdict() const;
};

/// Throws InputError when L < 16, the word is shorter than L, or a letter
/// is not a fixed point of the floor function with |a|_p > 1.
Certificate certify(const FloorFunction& floor, const WordSpec& word, std::uint64_t length,
                    const CertifyOptions& options = {});

enum class CorollaryKind { browkin_ruban, finite_alphabet, automatic_binary, large_p };
std::string to_string(CorollaryKind kind);
CorollaryKind corollary_kind_from_string(const std::string& name);

struct ConditionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CorollaryReport {
  CorollaryKind which = CorollaryKind::finite_alphabet;
  std::optional<long> p;
  std::vector<ConditionResult> conditions;
  /// Hypotheses that cannot be decided from the inputs.
  std::vector<std::string> assumptions;
  std::optional<unsigned long> k;
  bool passed() const;
};

/// Exponent table for the two classical floors with c = 0 and
/// C_inf = p + 1 (Ruban) or p/2 + 1 (Browkin), checked against the letters'
/// p-adic sizes. Ruban additionally needs alpha irrational, which is
/// reported as an assumption.
CorollaryReport check_browkin_ruban(const Prime& p, FloorKind floor, WitnessKind kind,
                                    std::span<const Rational> alphabet);

/// spade: (T+1)^max(3, 6c+2) < p; club: T < p - 1 if c = 0, else
/// (T+1)^(4+6c) < p. T = max |a|_inf.
CorollaryReport check_finite_alphabet(const Prime& p, WitnessKind kind, const Rational& c,
                                      std::span<const Rational> alphabet);

/// (i) |a - b|_p >= 1, (ii) min(|a|_p, |b|_p) >= p,
/// (iii) (max(|a|, |b|) + 1)^(18C + 8) < p. With a family the sharper
/// per-family exponent is checked as well.
CorollaryReport check_automatic_binary(const Prime& p, const Rational& a, const Rational& b, const Rational& C,
                                       std::optional<Generator> family = std::nullopt);

/// Exponent e in (max(|a|, |b|) + 1)^e < p for words of a known family:
/// Rudin-Shapiro 152, paperfolding 80, Sturmian 3, Thue-Morse and the
/// Fibonacci word 1. nullopt for other generators.
std::optional<unsigned long> family_exponent(Generator g);

/// Least odd prime p <= limit for which a = n/p, b = m/p pass
/// check_automatic_binary; the report carries that p, or no p when the
/// range holds none. Throws InputError unless n, m are distinct and nonzero.
CorollaryReport least_prime_automatic(const BigInt& n, const BigInt& m, const Rational& C, long limit = 1000000);

}  // namespace padiccf
