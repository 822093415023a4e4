#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padiccf/rational.hpp"

namespace padiccf {

using Code = std::uint32_t;

/// Symbols replaced by dense codes in order of first appearance.
std::vector<Code> intern(std::span<const std::string> word);
std::vector<Code> intern(std::span<const Rational> word);

/// Z[i] = length of the longest common prefix of s and s[i..]; Z[0] = |s|.
std::vector<std::size_t> z_function(std::span<const Code> s);

/// Worker count: PADIC_CF_THREADS when set to a positive integer, else the
/// hardware concurrency.
unsigned worker_threads();

/// Distinct factor counts of a finite word via its suffix array.
class FactorIndex {
 public:
  explicit FactorIndex(std::span<const Code> word);
  std::size_t size() const { return n_; }
  /// Number of distinct factors of length len; throws InputError when
  /// len > size(). len = 0 counts the empty word.
  std::uint64_t count(std::size_t len) const;

 private:
  std::size_t n_;
  std::vector<std::size_t> sa_, lcp_;
};

std::uint64_t complexity(std::span<const Code> prefix, std::size_t n);
std::uint64_t complexity(std::span<const std::string> prefix, std::size_t n);

enum class WitnessKind { spade, club };
std::string to_string(WitnessKind kind);
WitnessKind witness_kind_from_string(const std::string& name);

/// Prefix W U V U (spade) or W U V reverse(U) (club) with |W| = w, |U| = u,
/// |V| = v.
struct Witness {
  WitnessKind kind = WitnessKind::spade;
  std::uint64_t w = 0, u = 1, v = 0;
  std::uint64_t prefix_length_used = 0;

  /// max(v, w) / u
  Rational ratio() const;
  std::uint64_t span_length() const { return w + 2 * u + v; }
  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Direct letter-by-letter check of the witness against the prefix.
bool validate_witness(std::span<const Code> prefix, const Witness& witness);

struct CProfileEntry {
  std::uint64_t u = 0;
  /// min over admissible (w, v) of max(v, w) / u; unset when no (w, v) fits.
  std::optional<Rational> ratio;
  /// Lexicographically least (max(v, w), w, v) among the minimizers.
  std::optional<Witness> best;
};

/// Entries for u = 1 .. |prefix| / 2.
using CProfile = std::vector<CProfileEntry>;

struct Detection {
  WitnessKind kind = WitnessKind::spade;
  Rational c_max;
  std::uint64_t prefix_length = 0;
  /// Best witnesses with ratio <= c_max, by increasing u.
  std::vector<Witness> family;
  CProfile profile;
  std::uint64_t largest_u = 0;
  /// span_length / prefix_length of the largest witness.
  Rational fraction_consumed;
  bool enough = false;
};

/// Finite-prefix evidence for the spade/club condition. Runs one Z-array
/// pass per start of U (spade) or end of U (club), O(L^2) overall, split
/// across worker_threads(); every family member is re-validated.
Detection detect(WitnessKind kind, std::span<const Code> prefix, const Rational& c_max,
                 std::size_t min_witnesses, unsigned threads = 0);

/// Every admissible (w, v) for a given u with max(v, w) <= c_max u, sorted
/// by (w, v).
std::vector<Witness> witnesses_for(WitnessKind kind, std::span<const Code> prefix, std::uint64_t u,
                                   const Rational& c_max);

struct PeriodCandidate {
  std::uint64_t preperiod = 0;
  std::uint64_t period = 0;
  friend bool operator==(const PeriodCandidate&, const PeriodCandidate&) = default;
};

struct SpecialPrefixes {
  std::uint64_t longest_square = 0;
  std::uint64_t longest_palindrome = 0;
  /// All L with prefix[1..2L] = (prefix[1..L])^2, increasing.
  std::vector<std::uint64_t> square_lengths;
  /// All P >= 1 with prefix[1..P] a palindrome, increasing.
  std::vector<std::uint64_t> palindrome_lengths;
  /// (q, t) with q the least preperiod for period t, q + 3t <= L, and no
  /// divisor of t doing as well.
  std::vector<PeriodCandidate> periods;
};

SpecialPrefixes scan_special_prefixes(std::span<const Code> prefix);

/// 3C + 1; throws InputError unless C > 0.
Rational spade_constant_from_complexity(const Rational& C);

}  // namespace padiccf
