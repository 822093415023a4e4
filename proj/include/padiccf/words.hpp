#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padiccf/padic.hpp"

namespace padiccf {

using Symbol = std::string;

enum class Generator {
  thue_morse,
  rudin_shapiro,
  paperfolding,
  fibonacci,
  sturmian,
  dfao,
  periodic,
  palindromic_closure,
  block_staircase,
  explicit_word,
};

std::string to_string(Generator g);
Generator generator_from_string(const std::string& name);

/// Deterministic finite automaton with output. Reads the base-k digits of n
/// most significant first; n = 0 reads nothing.
struct DFAO {
  unsigned base = 2;
  unsigned initial = 0;
  /// transitions[state][digit]
  std::vector<std::vector<unsigned>> transitions;
  std::vector<Symbol> outputs;

  std::size_t states() const { return outputs.size(); }
  /// Throws InputError on a non-total or out-of-range transition table.
  void validate() const;
  std::vector<unsigned> reachable() const;
  Symbol eval(std::uint64_t n) const;
};

Symbol dfao_eval(const DFAO& m, std::uint64_t n);

/// Two states, flipping on a 1 digit.
DFAO thue_morse_dfao(const Symbol& a = "a", const Symbol& b = "b");
/// Four states: parity of 11 blocks seen so far and the last digit.
DFAO rudin_shapiro_dfao(const Symbol& a = "a", const Symbol& b = "b");
/// Four states: the last digit and the digit preceding the last 1.
DFAO paperfolding_dfao(const Symbol& a = "a", const Symbol& b = "b");

/// floor((P + Q sqrt(d)) / D) for D > 0 and d >= 0 not a perfect square
/// (any d when Q = 0).
BigInt floor_surd(const BigInt& P, const BigInt& Q, const BigInt& d, const BigInt& D);

/// Slope (a + b sqrt(d)) / c in (0, 1), d not a perfect square, intercept
/// rational. letter(n) is `low` when the floor (or ceiling) difference at
/// n is 0, `high` otherwise.
struct SturmianParams {
  /// slope (a + b sqrt(d)) / c, by default (3 - sqrt 5) / 2
  BigInt a = 3, b = -1, d = 5, c = 2;
  Rational intercept = 0;
  bool ceiling = false;
};

enum class StaircaseKind {
  /// 0^i 1^i for i = 1, 2, ...
  blocks,
  /// beta_i = 0 1^i grouped as beta_{2^n} .. beta_{2^{n+1}-1} followed by
  /// their reversals in reverse order.
  mirrored,
};

struct WordSpec {
  Generator generator = Generator::thue_morse;
  std::map<Symbol, Rational> alphabet_map;

  /// Letters used by the two-letter generators; for fibonacci and the
  /// staircases they stand for 0 and 1.
  Symbol low = "a", high = "b";
  SturmianParams sturmian;
  DFAO dfao;
  /// letter(n) = dfao_eval(n - 1 + dfao_offset).
  std::uint64_t dfao_offset = 0;
  std::vector<Symbol> preperiod, period;
  std::vector<Symbol> letters;
  /// R_0, R_1, ... for the palindromic closure; cycled when seeds_periodic.
  std::vector<std::vector<Symbol>> seeds;
  bool seeds_periodic = false;
  StaircaseKind staircase = StaircaseKind::blocks;

  static WordSpec of(Generator g);
};

/// Lazy access to letter(1), letter(2), ... of a validated WordSpec.
/// Generators built by concatenation keep a mutex-guarded cache, so a
/// stream may be shared between threads.
class LetterStream {
 public:
  /// Throws InputError on invalid parameters or alphabet_map.
  explicit LetterStream(WordSpec spec);

  const WordSpec& spec() const { return spec_; }
  /// Number of letters for finite words, nullopt for infinite ones.
  std::optional<std::uint64_t> length() const;

  /// n >= 1. Throws InputError past the end of a finite word.
  Symbol letter(std::uint64_t n) const;
  std::vector<Symbol> symbols(std::uint64_t count) const;

  /// alphabet_map entry, or the symbol itself parsed as a rational.
  Rational value_of(const Symbol& s) const;
  /// [letter(1)..letter(L)] mapped through value_of. In partial-quotient
  /// mode every value must satisfy |v|_p > 1.
  std::vector<Rational> prefix(std::uint64_t count, const Prime* pq_mode = nullptr) const;

 private:
  struct Cache;
  Symbol generated(std::uint64_t n) const;
  void extend_to(std::uint64_t n) const;

  WordSpec spec_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace padiccf
