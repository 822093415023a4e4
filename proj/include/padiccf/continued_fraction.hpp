#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "padiccf/floor.hpp"

namespace padiccf {

/// One step of the continuant recurrences
///   A_{-1} = 1, A_0 = a_0, A_n = a_n A_{n-1} + A_{n-2}
///   B_{-1} = 0, B_0 = 1,   B_n = a_n B_{n-1} + B_{n-2}.
struct ContinuantState {
  long index = 0;
  Rational A_prev, A, B_prev, B;
};

std::vector<ContinuantState> continuants(std::span<const Rational> word);

/// Random access to A_n, B_n for -2 <= n < word.size(), with the
/// conventions A_{-2} = 0, B_{-2} = 1.
class ContinuantTable {
 public:
  explicit ContinuantTable(std::span<const Rational> word);
  const Rational& A(long n) const { return A_.at(static_cast<std::size_t>(n + 2)); }
  const Rational& B(long n) const { return B_.at(static_cast<std::size_t>(n + 2)); }
  long last() const { return static_cast<long>(A_.size()) - 3; }

 private:
  std::vector<Rational> A_, B_;
};

/// 2x2 rational matrix, row major.
struct Matrix2 {
  Rational m00 = 1, m01 = 0, m10 = 0, m11 = 1;
  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y);
  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Product of the matrices (a_i 1; 1 0) over the word, which equals
/// (A_n A_{n-1}; B_n B_{n-1}) when the word starts at a_0.
Matrix2 continuant_matrix(std::span<const Rational> word);

/// [a_0, ..., a_n] evaluated backwards. Throws InputError on an empty word
/// or a zero denominator.
Rational eval_cf(std::span<const Rational> word);

/// (gamma A_{k-1} + A_{k-2}) / (gamma B_{k-1} + B_{k-2}) for the prefix
/// a_0..a_{k-1}. Throws InputError on a zero denominator.
Rational tail_reconstruct(std::span<const Rational> prefix, const Rational& gamma);

struct ExpansionRecord {
  Prime p;
  FloorFunction floor;
  Rational alpha;
  std::vector<Rational> partial_quotients;
  std::vector<Rational> complete_quotients;
  bool terminated = false;
  bool truncated = false;
};

/// gamma_0 = alpha, a_n = s(gamma_n), gamma_{n+1} = 1/(gamma_n - a_n), run
/// until gamma_n = a_n or max_terms partial quotients were produced.
ExpansionRecord expand(const Rational& alpha, const FloorFunction& s, std::size_t max_terms);

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus status);

struct IdentityCheck {
  std::string name;
  CheckStatus status = CheckStatus::pass;
  std::optional<long> first_failing_index;
  std::string detail;
};

struct IdentityReport {
  std::vector<IdentityCheck> checks;
  bool passed() const;
  const IdentityCheck* find(const std::string& name) const;
};

/// Exact checks on an expansion record:
///   algorithm            a_i = s(gamma_i), gamma_{i+1} = 1/(gamma_i - a_i)
///   partial-quotient-abs |a_i|_p > 1 for i >= 1
///   determinant          A_n B_{n-1} - B_n A_{n-1} = (-1)^(n+1)
///   tail-reconstruction  alpha rebuilt from a_0..a_{k-1} and gamma_k
///   continuant-valuation |A_n|_p = prod_{i=2..n} |a_i|_p, |B_n|_p = prod_{i=1..n} |a_i|_p
///   continuant-monotonicity  |A_n|_p < |A_{n+1}|_p, |B_n|_p < |B_{n+1}|_p, |A_n|_p <= |B_n|_p
///   approximation-valuation  v_p(B_n alpha - A_n) = -sum_{j=1..n+1} v_p(a_j)
///   convergent-valuation v_p(alpha - A_n/B_n) strictly increasing and >= n+1
///   archimedean-bound    max(|A_n|, |B_n|) <= (M+1)^n with M = max |a_i|
/// The valuation, monotonicity and archimedean checks concern
/// alpha - a_0 = [0, a_1, ...]; B_n is unchanged by the shift.
IdentityReport verify_identities(const ExpansionRecord& rec);

}  // namespace padiccf
