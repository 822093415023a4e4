#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "padiccf/padic.hpp"

namespace padiccf {

enum class FloorKind { ruban, browkin, custom };

std::string to_string(FloorKind kind);
FloorKind floor_kind_from_string(const std::string& name);

/// A p-adic floor function s: Q -> Z[1/p] with |q - s(q)|_p < 1, s(0) = 0
/// and s constant on residue classes of Q_p / pZ_p.
///
/// Ruban keeps the canonical digits in [0, p-1] of positions min(v,0)..0;
/// Browkin keeps balanced digits in [-(p-1)/2, (p-1)/2]. Inputs with
/// v_p(q) >= 1 have an empty digit window and map to 0. A custom floor
/// remaps finitely many classes (keyed by their Ruban representative) and
/// falls back to Ruban or Browkin elsewhere.
class FloorFunction {
 public:
  static FloorFunction ruban(const Prime& p) { return FloorFunction(FloorKind::ruban, p); }
  static FloorFunction browkin(const Prime& p) { return FloorFunction(FloorKind::browkin, p); }
  /// Validates every entry (see validate_remap_entry); throws InputError.
  static FloorFunction custom(const Prime& p, std::map<Rational, Rational> remap, FloorKind fallback);
  /// Builds a custom floor without checking the remap table, so that the
  /// validator can be pointed at a broken function.
  static FloorFunction custom_unchecked(const Prime& p, std::map<Rational, Rational> remap, FloorKind fallback);
  /// Custom floor whose image contains every given letter (each letter's
  /// class is remapped onto the letter itself).
  static FloorFunction containing(const Prime& p, std::span<const Rational> letters, FloorKind fallback);

  FloorKind kind() const { return kind_; }
  FloorKind fallback() const { return fallback_; }
  const Prime& prime() const { return p_; }
  const std::map<Rational, Rational>& remap() const { return remap_; }

  Rational operator()(const Rational& q) const { return apply(q); }
  Rational apply(const Rational& q) const;

  /// Empty string when (class_rep -> rep) is a legal remap entry, otherwise
  /// the reason.
  static std::string validate_remap_entry(const Prime& p, const Rational& class_rep, const Rational& rep);

 private:
  FloorFunction(FloorKind kind, const Prime& p) : kind_(kind), fallback_(kind), p_(p) {}

  FloorKind kind_;
  FloorKind fallback_;
  Prime p_;
  std::map<Rational, Rational> remap_;
};

Rational ruban_floor(const Rational& q, const Prime& p);
Rational browkin_floor(const Rational& q, const Prime& p);

struct FloorViolation {
  std::string check;  // "abs", "image", "class", "zero", "remap"
  Rational input;
  std::string detail;
};

struct FloorValidationReport {
  std::vector<FloorViolation> violations;
  std::size_t samples_checked = 0;
  bool passed() const { return violations.empty(); }
};

/// Checks the floor axioms on each sample: |q - s(q)|_p < 1, s(q) in Z[1/p],
/// s(q) = s(q + p t) for pseudo-random p-integral t, plus s(0) = 0 and the
/// remap table invariants. The random stream is seeded by `seed`.
FloorValidationReport validate_floor(const FloorFunction& s, std::span<const Rational> samples,
                                     unsigned long seed = 0x5eed, int class_trials = 8);

}  // namespace padiccf
