#include "padiccf/floor.hpp"

#include <algorithm>
#include <random>

namespace padiccf {

std::string to_string(FloorKind kind) {
  switch (kind) {
    case FloorKind::ruban: return "ruban";
    case FloorKind::browkin: return "browkin";
    case FloorKind::custom: return "custom";
  }
  return "?";
}

FloorKind floor_kind_from_string(const std::string& name) {
  if (name == "ruban") return FloorKind::ruban;
  if (name == "browkin") return FloorKind::browkin;
  if (name == "custom") return FloorKind::custom;
  throw InputError("unknown floor kind '" + name + "'");
}

namespace {

// q * p^m with m = max(-v, 0) is p-integral; returns (residue of it modulo
// p^(m+1), p^m), or m = -1 when the digit window is empty.
struct Window {
  BigInt digits;
  BigInt scale;
  BigInt modulus;
};

std::optional<Window> digit_window(const Rational& q, const Prime& p) {
  if (q.is_zero()) return std::nullopt;
  const long v = *vp(q, p);
  if (v >= 1) return std::nullopt;
  const auto m = static_cast<unsigned long>(-v);
  Window w;
  w.scale = p.power(m);
  w.modulus = p.power(m + 1);
  w.digits = residue(q * Rational(w.scale), p, m + 1);
  return w;
}

}  // namespace

Rational ruban_floor(const Rational& q, const Prime& p) {
  const auto w = digit_window(q, p);
  if (!w) return 0;
  return Rational(w->digits, w->scale);
}

Rational browkin_floor(const Rational& q, const Prime& p) {
  auto w = digit_window(q, p);
  if (!w) return 0;
  // Integers with m+1 balanced base-p digits are exactly those in
  // [-(p^(m+1)-1)/2, (p^(m+1)-1)/2].
  if (2 * w->digits > w->modulus) w->digits -= w->modulus;
  return Rational(w->digits, w->scale);
}

std::string FloorFunction::validate_remap_entry(const Prime& p, const Rational& class_rep, const Rational& rep) {
  if (!in_z_one_over_p(class_rep, p)) return "class " + class_rep.str() + " is not in Z[1/p]";
  if (ruban_floor(class_rep, p) != class_rep) {
    return "class " + class_rep.str() + " is not a canonical Ruban representative";
  }
  if (!in_z_one_over_p(rep, p)) return "representative " + rep.str() + " is not in Z[1/p]";
  if (class_rep.is_zero() && !rep.is_zero()) return "the class of 0 must map to 0";
  const Valuation v = vp(rep - class_rep, p);
  if (v && *v < 1) {
    return "representative " + rep.str() + " is not in the class of " + class_rep.str() +
           " (v_p difference " + std::to_string(*v) + ")";
  }
  return {};
}

FloorFunction FloorFunction::custom_unchecked(const Prime& p, std::map<Rational, Rational> remap,
                                              FloorKind fallback) {
  if (fallback == FloorKind::custom) throw InputError("custom floor fallback must be ruban or browkin");
  FloorFunction f(FloorKind::custom, p);
  f.fallback_ = fallback;
  f.remap_ = std::move(remap);
  return f;
}

FloorFunction FloorFunction::custom(const Prime& p, std::map<Rational, Rational> remap, FloorKind fallback) {
  for (const auto& [cls, rep] : remap) {
    if (auto why = validate_remap_entry(p, cls, rep); !why.empty()) throw InputError("custom floor: " + why);
  }
  return custom_unchecked(p, std::move(remap), fallback);
}

FloorFunction FloorFunction::containing(const Prime& p, std::span<const Rational> letters, FloorKind fallback) {
  std::map<Rational, Rational> remap;
  for (const auto& x : letters) {
    const Rational cls = ruban_floor(x, p);
    auto [it, inserted] = remap.emplace(cls, x);
    if (!inserted && it->second != x) {
      throw InputError("letters " + it->second.str() + " and " + x.str() + " lie in the same residue class");
    }
  }
  return custom(p, std::move(remap), fallback);
}

Rational FloorFunction::apply(const Rational& q) const {
  switch (kind_) {
    case FloorKind::ruban: return ruban_floor(q, p_);
    case FloorKind::browkin: return browkin_floor(q, p_);
    case FloorKind::custom: break;
  }
  const Rational cls = ruban_floor(q, p_);
  if (auto it = remap_.find(cls); it != remap_.end()) return it->second;
  return fallback_ == FloorKind::browkin ? browkin_floor(q, p_) : cls;
}

FloorValidationReport validate_floor(const FloorFunction& s, std::span<const Rational> samples,
                                     unsigned long seed, int class_trials) {
  const Prime& p = s.prime();
  FloorValidationReport report;
  for (const auto& [cls, rep] : s.remap()) {
    if (auto why = FloorFunction::validate_remap_entry(p, cls, rep); !why.empty()) {
      report.violations.push_back({"remap", cls, why});
    }
  }
  if (!s(Rational(0)).is_zero()) report.violations.push_back({"zero", Rational(0), "s(0) = " + s(0).str()});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> numerators(-1000, 1000);
  std::uniform_int_distribution<long> denominators(1, 60);

  for (const auto& q : samples) {
    ++report.samples_checked;
    const Rational image = s(q);
    if (!in_z_one_over_p(image, p)) {
      report.violations.push_back({"image", q, "s(q) = " + image.str() + " is not in Z[1/p]"});
    }
    const Valuation gap = vp(q - image, p);
    if (gap && *gap < 1) {
      report.violations.push_back({"abs", q, "|q - s(q)|_p = p^" + std::to_string(-*gap) + " >= 1"});
    }
    for (int trial = 0; trial < class_trials; ++trial) {
      long den = denominators(rng);
      while (den % p.value() == 0) ++den;
      const Rational t(BigInt(numerators(rng)), BigInt(den));
      const Rational shifted = q + Rational(p.value()) * t;
      const Rational other = s(shifted);
      if (other != image) {
        report.violations.push_back(
            {"class", q, "s(" + shifted.str() + ") = " + other.str() + " but s(q) = " + image.str()});
        break;
      }
    }
  }
  return report;
}

}  // namespace padiccf
