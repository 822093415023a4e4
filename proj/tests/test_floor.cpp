#include <random>

#include "doctest.h"
#include "padiccf/continued_fraction.hpp"
#include "padiccf/floor.hpp"
#include "test_support.hpp"

using namespace padiccf;
using padiccf::testing::R;

TEST_CASE("ruban and browkin examples") {
  const Prime p3(3);
  CHECK(FloorFunction::ruban(p3)(R("-1/3")) == R("8/3"));
  CHECK(FloorFunction::browkin(p3)(R("-1/3")) == R("-1/3"));
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    CHECK(FloorFunction::ruban(p)(Rational(0)).is_zero());
    CHECK(FloorFunction::browkin(p)(Rational(0)).is_zero());
  }
  CHECK(FloorFunction::browkin(p3)(Rational(-3)).is_zero());
  CHECK(FloorFunction::ruban(p3)(Rational(-3)).is_zero());
  CHECK(FloorFunction::ruban(Prime(5))(R("7/5")) == R("7/5"));
  CHECK(FloorFunction::browkin(Prime(5))(R("7/5")) == R("7/5"));
  CHECK(FloorFunction::browkin(Prime(5))(R("4/5")) == R("-1/5") + Rational(1));
  CHECK(FloorFunction::ruban(p3)(Rational(5)) == Rational(2));
  CHECK(FloorFunction::browkin(p3)(Rational(5)) == Rational(-1));
}

namespace {

// Browkin oracle: the unique number with balanced digits at positions
// min(v,0)..0 that is congruent to q modulo pZ_p, by enumeration.
Rational browkin_by_enumeration(const Rational& q, const Prime& p) {
  const Valuation v = vp(q, p);
  if (!v || *v >= 1) return 0;
  const long m = -std::min(*v, 0L);
  const long half = (p.value() - 1) / 2;
  std::vector<long> digits(static_cast<std::size_t>(m + 1), -half);
  while (true) {
    Rational candidate;
    for (long i = 0; i <= m; ++i) {
      candidate += Rational(digits[static_cast<std::size_t>(i)]) * Rational(BigInt(1), p.power(static_cast<unsigned long>(m - i)));
    }
    const Valuation gap = vp(q - candidate, p);
    if (!gap || *gap >= 1) return candidate;
    std::size_t k = 0;
    while (k < digits.size() && digits[k] == half) digits[k++] = -half;
    if (k == digits.size()) break;
    ++digits[k];
  }
  throw std::logic_error("no balanced representative");
}

}  // namespace

TEST_CASE("floor properties on random rationals") {
  std::mt19937_64 rng(21);
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    const auto ruban = FloorFunction::ruban(p);
    const auto browkin = FloorFunction::browkin(p);
    for (int i = 0; i < 300; ++i) {
      const Rational q = padiccf::testing::random_rational(rng, 3000);
      const Rational sr = ruban(q), sb = browkin(q);
      // Idempotence on the image.
      CHECK(ruban(sr) == sr);
      CHECK(browkin(sb) == sb);
      // Ruban is the digit truncation.
      const long v = *vp(q, p);
      if (v <= 0) {
        const auto digits = canonical_digits(q, p, v, 0);
        CHECK(sr == digits_value(digits, p, v));
      } else {
        CHECK(sr.is_zero());
      }
      // Browkin agrees with enumeration (small windows only) and with Ruban mod pZ_p.
      if (v >= -2) {
        CHECK(sb == browkin_by_enumeration(q, p));
      }
      const Valuation diff = vp(sr - sb, p);
      CHECK((!diff || *diff >= 1));
      // Digit bounds.
      if (v == -1) {
        CHECK(sr.abs() <= Rational(pv));
        CHECK(Rational(2) * sb.abs() <= Rational(pv));
      }
    }
  }
}

TEST_CASE("partial quotients of built-in floors are bounded by M") {
  std::mt19937_64 rng(99);
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    for (auto s : {FloorFunction::ruban(p), FloorFunction::browkin(p)}) {
      const Rational M = s.kind() == FloorKind::ruban ? Rational(pv) : Rational(BigInt(pv), BigInt(2));
      for (int i = 0; i < 50; ++i) {
        const auto rec = expand(padiccf::testing::random_rational(rng, 100000), s, 40);
        for (std::size_t k = 1; k < rec.partial_quotients.size(); ++k) {
          CHECK(rec.partial_quotients[k].abs() <= M);
        }
      }
    }
  }
}

TEST_CASE("validate_floor") {
  const Prime p5(5), p3(3);
  const std::vector<Rational> samples{Rational(0), R("7/5"), R("-1/5"), Rational(13), R("2/25")};
  const auto ok = validate_floor(FloorFunction::ruban(p5), samples);
  CHECK(ok.passed());
  CHECK(ok.samples_checked == samples.size());
  CHECK(validate_floor(FloorFunction::browkin(p5), samples).passed());

  const std::vector<Rational> minus3{Rational(-3)};
  const auto b3 = validate_floor(FloorFunction::browkin(p3), minus3);
  CHECK(b3.passed());
  CHECK(FloorFunction::browkin(p3)(Rational(-3)).is_zero());

  // r' = r + 1 leaves the residue class.
  std::map<Rational, Rational> bad{{R("2/3"), R("5/3")}};
  CHECK_THROWS_AS(FloorFunction::custom(p3, bad, FloorKind::ruban), InputError);
  const auto broken = FloorFunction::custom_unchecked(p3, bad, FloorKind::ruban);
  const std::vector<Rational> hits{R("2/3"), R("-1/3") + Rational(1), R("11/3")};
  const auto report = validate_floor(broken, hits);
  CHECK_FALSE(report.passed());
  bool saw_remap = false, saw_abs = false;
  for (const auto& v : report.violations) {
    saw_remap |= v.check == "remap";
    saw_abs |= v.check == "abs";
  }
  CHECK(saw_remap);
  CHECK(saw_abs);
}

TEST_CASE("custom floors") {
  const Prime p3(3);
  // Class of 2/3 (i.e. 2/3 + Z_3) represented by 2/3 - 3 = -7/3.
  std::map<Rational, Rational> remap{{R("2/3"), R("-7/3")}};
  const auto s = FloorFunction::custom(p3, remap, FloorKind::browkin);
  CHECK(s(R("2/3")) == R("-7/3"));
  CHECK(s(R("11/3")) == R("-7/3"));
  CHECK(s(R("1/3")) == R("1/3"));   // browkin fallback
  CHECK(s(R("5/3")) == R("-4/3"));  // browkin: balanced digits -1, -1
  const std::vector<Rational> samples{R("2/3"), R("5/3"), R("-4/9"), Rational(0), Rational(7)};
  CHECK(validate_floor(s, samples).passed());

  // Zero class must stay zero; keys must be canonical.
  CHECK_THROWS_AS(FloorFunction::custom(p3, {{Rational(0), Rational(3)}}, FloorKind::ruban), InputError);
  CHECK_THROWS_AS(FloorFunction::custom(p3, {{R("-1/3"), R("-1/3")}}, FloorKind::ruban), InputError);
  CHECK_THROWS_AS(FloorFunction::custom(p3, {{R("2/3"), R("1/2")}}, FloorKind::ruban), InputError);

  const std::vector<Rational> letters{R("1/97"), R("2/97")};
  const Prime p97(97);
  const auto c = FloorFunction::containing(p97, letters, FloorKind::ruban);
  CHECK(c(R("1/97")) == R("1/97"));
  CHECK(c(R("2/97")) == R("2/97"));
  const std::vector<Rational> clash{R("1/3"), R("10/3")};
  CHECK_THROWS_AS(FloorFunction::containing(p3, clash, FloorKind::ruban), InputError);
}
