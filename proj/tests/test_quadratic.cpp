#include <algorithm>
#include <array>
#include <random>

#include "doctest.h"
#include "padiccf/quadratic.hpp"
#include "test_support.hpp"

using namespace padiccf;
using padiccf::testing::R;
using padiccf::testing::random_browkin_letter;
using padiccf::testing::W;

namespace {

// Coefficients from the fixed point of the Moebius map of the period:
// x = [a_0..a_w, y] and y = [period, y] are eliminated by hand.
// x = (y A_w + A_{w-1}) / (y B_w + B_{w-1}) inverts to
// y = (A_{w-1} - x B_{w-1}) / (x B_w - A_w). The period sends y to
// (y P00 + P01) / (y P10 + P11) where P is the period's matrix product.
// Substituting gives a quadratic in x which must be proportional to P.
std::array<Rational, 3> moebius_quadratic(const std::vector<Rational>& pre, const std::vector<Rational>& period) {
  const Matrix2 m = continuant_matrix(pre);
  const Matrix2 q = continuant_matrix(period);
  // y = (n0 + n1 x) / (d0 + d1 x)
  const Rational n0 = m.m01, n1 = -m.m11, d0 = -m.m00, d1 = m.m10;
  // y (y q10 + q11) = y q00 + q01, multiplied through by (d0 + d1 x)^2:
  // (n0 + n1 x)^2 q10 + (n0 + n1 x)(d0 + d1 x)(q11 - q00) - q01 (d0 + d1 x)^2 = 0
  const Rational t = q.m11 - q.m00;
  const Rational x2 = n1 * n1 * q.m10 + n1 * d1 * t - q.m01 * d1 * d1;
  const Rational x1 = Rational(2) * n0 * n1 * q.m10 + (n0 * d1 + n1 * d0) * t - Rational(2) * q.m01 * d0 * d1;
  const Rational x0 = n0 * n0 * q.m10 + n0 * d0 * t - q.m01 * d0 * d0;
  return {x2, x1, x0};
}

QuadraticCertificate random_cert(std::mt19937_64& rng, const Prime& p, std::size_t max_pre, std::size_t max_period) {
  std::uniform_int_distribution<std::size_t> pre_len(0, max_pre), period_len(1, max_period);
  std::vector<Rational> pre{Rational(0)}, period;
  for (std::size_t i = pre_len(rng); i > 0; --i) pre.push_back(random_browkin_letter(rng, p));
  for (std::size_t i = period_len(rng); i > 0; --i) period.push_back(random_browkin_letter(rng, p));
  return periodic_to_quadratic(p, pre, period);
}

}  // namespace

TEST_CASE("periodic_to_quadratic examples") {
  const Prime p3(3);
  const auto cert = periodic_to_quadratic(p3, W({"0"}), W({"8/3"}));
  CHECK(cert.a == R("-1"));
  CHECK(cert.b == R("8/3"));
  CHECK(cert.c == R("1"));
  CHECK_FALSE(cert.degenerate);
  CHECK(cert.evaluate(Rational(-3)).is_zero());

  for (const char* t : {"1/3", "-7/9", "5/27"}) {
    const auto c = periodic_to_quadratic(p3, W({"0"}), W({t}));
    CHECK(c.a == Rational(-1));
    CHECK(c.b == R(t));
    CHECK(c.c == Rational(1));
  }

  CHECK_THROWS_AS(periodic_to_quadratic(p3, W({"0"}), {}), InputError);
  CHECK_THROWS_AS(periodic_to_quadratic(p3, W({"1"}), W({"1/3"})), InputError);
  CHECK_THROWS_AS(periodic_to_quadratic(p3, W({"0"}), W({"2"})), InputError);
  CHECK_THROWS_AS(periodic_to_quadratic(p3, {}, W({"1/3"})), InputError);
}

TEST_CASE("coefficients are proportional to the Moebius fixed-point quadratic") {
  std::mt19937_64 rng(11);
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    for (int trial = 0; trial < 200; ++trial) {
      const auto cert = random_cert(rng, p, 3, 4);
      const auto [x2, x1, x0] = moebius_quadratic(cert.preperiod, cert.period);
      // (a, -b, c) and (x2, x1, x0) must be parallel.
      CHECK(cert.a * x1 == -cert.b * x2);
      CHECK(cert.a * x0 == cert.c * x2);
      CHECK(-cert.b * x0 == cert.c * x1);
      CHECK_FALSE(cert.degenerate);
    }
  }
}

TEST_CASE("verify_root on a rational limit") {
  const Prime p3(3);
  const auto cert = periodic_to_quadratic(p3, W({"0"}), W({"8/3"}));
  for (std::size_t n : {2u, 3u, 8u, 33u}) {
    const auto check = verify_root(cert, p3, n);
    REQUIRE(check.exact_rational_limit);
    CHECK(*check.exact_rational_limit == Rational(-3));
    CHECK_FALSE(check.valuation());
    CHECK(check.truncation_valuation);
  }
  CHECK(rational_roots(cert).size() == 2);
  CHECK_THROWS_AS(verify_root(cert, p3, 0), InputError);
}

TEST_CASE("verify_root valuations grow on random Browkin periodic words") {
  std::mt19937_64 rng(5);
  const Prime p5(5);
  const std::size_t ladder[] = {8, 16, 32};
  for (int trial = 0; trial < 50; ++trial) {
    const auto cert = random_cert(rng, p5, 2, 4);
    CHECK(valuations_increase(cert, p5, ladder));
    const auto at_n = verify_root(cert, p5, 10).truncation_valuation;
    const auto at_2n = verify_root(cert, p5, 20).truncation_valuation;
    REQUIRE(at_n);
    REQUIRE(at_2n);
    CHECK(*at_2n > *at_n);
  }
}

TEST_CASE("verify_root with a tampered coefficient stays bounded") {
  std::mt19937_64 rng(6);
  const Prime p5(5);
  for (int trial = 0; trial < 20; ++trial) {
    auto cert = random_cert(rng, p5, 2, 3);
    cert.c += Rational(1);
    const std::size_t ladder[] = {8, 16, 32, 64};
    CHECK_FALSE(valuations_increase(cert, p5, ladder));
    const auto v16 = verify_root(cert, p5, 16).truncation_valuation;
    const auto v64 = verify_root(cert, p5, 64).truncation_valuation;
    REQUIRE(v16);
    CHECK(v64 == v16);
  }
}

TEST_CASE("degenerate certificates are flagged") {
  QuadraticCertificate cert;
  cert.preperiod = W({"0"});
  cert.period = W({"1/3"});
  cert.degenerate = true;
  const auto check = verify_root(cert, Prime(3), 4);
  CHECK(check.degenerate);
  CHECK_FALSE(check.exact_rational_limit);
}

TEST_CASE("palindrome_symmetry examples") {
  const Prime p3(3);
  const auto s = FloorFunction::ruban(p3);
  CHECK(palindrome_symmetry(W({"1/3", "2/3", "1/3"}), s).symmetric);
  CHECK(palindrome_symmetry(W({"8/3", "7/9", "8/3"}), s).symmetric);

  const auto w = palindrome_symmetry(W({"2/3", "1/3"}), s);
  CHECK_FALSE(w.symmetric);
  // [0, 2/3, 1/3]: A_2 = 1/3, B_1 = 2/3.
  CHECK(w.A_m == R("1/3"));
  CHECK(w.B_m_minus_1 == R("2/3"));

  // Thue-Morse abba over a -> 1/3, b -> 2/3.
  CHECK(palindrome_symmetry(W({"1/3", "2/3", "2/3", "1/3"}), s).symmetric);

  CHECK_THROWS_AS(palindrome_symmetry(W({"0", "1/3"}), s), InputError);
  CHECK_THROWS_AS(palindrome_symmetry(W({"4"}), s), InputError);
}

TEST_CASE("palindrome_symmetry agrees with reversal comparison") {
  std::mt19937_64 rng(8);
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    const auto s = FloorFunction::browkin(p);
    std::uniform_int_distribution<std::size_t> len(1, 8);
    std::bernoulli_distribution make_palindrome(0.5);
    for (int trial = 0; trial < 1000; ++trial) {
      // A two-letter alphabet makes accidental palindromes common.
      const Rational x = random_browkin_letter(rng, p), y = random_browkin_letter(rng, p);
      std::bernoulli_distribution pick(0.5);
      std::vector<Rational> word(len(rng));
      for (auto& a : word) a = pick(rng) ? x : y;
      if (make_palindrome(rng)) std::copy(word.begin(), word.begin() + word.size() / 2, word.rbegin());
      const bool is_palindrome = std::equal(word.begin(), word.end(), word.rbegin());
      const auto w = palindrome_symmetry(word, s);
      CHECK(w.symmetric == is_palindrome);
      CHECK(w.symmetric == (w.A_m == w.B_m_minus_1));
    }
  }
}

TEST_CASE("reversal_quotient examples") {
  const Prime p3(3);
  CHECK(reversal_quotient(W({"0", "8/3", "8/3"}), p3) == R("24/73"));
  CHECK(eval_cf(W({"0", "8/3", "8/3"})) == R("24/73"));
  // |a_0|_p > 1: A_1/A_0 = a_1 + 1/a_0, while B_1/B_0 = a_1 alone.
  CHECK(reversal_quotient(W({"1/3", "2/9"}), p3) == R("2/9") + Rational(3));
  const ContinuantTable t(W({"1/3", "2/9", "4/3"}));
  CHECK(t.B(2) / t.B(1) == eval_cf(W({"4/3", "2/9"})));
  CHECK_THROWS_AS(reversal_quotient(W({"1/3"}), p3), InputError);
  CHECK_THROWS_AS(reversal_quotient(W({"0"}), p3), InputError);
  CHECK_THROWS_AS(reversal_quotient(W({"1", "1/3"}), p3), InputError);
}

TEST_CASE("reversal_quotient matches the reversed continued fraction") {
  std::mt19937_64 rng(9);
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    std::uniform_int_distribution<std::size_t> len(1, 10);
    std::bernoulli_distribution zero_start(0.5);
    for (int trial = 0; trial < 1000; ++trial) {
      std::vector<Rational> word{zero_start(rng) ? Rational(0) : random_browkin_letter(rng, p)};
      for (std::size_t i = len(rng); i > 0; --i) word.push_back(random_browkin_letter(rng, p));
      const Rational q = reversal_quotient(word, p);
      std::vector<Rational> reversed(word.rbegin(), word.rend());
      if (word.front().is_zero()) {
        reversed.pop_back();
        reversed.insert(reversed.begin(), Rational(0));
      }
      CHECK(q == eval_cf(reversed));
    }
  }
}
