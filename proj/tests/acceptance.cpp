// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Independent recomputations sit next to the library calls where a
// criterion is about a library result.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "padiccf/certify.hpp"
#include "padiccf/combinatorics.hpp"
#include "padiccf/continued_fraction.hpp"
#include "padiccf/quadratic.hpp"
#include "padiccf/words.hpp"
#include "test_support.hpp"

using namespace padiccf;
using padiccf::testing::R;
using padiccf::testing::random_browkin_letter;
using padiccf::testing::random_rational;

namespace {

struct Outcome {
  bool passed = true;
  std::ostringstream notes;

  void require(bool ok, const std::string& what) {
    if (!ok && passed) notes << what;
    passed = passed && ok;
  }
};

long vp_long(const Rational& q, const Prime& p) { return *vp(q, p); }

// Criterion 1 oracle: the continuants are rebuilt here rather than taken
// from verify_identities.
void direct_identities(const ExpansionRecord& rec, Outcome& out) {
  const auto& a = rec.partial_quotients;
  const Prime& p = rec.p;
  const ContinuantTable t(a);
  const long last = t.last();
  for (long n = 0; n <= last; ++n) {
    const Rational det = t.A(n) * t.B(n - 1) - t.B(n) * t.A(n - 1);
    out.require(det == Rational(n % 2 == 0 ? -1 : 1), "determinant at n=" + std::to_string(n));

    // Shifted word [0, a_1, ...]: A'_n = A_n - a_0 B_n.
    long sum_b = 0, sum_a = 0;
    for (long i = 1; i <= n; ++i) sum_b += vp_long(a[i], p);
    for (long i = 2; i <= n; ++i) sum_a += vp_long(a[i], p);
    out.require(vp_long(t.B(n), p) == sum_b, "v_p(B_n) at n=" + std::to_string(n));
    if (n >= 1) out.require(vp_long(t.A(n) - a[0] * t.B(n), p) == sum_a, "v_p(A_n) at n=" + std::to_string(n));

    if (n + 1 <= last) {
      const Rational err = t.B(n) * rec.alpha - t.A(n);
      const long expected = -(sum_b + vp_long(a[n + 1], p));
      out.require(!err.is_zero() && vp_long(err, p) == expected, "approximation at n=" + std::to_string(n));
    }
  }
}

Outcome identity_suite() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::size_t runs = 0;
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    for (const auto& s : {FloorFunction::ruban(p), FloorFunction::browkin(p)}) {
      for (int trial = 0; trial < 100; ++trial) {
        const auto rec = expand(random_rational(rng, 1000000), s, 30);
        const auto report = verify_identities(rec);
        out.require(report.passed(), "verify_identities failed");
        for (const char* name : {"determinant", "approximation-valuation", "continuant-valuation"}) {
          const auto* check = report.find(name);
          out.require(check && check->status != CheckStatus::fail, std::string("check ") + name);
        }
        direct_identities(rec, out);
        ++runs;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.require(secs < 30.0, "runtime over 30 s");
  out.notes << (out.notes.tellp() > 0 ? "; " : "") << runs << " expansions in " << secs << " s";
  return out;
}

Outcome browkin_termination() {
  Outcome out;
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<long> num(-1000000, 1000000), den(1, 1000000);
  long longest = 0;
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    const auto s = FloorFunction::browkin(p);
    for (int trial = 0; trial < 200; ++trial) {
      long d = den(rng);
      while (d % pv == 0) d = den(rng);
      const Rational alpha(BigInt(num(rng)), BigInt(d));
      const auto rec = expand(alpha, s, 10000);
      out.require(rec.terminated, "no termination for " + alpha.str());
      out.require(eval_cf(rec.partial_quotients) == alpha, "value mismatch for " + alpha.str());
      longest = std::max<long>(longest, static_cast<long>(rec.partial_quotients.size()));
    }
  }
  out.notes << (out.notes.tellp() > 0 ? "; " : "") << "600 rationals, longest expansion " << longest;
  return out;
}

Outcome ruban_minus_three() {
  Outcome out;
  const Prime p3(3);
  const auto rec = expand(-3, FloorFunction::ruban(p3), 40);
  out.require(rec.partial_quotients.front() == 0, "a_0 != 0");
  for (std::size_t i = 1; i < rec.partial_quotients.size(); ++i)
    out.require(rec.partial_quotients[i] == R("8/3"), "a_" + std::to_string(i) + " != 8/3");
  out.require(!rec.terminated && rec.partial_quotients.size() == 40, "expansion stopped early");
  for (long n = 1; n <= 10; ++n) {
    std::vector<Rational> word{Rational(0)};
    word.insert(word.end(), static_cast<std::size_t>(n), R("8/3"));
    const Rational err = eval_cf(word) + 3;
    out.require(vp_long(err, p3) == 2 * n + 1, "v_3(error) at n=" + std::to_string(n));
  }
  return out;
}

Outcome complexity_formulas() {
  Outcome out;
  auto codes = [](Generator g, std::uint64_t n) { return intern(LetterStream(WordSpec::of(g)).symbols(n)); };
  const auto rs = codes(Generator::rudin_shapiro, 1 << 15);
  for (std::size_t n = 8; n <= 12; ++n)
    out.require(complexity(rs, n) == 8 * (n - 1), "Rudin-Shapiro n=" + std::to_string(n));
  const auto pf = codes(Generator::paperfolding, 1 << 15);
  for (std::size_t n = 7; n <= 12; ++n) out.require(complexity(pf, n) == 4 * n, "paperfolding n=" + std::to_string(n));
  const auto fib = codes(Generator::fibonacci, 10000);
  for (std::size_t n = 1; n <= 20; ++n) out.require(complexity(fib, n) == n + 1, "Fibonacci n=" + std::to_string(n));
  return out;
}

Outcome detector_evidence() {
  Outcome out;
  const auto tm = intern(LetterStream(WordSpec::of(Generator::thue_morse)).symbols(1 << 12));
  for (unsigned j = 1; j <= 10; ++j) {
    const std::uint64_t u = std::uint64_t{1} << j;
    const Witness expected{WitnessKind::spade, 0, u, 2 * u, 0};
    out.require(validate_witness(tm, expected), "TM (0, 2^j, 2^(j+1)) invalid at j=" + std::to_string(j));
    bool listed = false;
    for (const auto& w : witnesses_for(WitnessKind::spade, tm, u, 2))
      listed = listed || (w.w == 0 && w.v == 2 * u && validate_witness(tm, w));
    out.require(listed, "witnesses_for misses j=" + std::to_string(j));
  }

  const auto fib = intern(LetterStream(WordSpec::of(Generator::fibonacci)).symbols(10000));
  const auto d = detect(WitnessKind::spade, fib, 0, 3);
  std::uint64_t previous = 0;
  for (const auto& w : d.family) {
    out.require(w.w == 0 && w.v == 0 && validate_witness(fib, w), "Fibonacci witness is not a prefix square");
    out.require(w.u > previous, "Fibonacci family not increasing");
    previous = w.u;
  }
  // Squares keep appearing up to the budget: the largest one uses more than
  // half of the prefix.
  out.require(d.enough && 4 * d.largest_u > 10000, "Fibonacci squares stop early");
  out.notes << (out.notes.tellp() > 0 ? "; " : "") << "Fibonacci: " << d.family.size()
            << " square witnesses, largest u = " << d.largest_u;
  return out;
}

Outcome exponent_table() {
  Outcome out;
  int primes = 0;
  for (long pv = 3; pv < 100; pv += 2) {
    if (!is_prime(pv)) continue;
    ++primes;
    const Prime p(pv);
    const Rational ruban = Rational(pv + 1), browkin = Rational(BigInt(pv), BigInt(2)) + 1;
    const std::string tag = " at p=" + std::to_string(pv);
    out.require(required_k(WitnessKind::spade, p, 0, ruban) == 4, "Ruban spade" + tag);
    out.require(required_k(WitnessKind::spade, p, 0, browkin) == 3, "Browkin spade" + tag);
    out.require(required_k(WitnessKind::club, p, 0, ruban) == 2, "Ruban club" + tag);
    out.require(required_k(WitnessKind::club, p, 0, browkin) == 1, "Browkin club" + tag);
  }
  out.notes << (out.notes.tellp() > 0 ? "; " : "") << primes << " primes";
  return out;
}

Outcome quadratic_certificates() {
  Outcome out;
  const Prime p3(3), p5(5);
  const auto cert = periodic_to_quadratic(p3, std::vector<Rational>{0}, std::vector<Rational>{R("8/3")});
  out.require(cert.evaluate(-3) == 0, "P(-3) != 0");

  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pre_len(0, 2), period_len(1, 4);
  const std::size_t ladder[] = {8, 16, 32};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Rational> pre{Rational(0)}, period;
    for (std::size_t i = pre_len(rng); i > 0; --i) pre.push_back(random_browkin_letter(rng, p5));
    for (std::size_t i = period_len(rng); i > 0; --i) period.push_back(random_browkin_letter(rng, p5));
    const auto c = periodic_to_quadratic(p5, pre, period);
    out.require(!c.degenerate, "degenerate certificate");
    out.require(valuations_increase(c, p5, ladder), "valuations do not increase on trial " + std::to_string(trial));
    // Direct evaluation at the ladder points, independent of verify_root.
    Valuation prev;
    for (std::size_t n : ladder) {
      const Rational value = c.evaluate(eval_cf(unroll(c, n)));
      const Valuation v = vp(value, p5);
      out.require(!v || !prev || *v > *prev, "direct valuation ladder on trial " + std::to_string(trial));
      if (v) prev = v;
    }
  }
  return out;
}

Outcome palindrome_identities() {
  Outcome out;
  std::mt19937_64 rng(8);
  for (long pv : {3L, 5L, 7L}) {
    const Prime p(pv);
    const auto s = FloorFunction::browkin(p);
    std::uniform_int_distribution<std::size_t> len(1, 10);
    std::bernoulli_distribution pick(0.5), mirror(0.3);
    for (int trial = 0; trial < 1000; ++trial) {
      const Rational x = random_browkin_letter(rng, p), y = random_browkin_letter(rng, p);
      std::vector<Rational> letters(len(rng));
      for (auto& a : letters) a = pick(rng) ? x : y;
      if (mirror(rng))
        for (std::size_t i = 0; i < letters.size() / 2; ++i) letters[letters.size() - 1 - i] = letters[i];
      const std::vector<Rational> reversed(letters.rbegin(), letters.rend());
      out.require(palindrome_symmetry(letters, s).symmetric == (letters == reversed), "symmetry mismatch");

      std::vector<Rational> word{Rational(0)};
      word.insert(word.end(), letters.begin(), letters.end());
      std::vector<Rational> rev_word{Rational(0)};
      rev_word.insert(rev_word.end(), reversed.begin(), reversed.end());
      out.require(reversal_quotient(word, p) == eval_cf(rev_word), "reversal_quotient mismatch");
    }
  }
  return out;
}

// Oracle for the least prime: (2/p + 1)^80 < p  <=>  (p + 2)^80 < p^81;
// conditions (i) and (ii) hold for every odd p with a = 1/p, b = 2/p.
long least_prime_oracle() {
  for (long pv = 3;; pv += 2) {
    if (!is_prime(pv)) continue;
    BigInt lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), BigInt(pv + 2).get_mpz_t(), 80);
    mpz_pow_ui(rhs.get_mpz_t(), BigInt(pv).get_mpz_t(), 81);
    if (lhs < rhs) return pv;
  }
}

Outcome corollary_checker() {
  Outcome out;
  const auto pass = check_automatic_binary(Prime(97), R("1/97"), R("2/97"), 4);
  out.require(pass.passed(), "p=97 does not pass");
  for (const auto& c : pass.conditions) out.require(c.passed, "p=97 condition " + c.name);

  const auto fail = check_automatic_binary(Prime(11), R("1/11"), R("2/11"), 4);
  out.require(!fail.passed(), "p=11 passes");
  for (const auto& c : fail.conditions) out.require(c.passed == (c.name != "iii"), "p=11 condition " + c.name);

  const auto first = least_prime_automatic(1, 2, 4);
  const auto second = least_prime_automatic(1, 2, 4);
  const long oracle = least_prime_oracle();
  out.require(first.p && second.p && *first.p == *second.p, "search not reproducible");
  out.require(first.p && *first.p == oracle, "search disagrees with the oracle");
  out.notes << (out.notes.tellp() > 0 ? "; " : "") << "least prime " << (first.p ? *first.p : 0) << ", oracle "
            << oracle;
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"identity suite", identity_suite},
      {"Browkin termination", browkin_termination},
      {"Ruban expansion of -3", ruban_minus_three},
      {"complexity formulas", complexity_formulas},
      {"detector evidence", detector_evidence},
      {"exponent table", exponent_table},
      {"quadratic certificates", quadratic_certificates},
      {"palindrome identities", palindrome_identities},
      {"corollary checker", corollary_checker},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result.passed = false;
      result.notes << "exception: " << e.what();
    }
    failures += result.passed ? 0 : 1;
    std::cout << "criterion " << i + 1 << " [" << criteria[i].first << "]: " << (result.passed ? "PASS" : "FAIL");
    const std::string notes = result.notes.str();
    if (!notes.empty()) std::cout << " (" << notes << ")";
    std::cout << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
