#include "padiccf/quadratic.hpp"

namespace padiccf {

namespace {

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (q.sign() < 0) return std::nullopt;
  if (!mpz_perfect_square_p(q.num().get_mpz_t()) || !mpz_perfect_square_p(q.den().get_mpz_t())) {
    return std::nullopt;
  }
  return Rational(BigInt(sqrt(q.num())), BigInt(sqrt(q.den())));
}

}  // namespace

QuadraticCertificate periodic_to_quadratic(const Prime& p, std::span<const Rational> preperiod,
                                           std::span<const Rational> period) {
  if (period.empty()) throw InputError("periodic_to_quadratic: empty period");
  if (preperiod.empty() || !preperiod.front().is_zero()) {
    throw InputError("periodic_to_quadratic: the preperiod must start with a_0 = 0");
  }
  std::vector<Rational> word(preperiod.begin(), preperiod.end());
  word.insert(word.end(), period.begin(), period.end());
  for (std::size_t i = 1; i < word.size(); ++i) {
    const Valuation v = vp(word[i], p);
    if (!v || *v >= 0) throw InputError("letter " + word[i].str() + " has |a|_p <= 1");
  }

  const long w = static_cast<long>(preperiod.size()) - 1;
  const long l = static_cast<long>(word.size()) - 1;
  const ContinuantTable t(word);
  QuadraticCertificate cert;
  cert.a = t.B(w - 1) * t.B(l) - t.B(w) * t.B(l - 1);
  cert.b = t.B(w - 1) * t.A(l) - t.B(w) * t.A(l - 1) + t.A(w - 1) * t.B(l) - t.A(w) * t.B(l - 1);
  cert.c = t.A(w - 1) * t.A(l) - t.A(w) * t.A(l - 1);
  cert.preperiod.assign(preperiod.begin(), preperiod.end());
  cert.period.assign(period.begin(), period.end());
  cert.degenerate = cert.a.is_zero() && cert.b.is_zero() && cert.c.is_zero();
  return cert;
}

std::vector<Rational> unroll(const QuadraticCertificate& cert, std::size_t letters) {
  std::vector<Rational> word = cert.preperiod;
  if (cert.period.empty()) return word;
  while (word.size() < letters) word.insert(word.end(), cert.period.begin(), cert.period.end());
  return word;
}

std::vector<Rational> rational_roots(const QuadraticCertificate& cert) {
  if (cert.a.is_zero()) {
    if (cert.b.is_zero()) return {};
    return {cert.c / cert.b};
  }
  const Rational disc = cert.b * cert.b - Rational(4) * cert.a * cert.c;
  const auto root = rational_sqrt(disc);
  if (!root) return {};
  const Rational two_a = Rational(2) * cert.a;
  if (root->is_zero()) return {cert.b / two_a};
  return {(cert.b - *root) / two_a, (cert.b + *root) / two_a};
}

RootCheck verify_root(const QuadraticCertificate& cert, const Prime& p, std::size_t letters) {
  if (letters < cert.preperiod.size() + cert.period.size()) {
    throw InputError("verify_root: N must cover the preperiod and one period");
  }
  RootCheck out;
  const auto word = unroll(cert, letters);
  out.letters = word.size();
  const Rational x = eval_cf(word);
  out.truncation_valuation = vp(cert.evaluate(x), p);

  out.degenerate = cert.degenerate;
  if (cert.degenerate) return out;
  const auto roots = rational_roots(cert);
  if (roots.size() == 1) {
    out.exact_rational_limit = roots[0];
  } else if (roots.size() == 2) {
    const Valuation v0 = vp(x - roots[0], p);
    const Valuation v1 = vp(x - roots[1], p);
    // nullopt (exact hit) compares as +infinity.
    auto bigger = [](const Valuation& a, const Valuation& b) { return (!a && b) || (a && b && *a > *b); };
    if (bigger(v0, v1)) out.exact_rational_limit = roots[0];
    if (bigger(v1, v0)) out.exact_rational_limit = roots[1];
  }
  if (out.exact_rational_limit && !cert.evaluate(*out.exact_rational_limit).is_zero()) {
    throw InvariantError("rational root does not annihilate P");
  }
  return out;
}

bool valuations_increase(const QuadraticCertificate& cert, const Prime& p, std::span<const std::size_t> ladder) {
  Valuation previous;
  bool first = true;
  for (const auto n : ladder) {
    const Valuation v = verify_root(cert, p, n).truncation_valuation;
    if (!first) {
      if (!previous) return false;
      if (v && *v <= *previous) return false;
    }
    previous = v;
    first = false;
  }
  return true;
}

PalindromeWitness palindrome_symmetry(std::span<const Rational> letters, const FloorFunction& s) {
  for (const auto& x : letters) {
    if (x.is_zero() || s(x) != x) throw InputError("letter " + x.str() + " is not in Im(s) \\ {0}");
  }
  const Matrix2 m = continuant_matrix(letters);
  return {m.m01 == m.m10, m.m10, m.m01};
}

Rational reversal_quotient(std::span<const Rational> word, const Prime& p) {
  if (word.size() < 2) throw InputError("reversal_quotient needs n >= 1");
  const long n = static_cast<long>(word.size()) - 1;
  const ContinuantTable t(word);
  std::vector<Rational> reversed(word.rbegin(), word.rend());
  Rational value, expected;
  if (word.front().is_zero()) {
    value = t.B(n - 1) / t.B(n);
    reversed.pop_back();
    reversed.insert(reversed.begin(), Rational(0));
    expected = eval_cf(reversed);
  } else {
    const Valuation v0 = vp(word.front(), p);
    if (*v0 >= 0) throw InputError("reversal_quotient needs a_0 = 0 or |a_0|_p > 1");
    value = t.A(n) / t.A(n - 1);
    expected = eval_cf(reversed);
  }
  if (value != expected) throw InvariantError("continuant ratio differs from the reversed continued fraction");
  return value;
}

}  // namespace padiccf
