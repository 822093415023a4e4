#include "padiccf/continued_fraction.hpp"

#include <algorithm>
#include <utility>

namespace padiccf {

std::vector<ContinuantState> continuants(std::span<const Rational> word) {
  std::vector<ContinuantState> out;
  out.reserve(word.size());
  // (A_{n-1}, A_{n-2}) and (B_{n-1}, B_{n-2}), starting at n = 0.
  Rational a1 = 1, a2 = 0, b1 = 0, b2 = 1;
  for (std::size_t n = 0; n < word.size(); ++n) {
    Rational A = word[n] * a1 + a2;
    Rational B = word[n] * b1 + b2;
    out.push_back({static_cast<long>(n), a1, A, b1, B});
    a2 = std::exchange(a1, std::move(A));
    b2 = std::exchange(b1, std::move(B));
  }
  return out;
}

ContinuantTable::ContinuantTable(std::span<const Rational> word) {
  A_.reserve(word.size() + 2);
  B_.reserve(word.size() + 2);
  A_ = {Rational(0), Rational(1)};
  B_ = {Rational(1), Rational(0)};
  for (std::size_t n = 0; n < word.size(); ++n) {
    A_.push_back(word[n] * A_[n + 1] + A_[n]);
    B_.push_back(word[n] * B_[n + 1] + B_[n]);
  }
}

Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
  return {x.m00 * y.m00 + x.m01 * y.m10, x.m00 * y.m01 + x.m01 * y.m11,
          x.m10 * y.m00 + x.m11 * y.m10, x.m10 * y.m01 + x.m11 * y.m11};
}

Matrix2 continuant_matrix(std::span<const Rational> word) {
  Matrix2 out;
  for (const auto& a : word) out = out * Matrix2{a, 1, 1, 0};
  return out;
}

Rational eval_cf(std::span<const Rational> word) {
  if (word.empty()) throw InputError("eval_cf of an empty word");
  Rational x = word.back();
  for (std::size_t i = word.size() - 1; i-- > 0;) {
    if (x.is_zero()) throw InputError("malformed word: zero denominator at position " + std::to_string(i + 1));
    x = word[i] + x.inverse();
  }
  return x;
}

Rational tail_reconstruct(std::span<const Rational> prefix, const Rational& gamma) {
  const ContinuantTable t(prefix);
  const long k = static_cast<long>(prefix.size());
  const Rational den = gamma * t.B(k - 1) + t.B(k - 2);
  if (den.is_zero()) throw InputError("degenerate tail: zero denominator");
  return (gamma * t.A(k - 1) + t.A(k - 2)) / den;
}

ExpansionRecord expand(const Rational& alpha, const FloorFunction& s, std::size_t max_terms) {
  if (max_terms < 1) throw InputError("max_terms must be >= 1");
  ExpansionRecord rec{s.prime(), s, alpha, {}, {}, false, false};
  Rational gamma = alpha;
  while (rec.partial_quotients.size() < max_terms) {
    const Rational a = s(gamma);
    rec.partial_quotients.push_back(a);
    rec.complete_quotients.push_back(gamma);
    if (gamma == a) {
      rec.terminated = true;
      return rec;
    }
    gamma = (gamma - a).inverse();
  }
  rec.truncated = true;
  return rec;
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "?";
}

bool IdentityReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const auto& c) { return c.status == CheckStatus::fail; });
}

const IdentityCheck* IdentityReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

// Records the first failing index of a check.
class Checker {
 public:
  explicit Checker(std::string name) { check_.name = std::move(name); }
  void fail(long index, const std::string& detail) {
    if (check_.status == CheckStatus::fail) return;
    check_.status = CheckStatus::fail;
    check_.first_failing_index = index;
    check_.detail = detail;
  }
  void skip(const std::string& why) {
    check_.status = CheckStatus::skipped;
    check_.detail = why;
  }
  IdentityCheck done() { return std::move(check_); }

 private:
  IdentityCheck check_;
};

std::string val_str(const Valuation& v) { return v ? std::to_string(*v) : "inf"; }

}  // namespace

IdentityReport verify_identities(const ExpansionRecord& rec) {
  IdentityReport report;
  const Prime& p = rec.p;
  const auto& a = rec.partial_quotients;
  const auto& g = rec.complete_quotients;
  const long len = static_cast<long>(a.size());

  {
    Checker c("algorithm");
    if (g.size() != a.size() || a.empty()) {
      c.fail(0, "partial and complete quotient lists differ in length");
    } else {
      if (g[0] != rec.alpha) c.fail(0, "gamma_0 != alpha");
      for (long i = 0; i < len; ++i) {
        if (rec.floor(g[i]) != a[i]) c.fail(i, "a_i != s(gamma_i)");
        if (i + 1 < len) {
          if (g[i] == a[i] || (g[i] - a[i]).inverse() != g[i + 1]) c.fail(i, "gamma_{i+1} != 1/(gamma_i - a_i)");
        }
      }
      if (rec.terminated != (g.back() == a.back())) c.fail(len - 1, "termination flag inconsistent");
    }
    report.checks.push_back(c.done());
  }
  {
    Checker c("partial-quotient-abs");
    for (long i = 1; i < len; ++i) {
      const Valuation v = vp(a[i], p);
      if (!v || *v >= 0) c.fail(i, "|a_i|_p <= 1");
    }
    report.checks.push_back(c.done());
  }

  const ContinuantTable t(a);
  {
    Checker c("determinant");
    for (long n = 0; n < len; ++n) {
      const Rational det = t.A(n) * t.B(n - 1) - t.B(n) * t.A(n - 1);
      const Rational expected = (n % 2 == 0) ? Rational(-1) : Rational(1);
      if (det != expected) c.fail(n, "determinant " + det.str());
    }
    report.checks.push_back(c.done());
  }
  {
    Checker c("tail-reconstruction");
    if (g.size() == a.size()) {
      for (long k = 0; k < len; ++k) {
        try {
          if (tail_reconstruct(std::span(a).first(static_cast<std::size_t>(k)), g[k]) != rec.alpha) {
            c.fail(k, "reconstruction differs from alpha");
          }
        } catch (const InputError& e) {
          c.fail(k, e.what());
        }
      }
    } else {
      c.skip("no complete quotients");
    }
    report.checks.push_back(c.done());
  }

  // Continuants of [0, a_1, a_2, ...].
  std::vector<Rational> shifted(a.begin(), a.end());
  if (!shifted.empty()) shifted[0] = 0;
  const ContinuantTable s(shifted);

  {
    Checker c("continuant-valuation");
    long sum_from_1 = 0, sum_from_2 = 0;
    bool valid = true;
    for (long n = 1; n < len && valid; ++n) {
      const Valuation va = vp(a[n], p);
      if (!va) {
        valid = false;
        break;
      }
      sum_from_1 += *va;
      if (n >= 2) sum_from_2 += *va;
      if (n < 2) continue;
      if (vp(s.B(n), p) != Valuation(sum_from_1)) c.fail(n, "v_p(B_n) = " + val_str(vp(s.B(n), p)));
      if (vp(s.A(n), p) != Valuation(sum_from_2)) c.fail(n, "v_p(A_n) = " + val_str(vp(s.A(n), p)));
    }
    if (!valid) c.fail(0, "zero partial quotient");
    report.checks.push_back(c.done());
  }
  {
    Checker c("continuant-monotonicity");
    for (long n = 0; n + 1 < len; ++n) {
      const PAdicAbs an = abs_p(s.A(n), p), an1 = abs_p(s.A(n + 1), p);
      const PAdicAbs bn = abs_p(s.B(n), p), bn1 = abs_p(s.B(n + 1), p);
      if (!(an < an1)) c.fail(n, "|A_n|_p >= |A_{n+1}|_p");
      if (!(bn < bn1)) c.fail(n, "|B_n|_p >= |B_{n+1}|_p");
      if (bn < an) c.fail(n, "|A_n|_p > |B_n|_p");
    }
    report.checks.push_back(c.done());
  }
  {
    Checker c("approximation-valuation");
    long sum = 0;
    for (long n = 0; n + 1 < len; ++n) {
      const Valuation va = vp(a[n + 1], p);
      if (!va) {
        c.fail(n, "zero partial quotient");
        break;
      }
      sum += *va;
      const Valuation got = vp(t.B(n) * rec.alpha - t.A(n), p);
      if (got != Valuation(-sum)) c.fail(n, "v_p(B_n alpha - A_n) = " + val_str(got) + ", expected " + std::to_string(-sum));
    }
    report.checks.push_back(c.done());
  }
  {
    Checker c("convergent-valuation");
    Valuation previous;
    for (long n = 0; n < len; ++n) {
      const Valuation v = vp(rec.alpha - t.A(n) / t.B(n), p);
      if (v) {
        if (*v < n + 1) c.fail(n, "v_p(alpha - A_n/B_n) = " + std::to_string(*v) + " < n+1");
        if (previous && *v <= *previous) c.fail(n, "convergent valuation not increasing");
      } else if (n + 1 != len || !rec.terminated) {
        c.fail(n, "convergent equals alpha before termination");
      }
      previous = v;
    }
    report.checks.push_back(c.done());
  }
  {
    Checker c("archimedean-bound");
    Rational M = 0;
    for (long i = 1; i < len; ++i) M = max(M, a[i].abs());
    const Rational base = M + Rational(1);
    Rational bound = 1;
    for (long n = 1; n < len; ++n) {
      bound *= base;
      if (max(s.A(n).abs(), s.B(n).abs()) > bound) c.fail(n, "max(|A_n|, |B_n|) > (M+1)^n");
    }
    report.checks.push_back(c.done());
  }
  return report;
}

}  // namespace padiccf
