#include "padiccf/certify.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <set>

namespace padiccf {

namespace {

BigInt pow_big(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

unsigned long to_ulong(const BigInt& x, const char* what) {
  if (sgn(x) < 0 || !x.fits_ulong_p()) throw InputError(std::string(what) + " out of range");
  return x.get_ui();
}

Rational from_u64(std::uint64_t x) { return Rational(BigInt(static_cast<unsigned long>(x))); }

// Exact n-th root of a nonnegative integer, when it exists.
std::optional<BigInt> exact_root(const BigInt& x, unsigned long n) {
  BigInt r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), n) == 0) return std::nullopt;
  return r;
}

void check_alphabet(std::span<const Rational> alphabet) {
  if (alphabet.empty()) throw InputError("empty alphabet");
  std::set<Rational> seen;
  for (const auto& a : alphabet) {
    if (a.is_zero()) throw InputError("alphabet contains 0");
    if (!seen.insert(a).second) throw InputError("alphabet repeats " + a.str());
  }
}

Rational max_abs(std::span<const Rational> values) {
  Rational T;
  for (const auto& a : values) T = max(T, a.abs());
  return T;
}

double log2_abs(const BigInt& x) {
  long e = 0;
  const double m = mpz_get_d_2exp(&e, x.get_mpz_t());
  return std::log2(std::fabs(m)) + static_cast<double>(e);
}

double log2_abs(const Rational& q) { return log2_abs(q.num()) - log2_abs(q.den()); }

std::string power_text(const Rational& base, const Rational& e, const char* rel, long p) {
  return "(" + base.str() + ")^" + e.str() + " " + rel + " " + std::to_string(p);
}

}  // namespace

unsigned long log_ratio_floor(const Rational& t, const Rational& C, const Prime& p) {
  if (t.sign() <= 0) throw InputError("log ratio needs t > 0");
  if (C <= Rational(1)) throw InputError("log ratio needs C > 1");
  // p^(k q) * den(C)^r <= num(C)^r with t = r/q
  const unsigned long r = to_ulong(t.num(), "exponent numerator");
  const unsigned long q = to_ulong(t.den(), "exponent denominator");
  const BigInt rhs = pow_big(C.num(), r);
  BigInt lhs = pow_big(C.den(), r);
  const BigInt step = pow_big(p.big(), q);
  unsigned long k = 0;
  for (lhs *= step; lhs <= rhs; lhs *= step) ++k;
  return k;
}

Rational k_multiplier(WitnessKind kind, const Rational& c) {
  if (c.sign() < 0) throw InputError("c must be >= 0");
  if (kind == WitnessKind::spade) return max(Rational(3), Rational(6) * c + Rational(2));
  return c.is_zero() ? Rational(1) : Rational(4) + Rational(6) * c;
}

unsigned long required_k(WitnessKind kind, const Prime& p, const Rational& c, const Rational& C_inf) {
  if (C_inf <= Rational(1)) throw InputError("C_inf must be > 1, got " + C_inf.str());
  return log_ratio_floor(k_multiplier(kind, c), C_inf, p) + 1;
}

Rational root_upper_bound(const Rational& M, unsigned long n, unsigned bits) {
  if (M.sign() <= 0 || n == 0) throw InputError("root bound needs M > 0 and n >= 1");
  const auto rn = exact_root(M.num(), n);
  const auto rd = exact_root(M.den(), n);
  if (rn && rd) return Rational(*rn, *rd);
  // least k with k^n >= ceil(M 2^(bits n))
  BigInt scaled = M.num() << static_cast<mp_bitcnt_t>(bits * n);
  BigInt X;
  mpz_cdiv_q(X.get_mpz_t(), scaled.get_mpz_t(), M.den().get_mpz_t());
  BigInt k;
  mpz_root(k.get_mpz_t(), X.get_mpz_t(), n);
  if (pow_big(k, n) < X) k += 1;
  return Rational(k, BigInt(BigInt(1) << bits));
}

Rational golden_bound(const Rational& T, unsigned bits) {
  if (T.sign() < 0) throw InputError("golden bound needs T >= 0");
  const Rational scale(BigInt(BigInt(1) << bits));
  // y = k / 2^bits is an upper bound iff y^2 - T y - 1 >= 0 (y > 0).
  auto above = [&](const BigInt& k) {
    const Rational y = Rational(k) / scale;
    return y * y - T * y - Rational(1) >= Rational(0);
  };
  BigInt lo = 0;
  BigInt hi = floor((T + Rational(1)) * scale) + 1;
  while (lo + 1 < hi) {
    BigInt mid = (lo + hi) / 2;
    if (above(mid)) hi = mid; else lo = mid;
  }
  return Rational(hi) / scale;
}

GrowthBounds growth_bounds(std::span<const Rational> letters, const Prime& p) {
  if (letters.empty()) throw InputError("growth bounds need at least one letter");
  std::vector<Rational> word;
  word.reserve(letters.size() + 1);
  word.emplace_back(0);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const Valuation v = vp(letters[i], p);
    if (!v || *v >= 0) throw InputError("letter " + std::to_string(i + 1) + " has |a|_p <= 1");
    word.push_back(letters[i]);
  }
  const ContinuantTable table(word);
  const std::uint64_t L = letters.size();

  GrowthBounds g;
  g.n_first = 1;
  g.n_last = L;
  g.T = max_abs(letters);
  g.closed_form_C_inf = std::min(golden_bound(g.T), g.T + Rational(1));

  std::vector<Rational> M(L + 1);
  long exponent_sum = 0;
  for (std::uint64_t n = 1; n <= L; ++n) {
    const long idx = static_cast<long>(n);
    M[n] = max(table.A(idx).abs(), table.B(idx).abs());
    const long e = -*vp(letters[n - 1], p);
    exponent_sum += e;
    g.C_p_letter_exponent = std::max(g.C_p_letter_exponent, e);
    // |B_n|_p = prod |a_i|_p
    if (vp(table.B(idx), p) != Valuation(-exponent_sum)) {
      throw InvariantError("|B_" + std::to_string(n) + "|_p differs from the product of |a_i|_p");
    }
    g.C_p_exponent = n == 1 ? Rational(exponent_sum)
                            : max(g.C_p_exponent, Rational(exponent_sum) / from_u64(n));

    // Roots far below the running maximum cannot change it; the exact
    // re-check below covers every n regardless.
    if (n > 1 && log2_abs(M[n]) / static_cast<double>(n) < log2_abs(g.observed_C_inf) - 1e-9) continue;
    const Rational root = root_upper_bound(M[n], n);
    const bool exact = pow_big(root.num(), n) * M[n].den() == M[n].num() * pow_big(root.den(), n);
    if (n == 1 || root > g.observed_C_inf || (root == g.observed_C_inf && exact && !g.observed_exact)) {
      g.observed_C_inf = root;
      g.observed_exact = exact;
      g.observed_argmax = n;
    }
  }

  Rational observed_pow(1), closed_pow(1);
  for (std::uint64_t n = 1; n <= L; ++n) {
    observed_pow *= g.observed_C_inf;
    closed_pow *= g.closed_form_C_inf;
    if (M[n] > observed_pow || M[n] > closed_pow) {
      throw InvariantError("growth bound fails at n = " + std::to_string(n));
    }
  }
  return g;
}

GrowthBounds growth_bounds(const ExpansionRecord& rec) {
  if (rec.partial_quotients.size() < 2) throw InputError("growth bounds need at least two partial quotients");
  return growth_bounds(std::span<const Rational>(rec.partial_quotients).subspan(1), rec.p);
}

std::optional<Rational> least_supported_c(const Detection& detection, std::size_t min_witnesses) {
  std::vector<const Witness*> ranked;
  for (const auto& e : detection.profile) {
    if (e.best) ranked.push_back(&*e.best);
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const Witness* a, const Witness* b) { return a->ratio() < b->ratio(); });
  std::size_t count = 0;
  std::uint64_t widest = 0;
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    ++count;
    widest = std::max(widest, ranked[i]->span_length());
    const bool last_of_ratio = i + 1 == ranked.size() || ranked[i + 1]->ratio() != ranked[i]->ratio();
    if (last_of_ratio && count >= std::max<std::size_t>(min_witnesses, 1) && 2 * widest >= detection.prefix_length) {
      return ranked[i]->ratio();
    }
  }
  return std::nullopt;
}

namespace {

ConditionEvidence evidence_for(const Detection& detection, const Condition& condition, std::string source,
                               std::size_t min_witnesses) {
  ConditionEvidence ev;
  ev.condition = condition;
  ev.source = std::move(source);
  std::uint64_t widest = 0;
  for (const auto& e : detection.profile) {
    if (e.best && *e.ratio <= condition.c) {
      ev.family.push_back(*e.best);
      if (e.best->span_length() >= widest) {
        widest = e.best->span_length();
        ev.largest_u = e.u;
      }
    }
  }
  if (detection.prefix_length > 0) {
    ev.fraction_consumed = from_u64(widest) / from_u64(detection.prefix_length);
  }
  ev.enough = ev.family.size() >= std::max<std::size_t>(min_witnesses, 1) && 2 * widest >= detection.prefix_length;
  return ev;
}

}  // namespace

std::string Certificate::verdict() const {
  if (failures.empty()) return "hypotheses-evidenced";
  std::string out = "failed(";
  for (std::size_t i = 0; i < failures.size(); ++i) out += (i ? "," : "") + failures[i];
  return out + ")";
}

Certificate certify(const FloorFunction& floor, const WordSpec& word, std::uint64_t length,
                    const CertifyOptions& options) {
  if (length < 16) throw InputError("certify needs a prefix of at least 16 letters");
  const Prime& p = floor.prime();
  const LetterStream stream(word);
  if (const auto n = stream.length(); n && *n < length) {
    throw InputError("word has only " + std::to_string(*n) + " letters");
  }
  const std::vector<Rational> letters = stream.prefix(length, &p);
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (floor(letters[i]) != letters[i]) {
      throw InputError("letter " + letters[i].str() + " at position " + std::to_string(i + 1) +
                       " is not fixed by the floor function");
    }
  }
  if (options.hint && options.hint->c.sign() < 0) throw InputError("condition constant must be >= 0");
  const std::vector<Code> codes = intern(letters);

  Certificate cert(p, floor, word, length);
  cert.hint = options.hint;

  auto growth = std::async(std::launch::async, [&] { return growth_bounds(letters, p); });
  auto special = std::async(std::launch::async, [&] { return scan_special_prefixes(codes); });
  const Detection spade = detect(WitnessKind::spade, codes, Rational(0), options.min_witnesses, options.threads);
  const Detection club = detect(WitnessKind::club, codes, Rational(0), options.min_witnesses, options.threads);
  cert.bounds = growth.get();
  const SpecialPrefixes prefixes = special.get();

  cert.C_inf_used = cert.bounds.closed_form_C_inf;
  std::optional<unsigned long> best_k;
  for (const Detection* d : {&spade, &club}) {
    if (const auto c = least_supported_c(*d, options.min_witnesses)) {
      const unsigned long k = required_k(d->kind, p, *c, cert.C_inf_used);
      if (!best_k || k < *best_k) {
        best_k = k;
        cert.detected = Condition{d->kind, *c};
      }
    }
  }

  if (const auto condition = options.hint ? options.hint : cert.detected) {
    const Detection& d = condition->kind == WitnessKind::spade ? spade : club;
    cert.evidence = evidence_for(d, *condition, options.hint ? "hint" : "detector", options.min_witnesses);
    for (const auto& w : cert.evidence->family) {
      if (!validate_witness(codes, w)) throw InvariantError("family witness fails validation");
    }
    cert.k = required_k(condition->kind, p, condition->c, cert.C_inf_used);
  }

  cert.letters.required = cert.k;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const long e = -*vp(letters[i], p);
    if (i == 0 || e < cert.letters.min_exponent) {
      cert.letters.min_exponent = e;
      cert.letters.first_index = i + 1;
    }
  }
  cert.letters.passed = cert.k && cert.letters.min_exponent >= static_cast<long>(*cert.k);

  std::vector<Rational> cf{Rational(0)};
  cf.insert(cf.end(), letters.begin(), letters.end());
  const Rational alpha = eval_cf(cf);
  const ContinuantTable table(cf);
  std::set<std::uint64_t> spots{0, 1, length / 4, length / 2, length - 1};
  std::vector<long> partial(length + 1, 0);
  for (std::uint64_t j = 1; j <= length; ++j) partial[j] = partial[j - 1] - *vp(letters[j - 1], p);
  for (const std::uint64_t n : spots) {
    ApproximationCheck a;
    a.n = n;
    a.expected = partial[n + 1];
    const long idx = static_cast<long>(n);
    a.observed = vp(table.B(idx) * alpha - table.A(idx), p);
    a.passed = a.observed == Valuation(a.expected);
    cert.approximation.push_back(a);
  }

  cert.periods = prefixes.periods;
  cert.ultimately_periodic_evidence = !prefixes.periods.empty();

  if (!cert.evidence || !cert.evidence->enough) cert.failures.emplace_back("condition");
  if (!cert.letters.passed) cert.failures.emplace_back("k");
  if (!std::all_of(cert.approximation.begin(), cert.approximation.end(), [](const auto& a) { return a.passed; })) {
    cert.failures.emplace_back("approximation");
  }
  return cert;
}

std::string to_string(CorollaryKind kind) {
  switch (kind) {
    case CorollaryKind::browkin_ruban: return "browkin_ruban";
    case CorollaryKind::finite_alphabet: return "finite_alphabet";
    case CorollaryKind::automatic_binary: return "automatic_binary";
    case CorollaryKind::large_p: return "large_p";
  }
  return "?";
}

CorollaryKind corollary_kind_from_string(const std::string& name) {
  for (auto k : {CorollaryKind::browkin_ruban, CorollaryKind::finite_alphabet, CorollaryKind::automatic_binary,
                 CorollaryKind::large_p}) {
    if (to_string(k) == name) return k;
  }
  throw InputError("unknown corollary: " + name);
}

bool CorollaryReport::passed() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const auto& c) { return c.passed; });
}

CorollaryReport check_browkin_ruban(const Prime& p, FloorKind floor, WitnessKind kind,
                                    std::span<const Rational> alphabet) {
  check_alphabet(alphabet);
  if (floor == FloorKind::custom) throw InputError("browkin_ruban needs the ruban or browkin floor");
  const bool ruban = floor == FloorKind::ruban;
  const Rational C = ruban ? Rational(p.value() + 1) : Rational(p.big(), 2) + Rational(1);
  CorollaryReport r;
  r.which = CorollaryKind::browkin_ruban;
  r.p = p.value();
  r.k = required_k(kind, p, Rational(0), C);

  const FloorFunction s = ruban ? FloorFunction::ruban(p) : FloorFunction::browkin(p);
  ConditionResult image{"image", true, "every letter is fixed by the floor function"};
  long min_e = 0;
  for (std::size_t i = 0; i < alphabet.size(); ++i) {
    if (s(alphabet[i]) != alphabet[i]) {
      image = {"image", false, alphabet[i].str() + " is not fixed by the floor function"};
    }
    const Valuation v = vp(alphabet[i], p);
    const long e = -*v;
    if (i == 0 || e < min_e) min_e = e;
  }
  r.conditions.push_back(image);
  r.conditions.push_back({"exponent", min_e >= static_cast<long>(*r.k),
                          "min -v_p(a) = " + std::to_string(min_e) + ", need " + std::to_string(*r.k)});
  r.assumptions.emplace_back(kind == WitnessKind::spade ? "the word starts with arbitrarily long repetitions"
                                                        : "the word starts with arbitrarily long palindromes");
  r.assumptions.emplace_back("(|B_n|_p^(1/n)) is bounded");
  if (ruban) r.assumptions.emplace_back("alpha is irrational");
  return r;
}

CorollaryReport check_finite_alphabet(const Prime& p, WitnessKind kind, const Rational& c,
                                      std::span<const Rational> alphabet) {
  check_alphabet(alphabet);
  if (c.sign() < 0) throw InputError("c must be >= 0");
  CorollaryReport r;
  r.which = CorollaryKind::finite_alphabet;
  r.p = p.value();
  const Rational T = max_abs(alphabet);
  const Rational P(p.value());

  bool letters_ok = true;
  for (const auto& a : alphabet) letters_ok = letters_ok && vp(a, p).value_or(0) < 0;
  r.conditions.push_back({"partial-quotients", letters_ok, "every letter has |a|_p > 1"});

  ConditionResult growth;
  growth.name = "growth";
  if (kind == WitnessKind::club && c.is_zero()) {
    growth.passed = T < P - Rational(1);
    growth.detail = "T = " + T.str() + (growth.passed ? " < " : " >= ") + (P - Rational(1)).str();
  } else {
    const Rational e = k_multiplier(kind, c);
    growth.passed = compare_rational_power(T + Rational(1), e, P) < 0;
    growth.detail = power_text(T + Rational(1), e, growth.passed ? "<" : ">=", p.value());
  }
  r.conditions.push_back(growth);

  // The inequality is exactly k = 1 with C_inf = T + 1.
  r.k = required_k(kind, p, c, T + Rational(1));
  if (growth.passed != (*r.k == 1)) throw InvariantError("finite-alphabet inequality disagrees with required_k");
  return r;
}

std::optional<unsigned long> family_exponent(Generator g) {
  switch (g) {
    case Generator::rudin_shapiro: return 152;
    case Generator::paperfolding: return 80;
    case Generator::sturmian: return 3;
    case Generator::thue_morse:
    case Generator::fibonacci: return 1;
    default: return std::nullopt;
  }
}

CorollaryReport check_automatic_binary(const Prime& p, const Rational& a, const Rational& b, const Rational& C,
                                       std::optional<Generator> family) {
  const Rational ab[] = {a, b};
  check_alphabet(ab);
  if (C.sign() <= 0) throw InputError("complexity constant must be > 0");
  CorollaryReport r;
  r.which = CorollaryKind::automatic_binary;
  r.p = p.value();
  const Rational P(p.value());

  r.conditions.push_back({"Z[1/p]", in_z_one_over_p(a, p) && in_z_one_over_p(b, p), "a, b in Z[1/p]"});
  const long vdiff = *vp(a - b, p);
  r.conditions.push_back({"i", vdiff <= 0, "v_p(a - b) = " + std::to_string(vdiff)});
  const long va = *vp(a, p), vb = *vp(b, p);
  r.conditions.push_back(
      {"ii", va <= -1 && vb <= -1, "v_p(a) = " + std::to_string(va) + ", v_p(b) = " + std::to_string(vb)});
  const Rational base = max(a.abs(), b.abs()) + Rational(1);
  const Rational e = Rational(18) * C + Rational(8);
  const bool iii = compare_rational_power(base, e, P) < 0;
  r.conditions.push_back({"iii", iii, power_text(base, e, iii ? "<" : ">=", p.value())});
  if (family) {
    if (const auto fe = family_exponent(*family)) {
      const Rational ef(static_cast<long>(*fe));
      const bool ok = compare_rational_power(base, ef, P) < 0;
      r.conditions.push_back({"family", ok, to_string(*family) + ": " + power_text(base, ef, ok ? "<" : ">=", p.value())});
    }
  }
  // Spade with c = 3C + 1 and T + 1 = base.
  r.k = required_k(WitnessKind::spade, p, Rational(3) * C + Rational(1), base);
  return r;
}

CorollaryReport least_prime_automatic(const BigInt& n, const BigInt& m, const Rational& C, long limit) {
  if (sgn(n) == 0 || sgn(m) == 0 || n == m) throw InputError("n and m must be distinct and nonzero");
  if (C.sign() <= 0) throw InputError("complexity constant must be > 0");
  if (limit > (1L << 31) - 1) throw InputError("search limit too large");
  for (long q = 3; q <= limit; q += 2) {
    if (!is_prime(q)) continue;
    const Prime p(q);
    CorollaryReport r = check_automatic_binary(p, Rational(n, p.big()), Rational(m, p.big()), C);
    if (r.passed()) {
      r.which = CorollaryKind::large_p;
      return r;
    }
  }
  CorollaryReport none;
  none.which = CorollaryKind::large_p;
  none.conditions.push_back({"search", false, "no prime up to " + std::to_string(limit)});
  return none;
}

}  // namespace padiccf
