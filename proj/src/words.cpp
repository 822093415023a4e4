#include "padiccf/words.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <mutex>
#include <set>

namespace padiccf {

namespace {

constexpr std::pair<Generator, const char*> kGeneratorNames[] = {
    {Generator::thue_morse, "thue_morse"},
    {Generator::rudin_shapiro, "rudin_shapiro"},
    {Generator::paperfolding, "paperfolding"},
    {Generator::fibonacci, "fibonacci"},
    {Generator::sturmian, "sturmian"},
    {Generator::dfao, "dfao"},
    {Generator::periodic, "periodic"},
    {Generator::palindromic_closure, "palindromic_closure"},
    {Generator::block_staircase, "block_staircase"},
    {Generator::explicit_word, "explicit"},
};

BigInt big(std::uint64_t n) { return BigInt(static_cast<unsigned long>(n)); }

}  // namespace

std::string to_string(Generator g) {
  for (const auto& [gen, name] : kGeneratorNames) {
    if (gen == g) return name;
  }
  return "?";
}

Generator generator_from_string(const std::string& name) {
  for (const auto& [gen, text] : kGeneratorNames) {
    if (name == text) return gen;
  }
  throw InputError("unknown generator '" + name + "'");
}

void DFAO::validate() const {
  if (base < 2) throw InputError("DFAO base must be >= 2");
  if (outputs.empty()) throw InputError("DFAO has no states");
  if (initial >= states()) throw InputError("DFAO initial state out of range");
  if (transitions.size() != states()) throw InputError("DFAO needs one transition row per state");
  for (std::size_t q = 0; q < transitions.size(); ++q) {
    if (transitions[q].size() != base) {
      throw InputError("DFAO transitions of state " + std::to_string(q) + " are not total on digits 0.." +
                       std::to_string(base - 1));
    }
    for (const auto target : transitions[q]) {
      if (target >= states()) throw InputError("DFAO transition target out of range");
    }
  }
}

std::vector<unsigned> DFAO::reachable() const {
  std::vector<bool> seen(states(), false);
  std::deque<unsigned> queue{initial};
  seen[initial] = true;
  std::vector<unsigned> out;
  while (!queue.empty()) {
    const unsigned q = queue.front();
    queue.pop_front();
    out.push_back(q);
    for (const auto t : transitions[q]) {
      if (!seen[t]) {
        seen[t] = true;
        queue.push_back(t);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Symbol DFAO::eval(std::uint64_t n) const {
  std::vector<unsigned> digits;
  for (; n > 0; n /= base) digits.push_back(static_cast<unsigned>(n % base));
  unsigned state = initial;
  for (auto it = digits.rbegin(); it != digits.rend(); ++it) state = transitions[state][*it];
  return outputs[state];
}

Symbol dfao_eval(const DFAO& m, std::uint64_t n) { return m.eval(n); }

DFAO thue_morse_dfao(const Symbol& a, const Symbol& b) { return {2, 0, {{0, 1}, {1, 0}}, {a, b}}; }

DFAO rudin_shapiro_dfao(const Symbol& a, const Symbol& b) {
  // state = 2 * parity + last digit
  return {2, 0, {{0, 1}, {0, 3}, {2, 3}, {2, 1}}, {a, a, b, b}};
}

DFAO paperfolding_dfao(const Symbol& a, const Symbol& b) {
  // state = 2 * (digit before the last 1) + last digit
  return {2, 0, {{0, 1}, {0, 3}, {2, 1}, {2, 3}}, {a, a, b, b}};
}

BigInt floor_surd(const BigInt& P, const BigInt& Q, const BigInt& d, const BigInt& D) {
  if (sgn(D) <= 0) throw InputError("floor_surd: denominator must be positive");
  BigInt out;
  if (sgn(Q) == 0) {
    mpz_fdiv_q(out.get_mpz_t(), P.get_mpz_t(), D.get_mpz_t());
    return out;
  }
  if (sgn(d) < 0 || mpz_perfect_square_p(d.get_mpz_t())) throw InputError("floor_surd: d must be a positive non-square");
  const BigInt S = Q * Q * d;
  BigInt root = sqrt(S);
  // sqrt(S) is irrational, so floor(-sqrt(S)) = -isqrt(S) - 1.
  if (sgn(Q) < 0) root = -root - 1;
  const BigInt num = P + root;
  mpz_fdiv_q(out.get_mpz_t(), num.get_mpz_t(), D.get_mpz_t());
  return out;
}

WordSpec WordSpec::of(Generator g) {
  WordSpec spec;
  spec.generator = g;
  if (g == Generator::fibonacci || g == Generator::block_staircase) {
    spec.low = "0";
    spec.high = "1";
  }
  if (g == Generator::dfao) spec.dfao = thue_morse_dfao();
  return spec;
}

struct LetterStream::Cache {
  std::mutex mutex;
  std::vector<Symbol> letters;
  /// Blocks (staircases) or seeds (palindromic closure) consumed so far.
  std::uint64_t step = 0;
};

namespace {

void validate_sturmian(const SturmianParams& s) {
  if (sgn(s.c) == 0) throw InputError("sturmian: c must be nonzero");
  if (sgn(s.b) == 0 || sgn(s.d) <= 0 || mpz_perfect_square_p(s.d.get_mpz_t())) {
    throw InputError("sturmian: slope must be irrational (b != 0, d a positive non-square)");
  }
  const int sign = sgn(s.c);
  if (floor_surd(sign * s.a, sign * s.b, s.d, sign * s.c) != 0) throw InputError("sturmian: slope must lie in (0, 1)");
}

// floor(n alpha + beta), or the ceiling.
BigInt sturmian_value(const SturmianParams& s, std::uint64_t n) {
  const BigInt& r = s.intercept.num();
  const BigInt& q = s.intercept.den();
  BigInt P = big(n) * s.a * q + r * s.c;
  BigInt Q = big(n) * s.b * q;
  BigInt D = s.c * q;
  if (sgn(D) < 0) {
    P = -P;
    Q = -Q;
    D = -D;
  }
  if (!s.ceiling) return floor_surd(P, Q, s.d, D);
  return -floor_surd(-P, -Q, s.d, D);
}

std::optional<std::uint64_t> closure_length(const WordSpec& spec) {
  if (spec.seeds_periodic) return std::nullopt;
  unsigned __int128 len = spec.seeds.front().size();
  for (std::size_t k = 1; k < spec.seeds.size(); ++k) {
    len = 2 * (len + spec.seeds[k].size());
    if (len > UINT64_MAX) throw InputError("palindromic_closure: word length overflows");
  }
  return static_cast<std::uint64_t>(len);
}

}  // namespace

LetterStream::LetterStream(WordSpec spec) : spec_(std::move(spec)), cache_(std::make_shared<Cache>()) {
  std::set<Rational> values;
  for (const auto& [symbol, value] : spec_.alphabet_map) {
    if (!values.insert(value).second) throw InputError("alphabet_map value " + value.str() + " is used twice");
  }
  switch (spec_.generator) {
    case Generator::sturmian: validate_sturmian(spec_.sturmian); break;
    case Generator::dfao:
      spec_.dfao.validate();
      if (!spec_.alphabet_map.empty()) {
        for (const auto q : spec_.dfao.reachable()) {
          if (!spec_.alphabet_map.contains(spec_.dfao.outputs[q])) {
            throw InputError("DFAO output '" + spec_.dfao.outputs[q] + "' is not in alphabet_map");
          }
        }
      }
      break;
    case Generator::periodic:
      if (spec_.period.empty()) throw InputError("periodic: empty period");
      break;
    case Generator::palindromic_closure:
      if (spec_.seeds.empty()) throw InputError("palindromic_closure: no seeds");
      for (const auto& r : spec_.seeds) {
        if (r.empty()) throw InputError("palindromic_closure: seeds must be nonempty words");
      }
      closure_length(spec_);
      break;
    default: break;
  }
}

std::optional<std::uint64_t> LetterStream::length() const {
  switch (spec_.generator) {
    case Generator::explicit_word: return spec_.letters.size();
    case Generator::palindromic_closure: return closure_length(spec_);
    default: return std::nullopt;
  }
}

void LetterStream::extend_to(std::uint64_t n) const {
  auto& c = *cache_;
  auto& out = c.letters;
  while (out.size() < n) {
    switch (spec_.generator) {
      case Generator::block_staircase:
        if (spec_.staircase == StaircaseKind::blocks) {
          const std::uint64_t i = ++c.step;
          out.insert(out.end(), i, spec_.low);
          out.insert(out.end(), i, spec_.high);
        } else {
          const std::uint64_t lo = std::uint64_t{1} << c.step++;
          const std::uint64_t hi = 2 * lo - 1;
          for (std::uint64_t i = lo; i <= hi; ++i) {
            out.push_back(spec_.low);
            out.insert(out.end(), i, spec_.high);
          }
          for (std::uint64_t i = hi; i >= lo; --i) {
            out.insert(out.end(), i, spec_.high);
            out.push_back(spec_.low);
          }
        }
        break;
      case Generator::palindromic_closure: {
        const auto& seeds = spec_.seeds;
        if (c.step == 0) {
          out = seeds.front();
        } else {
          if (!spec_.seeds_periodic && c.step >= seeds.size()) return;
          const auto& r = seeds[c.step % seeds.size()];
          out.insert(out.end(), r.begin(), r.end());
          const std::vector<Symbol> mirror(out.rbegin(), out.rend());
          out.insert(out.end(), mirror.begin(), mirror.end());
        }
        ++c.step;
        break;
      }
      default: return;
    }
  }
}

Symbol LetterStream::generated(std::uint64_t n) const {
  std::lock_guard lock(cache_->mutex);
  extend_to(n);
  if (cache_->letters.size() < n) throw InputError("letter " + std::to_string(n) + " is past the end of the word");
  return cache_->letters[n - 1];
}

Symbol LetterStream::letter(std::uint64_t n) const {
  if (n == 0) throw InputError("letters are indexed from 1");
  const auto& s = spec_;
  switch (s.generator) {
    case Generator::thue_morse: return std::popcount(n - 1) % 2 == 0 ? s.low : s.high;
    case Generator::rudin_shapiro: {
      const std::uint64_t m = n - 1;
      return std::popcount(m & (m >> 1)) % 2 == 0 ? s.low : s.high;
    }
    case Generator::paperfolding: return (n >> std::countr_zero(n)) % 4 == 1 ? s.low : s.high;
    case Generator::fibonacci: {
      const BigInt f0 = floor_surd(big(n), big(n), 5, 2);
      const BigInt f1 = floor_surd(big(n + 1), big(n + 1), 5, 2);
      return 2 + f0 - f1 == 0 ? s.low : s.high;
    }
    case Generator::sturmian:
      return sturmian_value(s.sturmian, n + 1) == sturmian_value(s.sturmian, n) ? s.low : s.high;
    case Generator::dfao: return s.dfao.eval(n - 1 + s.dfao_offset);
    case Generator::periodic:
      if (n <= s.preperiod.size()) return s.preperiod[n - 1];
      return s.period[(n - 1 - s.preperiod.size()) % s.period.size()];
    case Generator::explicit_word:
      if (n > s.letters.size()) throw InputError("letter " + std::to_string(n) + " is past the end of the word");
      return s.letters[n - 1];
    case Generator::palindromic_closure:
    case Generator::block_staircase: return generated(n);
  }
  throw InputError("unknown generator");
}

std::vector<Symbol> LetterStream::symbols(std::uint64_t count) const {
  if (const auto len = length(); len && count > *len) {
    throw InputError("requested " + std::to_string(count) + " letters of a word of length " + std::to_string(*len));
  }
  if (spec_.generator == Generator::palindromic_closure || spec_.generator == Generator::block_staircase) {
    std::lock_guard lock(cache_->mutex);
    extend_to(count);
    return {cache_->letters.begin(), cache_->letters.begin() + static_cast<std::ptrdiff_t>(count)};
  }
  std::vector<Symbol> out;
  out.reserve(count);
  for (std::uint64_t n = 1; n <= count; ++n) out.push_back(letter(n));
  return out;
}

Rational LetterStream::value_of(const Symbol& s) const {
  if (auto it = spec_.alphabet_map.find(s); it != spec_.alphabet_map.end()) return it->second;
  try {
    return Rational::parse(s);
  } catch (const InputError&) {
    throw InputError("symbol '" + s + "' has no alphabet_map entry");
  }
}

std::vector<Rational> LetterStream::prefix(std::uint64_t count, const Prime* pq_mode) const {
  std::vector<Rational> out;
  out.reserve(count);
  std::map<Symbol, Rational> seen;
  std::uint64_t n = 0;
  for (const auto& sym : symbols(count)) {
    ++n;
    auto it = seen.find(sym);
    if (it == seen.end()) {
      Rational v = value_of(sym);
      if (pq_mode) {
        const Valuation val = vp(v, *pq_mode);
        if (!val || *val >= 0) {
          throw InputError("letter " + std::to_string(n) + " maps to " + v.str() + " with |v|_p <= 1");
        }
      }
      it = seen.emplace(sym, std::move(v)).first;
    }
    out.push_back(it->second);
  }
  return out;
}

}  // namespace padiccf
