#include "padiccf/combinatorics.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

namespace padiccf {

namespace {

constexpr Code kSentinel = std::numeric_limits<Code>::max();

template <typename T, typename Map>
std::vector<Code> intern_with(std::span<const T> word, Map& codes) {
  std::vector<Code> out;
  out.reserve(word.size());
  for (const auto& x : word) {
    auto [it, inserted] = codes.try_emplace(x, static_cast<Code>(codes.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace

std::vector<Code> intern(std::span<const std::string> word) {
  std::unordered_map<std::string, Code> codes;
  return intern_with(word, codes);
}

std::vector<Code> intern(std::span<const Rational> word) {
  std::map<Rational, Code> codes;
  return intern_with(word, codes);
}

std::vector<std::size_t> z_function(std::span<const Code> s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> z(n, 0);
  if (n == 0) return z;
  z[0] = n;
  for (std::size_t i = 1, l = 0, r = 0; i < n; ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < n && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) {
      l = i;
      r = i + z[i];
    }
  }
  return z;
}

unsigned worker_threads() {
  if (const char* env = std::getenv("PADIC_CF_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<unsigned>(n);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

FactorIndex::FactorIndex(std::span<const Code> word) : n_(word.size()), sa_(word.size()), lcp_(word.size(), 0) {
  // Prefix doubling.
  std::vector<std::size_t> rank(word.begin(), word.end()), next(n_);
  std::iota(sa_.begin(), sa_.end(), 0);
  for (std::size_t k = 1;; k *= 2) {
    auto key = [&](std::size_t i) {
      return std::pair{rank[i], i + k < n_ ? rank[i + k] + 1 : std::size_t{0}};
    };
    std::sort(sa_.begin(), sa_.end(), [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    if (n_ == 0) break;
    next[sa_[0]] = 0;
    for (std::size_t i = 1; i < n_; ++i) next[sa_[i]] = next[sa_[i - 1]] + (key(sa_[i - 1]) < key(sa_[i]) ? 1 : 0);
    rank.swap(next);
    if (rank[sa_[n_ - 1]] == n_ - 1 || k >= n_) break;
  }
  // Kasai: lcp_[i] = lcp(sa_[i-1], sa_[i]).
  std::vector<std::size_t> pos(n_);
  for (std::size_t i = 0; i < n_; ++i) pos[sa_[i]] = i;
  for (std::size_t i = 0, h = 0; i < n_; ++i) {
    if (pos[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa_[pos[i] - 1];
    while (i + h < n_ && j + h < n_ && word[i + h] == word[j + h]) ++h;
    lcp_[pos[i]] = h;
    if (h > 0) --h;
  }
}

std::uint64_t FactorIndex::count(std::size_t len) const {
  if (len > n_) throw InputError("factor length " + std::to_string(len) + " exceeds prefix length " + std::to_string(n_));
  if (len == 0) return 1;
  std::uint64_t out = 0;
  for (std::size_t i = 0; i < n_; ++i) {
    if (n_ - sa_[i] < len) continue;
    if (i == 0 || lcp_[i] < len) ++out;
  }
  return out;
}

std::uint64_t complexity(std::span<const Code> prefix, std::size_t n) { return FactorIndex(prefix).count(n); }

std::uint64_t complexity(std::span<const std::string> prefix, std::size_t n) {
  return complexity(intern(prefix), n);
}

std::string to_string(WitnessKind kind) { return kind == WitnessKind::spade ? "spade" : "club"; }

WitnessKind witness_kind_from_string(const std::string& name) {
  if (name == "spade") return WitnessKind::spade;
  if (name == "club") return WitnessKind::club;
  throw InputError("unknown witness kind '" + name + "' (spade or club)");
}

Rational Witness::ratio() const {
  return Rational(BigInt(static_cast<unsigned long>(std::max(v, w))), BigInt(static_cast<unsigned long>(u)));
}

bool validate_witness(std::span<const Code> prefix, const Witness& x) {
  if (x.u == 0 || x.span_length() > prefix.size()) return false;
  const std::uint64_t first = x.w, second = x.w + x.u + x.v;
  for (std::uint64_t i = 0; i < x.u; ++i) {
    const Code expected = x.kind == WitnessKind::spade ? prefix[first + i] : prefix[first + x.u - 1 - i];
    if (prefix[second + i] != expected) return false;
  }
  return true;
}

namespace {

struct Candidate {
  bool set = false;
  std::uint64_t m = 0, w = 0, v = 0;

  void offer(std::uint64_t w_, std::uint64_t v_) {
    const std::uint64_t m_ = std::max(w_, v_);
    if (!set || std::tie(m_, w_, v_) < std::tie(m, w, v)) *this = {true, m_, w_, v_};
  }
  void merge(const Candidate& o) {
    if (o.set) offer(o.w, o.v);
  }
};

// best[u] for every u, from the least v at each start w of U.
void scan_spade_start(std::span<const Code> s, std::size_t w, std::vector<Candidate>& best) {
  const auto z = z_function(s.subspan(w));
  const std::size_t m = z.size();
  std::size_t filled = 0;
  // Every u <= min(z[d], d) not yet assigned gets its first repeat at d.
  for (std::size_t d = 1; d < m && filled < m / 2; ++d) {
    const std::size_t reach = std::min(z[d], d);
    for (; filled < reach; ++filled) best[filled + 1].offer(w, d - (filled + 1));
  }
}

// best[u] for every u ending at e, from the least v.
void scan_club_end(std::span<const Code> s, std::size_t e, std::vector<Code>& buffer, std::vector<Candidate>& best) {
  const std::size_t n = s.size();
  buffer.clear();
  for (std::size_t i = e + 1; i-- > 0;) buffer.push_back(s[i]);
  buffer.push_back(kSentinel);
  buffer.insert(buffer.end(), s.begin() + static_cast<std::ptrdiff_t>(e + 1), s.end());
  const auto z = z_function(buffer);
  std::size_t filled = 0;
  for (std::size_t start = e + 1; start < n && filled < e + 1; ++start) {
    const std::size_t reach = z[start + 1];
    for (; filled < reach; ++filled) {
      const std::size_t u = filled + 1;
      best[u].offer(e + 1 - u, start - e - 1);
    }
  }
}

bool within(std::uint64_t m, std::uint64_t u, const Rational& c) {
  // m / u <= c
  return Rational(BigInt(static_cast<unsigned long>(m))) <= c * Rational(BigInt(static_cast<unsigned long>(u)));
}

}  // namespace

Detection detect(WitnessKind kind, std::span<const Code> prefix, const Rational& c_max, std::size_t min_witnesses,
                 unsigned threads) {
  const std::size_t n = prefix.size();
  const std::size_t half = n / 2;
  if (threads == 0) threads = worker_threads();
  const std::size_t tasks = kind == WitnessKind::spade ? n : (n > 0 ? n - 1 : 0);
  threads = static_cast<unsigned>(std::clamp<std::size_t>(tasks / 64, 1, threads));

  std::vector<std::vector<Candidate>> partial(threads, std::vector<Candidate>(half + 1));
  auto work = [&](unsigned t) {
    std::vector<Code> buffer;
    for (std::size_t i = t; i < tasks; i += threads) {
      if (kind == WitnessKind::spade) {
        scan_spade_start(prefix, i, partial[t]);
      } else {
        scan_club_end(prefix, i, buffer, partial[t]);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (unsigned t = 1; t < threads; ++t) {
    for (std::size_t u = 1; u <= half; ++u) partial[0][u].merge(partial[t][u]);
  }

  Detection out;
  out.kind = kind;
  out.c_max = c_max;
  out.prefix_length = n;
  for (std::size_t u = 1; u <= half; ++u) {
    CProfileEntry entry;
    entry.u = u;
    if (const auto& c = partial[0][u]; c.set) {
      Witness wit{kind, c.w, u, c.v, n};
      if (!validate_witness(prefix, wit)) throw InvariantError("detector produced an invalid witness");
      entry.ratio = wit.ratio();
      entry.best = wit;
      if (within(c.m, u, c_max)) out.family.push_back(wit);
    }
    out.profile.push_back(std::move(entry));
  }
  if (!out.family.empty()) {
    const auto& top = out.family.back();
    out.largest_u = top.u;
    out.fraction_consumed = Rational(BigInt(static_cast<unsigned long>(top.span_length())),
                                     BigInt(static_cast<unsigned long>(n)));
  }
  out.enough = out.family.size() >= min_witnesses;
  return out;
}

std::vector<Witness> witnesses_for(WitnessKind kind, std::span<const Code> prefix, std::uint64_t u,
                                   const Rational& c_max) {
  std::vector<Witness> out;
  const std::uint64_t n = prefix.size();
  if (u == 0 || 2 * u > n || c_max.sign() < 0) return out;
  const BigInt bound_big = floor(c_max * Rational(BigInt(static_cast<unsigned long>(u))));
  const std::uint64_t bound = std::min<std::uint64_t>(bound_big.get_ui(), n);
  std::vector<Code> buffer;
  for (std::uint64_t w = 0; w <= bound && w + 2 * u <= n; ++w) {
    if (kind == WitnessKind::spade) {
      const auto z = z_function(prefix.subspan(w));
      for (std::uint64_t v = 0; v <= bound && w + 2 * u + v <= n; ++v) {
        if (z[u + v] >= u) out.push_back({kind, w, u, v, n});
      }
    } else {
      const std::uint64_t e = w + u - 1;
      buffer.clear();
      for (std::uint64_t i = e + 1; i-- > 0;) buffer.push_back(prefix[i]);
      buffer.push_back(kSentinel);
      buffer.insert(buffer.end(), prefix.begin() + static_cast<std::ptrdiff_t>(e + 1), prefix.end());
      const auto z = z_function(buffer);
      for (std::uint64_t v = 0; v <= bound && w + 2 * u + v <= n; ++v) {
        if (z[e + 2 + v] >= u) out.push_back({kind, w, u, v, n});
      }
    }
  }
  return out;
}

SpecialPrefixes scan_special_prefixes(std::span<const Code> s) {
  SpecialPrefixes out;
  const std::size_t n = s.size();
  const auto z = z_function(s);
  for (std::size_t len = 1; 2 * len <= n; ++len) {
    if (z[len] >= len) out.square_lengths.push_back(len);
  }

  std::vector<Code> mirrored(s.begin(), s.end());
  mirrored.push_back(kSentinel);
  mirrored.insert(mirrored.end(), s.rbegin(), s.rend());
  const auto zm = z_function(mirrored);
  // prefix[0..P) is a palindrome iff it equals the last P letters of the reversal.
  for (std::size_t len = 1; len <= n; ++len) {
    if (zm[n + 1 + (n - len)] >= len) out.palindrome_lengths.push_back(len);
  }
  if (!out.square_lengths.empty()) out.longest_square = out.square_lengths.back();
  if (!out.palindrome_lengths.empty()) out.longest_palindrome = out.palindrome_lengths.back();

  for (std::size_t t = 1; 3 * t <= n; ++t) {
    std::size_t q = 0;
    for (std::size_t i = n - t; i-- > 0;) {
      if (s[i] != s[i + t]) {
        q = i + 1;
        break;
      }
    }
    if (q + 3 * t > n) continue;
    const bool covered = std::any_of(out.periods.begin(), out.periods.end(), [&](const PeriodCandidate& c) {
      return t % c.period == 0 && c.preperiod <= q;
    });
    if (!covered) out.periods.push_back({q, t});
  }
  return out;
}

Rational spade_constant_from_complexity(const Rational& C) {
  if (C.sign() <= 0) throw InputError("complexity constant must be positive");
  return Rational(3) * C + Rational(1);
}

}  // namespace padiccf
