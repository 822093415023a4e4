#include "padiccf/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>

#include "CLI11.hpp"
#include "padiccf/json_io.hpp"

namespace padiccf {

namespace {

using json::Json;

struct Failure {
  int code;
  std::string message;
  std::optional<Json> report;
};

std::vector<std::string> split(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur += ch;
    }
  }
  if (!cur.empty() || !out.empty()) out.push_back(cur);
  return out;
}

std::vector<std::uint64_t> parse_counts(const std::string& text) {
  std::vector<std::uint64_t> out;
  for (const auto& s : split(text)) {
    if (s.empty() || !std::all_of(s.begin(), s.end(), ::isdigit)) throw InputError("bad count: " + s);
    out.push_back(std::stoull(s));
  }
  return out;
}

FloorFunction resolve_floor(const std::string& name, std::optional<long> p) {
  if (name == "ruban" || name == "browkin") {
    if (!p) throw InputError("--p is required with a built-in floor");
    const Prime prime(*p);
    return name == "ruban" ? FloorFunction::ruban(prime) : FloorFunction::browkin(prime);
  }
  FloorFunction s = json::floor_from(json::read_file(name));
  if (p && s.prime().value() != *p) throw InputError("--p differs from the floor spec's p");
  return s;
}

// Options shared by every subcommand that reads a word.
struct WordOptions {
  std::string word, gen, map, dfao, preperiod, period, letters;
  std::uint64_t length = 0;
  std::uint64_t budget = 0;

  void attach(CLI::App* app, bool need_length) {
    app->add_option("--word", word, "word spec JSON file or built-in generator name");
    app->add_option("--gen", gen, "built-in generator name");
    app->add_option("--map", map, "alphabet map, e.g. a=8/3,b=5/3");
    app->add_option("--dfao", dfao, "built-in automaton for --gen dfao");
    app->add_option("--preperiod", preperiod, "symbols for --gen periodic");
    app->add_option("--period", period, "symbols for --gen periodic");
    app->add_option("--letters", letters, "symbols for --gen explicit");
    auto* opt = app->add_option("--length", length, "prefix length");
    if (need_length) opt->required();
    app->add_option("--budget", budget, "cap on the prefix length");
  }

  bool given() const { return !word.empty() || !gen.empty(); }

  WordSpec spec() const {
    WordSpec s;
    if (!word.empty() && std::filesystem::is_regular_file(word)) {
      s = json::word_from(json::read_file(word));
    } else if (!word.empty() || !gen.empty()) {
      s = WordSpec::of(generator_from_string(word.empty() ? gen : word));
    } else {
      throw InputError("a word is required (--word or --gen)");
    }
    if (!dfao.empty()) s.dfao = json::dfao_from(Json(dfao));
    if (!preperiod.empty()) s.preperiod = split(preperiod);
    if (!period.empty()) s.period = split(period);
    if (!letters.empty()) s.letters = split(letters);
    for (const auto& entry : split(map)) {
      const auto eq = entry.find('=');
      if (eq == std::string::npos || eq == 0) throw InputError("bad --map entry: " + entry);
      s.alphabet_map[entry.substr(0, eq)] = Rational::parse(entry.substr(eq + 1));
    }
    return s;
  }

  std::uint64_t effective_length() const {
    if (length == 0) throw InputError("--length must be positive");
    return budget > 0 ? std::min(length, budget) : length;
  }
};

std::vector<Code> codes_of(const LetterStream& stream, std::uint64_t n) {
  const auto symbols = stream.symbols(n);
  return intern(symbols);
}

std::string text_word(const std::vector<Symbol>& symbols) {
  const bool single = std::all_of(symbols.begin(), symbols.end(), [](const auto& s) { return s.size() == 1; });
  std::string out;
  for (std::size_t i = 0; i < symbols.size(); ++i) out += (single || i == 0 ? "" : ",") + symbols[i];
  return out;
}

std::vector<Rational> random_samples(const Prime& p, std::size_t count, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> num(-10000, 10000), den(1, 100);
  std::uniform_int_distribution<unsigned long> scale(0, 4);
  std::vector<Rational> out;
  for (std::size_t i = 0; i < count; ++i) {
    const BigInt d = BigInt(den(rng)) * p.power(scale(rng));
    out.emplace_back(BigInt(num(rng)), d);
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic continued fractions: expansion, words, detection and hypothesis certificates", "padic_cf"};
  app.require_subcommand(1);

  std::string output, format;  // empty format: the subcommand default
  std::optional<long> p;
  std::string floor_name = "ruban";
  auto common = [&](CLI::App* sub, bool with_floor) {
    sub->add_option("--output,-o", output, "write the result to a file");
    sub->add_option("--format", format, "json or text")->check(CLI::IsMember({"json", "text"}));
    if (with_floor) {
      sub->add_option("--p", p, "odd prime");
      sub->add_option("--floor", floor_name, "ruban, browkin or a floor spec JSON file");
    }
  };

  std::function<Json()> action;
  std::optional<std::string> text_result;
  int status = kExitOk;

  // expand
  auto* expand_cmd = app.add_subcommand("expand", "continued fraction expansion of a rational");
  common(expand_cmd, true);
  std::string alpha;
  std::size_t max_terms = 30;
  bool with_identities = false;
  expand_cmd->add_option("--alpha", alpha, "rational to expand")->required();
  expand_cmd->add_option("--max-terms", max_terms, "maximum number of partial quotients");
  expand_cmd->add_flag("--identities", with_identities, "include the identity report");
  expand_cmd->callback([&] {
    action = [&] {
      const FloorFunction s = resolve_floor(floor_name, p);
      if (max_terms == 0) throw InputError("--max-terms must be positive");
      const ExpansionRecord rec = expand(Rational::parse(alpha), s, max_terms);
      const IdentityReport report = verify_identities(rec);
      if (!report.passed()) throw Failure{kExitInvariant, "identity check failed", json::to_json(report)};
      if (format == "text") text_result = join_rationals(rec.partial_quotients);
      if (!with_identities) return json::to_json(rec);
      return Json{{"record", json::to_json(rec)}, {"identities", json::to_json(report)}};
    };
  });

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a finite continued fraction");
  common(eval_cmd, false);
  std::string cf;
  eval_cmd->add_option("--cf", cf, "partial quotients a_0,a_1,...")->required();
  eval_cmd->add_option("--p", p, "also report the p-adic valuation");
  eval_cmd->callback([&] {
    action = [&] {
      const auto word = parse_rational_list(cf);
      const Rational value = eval_cf(word);
      if (format == "text") text_result = value.str();
      Json j{{"cf", json::to_json(word)}, {"value", value.str()}};
      if (p) j["valuation"] = json::to_json(vp(value, Prime(*p)));
      return j;
    };
  });

  // word
  auto* word_cmd = app.add_subcommand("word", "print a prefix of a generated word");
  common(word_cmd, false);
  WordOptions word_opts;
  word_opts.attach(word_cmd, true);
  word_cmd->callback([&] {
    action = [&] {
      const LetterStream stream(word_opts.spec());
      const auto n = word_opts.effective_length();
      const auto symbols = stream.symbols(n);
      if (format.empty() || format == "text") text_result = text_word(symbols);
      Json j{{"spec", json::to_json(stream.spec())}, {"length", n}, {"symbols", symbols}};
      if (!stream.spec().alphabet_map.empty()) j["values"] = json::to_json(stream.prefix(n));
      return j;
    };
  });

  // complexity
  auto* cx_cmd = app.add_subcommand("complexity", "factor complexity of a prefix");
  common(cx_cmd, false);
  WordOptions cx_word;
  cx_word.attach(cx_cmd, true);
  std::string ns;
  std::uint64_t max_n = 20;
  cx_cmd->add_option("--n", ns, "comma separated lengths");
  cx_cmd->add_option("--max-n", max_n, "lengths 1..max-n when --n is absent");
  cx_cmd->callback([&] {
    action = [&] {
      const LetterStream stream(cx_word.spec());
      const auto L = cx_word.effective_length();
      const FactorIndex index(codes_of(stream, L));
      std::vector<std::uint64_t> lengths = parse_counts(ns);
      if (lengths.empty()) {
        for (std::uint64_t n = 1; n <= std::min<std::uint64_t>(max_n, L); ++n) lengths.push_back(n);
      }
      Json rows = Json::array();
      std::string text;
      for (auto n : lengths) {
        const auto c = index.count(n);
        rows.push_back(Json{{"n", n}, {"count", c}});
        text += std::to_string(n) + " " + std::to_string(c) + "\n";
      }
      if (format == "text") text_result = text;
      return Json{{"prefix_length", L}, {"complexity", rows}};
    };
  });

  // detect
  auto* detect_cmd = app.add_subcommand("detect", "spade/club witnesses on a prefix");
  common(detect_cmd, false);
  WordOptions det_word;
  det_word.attach(detect_cmd, true);
  std::string kind = "spade", c_max = "2";
  std::size_t min_witnesses = 3;
  unsigned threads = 0;
  bool no_profile = false, special = false;
  detect_cmd->add_option("--kind", kind, "spade or club");
  detect_cmd->add_option("--c-max", c_max, "largest admissible max(w, v)/u");
  detect_cmd->add_option("--min-witnesses", min_witnesses, "family size counted as enough");
  detect_cmd->add_option("--threads", threads, "worker threads (0: PADIC_CF_THREADS or hardware)");
  detect_cmd->add_flag("--no-profile", no_profile, "omit the per-u profile");
  detect_cmd->add_flag("--special", special, "add square, palindrome and period prefixes");
  detect_cmd->callback([&] {
    action = [&] {
      const LetterStream stream(det_word.spec());
      const auto codes = codes_of(stream, det_word.effective_length());
      const Detection d = detect(witness_kind_from_string(kind), codes, Rational::parse(c_max), min_witnesses, threads);
      Json j = json::to_json(d, !no_profile);
      if (special) j["special_prefixes"] = json::to_json(scan_special_prefixes(codes));
      return j;
    };
  });

  // quadratic
  auto* quad_cmd = app.add_subcommand("quadratic", "quadratic polynomial of an eventually periodic expansion");
  common(quad_cmd, false);
  std::string preperiod = "0", period;
  std::size_t check_letters = 0;
  quad_cmd->add_option("--p", p, "odd prime")->required();
  quad_cmd->add_option("--preperiod", preperiod, "a_0,...,a_w with a_0 = 0");
  quad_cmd->add_option("--period", period, "repeating partial quotients")->required();
  quad_cmd->add_option("--check-letters", check_letters, "valuation of P at the truncation with this many letters");
  quad_cmd->callback([&] {
    action = [&] {
      const Prime prime(*p);
      const auto cert = periodic_to_quadratic(prime, parse_rational_list(preperiod), parse_rational_list(period));
      Json j = json::to_json(cert);
      j["rational_roots"] = json::to_json(rational_roots(cert));
      if (check_letters > 0) j["root_check"] = json::to_json(verify_root(cert, prime, check_letters));
      return j;
    };
  });

  // floor-validate
  auto* fv_cmd = app.add_subcommand("floor-validate", "check the floor function axioms");
  common(fv_cmd, true);
  std::string samples;
  std::size_t random_count = 200;
  unsigned long seed = 1;
  fv_cmd->add_option("--samples", samples, "comma separated rationals");
  fv_cmd->add_option("--random", random_count, "number of pseudo-random samples");
  fv_cmd->add_option("--seed", seed, "seed for samples and class trials");
  fv_cmd->callback([&] {
    action = [&] {
      const FloorFunction s = resolve_floor(floor_name, p);
      std::vector<Rational> qs = samples.empty() ? std::vector<Rational>{} : parse_rational_list(samples);
      const auto extra = random_samples(s.prime(), random_count, seed);
      qs.insert(qs.end(), extra.begin(), extra.end());
      const auto report = validate_floor(s, qs, seed);
      if (!report.passed()) status = kExitInput;
      return json::to_json(report);
    };
  });

  // certify
  auto* cert_cmd = app.add_subcommand("certify", "evidence certificate or corollary check");
  common(cert_cmd, true);
  WordOptions cert_word;
  cert_word.attach(cert_cmd, false);
  cert_word.length = 1024;
  std::string hint_kind, hint_c, corollary, alphabet, a, b, C = "1", n_str, m_str, family;
  long limit = 1000000;
  cert_cmd->add_option("--kind", hint_kind, "condition hint: spade or club");
  cert_cmd->add_option("--c", hint_c, "condition constant (default 0)");
  cert_cmd->add_option("--min-witnesses", min_witnesses, "family size counted as enough");
  cert_cmd->add_option("--threads", threads, "worker threads");
  cert_cmd->add_option("--corollary", corollary, "browkin_ruban, finite_alphabet, automatic_binary or large_p");
  cert_cmd->add_option("--alphabet", alphabet, "alphabet values for the corollaries");
  cert_cmd->add_option("--a", a, "first letter (automatic_binary)");
  cert_cmd->add_option("--b", b, "second letter (automatic_binary)");
  cert_cmd->add_option("--C", C, "complexity constant, p(n) <= C n");
  cert_cmd->add_option("--n", n_str, "numerator of the first letter (large_p)");
  cert_cmd->add_option("--m", m_str, "numerator of the second letter (large_p)");
  cert_cmd->add_option("--limit", limit, "largest prime tried (large_p)");
  cert_cmd->add_option("--family", family, "generator with a sharper threshold (automatic_binary)");
  cert_cmd->callback([&] {
    action = [&]() -> Json {
      const Rational c = hint_c.empty() ? Rational(0) : Rational::parse(hint_c);
      const WitnessKind k = witness_kind_from_string(hint_kind.empty() ? "spade" : hint_kind);
      auto alphabet_values = [&] {
        if (!alphabet.empty()) return parse_rational_list(alphabet);
        std::vector<Rational> vals;
        if (cert_word.given()) {
          for (const auto& [sym, v] : cert_word.spec().alphabet_map) vals.push_back(v);
        }
        if (vals.empty()) throw InputError("--alphabet is required");
        return vals;
      };
      auto prime = [&] {
        if (!p) throw InputError("--p is required");
        return Prime(*p);
      };
      if (corollary.empty()) {
        const FloorFunction s = resolve_floor(floor_name, p);
        CertifyOptions opts;
        if (!hint_kind.empty()) opts.hint = Condition{k, c};
        opts.min_witnesses = min_witnesses;
        opts.threads = threads;
        return json::to_json(certify(s, cert_word.spec(), cert_word.effective_length(), opts));
      }
      switch (corollary_kind_from_string(corollary)) {
        case CorollaryKind::browkin_ruban:
          if (floor_name != "ruban" && floor_name != "browkin") throw InputError("--floor must be ruban or browkin");
          return json::to_json(check_browkin_ruban(prime(), floor_kind_from_string(floor_name), k, alphabet_values()));
        case CorollaryKind::finite_alphabet:
          return json::to_json(check_finite_alphabet(prime(), k, c, alphabet_values()));
        case CorollaryKind::automatic_binary: {
          if (a.empty() || b.empty()) throw InputError("--a and --b are required");
          std::optional<Generator> g;
          if (!family.empty()) g = generator_from_string(family);
          return json::to_json(check_automatic_binary(prime(), Rational::parse(a), Rational::parse(b), Rational::parse(C), g));
        }
        case CorollaryKind::large_p: {
          if (n_str.empty() || m_str.empty()) throw InputError("--n and --m are required");
          const Rational n = Rational::parse(n_str), m = Rational::parse(m_str);
          if (!n.is_integer() || !m.is_integer()) throw InputError("--n and --m must be integers");
          return json::to_json(least_prime_automatic(n.num(), m.num(), Rational::parse(C), limit));
        }
      }
      throw InputError("unknown corollary");
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    const Json result = action();
    std::string text = text_result ? *text_result : json::dump(result);
    if (text_result && (text.empty() || text.back() != '\n')) text += "\n";
    if (output.empty()) {
      out << text;
    } else {
      std::ofstream file(output);
      if (!file) throw InputError("cannot write " + output);
      file << text;
    }
    return status;
  } catch (const Failure& f) {
    err << "error: " << f.message << "\n";
    if (f.report) err << json::dump(*f.report);
    return f.code;
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
}

}  // namespace padiccf
