#include "padiccf/json_io.hpp"

#include <fstream>
#include <sstream>

namespace padiccf::json {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

template <class T>
T get_as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("bad value for ") + what);
  }
}

template <class T>
T get_or(const Json& j, const char* key, T fallback) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return get_as<T>(j.at(key), key);
}

std::vector<Symbol> symbols_from(const Json& j, const char* what) {
  if (!j.is_array()) throw InputError(std::string(what) + " must be a list");
  std::vector<Symbol> out;
  for (const auto& s : j) out.push_back(get_as<std::string>(s, what));
  return out;
}

Json u64(std::uint64_t x) { return Json(x); }

}  // namespace

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

Json to_json(const Rational& q) { return q.str(); }

Json to_json(const std::vector<Rational>& qs) {
  Json out = Json::array();
  for (const auto& q : qs) out.push_back(q.str());
  return out;
}

Json to_json(const Valuation& v) { return v ? Json(*v) : Json("inf"); }

Rational rational_from(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(j.dump()));
  throw InputError("rational must be a \"num/den\" string, got " + j.dump());
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) throw InputError("expected a list of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from(x));
  return out;
}

Json to_json(const FloorFunction& s) {
  Json out;
  out["kind"] = to_string(s.kind());
  out["p"] = s.prime().value();
  Json remap = Json::array();
  for (const auto& [cls, rep] : s.remap()) remap.push_back(Json{{"class", cls.str()}, {"rep", rep.str()}});
  out["remap"] = remap;
  out["default"] = to_string(s.fallback());
  return out;
}

FloorFunction floor_from(const Json& j) {
  const FloorKind kind = floor_kind_from_string(get_as<std::string>(field(j, "kind"), "kind"));
  const Prime p(get_as<long>(field(j, "p"), "p"));
  if (kind == FloorKind::ruban) return FloorFunction::ruban(p);
  if (kind == FloorKind::browkin) return FloorFunction::browkin(p);
  const FloorKind fallback = floor_kind_from_string(get_or<std::string>(j, "default", "ruban"));
  std::map<Rational, Rational> remap;
  if (j.contains("remap")) {
    for (const auto& e : j.at("remap")) {
      const Rational cls = rational_from(field(e, "class"));
      if (!remap.emplace(cls, rational_from(field(e, "rep"))).second) {
        throw InputError("remap lists class " + cls.str() + " twice");
      }
    }
  }
  return FloorFunction::custom(p, std::move(remap), fallback);
}

Json to_json(const ExpansionRecord& rec) {
  Json out;
  out["p"] = rec.p.value();
  out["floor"] = to_json(rec.floor);
  out["alpha"] = rec.alpha.str();
  out["a"] = to_json(rec.partial_quotients);
  out["terminated"] = rec.terminated;
  out["truncated"] = rec.truncated;
  return out;
}

Json to_json(const IdentityReport& report) {
  Json checks = Json::array();
  for (const auto& c : report.checks) {
    Json e;
    e["name"] = c.name;
    e["status"] = to_string(c.status);
    e["first_failing_index"] = c.first_failing_index ? Json(*c.first_failing_index) : Json(nullptr);
    e["detail"] = c.detail;
    checks.push_back(e);
  }
  Json out;
  out["passed"] = report.passed();
  out["checks"] = checks;
  return out;
}

Json to_json(const FloorValidationReport& report) {
  Json out;
  out["passed"] = report.passed();
  out["samples_checked"] = report.samples_checked;
  Json v = Json::array();
  for (const auto& x : report.violations) {
    v.push_back(Json{{"check", x.check}, {"input", x.input.str()}, {"detail", x.detail}});
  }
  out["violations"] = v;
  return out;
}

Json to_json(const DFAO& m) {
  Json out;
  out["base"] = m.base;
  Json states = Json::array();
  for (std::size_t s = 0; s < m.states(); ++s) states.push_back(s);
  out["states"] = states;
  out["initial"] = m.initial;
  out["transitions"] = m.transitions;
  out["outputs"] = m.outputs;
  return out;
}

DFAO dfao_from(const Json& j) {
  if (j.is_string()) {
    const auto name = j.get<std::string>();
    if (name == "thue_morse") return thue_morse_dfao();
    if (name == "rudin_shapiro") return rudin_shapiro_dfao();
    if (name == "paperfolding") return paperfolding_dfao();
    throw InputError("unknown built-in automaton: " + name);
  }
  DFAO m;
  m.base = get_as<unsigned>(field(j, "base"), "base");
  m.initial = get_or<unsigned>(j, "initial", 0);
  m.transitions = get_as<std::vector<std::vector<unsigned>>>(field(j, "transitions"), "transitions");
  m.outputs = symbols_from(field(j, "outputs"), "outputs");
  if (j.contains("states")) {
    const auto states = get_as<std::vector<unsigned>>(j.at("states"), "states");
    for (std::size_t i = 0; i < states.size(); ++i) {
      if (states[i] != i) throw InputError("states must be listed as 0, 1, ..., n-1");
    }
    if (states.size() != m.outputs.size()) throw InputError("states and outputs differ in length");
  }
  m.validate();
  return m;
}

Json to_json(const WordSpec& spec) {
  Json out;
  out["generator"] = to_string(spec.generator);
  Json map = Json::object();
  for (const auto& [s, v] : spec.alphabet_map) map[s] = v.str();
  out["alphabet_map"] = map;
  Json params = Json::object();
  switch (spec.generator) {
    case Generator::thue_morse:
    case Generator::rudin_shapiro:
    case Generator::paperfolding:
    case Generator::fibonacci:
      params["low"] = spec.low;
      params["high"] = spec.high;
      break;
    case Generator::sturmian:
      params["a"] = spec.sturmian.a.get_str();
      params["b"] = spec.sturmian.b.get_str();
      params["d"] = spec.sturmian.d.get_str();
      params["c"] = spec.sturmian.c.get_str();
      params["intercept"] = spec.sturmian.intercept.str();
      params["ceiling"] = spec.sturmian.ceiling;
      params["low"] = spec.low;
      params["high"] = spec.high;
      break;
    case Generator::dfao:
      params["dfao"] = to_json(spec.dfao);
      params["offset"] = spec.dfao_offset;
      break;
    case Generator::periodic:
      params["preperiod"] = spec.preperiod;
      params["period"] = spec.period;
      break;
    case Generator::palindromic_closure:
      params["seeds"] = spec.seeds;
      params["seeds_periodic"] = spec.seeds_periodic;
      break;
    case Generator::block_staircase:
      params["kind"] = spec.staircase == StaircaseKind::blocks ? "blocks" : "mirrored";
      params["low"] = spec.low;
      params["high"] = spec.high;
      break;
    case Generator::explicit_word:
      params["letters"] = spec.letters;
      break;
  }
  out["params"] = params;
  return out;
}

WordSpec word_from(const Json& j) {
  WordSpec spec = WordSpec::of(generator_from_string(get_as<std::string>(field(j, "generator"), "generator")));
  if (j.contains("alphabet_map")) {
    const Json& map = j.at("alphabet_map");
    if (!map.is_object()) throw InputError("alphabet_map must be an object");
    for (const auto& [s, v] : map.items()) spec.alphabet_map.emplace(s, rational_from(v));
  }
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (!params.is_object()) throw InputError("params must be an object");
  spec.low = get_or<std::string>(params, "low", spec.low);
  spec.high = get_or<std::string>(params, "high", spec.high);
  auto big = [&](const char* key, const BigInt& fallback) {
    if (!params.contains(key)) return fallback;
    const Json& v = params.at(key);
    const std::string text = v.is_string() ? v.get<std::string>() : v.dump();
    BigInt out;
    if (out.set_str(text, 10) != 0) throw InputError(std::string("bad integer for ") + key);
    return out;
  };
  spec.sturmian.a = big("a", spec.sturmian.a);
  spec.sturmian.b = big("b", spec.sturmian.b);
  spec.sturmian.d = big("d", spec.sturmian.d);
  spec.sturmian.c = big("c", spec.sturmian.c);
  if (params.contains("intercept")) spec.sturmian.intercept = rational_from(params.at("intercept"));
  spec.sturmian.ceiling = get_or<bool>(params, "ceiling", false);
  if (params.contains("dfao")) spec.dfao = dfao_from(params.at("dfao"));
  spec.dfao_offset = get_or<std::uint64_t>(params, "offset", 0);
  if (params.contains("preperiod")) spec.preperiod = symbols_from(params.at("preperiod"), "preperiod");
  if (params.contains("period")) spec.period = symbols_from(params.at("period"), "period");
  if (params.contains("letters")) spec.letters = symbols_from(params.at("letters"), "letters");
  if (params.contains("seeds")) {
    for (const auto& s : params.at("seeds")) spec.seeds.push_back(symbols_from(s, "seeds"));
  }
  spec.seeds_periodic = get_or<bool>(params, "seeds_periodic", false);
  const auto kind = get_or<std::string>(params, "kind", "blocks");
  if (kind != "blocks" && kind != "mirrored") throw InputError("staircase kind must be blocks or mirrored");
  spec.staircase = kind == "blocks" ? StaircaseKind::blocks : StaircaseKind::mirrored;
  return spec;
}

Json to_json(const Witness& w) {
  Json out;
  out["kind"] = to_string(w.kind);
  out["w"] = w.w;
  out["u"] = w.u;
  out["v"] = w.v;
  out["ratio"] = w.ratio().str();
  out["prefix_length_used"] = w.prefix_length_used;
  return out;
}

Json to_json(const Detection& d, bool with_profile) {
  Json out;
  out["kind"] = to_string(d.kind);
  out["c_max"] = d.c_max.str();
  out["prefix_length"] = d.prefix_length;
  Json family = Json::array();
  for (const auto& w : d.family) family.push_back(to_json(w));
  out["family"] = family;
  out["largest_u"] = d.largest_u;
  out["fraction_consumed"] = d.fraction_consumed.str();
  out["enough"] = d.enough;
  if (with_profile) {
    Json profile = Json::array();
    for (const auto& e : d.profile) {
      Json x;
      x["u"] = e.u;
      x["ratio"] = e.ratio ? Json(e.ratio->str()) : Json(nullptr);
      x["w"] = e.best ? Json(e.best->w) : Json(nullptr);
      x["v"] = e.best ? Json(e.best->v) : Json(nullptr);
      profile.push_back(x);
    }
    out["profile"] = profile;
  }
  return out;
}

Json to_json(const SpecialPrefixes& s) {
  Json out;
  out["longest_square"] = s.longest_square;
  out["longest_palindrome"] = s.longest_palindrome;
  out["square_lengths"] = s.square_lengths;
  out["palindrome_lengths"] = s.palindrome_lengths;
  Json periods = Json::array();
  for (const auto& c : s.periods) periods.push_back(Json{{"preperiod", c.preperiod}, {"period", c.period}});
  out["periods"] = periods;
  return out;
}

Json to_json(const QuadraticCertificate& cert) {
  Json out;
  out["a"] = cert.a.str();
  out["b"] = cert.b.str();
  out["c"] = cert.c.str();
  out["preperiod"] = to_json(cert.preperiod);
  out["period"] = to_json(cert.period);
  out["degenerate"] = cert.degenerate;
  return out;
}

Json to_json(const RootCheck& check) {
  Json out;
  out["letters"] = check.letters;
  out["degenerate"] = check.degenerate;
  out["truncation_valuation"] = to_json(check.truncation_valuation);
  out["exact_rational_limit"] = check.exact_rational_limit ? Json(check.exact_rational_limit->str()) : Json(nullptr);
  out["valuation"] = to_json(check.valuation());
  return out;
}

Json to_json(const PalindromeWitness& w) {
  Json out;
  out["symmetric"] = w.symmetric;
  out["A_m"] = w.A_m.str();
  out["B_m_minus_1"] = w.B_m_minus_1.str();
  return out;
}

Json to_json(const GrowthBounds& g) {
  Json out;
  out["n_range"] = Json::array({g.n_first, g.n_last});
  out["observed_C_inf"] = g.observed_C_inf.str();
  out["observed_exact"] = g.observed_exact;
  out["observed_argmax"] = g.observed_argmax;
  out["T"] = g.T.str();
  out["closed_form_C_inf"] = g.closed_form_C_inf.str();
  out["C_p_exponent"] = g.C_p_exponent.str();
  out["C_p_letter_exponent"] = g.C_p_letter_exponent;
  return out;
}

namespace {

Json to_json(const std::optional<Condition>& c) {
  if (!c) return nullptr;
  return Json{{"kind", to_string(c->kind)}, {"c", c->c.str()}};
}

}  // namespace

Json to_json(const Certificate& cert) {
  Json out;
  out["version"] = Certificate::kVersion;
  out["scope"] = Certificate::kScope;

  Json inputs;
  inputs["p"] = cert.p.value();
  inputs["floor"] = to_json(cert.floor);
  inputs["word"] = to_json(cert.word);
  inputs["length"] = cert.length;
  out["inputs"] = inputs;

  Json condition;
  condition["hint"] = to_json(cert.hint);
  condition["detected"] = to_json(cert.detected);
  if (cert.evidence) {
    const auto& ev = *cert.evidence;
    Json e;
    e["kind"] = to_string(ev.condition.kind);
    e["c"] = ev.condition.c.str();
    e["source"] = ev.source;
    e["enough"] = ev.enough;
    e["largest_u"] = ev.largest_u;
    e["fraction_consumed"] = ev.fraction_consumed.str();
    Json family = Json::array();
    for (const auto& w : ev.family) family.push_back(to_json(w));
    e["witnesses"] = family;
    condition["in_force"] = e;
  } else {
    condition["in_force"] = nullptr;
  }
  out["condition"] = condition;

  out["bounds"] = to_json(cert.bounds);
  out["C_inf_used"] = cert.C_inf_used.str();
  out["k"] = cert.k ? Json(*cert.k) : Json(nullptr);

  Json letters;
  letters["min_exponent"] = cert.letters.min_exponent;
  letters["first_index"] = cert.letters.first_index;
  letters["required"] = cert.letters.required ? Json(*cert.letters.required) : Json(nullptr);
  letters["passed"] = cert.letters.passed;
  out["letters"] = letters;

  Json approx = Json::array();
  for (const auto& a : cert.approximation) {
    approx.push_back(Json{{"n", a.n}, {"expected", a.expected}, {"observed", to_json(a.observed)}, {"passed", a.passed}});
  }
  out["approximation"] = approx;

  Json periodicity;
  periodicity["ultimately_periodic_evidence"] = cert.ultimately_periodic_evidence;
  Json periods = Json::array();
  for (const auto& c : cert.periods) periods.push_back(Json{{"preperiod", c.preperiod}, {"period", c.period}});
  periodicity["periods"] = periods;
  out["periodicity"] = periodicity;

  out["failures"] = cert.failures;
  out["verdict"] = cert.verdict();
  out["disclaimer"] = Certificate::kDisclaimer;
  return out;
}

Json to_json(const CorollaryReport& report) {
  Json out;
  out["version"] = Certificate::kVersion;
  out["scope"] = Certificate::kScope;
  out["corollary"] = to_string(report.which);
  out["p"] = report.p ? Json(*report.p) : Json(nullptr);
  Json conditions = Json::array();
  for (const auto& c : report.conditions) {
    conditions.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  }
  out["conditions"] = conditions;
  out["assumptions"] = report.assumptions;
  out["k"] = report.k ? Json(*report.k) : Json(nullptr);
  out["passed"] = report.passed();
  return out;
}

}  // namespace padiccf::json
