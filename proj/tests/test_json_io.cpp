#include "doctest.h"
#include "padiccf/json_io.hpp"
#include "test_support.hpp"

using namespace padiccf;
using padiccf::json::Json;
using padiccf::testing::R;

namespace {

std::vector<std::string> keys(const Json& j) {
  std::vector<std::string> out;
  for (const auto& [k, v] : j.items()) out.push_back(k);
  return out;
}

void roundtrip(const WordSpec& spec) {
  const Json first = json::to_json(spec);
  const WordSpec back = json::word_from(json::parse(json::dump(first)));
  CHECK(json::dump(json::to_json(back)) == json::dump(first));
  const LetterStream a(spec), b(back);
  CHECK(a.symbols(64) == b.symbols(64));
}

}  // namespace

TEST_CASE("rationals cross as strings") {
  CHECK(json::to_json(R("-8/3")) == Json("-8/3"));
  CHECK_THROWS_AS(json::rational_from(Json("6/4")), InputError);
  CHECK(json::rational_from(Json(12)) == 12);
  CHECK_THROWS_AS(json::rational_from(Json(0.5)), InputError);
  CHECK_THROWS_AS(json::rational_from(Json("0.5")), InputError);
  CHECK(json::to_json(Valuation{}) == Json("inf"));
  CHECK(json::to_json(Valuation{4}) == Json(4));
}

TEST_CASE("floor spec round trip") {
  const Prime p5(5);
  for (const auto& s : {FloorFunction::ruban(p5), FloorFunction::browkin(p5)}) {
    const Json j = json::to_json(s);
    CHECK(keys(j) == std::vector<std::string>{"kind", "p", "remap", "default"});
    const FloorFunction back = json::floor_from(j);
    CHECK(back.kind() == s.kind());
    CHECK(back(R("7/5")) == s(R("7/5")));
  }
  const Json custom = json::parse(R"({"kind":"custom","p":5,"remap":[{"class":"1/5","rep":"-24/5"}],"default":"browkin"})");
  const FloorFunction s = json::floor_from(custom);
  CHECK(s(R("1/5")) == R("-24/5"));
  CHECK(json::to_json(s) == custom);
  const Json broken = json::parse(R"({"kind":"custom","p":5,"remap":[{"class":"1/5","rep":"2/5"}]})");
  CHECK_THROWS_AS(json::floor_from(broken), InputError);
  CHECK_THROWS_AS(json::floor_from(json::parse(R"({"kind":"ruban"})")), InputError);
  CHECK_THROWS_AS(json::floor_from(json::parse(R"({"kind":"ruban","p":9})")), InputError);
}

TEST_CASE("word spec round trips") {
  for (auto g : {Generator::thue_morse, Generator::rudin_shapiro, Generator::paperfolding, Generator::fibonacci,
                 Generator::sturmian, Generator::block_staircase}) {
    roundtrip(WordSpec::of(g));
  }
  WordSpec dfao = WordSpec::of(Generator::dfao);
  dfao.dfao = rudin_shapiro_dfao();
  dfao.dfao_offset = 3;
  roundtrip(dfao);
  WordSpec periodic = WordSpec::of(Generator::periodic);
  periodic.preperiod = {"x"};
  periodic.period = {"y", "z"};
  roundtrip(periodic);
  WordSpec closure = WordSpec::of(Generator::palindromic_closure);
  closure.seeds = {{"1"}, {"2"}};
  closure.seeds_periodic = true;
  roundtrip(closure);
  WordSpec mirrored = WordSpec::of(Generator::block_staircase);
  mirrored.staircase = StaircaseKind::mirrored;
  roundtrip(mirrored);
  WordSpec fixed = WordSpec::of(Generator::explicit_word);
  fixed.letters = std::vector<Symbol>(64, "q");
  roundtrip(fixed);
  WordSpec mapped = WordSpec::of(Generator::thue_morse);
  mapped.alphabet_map = {{"a", R("1/3")}, {"b", R("2/3")}};
  const Json j = json::to_json(mapped);
  CHECK(keys(j) == std::vector<std::string>{"generator", "alphabet_map", "params"});
  CHECK(j["alphabet_map"]["b"] == "2/3");
}

TEST_CASE("word spec parsing") {
  const WordSpec tm = json::word_from(json::parse(R"({"generator":"thue_morse","alphabet_map":{"a":"1/3","b":"2/3"}})"));
  CHECK(LetterStream(tm).prefix(3) == std::vector<Rational>{R("1/3"), R("2/3"), R("2/3")});
  const WordSpec named = json::word_from(json::parse(R"({"generator":"dfao","params":{"dfao":"paperfolding","offset":1}})"));
  CHECK(LetterStream(named).symbols(4) == LetterStream(WordSpec::of(Generator::paperfolding)).symbols(4));
  const WordSpec sturm = json::word_from(
      json::parse(R"({"generator":"sturmian","params":{"a":3,"b":"-1","d":5,"c":2,"intercept":"0"}})"));
  CHECK(LetterStream(sturm).symbols(30) == LetterStream(WordSpec::of(Generator::sturmian)).symbols(30));
  const Json dfao = json::to_json(thue_morse_dfao());
  CHECK(keys(dfao) == std::vector<std::string>{"base", "states", "initial", "transitions", "outputs"});
  CHECK(json::dfao_from(dfao).transitions == thue_morse_dfao().transitions);
  CHECK_THROWS_AS(json::word_from(json::parse(R"({"generator":"nope"})")), InputError);
  CHECK_THROWS_AS(json::word_from(json::parse(R"({"alphabet_map":{}})")), InputError);
  CHECK_THROWS_AS(json::word_from(json::parse(R"({"generator":"dfao","params":{"dfao":"nope"}})")), InputError);
  CHECK_THROWS_AS(json::word_from(json::parse(R"({"generator":"periodic","params":{"period":"ab"}})")), InputError);
  CHECK_THROWS_AS(json::parse("{"), InputError);
}

TEST_CASE("expansion and quadratic schemas") {
  const auto rec = expand(-3, FloorFunction::ruban(Prime(3)), 5);
  const Json j = json::to_json(rec);
  CHECK(keys(j) == std::vector<std::string>{"p", "floor", "alpha", "a", "terminated", "truncated"});
  CHECK(j["a"] == Json::array({"0", "8/3", "8/3", "8/3", "8/3"}));
  const auto cert = periodic_to_quadratic(Prime(3), std::vector<Rational>{0}, std::vector<Rational>{R("8/3")});
  const Json q = json::to_json(cert);
  CHECK(keys(q) == std::vector<std::string>{"a", "b", "c", "preperiod", "period", "degenerate"});
  CHECK(q["b"] == "8/3");
}

TEST_CASE("certificate schema is stable") {
  WordSpec tm = WordSpec::of(Generator::thue_morse);
  tm.alphabet_map = {{"a", R("8/3")}, {"b", R("5/3")}};
  const auto cert = certify(FloorFunction::ruban(Prime(3)), tm, 64);
  const Json j = json::to_json(cert);
  CHECK(keys(j) == std::vector<std::string>{"version", "scope", "inputs", "condition", "bounds", "C_inf_used", "k",
                                            "letters", "approximation", "periodicity", "failures", "verdict",
                                            "disclaimer"});
  CHECK(j["scope"] == "evidence-only");
  CHECK(j["verdict"] == cert.verdict());
  CHECK(json::dump(j) == json::dump(json::to_json(certify(FloorFunction::ruban(Prime(3)), tm, 64))));
  const WordSpec back = json::word_from(j["inputs"]["word"]);
  CHECK(back.alphabet_map == tm.alphabet_map);
}
