#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "padiccf/certify.hpp"
#include "padiccf/combinatorics.hpp"
#include "padiccf/continued_fraction.hpp"
#include "padiccf/floor.hpp"
#include "padiccf/quadratic.hpp"
#include "padiccf/words.hpp"

/// JSON mapping of the library types. Field order is fixed so that equal
/// values serialize to identical bytes. Rationals travel as "num/den"
/// strings; readers also take JSON integers.
namespace padiccf::json {

using Json = nlohmann::ordered_json;

/// Pretty-printed with two-space indent and a trailing newline.
std::string dump(const Json& j);
/// Throws InputError on malformed text.
Json parse(const std::string& text);
Json read_file(const std::string& path);

Json to_json(const Rational& q);
Json to_json(const std::vector<Rational>& qs);
Json to_json(const Valuation& v);  // integer, or "inf"
Rational rational_from(const Json& j);
std::vector<Rational> rationals_from(const Json& j);

Json to_json(const FloorFunction& s);
/// {"kind", "p", "remap": [{"class", "rep"}], "default"}; remap entries
/// are validated.
FloorFunction floor_from(const Json& j);

Json to_json(const ExpansionRecord& rec);
Json to_json(const IdentityReport& report);
Json to_json(const FloorValidationReport& report);

Json to_json(const DFAO& dfao);
DFAO dfao_from(const Json& j);
Json to_json(const WordSpec& spec);
/// {"generator", "alphabet_map", "params"}; missing params keep the
/// generator defaults. A "dfao" param may name a built-in automaton.
WordSpec word_from(const Json& j);

Json to_json(const Witness& w);
Json to_json(const Detection& d, bool with_profile = true);
Json to_json(const SpecialPrefixes& s);

Json to_json(const QuadraticCertificate& cert);
Json to_json(const RootCheck& check);
Json to_json(const PalindromeWitness& w);

Json to_json(const GrowthBounds& g);
Json to_json(const Certificate& cert);
Json to_json(const CorollaryReport& report);

}  // namespace padiccf::json
