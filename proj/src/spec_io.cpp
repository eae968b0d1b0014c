#include "rauzy/spec_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rauzy {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

std::vector<std::string> string_list(const json& node, const char* what) {
  if (!node.is_array()) throw Error(ErrorKind::InvalidSpec, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& item : node) {
    if (!item.is_string()) throw Error(ErrorKind::InvalidSpec, std::string(what) + " entries must be strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

std::vector<Word> rules_for(const Alphabet& source, const Alphabet& target, const json& node, const char* what) {
  if (!node.is_object()) throw Error(ErrorKind::InvalidSpec, std::string(what) + " must be an object");
  std::vector<Word> rules(source.size());
  std::vector<bool> seen(source.size(), false);
  for (const auto& [key, value] : node.items()) {
    auto scalars = utf8_decode(key);
    if (scalars.size() != 1) throw Error(ErrorKind::InvalidSpec, "rule key '" + key + "' is not a single letter");
    const auto letter = source.index(scalars.front());
    if (!value.is_string()) throw Error(ErrorKind::InvalidSpec, "rule images must be strings");
    rules[letter] = target.decode(value.get<std::string>());
    seen[letter] = true;
  }
  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) {
      throw Error(ErrorKind::InvalidSpec, std::string(what) + " has no rule for '" + source.encode_letter(i) + "'");
    }
  }
  return rules;
}

}  // namespace

MorphicWordSpec parse_spec(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::InvalidSpec, std::string("JSON parse error: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorKind::InvalidSpec, "spec must be a JSON object");
  for (const char* key : {"alphabet", "rules", "seed"}) {
    if (!doc.contains(key)) throw Error(ErrorKind::InvalidSpec, std::string("missing key '") + key + "'");
  }
  const auto letters = string_list(doc["alphabet"], "alphabet");
  const Alphabet alphabet = Alphabet::from_utf8(letters);

  MorphicWordSpec spec;
  spec.phi = Morphism(alphabet, alphabet, rules_for(alphabet, alphabet, doc["rules"], "rules"));
  if (!doc["seed"].is_string()) throw Error(ErrorKind::InvalidSpec, "seed must be a string");
  const auto seed = utf8_decode(doc["seed"].get<std::string>());
  if (seed.size() != 1) throw Error(ErrorKind::InvalidSpec, "seed must be a single letter");
  spec.seed = alphabet.index(seed.front());

  if (doc.contains("coding") && !doc["coding"].is_null()) {
    Alphabet target;
    if (doc.contains("coding_alphabet")) {
      target = Alphabet::from_utf8(string_list(doc["coding_alphabet"], "coding_alphabet"));
    } else {
      std::vector<char32_t> symbols;
      for (const auto& [key, value] : doc["coding"].items()) {
        if (!value.is_string()) throw Error(ErrorKind::InvalidSpec, "coding images must be strings");
        for (char32_t c : utf8_decode(value.get<std::string>())) symbols.push_back(c);
      }
      std::sort(symbols.begin(), symbols.end());
      symbols.erase(std::unique(symbols.begin(), symbols.end()), symbols.end());
      target = Alphabet(std::move(symbols));
    }
    spec.coding = Morphism(alphabet, target, rules_for(alphabet, target, doc["coding"], "coding"));
  }
  if (doc.contains("prefix_budget")) {
    const auto& budget = doc["prefix_budget"];
    if (!budget.is_number_integer() || budget.get<long long>() < 1) {
      throw Error(ErrorKind::InvalidSpec, "prefix_budget must be a positive integer");
    }
    spec.prefix_budget = budget.get<std::size_t>();
  }
  spec.validate();
  return spec;
}

MorphicWordSpec load_spec(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open spec file '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_spec(buffer.str());
}

std::string dump_spec(const MorphicWordSpec& spec) {
  const auto& a = spec.phi.source();
  ordered_json doc;
  doc["alphabet"] = ordered_json::array();
  for (std::size_t i = 0; i < a.size(); ++i) doc["alphabet"].push_back(a.encode_letter(i));
  doc["rules"] = ordered_json::object();
  for (std::size_t i = 0; i < a.size(); ++i) doc["rules"][a.encode_letter(i)] = a.encode(spec.phi.rule(i));
  doc["seed"] = a.encode_letter(spec.seed);
  if (spec.coding) {
    const auto& b = spec.coding->target();
    doc["coding_alphabet"] = ordered_json::array();
    for (std::size_t i = 0; i < b.size(); ++i) doc["coding_alphabet"].push_back(b.encode_letter(i));
    doc["coding"] = ordered_json::object();
    for (std::size_t i = 0; i < a.size(); ++i) doc["coding"][a.encode_letter(i)] = b.encode(spec.coding->rule(i));
  }
  doc["prefix_budget"] = spec.prefix_budget;
  return doc.dump(2) + "\n";
}

}  // namespace rauzy
