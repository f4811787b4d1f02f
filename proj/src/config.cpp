#include "i3kit/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace i3kit {

namespace {

using nlohmann::json;

Rational rational_from_json(const json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  // dump() emits the shortest round-trip decimal, which we parse exactly
  if (j.is_number_float()) return Rational::from_decimal_string(j.dump());
  if (j.is_string()) return Rational::from_decimal_string(j.get<std::string>());
  throw Error("config: field '" + field + "' must be a number or decimal string");
}

void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!known.count(key)) throw Error("config: unknown key '" + key + "' in " + where);
  }
}

}  // namespace

std::string to_string(TiePolicy policy) {
  return policy == TiePolicy::highest ? "highest" : "strict_lower";
}

TiePolicy tie_policy_from_string(const std::string& name) {
  if (name == "highest") return TiePolicy::highest;
  if (name == "strict_lower") return TiePolicy::strict_lower;
  throw Error("config: unknown tie_policy '" + name + "'");
}

RankClassScheme RankClassScheme::nsf_six_classes() {
  RankClassScheme scheme;
  scheme.classes = {{Rational(99), 6}, {Rational(95), 5}, {Rational(90), 4},
                    {Rational(75), 3}, {Rational(50), 2}};
  scheme.catch_all_weight = 1;
  return scheme;
}

long long RankClassScheme::max_weight() const {
  long long best = catch_all_weight;
  for (const auto& c : classes)
    if (c.weight > best) best = c.weight;
  return best;
}

void RankClassScheme::validate() const {
  if (catch_all_weight < 1) throw Error("scheme: catch-all weight must be >= 1");
  const Rational zero(0), hundred(100);
  for (size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    if (c.threshold <= zero || c.threshold >= hundred)
      throw Error("scheme: thresholds must lie strictly inside (0,100)");
    if (c.weight < 1) throw Error("scheme: class weights must be positive");
    if (i > 0) {
      if (!(c.threshold < classes[i - 1].threshold))
        throw Error("scheme: thresholds must be strictly descending");
      if (!(c.weight < classes[i - 1].weight))
        throw Error("scheme: weights must be strictly descending");
    }
  }
  if (!classes.empty() && catch_all_weight >= classes.back().weight)
    throw Error("scheme: catch-all weight must be the minimum");
}

void GroupingConfig::validate() const {
  for (const auto& [name, members] : aggregates) {
    if (name.empty()) throw Error("config: aggregate with empty name");
    if (members.empty()) throw Error("config: aggregate '" + name + "' has no members");
  }
  if (adjustment < Rational(0) || adjustment >= Rational(1))
    throw Error("config: adjustment must lie in [0,1)");
  auto [a1, a2] = alpha_levels;
  if (!(a1 > 0.0 && a1 < 1.0 && a2 > 0.0 && a2 < 1.0))
    throw Error("config: alpha levels must lie strictly between 0 and 1");
  if (!(a1 > a2)) throw Error("config: alpha levels must be ordered (looser first)");
  if (min_share_percent < Rational(0)) throw Error("config: min_share_percent must be >= 0");
  scheme.validate();
}

GroupingConfig load_grouping_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error("config: top-level value must be an object");
  reject_unknown_keys(doc,
                      {"aggregates", "tie_policy", "adjustment", "scheme", "alpha_levels",
                       "min_share_percent"},
                      "config");

  GroupingConfig config;
  if (doc.contains("aggregates")) {
    const json& aggs = doc["aggregates"];
    if (!aggs.is_object()) throw Error("config: 'aggregates' must be an object");
    for (const auto& [name, members] : aggs.items()) {
      if (!members.is_array()) throw Error("config: aggregate '" + name + "' must be an array");
      std::vector<std::string> tokens;
      for (const auto& m : members) {
        if (!m.is_string()) throw Error("config: aggregate '" + name + "' members must be strings");
        tokens.push_back(m.get<std::string>());
      }
      config.aggregates[name] = std::move(tokens);
    }
  }
  if (doc.contains("tie_policy")) {
    if (!doc["tie_policy"].is_string()) throw Error("config: 'tie_policy' must be a string");
    config.tie_policy = tie_policy_from_string(doc["tie_policy"].get<std::string>());
  }
  if (doc.contains("adjustment"))
    config.adjustment = rational_from_json(doc["adjustment"], "adjustment");
  if (doc.contains("scheme")) {
    const json& s = doc["scheme"];
    if (!s.is_object()) throw Error("config: 'scheme' must be an object");
    reject_unknown_keys(s, {"classes", "catch_all_weight"}, "scheme");
    RankClassScheme scheme;
    if (!s.contains("classes") || !s["classes"].is_array())
      throw Error("config: scheme requires a 'classes' array");
    for (const auto& entry : s["classes"]) {
      if (!entry.is_array() || entry.size() != 2)
        throw Error("config: scheme classes must be [threshold, weight] pairs");
      RankClassScheme::ClassBound bound;
      bound.threshold = rational_from_json(entry[0], "scheme threshold");
      if (!entry[1].is_number_integer())
        throw Error("config: scheme weights must be integers");
      bound.weight = entry[1].get<long long>();
      scheme.classes.push_back(std::move(bound));
    }
    if (s.contains("catch_all_weight")) {
      if (!s["catch_all_weight"].is_number_integer())
        throw Error("config: 'catch_all_weight' must be an integer");
      scheme.catch_all_weight = s["catch_all_weight"].get<long long>();
    }
    config.scheme = std::move(scheme);
  }
  if (doc.contains("alpha_levels")) {
    const json& a = doc["alpha_levels"];
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw Error("config: 'alpha_levels' must be [alpha_5pct, alpha_1pct]");
    config.alpha_levels = {a[0].get<double>(), a[1].get<double>()};
  }
  if (doc.contains("min_share_percent"))
    config.min_share_percent = rational_from_json(doc["min_share_percent"], "min_share_percent");

  config.validate();
  return config;
}

GroupingConfig load_grouping_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_grouping_config(buf.str());
}

}  // namespace i3kit
