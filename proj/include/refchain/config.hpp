#pragma once

#include <filesystem>
#include <fstream>
#include <istream>
#include <string>
#include <vector>

#include <json.hpp>

#include "refchain/errors.hpp"
#include "refchain/refprop.hpp"
#include "refchain/resolver.hpp"

namespace refchain {

namespace detail {

inline RuleCondition condition_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": 'when' must be an object");
  RuleCondition cond;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "particle") {
      if (!it->is_string()) throw ParseError(where + ": 'particle' must be a string");
      cond.particle = it->get<std::string>();
    } else if (key == "tense") {
      if (!it->is_string()) throw ParseError(where + ": 'tense' must be a string");
      cond.tense = tense_from_token(it->get<std::string>(), where);
    } else if (key == "has_modifier") {
      if (!it->is_boolean()) throw ParseError(where + ": 'has_modifier' must be a boolean");
      cond.has_modifier = it->get<bool>();
    } else if (key == "marker") {
      if (!it->is_string()) throw ParseError(where + ": 'marker' must be a string");
      cond.marker = it->get<std::string>();
    } else if (key == "modified_by") {
      if (!it->is_array()) throw ParseError(where + ": 'modified_by' must be an array");
      for (const auto& w : *it) {
        if (!w.is_string()) throw ParseError(where + ": 'modified_by' entries must be strings");
        cond.modified_by.push_back(w.get<std::string>());
      }
    } else if (key == "refprop" || key == "refprop_not") {
      // handled by the heuristic-rule parser
    } else {
      throw ParseError(where + ": unknown condition key '" + key + "'");
    }
  }
  return cond;
}

inline PointsExpr points_from_json(const nlohmann::json& j, const std::string& where) {
  if (j.is_number()) return PointsExpr::number(j.get<Score>());
  if (j.is_string()) {
    try {
      return PointsExpr::parse(j.get<std::string>());
    } catch (const ParseError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  throw ParseError(where + ": 'points' must be a number or a formula string");
}

}  // namespace detail

// Clue-rule file: one JSON rule per line,
//   {"id":"...","when":{...},"delta":[generic,definite,indefinite]}
inline std::vector<ClueRule> parse_clue_rules(std::istream& in) {
  std::vector<ClueRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "clue rules line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(where + ": rule must be an object");
    ClueRule rule;
    rule.id = detail::require_string(j, "id", where);
    if (auto it = j.find("when"); it != j.end()) {
      rule.when = detail::condition_from_json(*it, where);
      if (it->contains("refprop") || it->contains("refprop_not")) {
        throw ParseError(where + ": clue rules cannot test the referential property");
      }
    }
    const auto& delta = detail::require_key(j, "delta", where);
    if (!delta.is_array() || delta.size() != 3 || !delta[0].is_number() ||
        !delta[1].is_number() || !delta[2].is_number()) {
      throw ParseError(where + ": 'delta' must be [generic, definite, indefinite]");
    }
    rule.delta_generic = delta[0].get<Score>();
    rule.delta_definite = delta[1].get<Score>();
    rule.delta_indefinite = delta[2].get<Score>();
    rules.push_back(std::move(rule));
  }
  return rules;
}

// Heuristic-rule file: one JSON rule per line,
//   {"id":"R5","when":{"refprop_not":"definite"},
//    "propose":{"candidate":"each_antecedent","points":"P+W-D+4"}}
// Candidates: indefinite | generic | best_antecedent | each_antecedent.
inline std::vector<HeuristicRule> parse_heuristic_rules(std::istream& in) {
  std::vector<HeuristicRule> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "heuristic rules line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(where + ": rule must be an object");
    HeuristicRule rule;
    rule.id = detail::require_string(j, "id", where);
    if (auto it = j.find("when"); it != j.end()) {
      rule.when = detail::condition_from_json(*it, where);
      if (auto rp = it->find("refprop"); rp != it->end()) {
        if (!rp->is_string()) throw ParseError(where + ": 'refprop' must be a string");
        rule.refprop = refprop_from_name(rp->get<std::string>());
        if (!rule.refprop) throw ParseError(where + ": bad refprop '" + rp->get<std::string>() + "'");
      }
      if (auto rp = it->find("refprop_not"); rp != it->end()) {
        if (!rp->is_string()) throw ParseError(where + ": 'refprop_not' must be a string");
        rule.refprop_not = refprop_from_name(rp->get<std::string>());
        if (!rule.refprop_not) {
          throw ParseError(where + ": bad refprop_not '" + rp->get<std::string>() + "'");
        }
      }
    }
    const auto& propose = detail::require_key(j, "propose", where);
    if (!propose.is_object()) throw ParseError(where + ": 'propose' must be an object");
    const std::string candidate = detail::require_string(propose, "candidate", where);
    if (candidate == "indefinite") {
      rule.target = ProposalTarget::Indefinite;
    } else if (candidate == "generic") {
      rule.target = ProposalTarget::Generic;
    } else if (candidate == "best_antecedent") {
      rule.target = ProposalTarget::BestAntecedent;
    } else if (candidate == "each_antecedent") {
      rule.target = ProposalTarget::EachAntecedent;
    } else {
      throw ParseError(where + ": unknown candidate '" + candidate + "'");
    }
    rule.points = detail::points_from_json(detail::require_key(propose, "points", where), where);
    if (rule.points.uses_candidate_terms() && !rule.proposes_antecedent()) {
      throw ParseError(where + ": W and D are only defined for antecedent proposals");
    }
    rules.push_back(std::move(rule));
  }
  return rules;
}

inline Method parse_method(const nlohmann::json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (auto m = method_from_number(j.get<int>())) return *m;
    throw ParseError(where + ": method must be 1..4");
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s.size() == 2 && (s[0] == 'M' || s[0] == 'm') && s[1] >= '1' && s[1] <= '4') {
      return *method_from_number(s[1] - '0');
    }
    throw ParseError(where + ": method must be M1..M4");
  }
  throw ParseError(where + ": method must be an integer or 'M1'..'M4'");
}

// Resolver config file: a single JSON object with keys `method`,
// `salience`, `p_max`, `m3_base`, `clue_rules` (path), `heuristic_rules`
// (path). Rule-table paths are resolved relative to the config file.
inline ResolverConfig load_resolver_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config '" + path.string() + "': " + e.what());
  }
  if (!j.is_object()) throw ParseError("config '" + path.string() + "': must be an object");
  const std::string where = "config '" + path.string() + "'";

  ResolverConfig cfg;
  if (auto it = j.find("method"); it != j.end()) cfg.method = parse_method(*it, where);
  if (auto it = j.find("p_max"); it != j.end()) {
    if (!it->is_number()) throw ParseError(where + ": 'p_max' must be a number");
    cfg.p_max = it->get<Score>();
  }
  if (auto it = j.find("m3_base"); it != j.end()) {
    if (!it->is_number()) throw ParseError(where + ": 'm3_base' must be a number");
    cfg.m3_base = it->get<Score>();
  }
  if (auto it = j.find("salience"); it != j.end()) {
    if (!it->is_object()) throw ParseError(where + ": 'salience' must be an object");
    cfg.salience.by_particle.clear();
    for (auto s = it->begin(); s != it->end(); ++s) {
      if (!s->is_number()) throw ParseError(where + ": salience weights must be numbers");
      if (s.key() == "other") {
        cfg.salience.fallback = s->get<Score>();
      } else {
        cfg.salience.by_particle[s.key()] = s->get<Score>();
      }
    }
  }
  const auto base = path.parent_path();
  if (auto it = j.find("clue_rules"); it != j.end()) {
    if (!it->is_string()) throw ParseError(where + ": 'clue_rules' must be a path");
    const auto rel = std::filesystem::path(it->get<std::string>());
    const auto p = rel.is_absolute() ? rel : base / rel;
    std::ifstream rin(p);
    if (!rin) throw ParseError(where + ": cannot open clue rules '" + p.string() + "'");
    cfg.clue_rules = parse_clue_rules(rin);
  }
  if (auto it = j.find("heuristic_rules"); it != j.end()) {
    if (!it->is_string()) throw ParseError(where + ": 'heuristic_rules' must be a path");
    const auto rel = std::filesystem::path(it->get<std::string>());
    const auto p = rel.is_absolute() ? rel : base / rel;
    std::ifstream rin(p);
    if (!rin) throw ParseError(where + ": cannot open heuristic rules '" + p.string() + "'");
    cfg.heuristic_rules = parse_heuristic_rules(rin);
  }
  return cfg;
}

}  // namespace refchain
