#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "refchain/corpus.hpp"

namespace refchain {

// Dimensionless rule points. Integral values stay exact in a double.
using Score = double;

enum class RefPropCategory { Generic, Definite, Indefinite };

inline const char* refprop_name(RefPropCategory c) {
  switch (c) {
    case RefPropCategory::Generic: return "generic";
    case RefPropCategory::Definite: return "definite";
    default: return "indefinite";
  }
}

inline std::optional<RefPropCategory> refprop_from_name(const std::string& name) {
  if (name == "generic") return RefPropCategory::Generic;
  if (name == "definite") return RefPropCategory::Definite;
  if (name == "indefinite") return RefPropCategory::Indefinite;
  return std::nullopt;
}

// Per-category points accumulated from clue rules.
struct RefPropScores {
  Score generic = 0;
  Score definite = 0;
  Score indefinite = 0;

  bool operator==(const RefPropScores&) const = default;
};

// Surface-clue test over one mention and its sentence. Unset fields are
// wildcards; set fields must all hold.
struct RuleCondition {
  std::optional<std::string> particle;   // matches Mention::particle_token
  std::optional<Tense> tense;
  std::optional<bool> has_modifier;
  std::optional<std::string> marker;     // marker label, e.g. "HUM"
  std::vector<std::string> modified_by;  // non-empty: at least one must be present

  bool matches(const Mention& m, const Sentence& s) const {
    if (particle && m.particle_token != *particle) return false;
    if (tense && s.tense != *tense) return false;
    if (has_modifier && m.modifiers.empty() == *has_modifier) return false;
    if (marker && !m.has_marker(*marker)) return false;
    if (!modified_by.empty()) {
      bool any = false;
      for (const auto& w : modified_by) {
        if (m.modified_by(w)) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }
};

struct ClueRule {
  std::string id;
  RuleCondition when;
  Score delta_generic = 0;
  Score delta_definite = 0;
  Score delta_indefinite = 0;
};

// Componentwise sum of the deltas of all matching rules, from (0,0,0).
inline RefPropScores estimate(const Mention& m, const Sentence& s,
                              const std::vector<ClueRule>& table) {
  RefPropScores scores;
  for (const auto& rule : table) {
    if (rule.when.matches(m, s)) {
      scores.generic += rule.delta_generic;
      scores.definite += rule.delta_definite;
      scores.indefinite += rule.delta_indefinite;
    }
  }
  return scores;
}

// Argmax with the fixed tie order Definite > Indefinite > Generic.
inline RefPropCategory classify(const RefPropScores& scores) {
  if (scores.definite >= scores.indefinite && scores.definite >= scores.generic) {
    return RefPropCategory::Definite;
  }
  if (scores.indefinite >= scores.generic) {
    return RefPropCategory::Indefinite;
  }
  return RefPropCategory::Generic;
}

// The plausibility P of the definite reading: the definite-category score
// clamped to [0, p_max].
inline Score plausibility(const RefPropScores& scores, Score p_max = 15) {
  return std::clamp(scores.definite, Score{0}, p_max);
}

// The shipped clue table. The topic+nonpast+bare clue is spelled as two
// rows because topichood is exactly particle WA or NIWA.
inline std::vector<ClueRule> default_clue_rules() {
  std::vector<ClueRule> rules;
  {
    ClueRule r;
    r.id = "wa-past-definite";
    r.when.particle = "WA";
    r.when.tense = Tense::Past;
    r.delta_definite = 7;
    rules.push_back(std::move(r));
  }
  {
    ClueRule r;
    r.id = "each-indefinite";
    r.when.modified_by = {"SOREZORE-NO", "ONOONO-NO"};
    r.delta_indefinite = 7;
    rules.push_back(std::move(r));
  }
  {
    ClueRule r;
    r.id = "ga-nonpast-indefinite";
    r.when.particle = "GA";
    r.when.tense = Tense::Nonpast;
    r.delta_indefinite = 3;
    rules.push_back(std::move(r));
  }
  {
    ClueRule r;
    r.id = "topic-nonpast-bare-wa";
    r.when.particle = "WA";
    r.when.tense = Tense::Nonpast;
    r.when.has_modifier = false;
    r.delta_generic = 3;
    rules.push_back(std::move(r));
  }
  {
    ClueRule r;
    r.id = "topic-nonpast-bare-niwa";
    r.when.particle = "NIWA";
    r.when.tense = Tense::Nonpast;
    r.when.has_modifier = false;
    r.delta_generic = 3;
    rules.push_back(std::move(r));
  }
  return rules;
}

}  // namespace refchain
