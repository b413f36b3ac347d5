#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "refchain/refchain.hpp"

namespace testutil {

inline std::string data_path(const std::string& rel) {
  return std::string(REFCHAIN_DATA_DIR) + "/" + rel;
}

inline std::vector<refchain::CorpusEntry> load_corpus(const std::string& rel) {
  std::ifstream in(data_path(rel));
  REQUIRE(in.good());
  return refchain::parse_corpus(in);
}

inline refchain::Lexicon load_lexicon(const std::string& rel) {
  std::ifstream in(data_path(rel));
  REQUIRE(in.good());
  return refchain::parse_lexicon(in);
}

struct MentionSpec {
  std::string id;
  std::string head;
  std::string particle = "none";
  std::vector<std::string> modifiers = {};
  std::vector<std::string> markers = {};
  bool subject = false;
};

inline refchain::Mention make_mention(const MentionSpec& spec, std::size_t global_index = 0) {
  refchain::Mention m;
  m.id = spec.id;
  m.head = spec.head;
  m.global_index = global_index;
  m.particle_token = spec.particle;
  m.particle = refchain::particle_from_token(spec.particle);
  if (m.particle == refchain::Particle::None) m.particle_token = "none";
  for (const auto& mod : spec.modifiers) m.modifiers.insert(mod);
  for (const auto& mk : spec.markers) {
    m.markers.insert(refchain::SemanticMarker::from_token(mk));
  }
  m.subject_flag = spec.subject;
  return m;
}

inline refchain::Document make_document(
    const std::string& id,
    const std::vector<std::pair<refchain::Tense, std::vector<MentionSpec>>>& sentences) {
  refchain::Document doc;
  doc.id = id;
  std::size_t gi = 0;
  for (const auto& [tense, specs] : sentences) {
    refchain::Sentence s;
    s.index = doc.sentences.size();
    s.tense = tense;
    for (const auto& spec : specs) s.mentions.push_back(make_mention(spec, gi++));
    doc.sentences.push_back(std::move(s));
  }
  return doc;
}

// Collects (anaphor id -> antecedent id) links from a decision list.
inline std::vector<std::pair<std::string, std::string>> links_of(
    const std::vector<refchain::Decision>& decisions) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& d : decisions) {
    if (d.chosen.is_antecedent()) out.emplace_back(d.mention_id, d.chosen.antecedent_id);
  }
  return out;
}

inline const refchain::Decision& decision_for(const std::vector<refchain::Decision>& decisions,
                                              const std::string& mention_id) {
  for (const auto& d : decisions) {
    if (d.mention_id == mention_id) return d;
  }
  REQUIRE_MESSAGE(false, ("no decision for mention " + mention_id).c_str());
  static refchain::Decision dummy;
  return dummy;
}

}  // namespace testutil
