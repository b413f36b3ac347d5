#pragma once

#include <cctype>
#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "refchain/errors.hpp"

namespace refchain {

enum class Tense { Past, Nonpast, Unknown };

enum class Particle { Wa, Ga, Wo, Ni, Niwa, No, Other, None };

enum class MarkerKind { Hum, Ani, Par, Other };

// Coarse lexical class tag on a noun: HUM (human), ANI (animal),
// PAR (body part), or any other token carried through verbatim.
struct SemanticMarker {
  MarkerKind kind = MarkerKind::Other;
  std::string label;

  static SemanticMarker hum() { return {MarkerKind::Hum, "HUM"}; }
  static SemanticMarker ani() { return {MarkerKind::Ani, "ANI"}; }
  static SemanticMarker par() { return {MarkerKind::Par, "PAR"}; }

  // Parses one marker token. Tokens must be word-shaped; anything else
  // (empty, embedded whitespace, punctuation) is rejected.
  static SemanticMarker from_token(const std::string& token) {
    if (!valid_token(token)) {
      throw ParseError("unknown marker token '" + token + "'");
    }
    if (token == "HUM") return hum();
    if (token == "ANI") return ani();
    if (token == "PAR") return par();
    return {MarkerKind::Other, token};
  }

  static bool valid_token(const std::string& token) {
    if (token.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(token.front()))) return false;
    for (char c : token) {
      const auto u = static_cast<unsigned char>(c);
      if (!std::isalnum(u) && c != '_' && c != '-') return false;
    }
    return true;
  }

  bool operator==(const SemanticMarker& other) const { return label == other.label; }
  bool operator<(const SemanticMarker& other) const { return label < other.label; }
};

inline Particle particle_from_token(const std::string& token) {
  if (token == "WA") return Particle::Wa;
  if (token == "GA") return Particle::Ga;
  if (token == "WO") return Particle::Wo;
  if (token == "NI") return Particle::Ni;
  if (token == "NIWA") return Particle::Niwa;
  if (token == "NO") return Particle::No;
  if (token.empty() || token == "none") return Particle::None;
  return Particle::Other;
}

// One noun phrase occurrence. global_index is derived at parse time from
// document order and is never read from the file.
struct Mention {
  std::string id;
  std::size_t global_index = 0;
  std::string head;
  Particle particle = Particle::None;
  std::string particle_token = "none";
  std::set<std::string> modifiers;
  std::set<SemanticMarker> markers;
  bool subject_flag = false;

  bool is_subject() const { return subject_flag || particle == Particle::Ga; }
  bool is_topic() const { return particle == Particle::Wa || particle == Particle::Niwa; }

  bool has_marker(MarkerKind kind) const {
    for (const auto& m : markers) {
      if (m.kind == kind) return true;
    }
    return false;
  }

  bool has_marker(const std::string& label) const {
    for (const auto& m : markers) {
      if (m.label == label) return true;
    }
    return false;
  }

  bool modified_by(const std::string& word) const { return modifiers.count(word) > 0; }

  bool operator==(const Mention&) const = default;
};

struct Sentence {
  std::size_t index = 0;
  Tense tense = Tense::Unknown;
  std::vector<Mention> mentions;

  bool operator==(const Sentence&) const = default;
};

struct Document {
  std::string id;
  std::vector<Sentence> sentences;

  std::size_t mention_count() const {
    std::size_t n = 0;
    for (const auto& s : sentences) n += s.mentions.size();
    return n;
  }

  const Mention* find_mention(const std::string& mention_id) const {
    for (const auto& s : sentences) {
      for (const auto& m : s.mentions) {
        if (m.id == mention_id) return &m;
      }
    }
    return nullptr;
  }

  bool operator==(const Document&) const = default;
};

// Gold standard for one document: entity chains plus the mentions marked
// generic by the annotator.
struct GoldAnnotation {
  std::vector<std::vector<std::string>> chains;
  std::set<std::string> generic_mentions;

  bool operator==(const GoldAnnotation&) const = default;
};

struct Lexicon {
  std::map<std::string, std::set<SemanticMarker>> entries;

  // Absent nouns map to the empty set.
  std::set<SemanticMarker> lookup(const std::string& noun) const {
    auto it = entries.find(noun);
    if (it == entries.end()) return {};
    return it->second;
  }
};

struct CorpusEntry {
  Document document;
  std::optional<GoldAnnotation> gold;

  bool operator==(const CorpusEntry&) const = default;
};

namespace detail {

inline const nlohmann::json& require_key(const nlohmann::json& j, const char* key,
                                         const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ParseError(where + ": missing key '" + key + "'");
  }
  return *it;
}

inline std::string require_string(const nlohmann::json& j, const char* key,
                                  const std::string& where) {
  const auto& v = require_key(j, key, where);
  if (!v.is_string()) {
    throw ParseError(where + ": key '" + key + "' must be a string");
  }
  return v.get<std::string>();
}

inline Tense tense_from_token(const std::string& token, const std::string& where) {
  if (token == "past") return Tense::Past;
  if (token == "nonpast") return Tense::Nonpast;
  if (token == "unknown") return Tense::Unknown;
  throw ParseError(where + ": bad tense '" + token + "'");
}

inline std::string tense_token(Tense t) {
  switch (t) {
    case Tense::Past: return "past";
    case Tense::Nonpast: return "nonpast";
    default: return "unknown";
  }
}

inline Mention parse_mention(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": mention must be an object");
  Mention m;
  m.id = require_string(j, "id", where);
  if (m.id.empty()) throw ParseError(where + ": empty mention id");
  m.head = require_string(j, "head", where);
  if (m.head.empty()) throw ValidationError(where + ": mention '" + m.id + "' has empty head");
  if (auto it = j.find("particle"); it != j.end()) {
    if (!it->is_string()) throw ParseError(where + ": 'particle' must be a string");
    m.particle_token = it->get<std::string>();
    m.particle = particle_from_token(m.particle_token);
    if (m.particle == Particle::None) m.particle_token = "none";
  }
  if (auto it = j.find("modifiers"); it != j.end()) {
    if (!it->is_array()) throw ParseError(where + ": 'modifiers' must be an array");
    for (const auto& mod : *it) {
      if (!mod.is_string()) throw ParseError(where + ": modifier must be a string");
      m.modifiers.insert(mod.get<std::string>());
    }
  }
  if (auto it = j.find("markers"); it != j.end()) {
    if (!it->is_array()) throw ParseError(where + ": 'markers' must be an array");
    for (const auto& mk : *it) {
      if (!mk.is_string()) throw ParseError(where + ": marker must be a string");
      m.markers.insert(SemanticMarker::from_token(mk.get<std::string>()));
    }
  }
  if (auto it = j.find("subject"); it != j.end()) {
    if (!it->is_boolean()) throw ParseError(where + ": 'subject' must be a boolean");
    m.subject_flag = it->get<bool>();
  }
  return m;
}

inline GoldAnnotation parse_gold(const nlohmann::json& j, const Document& doc,
                                 const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": 'gold' must be an object");
  GoldAnnotation gold;
  std::set<std::string> chained;
  if (auto it = j.find("chains"); it != j.end()) {
    if (!it->is_array()) throw ParseError(where + ": 'chains' must be an array");
    for (const auto& chain : *it) {
      if (!chain.is_array()) throw ParseError(where + ": chain must be an array");
      std::vector<std::string> ids;
      for (const auto& id : chain) {
        if (!id.is_string()) throw ParseError(where + ": chain member must be a string");
        const auto s = id.get<std::string>();
        if (doc.find_mention(s) == nullptr) {
          throw ValidationError(where + ": gold chain references unknown mention '" + s + "'");
        }
        if (!chained.insert(s).second) {
          throw ValidationError(where + ": mention '" + s + "' appears in two gold chains");
        }
        ids.push_back(s);
      }
      gold.chains.push_back(std::move(ids));
    }
  }
  if (auto it = j.find("generic"); it != j.end()) {
    if (!it->is_array()) throw ParseError(where + ": 'generic' must be an array");
    for (const auto& id : *it) {
      if (!id.is_string()) throw ParseError(where + ": generic member must be a string");
      const auto s = id.get<std::string>();
      if (doc.find_mention(s) == nullptr) {
        throw ValidationError(where + ": gold generic references unknown mention '" + s + "'");
      }
      gold.generic_mentions.insert(s);
    }
  }
  return gold;
}

}  // namespace detail

// Parses the line-delimited corpus format: one JSON document object per
// line. Mention global indices are assigned by document order; sentence
// indices run contiguously from 0.
inline std::vector<CorpusEntry> parse_corpus(std::istream& in) {
  std::vector<CorpusEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const std::string where = "corpus line " + std::to_string(line_no);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw ParseError(where + ": " + e.what());
    }
    if (!j.is_object()) throw ParseError(where + ": document must be an object");

    CorpusEntry entry;
    entry.document.id = detail::require_string(j, "id", where);
    const auto& sentences = detail::require_key(j, "sentences", where);
    if (!sentences.is_array()) throw ParseError(where + ": 'sentences' must be an array");

    std::size_t global_index = 0;
    std::set<std::string> ids;
    for (const auto& sj : sentences) {
      if (!sj.is_object()) throw ParseError(where + ": sentence must be an object");
      Sentence s;
      s.index = entry.document.sentences.size();
      if (auto it = sj.find("tense"); it != sj.end()) {
        if (!it->is_string()) throw ParseError(where + ": 'tense' must be a string");
        s.tense = detail::tense_from_token(it->get<std::string>(), where);
      }
      if (auto it = sj.find("mentions"); it != sj.end()) {
        if (!it->is_array()) throw ParseError(where + ": 'mentions' must be an array");
        for (const auto& mj : *it) {
          Mention m = detail::parse_mention(mj, where);
          if (!ids.insert(m.id).second) {
            throw ValidationError(where + ": duplicate mention id '" + m.id + "'");
          }
          m.global_index = global_index++;
          s.mentions.push_back(std::move(m));
        }
      }
      entry.document.sentences.push_back(std::move(s));
    }
    if (auto it = j.find("gold"); it != j.end()) {
      entry.gold = detail::parse_gold(*it, entry.document, where);
    }
    entries.push_back(std::move(entry));
  }
  return entries;
}

inline nlohmann::json mention_to_json(const Mention& m) {
  nlohmann::json j;
  j["id"] = m.id;
  j["head"] = m.head;
  if (m.particle != Particle::None) j["particle"] = m.particle_token;
  if (!m.modifiers.empty()) j["modifiers"] = m.modifiers;
  if (!m.markers.empty()) {
    auto arr = nlohmann::json::array();
    for (const auto& mk : m.markers) arr.push_back(mk.label);
    j["markers"] = arr;
  }
  if (m.subject_flag) j["subject"] = true;
  return j;
}

inline nlohmann::json document_to_json(const CorpusEntry& entry) {
  nlohmann::json j;
  j["id"] = entry.document.id;
  auto sentences = nlohmann::json::array();
  for (const auto& s : entry.document.sentences) {
    nlohmann::json sj;
    sj["tense"] = detail::tense_token(s.tense);
    auto mentions = nlohmann::json::array();
    for (const auto& m : s.mentions) mentions.push_back(mention_to_json(m));
    sj["mentions"] = std::move(mentions);
    sentences.push_back(std::move(sj));
  }
  j["sentences"] = std::move(sentences);
  if (entry.gold) {
    nlohmann::json g;
    g["chains"] = entry.gold->chains;
    g["generic"] = entry.gold->generic_mentions;
    j["gold"] = std::move(g);
  }
  return j;
}

inline std::string serialize_corpus(const std::vector<CorpusEntry>& entries) {
  std::ostringstream out;
  for (const auto& e : entries) out << document_to_json(e).dump() << '\n';
  return out.str();
}

// Lexicon format: one entry per line, `noun<TAB>marker[,marker...]`.
// Lines starting with '#' are comments. Repeated nouns merge their sets.
inline Lexicon parse_lexicon(std::istream& in) {
  Lexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::string where = "lexicon line " + std::to_string(line_no);
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError(where + ": expected 'noun<TAB>markers'");
    }
    const std::string noun = line.substr(0, tab);
    if (noun.empty()) throw ParseError(where + ": empty noun");
    std::string rest = line.substr(tab + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
      const auto comma = rest.find(',', pos);
      const std::string token =
          rest.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        lex.entries[noun].insert(SemanticMarker::from_token(token));
      } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  return lex;
}

// Unions each mention's inline markers with the lexicon markers for its
// head. Idempotent.
inline Document attach_markers(const Document& doc, const Lexicon& lex) {
  Document out = doc;
  for (auto& s : out.sentences) {
    for (auto& m : s.mentions) {
      const auto extra = lex.lookup(m.head);
      m.markers.insert(extra.begin(), extra.end());
    }
  }
  return out;
}

}  // namespace refchain
