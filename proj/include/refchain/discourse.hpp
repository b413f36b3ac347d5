#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "refchain/corpus.hpp"
#include "refchain/errors.hpp"
#include "refchain/proposal.hpp"
#include "refchain/refprop.hpp"

namespace refchain {

// Disjoint sets over mention ids. Only ids that took part in a link are
// members; everything else is untracked.
class UnionFind {
public:
  void unite(const std::string& a, const std::string& b) {
    ensure(a);
    ensure(b);
    std::string ra = find(a);
    std::string rb = find(b);
    if (ra == rb) return;
    if (size_[ra] < size_[rb]) std::swap(ra, rb);
    parent_[rb] = ra;
    size_[ra] += size_[rb];
  }

  bool contains(const std::string& id) const { return parent_.count(id) > 0; }

  // Root representative; ids never united map to themselves.
  std::string root(const std::string& id) const {
    auto it = parent_.find(id);
    if (it == parent_.end()) return id;
    while (it->second != it->first) it = parent_.find(it->second);
    return it->first;
  }

  bool same_set(const std::string& a, const std::string& b) const {
    return root(a) == root(b);
  }

  std::map<std::string, std::set<std::string>> partition() const {
    std::map<std::string, std::set<std::string>> out;
    for (const auto& [id, _] : parent_) out[root(id)].insert(id);
    return out;
  }

private:
  void ensure(const std::string& id) {
    if (!parent_.count(id)) {
      parent_.emplace(id, id);
      size_.emplace(id, 1);
    }
  }

  std::string find(const std::string& id) {
    std::string r = root(id);
    // path compression
    std::string cur = id;
    while (parent_[cur] != r) {
      std::string next = parent_[cur];
      parent_[cur] = r;
      cur = next;
    }
    return r;
  }

  std::map<std::string, std::string> parent_;
  std::map<std::string, std::size_t> size_;
};

// Salience weight per particle; particles without an entry fall back to
// the "other" bucket.
struct SalienceConfig {
  std::map<std::string, Score> by_particle = {{"WA", 3}, {"NIWA", 3}, {"GA", 2}};
  Score fallback = 1;

  Score weight(const Mention& m) const {
    auto it = by_particle.find(m.particle_token);
    if (it != by_particle.end()) return it->second;
    return fallback;
  }
};

inline Score salience_weight(const Mention& candidate, const SalienceConfig& cfg) {
  return cfg.weight(candidate);
}

// Number of noun phrases strictly between candidate and anaphor, in
// document order.
inline std::size_t distance(const Mention& anaphor, const Mention& candidate) {
  if (candidate.global_index >= anaphor.global_index) {
    throw ValidationError("distance: candidate '" + candidate.id +
                          "' does not precede anaphor '" + anaphor.id + "'");
  }
  return anaphor.global_index - candidate.global_index - 1;
}

// Left-to-right discourse record for one document: mentions seen so far,
// committed coreference chains, and possessor assignments.
class DiscourseState {
public:
  explicit DiscourseState(const Document& doc, SalienceConfig salience = {})
      : doc_(&doc), salience_(std::move(salience)) {
    for (std::size_t si = 0; si < doc.sentences.size(); ++si) {
      for (const auto& m : doc.sentences[si].mentions) {
        registry_.emplace(m.id, std::make_pair(&m, si));
      }
    }
  }

  // Possessor of a PAR-marked mention: the subject of its own sentence if
  // that subject carries HUM or ANI, else the nearest preceding topic
  // carrying HUM or ANI. The result is recorded for later constraint
  // checks. Non-PAR mentions have no possessor.
  std::optional<std::string> estimate_possessor(const Mention& m) {
    if (!m.has_marker(MarkerKind::Par)) return std::nullopt;
    const auto it = registry_.find(m.id);
    if (it == registry_.end()) {
      throw StateError("estimate_possessor: unknown mention '" + m.id + "'");
    }
    const Sentence& sentence = doc_->sentences[it->second.second];

    // The sentence's subject is its first subject-marked mention other
    // than m itself.
    const Mention* subject = nullptr;
    for (const auto& x : sentence.mentions) {
      if (x.id != m.id && x.is_subject()) {
        subject = &x;
        break;
      }
    }
    if (subject != nullptr && animate(*subject)) {
      possessor_of_[m.id] = subject->id;
      return subject->id;
    }
    for (auto rit = seen_.rbegin(); rit != seen_.rend(); ++rit) {
      const Mention& x = **rit;
      if (x.is_topic() && animate(x)) {
        possessor_of_[m.id] = x.id;
        return x.id;
      }
    }
    return std::nullopt;
  }

  // Applies a resolver decision: antecedent links join the chains, the
  // anaphor becomes visible to later mentions.
  void commit(const Mention& anaphor, const Decision& decision) {
    if (committed_.count(anaphor.id)) {
      throw StateError("commit: mention '" + anaphor.id + "' committed twice");
    }
    const auto it = registry_.find(anaphor.id);
    if (it == registry_.end()) {
      throw StateError("commit: unknown mention '" + anaphor.id + "'");
    }
    if (decision.chosen.is_antecedent()) {
      chains_.unite(anaphor.id, decision.chosen.antecedent_id);
    }
    committed_.insert(anaphor.id);
    seen_.push_back(it->second.first);
  }

  const std::vector<const Mention*>& seen() const { return seen_; }
  const UnionFind& chains() const { return chains_; }
  const SalienceConfig& salience() const { return salience_; }

  std::optional<std::string> possessor_id(const std::string& mention_id) const {
    auto it = possessor_of_.find(mention_id);
    if (it == possessor_of_.end()) return std::nullopt;
    return it->second;
  }

  const Mention* find(const std::string& mention_id) const {
    auto it = registry_.find(mention_id);
    if (it == registry_.end()) return nullptr;
    return it->second.first;
  }

private:
  static bool animate(const Mention& m) {
    return m.has_marker(MarkerKind::Hum) || m.has_marker(MarkerKind::Ani);
  }

  const Document* doc_;
  SalienceConfig salience_;
  std::vector<const Mention*> seen_;
  std::set<std::string> committed_;
  UnionFind chains_;
  std::map<std::string, std::string> possessor_of_;
  std::map<std::string, std::pair<const Mention*, std::size_t>> registry_;
};

}  // namespace refchain
