#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "refchain/corpus.hpp"
#include "refchain/refprop.hpp"

namespace refchain {

// What a heuristic rule proposes as the referent: an antecedent mention,
// or the Indefinite / Generic labels (no prior referent).
struct Candidate {
  enum class Kind { Antecedent, Indefinite, Generic };

  Kind kind = Kind::Indefinite;
  std::string antecedent_id;                 // set for Kind::Antecedent
  std::size_t antecedent_global_index = 0;   // set for Kind::Antecedent

  static Candidate indefinite() { return {}; }
  static Candidate generic() { return {Kind::Generic, "", 0}; }
  static Candidate antecedent(const Mention& m) {
    return {Kind::Antecedent, m.id, m.global_index};
  }

  bool is_antecedent() const { return kind == Kind::Antecedent; }

  bool operator==(const Candidate&) const = default;
};

struct Proposal {
  Candidate candidate;
  Score points = 0;
  std::string rule_id;

  bool operator==(const Proposal&) const = default;
};

// Outcome for one mention: the winning candidate, its summed points, and
// every proposal that was on the table.
struct Decision {
  std::string mention_id;
  Candidate chosen;
  Score total = 0;
  std::vector<Proposal> trace;

  bool operator==(const Decision&) const = default;
};

}  // namespace refchain
