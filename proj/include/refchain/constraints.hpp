#pragma once

#include <algorithm>

#include "refchain/corpus.hpp"
#include "refchain/discourse.hpp"
#include "refchain/text.hpp"

namespace refchain {

// Same head noun under NFKC normalization. No stemming.
inline bool head_match(const Mention& anaphor, const Mention& candidate) {
  return nfkc(anaphor.head) == nfkc(candidate.head);
}

// Every modifier on the anaphor must also be on the candidate; a bare
// anaphor may refer to a candidate with any modifiers, but a modified
// anaphor never invents information the candidate lacks.
inline bool modifier_ok(const Mention& anaphor, const Mention& candidate) {
  return std::includes(candidate.modifiers.begin(), candidate.modifiers.end(),
                       anaphor.modifiers.begin(), anaphor.modifiers.end());
}

// An anaphor with an estimated possessor can only refer to a candidate
// whose possessor is the same discourse entity: same chain when both
// possessors are chained, equal head strings otherwise. An anaphor with
// no possessor is unconstrained.
inline bool possessor_ok(const Mention& anaphor, const Mention& candidate,
                         const DiscourseState& state) {
  const auto pa = state.possessor_id(anaphor.id);
  if (!pa) return true;
  const auto pc = state.possessor_id(candidate.id);
  if (!pc) return false;
  if (state.chains().contains(*pa) && state.chains().contains(*pc)) {
    return state.chains().same_set(*pa, *pc);
  }
  const Mention* ma = state.find(*pa);
  const Mention* mc = state.find(*pc);
  if (ma == nullptr || mc == nullptr) return false;
  return nfkc(ma->head) == nfkc(mc->head);
}

}  // namespace refchain
