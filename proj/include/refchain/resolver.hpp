#pragma once

#include <atomic>
#include <cctype>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "refchain/constraints.hpp"
#include "refchain/corpus.hpp"
#include "refchain/discourse.hpp"
#include "refchain/errors.hpp"
#include "refchain/proposal.hpp"
#include "refchain/refprop.hpp"

namespace refchain {

enum class Method { M1 = 1, M2 = 2, M3 = 3, M4 = 4 };

inline std::optional<Method> method_from_number(int n) {
  if (n < 1 || n > 4) return std::nullopt;
  return static_cast<Method>(n);
}

inline int method_number(Method m) { return static_cast<int>(m); }

// Linear point expression over the plausibility P, the candidate salience
// W, and the distance D. Parsed from strings like "P+W-D+4"; plain
// numbers are constant expressions.
struct PointsExpr {
  Score constant = 0;
  int coef_p = 0;
  int coef_w = 0;
  int coef_d = 0;

  static PointsExpr number(Score v) {
    PointsExpr e;
    e.constant = v;
    return e;
  }

  static PointsExpr parse(const std::string& text) {
    PointsExpr e;
    std::size_t i = 0;
    const auto skip_ws = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    bool first = true;
    skip_ws();
    while (i < text.size()) {
      int sign = 1;
      if (text[i] == '+' || text[i] == '-') {
        sign = text[i] == '-' ? -1 : 1;
        ++i;
        skip_ws();
      } else if (!first) {
        throw ParseError("points expression '" + text + "': expected '+' or '-' at position " +
                         std::to_string(i));
      }
      if (i >= text.size()) {
        throw ParseError("points expression '" + text + "': dangling operator");
      }
      const char c = text[i];
      if (c == 'P') {
        e.coef_p += sign;
        ++i;
      } else if (c == 'W') {
        e.coef_w += sign;
        ++i;
      } else if (c == 'D') {
        e.coef_d += sign;
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        e.constant += sign * std::stod(text.substr(start, i - start));
      } else {
        throw ParseError("points expression '" + text + "': bad token at position " +
                         std::to_string(i));
      }
      first = false;
      skip_ws();
    }
    if (first) throw ParseError("points expression is empty");
    return e;
  }

  Score eval(Score p, Score w, Score d) const {
    return constant + coef_p * p + coef_w * w + coef_d * d;
  }

  // W and D only exist relative to an antecedent candidate.
  bool uses_candidate_terms() const { return coef_w != 0 || coef_d != 0; }
};

enum class ProposalTarget { Indefinite, Generic, BestAntecedent, EachAntecedent };

// One proposal rule: when the condition (surface clues plus referential
// property) holds, emit proposals for the target at the given points.
struct HeuristicRule {
  std::string id;
  RuleCondition when;
  std::optional<RefPropCategory> refprop;      // classification must equal
  std::optional<RefPropCategory> refprop_not;  // classification must differ
  ProposalTarget target = ProposalTarget::Indefinite;
  PointsExpr points;

  bool proposes_antecedent() const {
    return target == ProposalTarget::BestAntecedent ||
           target == ProposalTarget::EachAntecedent;
  }

  bool uses_refprop() const { return refprop.has_value() || refprop_not.has_value(); }
};

// The stock rule table.
//   R1  each-modified noun phrases introduce their own referents
//   R2  a definite noun phrase refers to the latest same-head antecedent
//   R3  generic reading
//   R4  indefinite reading
//   R5  non-definite hedge: every surviving antecedent scores P+W-D+4
inline std::vector<HeuristicRule> default_heuristic_rules() {
  std::vector<HeuristicRule> rules;
  {
    HeuristicRule r;
    r.id = "R1";
    r.when.modified_by = {"SOREZORE-NO", "ONOONO-NO"};
    r.target = ProposalTarget::Indefinite;
    r.points = PointsExpr::number(25);
    rules.push_back(std::move(r));
  }
  {
    HeuristicRule r;
    r.id = "R2";
    r.refprop = RefPropCategory::Definite;
    r.target = ProposalTarget::BestAntecedent;
    r.points = PointsExpr::number(30);
    rules.push_back(std::move(r));
  }
  {
    HeuristicRule r;
    r.id = "R3";
    r.refprop = RefPropCategory::Generic;
    r.target = ProposalTarget::Generic;
    r.points = PointsExpr::number(10);
    rules.push_back(std::move(r));
  }
  {
    HeuristicRule r;
    r.id = "R4";
    r.refprop = RefPropCategory::Indefinite;
    r.target = ProposalTarget::Indefinite;
    r.points = PointsExpr::number(10);
    rules.push_back(std::move(r));
  }
  {
    HeuristicRule r;
    r.id = "R5";
    r.refprop_not = RefPropCategory::Definite;
    r.target = ProposalTarget::EachAntecedent;
    r.points = PointsExpr::parse("P+W-D+4");
    rules.push_back(std::move(r));
  }
  return rules;
}

struct ResolverConfig {
  Method method = Method::M1;
  SalienceConfig salience;
  Score p_max = 15;
  Score m3_base = 6;
  std::vector<ClueRule> clue_rules = default_clue_rules();
  std::vector<HeuristicRule> heuristic_rules = default_heuristic_rules();
};

// Prior same-head mentions, filtered by the modifier and possessor
// constraints. Method 4 drops both filters. Ascending document order.
inline std::vector<const Mention*> candidate_antecedents(const Mention& anaphor,
                                                         const DiscourseState& state,
                                                         const ResolverConfig& cfg) {
  std::vector<const Mention*> out;
  for (const Mention* prior : state.seen()) {
    if (prior->global_index >= anaphor.global_index) continue;
    if (!head_match(anaphor, *prior)) continue;
    if (cfg.method != Method::M4) {
      if (!modifier_ok(anaphor, *prior)) continue;
      if (!possessor_ok(anaphor, *prior, state)) continue;
    }
    out.push_back(prior);
  }
  return out;
}

namespace detail {

// Rule table actually in force for a method. M2 drops the per-antecedent
// hedge rules; M3 keeps only refprop-free non-antecedent rules and swaps
// in its own flat-indefinite and distance/salience scoring.
inline std::vector<HeuristicRule> effective_rules(const ResolverConfig& cfg) {
  std::vector<HeuristicRule> out;
  if (cfg.method == Method::M3) {
    for (const auto& r : cfg.heuristic_rules) {
      if (!r.uses_refprop() && !r.proposes_antecedent()) out.push_back(r);
    }
    {
      HeuristicRule r;
      r.id = "m3-indefinite";
      r.target = ProposalTarget::Indefinite;
      r.points = PointsExpr::number(10);
      out.push_back(std::move(r));
    }
    {
      HeuristicRule r;
      r.id = "m3-antecedent";
      r.target = ProposalTarget::EachAntecedent;
      r.points.constant = cfg.m3_base;
      r.points.coef_w = 1;
      r.points.coef_d = -1;
      out.push_back(std::move(r));
    }
    return out;
  }
  for (const auto& r : cfg.heuristic_rules) {
    if (cfg.method == Method::M2 && r.target == ProposalTarget::EachAntecedent) continue;
    out.push_back(r);
  }
  return out;
}

}  // namespace detail

// Runs the rule table for one mention. The possessor of the anaphor must
// already be estimated on the state.
inline std::vector<Proposal> apply_rules(const Mention& anaphor, const Sentence& sentence,
                                         const DiscourseState& state,
                                         const ResolverConfig& cfg) {
  const RefPropScores scores = estimate(anaphor, sentence, cfg.clue_rules);
  const RefPropCategory category = classify(scores);
  const Score p = plausibility(scores, cfg.p_max);
  const auto candidates = candidate_antecedents(anaphor, state, cfg);

  std::vector<Proposal> proposals;
  for (const auto& rule : detail::effective_rules(cfg)) {
    if (!rule.when.matches(anaphor, sentence)) continue;
    if (rule.refprop && category != *rule.refprop) continue;
    if (rule.refprop_not && category == *rule.refprop_not) continue;

    const auto propose_for = [&](const Mention& x) {
      const Score w = salience_weight(x, cfg.salience);
      const Score d = static_cast<Score>(distance(anaphor, x));
      proposals.push_back({Candidate::antecedent(x), rule.points.eval(p, w, d), rule.id});
    };

    switch (rule.target) {
      case ProposalTarget::Indefinite:
        proposals.push_back({Candidate::indefinite(), rule.points.eval(p, 0, 0), rule.id});
        break;
      case ProposalTarget::Generic:
        proposals.push_back({Candidate::generic(), rule.points.eval(p, 0, 0), rule.id});
        break;
      case ProposalTarget::BestAntecedent:
        if (!candidates.empty()) propose_for(*candidates.back());
        break;
      case ProposalTarget::EachAntecedent:
        for (const Mention* x : candidates) propose_for(*x);
        break;
    }
  }
  return proposals;
}

// Groups proposals by candidate, sums points, and picks the maximum
// total. Ties: an antecedent beats Indefinite beats Generic; among
// antecedents the most recent wins. No proposals at all reads as a fresh
// indefinite mention.
inline Decision decide(const std::string& mention_id, std::vector<Proposal> proposals) {
  Decision decision;
  decision.mention_id = mention_id;
  decision.trace = std::move(proposals);
  if (decision.trace.empty()) {
    decision.chosen = Candidate::indefinite();
    decision.total = 0;
    return decision;
  }

  struct Tally {
    Candidate candidate;
    Score total = 0;
  };
  std::vector<Tally> tallies;
  for (const auto& pr : decision.trace) {
    bool found = false;
    for (auto& t : tallies) {
      if (t.candidate == pr.candidate) {
        t.total += pr.points;
        found = true;
        break;
      }
    }
    if (!found) tallies.push_back({pr.candidate, pr.points});
  }

  const auto rank = [](const Candidate& c) {
    switch (c.kind) {
      case Candidate::Kind::Antecedent: return 0;
      case Candidate::Kind::Indefinite: return 1;
      default: return 2;
    }
  };
  const auto better = [&](const Tally& a, const Tally& b) {
    if (a.total != b.total) return a.total > b.total;
    if (rank(a.candidate) != rank(b.candidate)) return rank(a.candidate) < rank(b.candidate);
    if (a.candidate.is_antecedent() && b.candidate.is_antecedent()) {
      return a.candidate.antecedent_global_index > b.candidate.antecedent_global_index;
    }
    return false;
  };

  const Tally* best = &tallies.front();
  for (const auto& t : tallies) {
    if (better(t, *best)) best = &t;
  }
  decision.chosen = best->candidate;
  decision.total = best->total;
  return decision;
}

// One left-to-right pass: estimate the referential property, estimate the
// possessor, run the rules, decide, commit. Deterministic.
inline std::vector<Decision> resolve_document(const Document& doc, const ResolverConfig& cfg) {
  std::vector<Decision> decisions;
  DiscourseState state(doc, cfg.salience);
  for (const auto& sentence : doc.sentences) {
    for (const auto& mention : sentence.mentions) {
      state.estimate_possessor(mention);
      auto proposals = apply_rules(mention, sentence, state, cfg);
      Decision d = decide(mention.id, std::move(proposals));
      state.commit(mention, d);
      decisions.push_back(std::move(d));
    }
  }
  return decisions;
}

// Attaches lexicon markers and resolves every document. Documents are
// independent, so jobs > 1 fans them out across threads; output order is
// input order either way.
inline std::vector<std::vector<Decision>> resolve_corpus(const std::vector<CorpusEntry>& entries,
                                                         const Lexicon& lexicon,
                                                         const ResolverConfig& cfg,
                                                         std::size_t jobs = 1) {
  std::vector<Document> marked;
  marked.reserve(entries.size());
  for (const auto& e : entries) marked.push_back(attach_markers(e.document, lexicon));

  std::vector<std::vector<Decision>> results(marked.size());
  if (jobs <= 1 || marked.size() <= 1) {
    for (std::size_t i = 0; i < marked.size(); ++i) {
      results[i] = resolve_document(marked[i], cfg);
    }
    return results;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const std::size_t workers = std::min(jobs, marked.size());
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (;;) {
          const std::size_t i = next.fetch_add(1);
          if (i >= marked.size()) return;
          results[i] = resolve_document(marked[i], cfg);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return results;
}

}  // namespace refchain
