#pragma once

#include <cmath>
#include <cstddef>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "refchain/corpus.hpp"
#include "refchain/errors.hpp"
#include "refchain/proposal.hpp"
#include "refchain/resolver.hpp"

namespace refchain {

// Antecedent-determination counts. Precision and recall share the
// `correct` numerator; empty denominators read as undefined, never 0.
struct EvalReport {
  std::size_t judged = 0;           // mentions the system linked to an antecedent
  std::size_t with_antecedent = 0;  // mentions gold says have an antecedent
  std::size_t correct = 0;          // links landing in the anaphor's gold chain

  std::optional<double> precision() const {
    if (judged == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(judged);
  }

  std::optional<double> recall() const {
    if (with_antecedent == 0) return std::nullopt;
    return static_cast<double>(correct) / static_cast<double>(with_antecedent);
  }

  EvalReport& operator+=(const EvalReport& other) {
    judged += other.judged;
    with_antecedent += other.with_antecedent;
    correct += other.correct;
    return *this;
  }

  bool operator==(const EvalReport&) const = default;
};

// Scores one document's decisions against its gold annotation. A link is
// correct iff the anaphor and its chosen antecedent share a gold chain.
// Gold-generic mentions are excluded from the recall denominator.
inline EvalReport score(const std::vector<Decision>& decisions, const GoldAnnotation& gold) {
  std::map<std::string, std::size_t> order;
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    if (!order.emplace(decisions[i].mention_id, i).second) {
      throw ValidationError("score: duplicate decision for mention '" +
                            decisions[i].mention_id + "'");
    }
  }

  std::map<std::string, std::size_t> chain_of;
  EvalReport report;
  for (std::size_t c = 0; c < gold.chains.size(); ++c) {
    std::size_t first_pos = decisions.size();
    for (const auto& id : gold.chains[c]) {
      auto it = order.find(id);
      if (it == order.end()) {
        throw ValidationError("score: gold chain references unknown mention '" + id + "'");
      }
      chain_of[id] = c;
      if (it->second < first_pos) first_pos = it->second;
    }
    for (const auto& id : gold.chains[c]) {
      if (order.at(id) == first_pos) continue;  // first mention introduces the entity
      if (gold.generic_mentions.count(id)) continue;
      ++report.with_antecedent;
    }
  }

  for (const auto& d : decisions) {
    if (!d.chosen.is_antecedent()) continue;
    ++report.judged;
    auto a = chain_of.find(d.mention_id);
    auto b = chain_of.find(d.chosen.antecedent_id);
    if (a != chain_of.end() && b != chain_of.end() && a->second == b->second) {
      ++report.correct;
    }
  }
  return report;
}

// Sums per-document reports for a whole corpus under one config. Every
// entry must carry gold.
inline EvalReport evaluate_corpus(const std::vector<CorpusEntry>& entries, const Lexicon& lexicon,
                                  const ResolverConfig& cfg, std::size_t jobs = 1) {
  for (const auto& e : entries) {
    if (!e.gold) {
      throw ValidationError("document '" + e.document.id + "' has no gold annotation");
    }
  }
  const auto runs = resolve_corpus(entries, lexicon, cfg, jobs);
  EvalReport total;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    total += score(runs[i], *entries[i].gold);
  }
  return total;
}

// Runs methods 1..4 with otherwise identical config.
inline std::map<Method, EvalReport> ablation(const std::vector<CorpusEntry>& entries,
                                             const Lexicon& lexicon, const ResolverConfig& base,
                                             std::size_t jobs = 1) {
  std::map<Method, EvalReport> out;
  for (int n = 1; n <= 4; ++n) {
    ResolverConfig cfg = base;
    cfg.method = *method_from_number(n);
    out[cfg.method] = evaluate_corpus(entries, lexicon, cfg, jobs);
  }
  return out;
}

// "82% (130/159)" with the percentage rounded to the nearest integer;
// "n/a (c/0)" when the denominator is empty.
inline std::string format_ratio(std::size_t numerator, std::size_t denominator) {
  std::ostringstream out;
  if (denominator == 0) {
    out << "n/a";
  } else {
    const auto pct =
        std::llround(100.0 * static_cast<double>(numerator) / static_cast<double>(denominator));
    out << pct << '%';
  }
  out << " (" << numerator << '/' << denominator << ')';
  return out.str();
}

inline std::string format_report_text(const EvalReport& r) {
  std::ostringstream out;
  out << "Precision " << format_ratio(r.correct, r.judged) << '\n';
  out << "Recall    " << format_ratio(r.correct, r.with_antecedent) << '\n';
  return out.str();
}

inline std::string method_label(Method m) {
  return "Method " + std::to_string(method_number(m));
}

// Four-method comparison table, methods as columns, precision and recall
// as rows.
inline std::string format_ablation_table(const std::map<Method, EvalReport>& reports) {
  const std::string row_names[2] = {"Precision", "Recall"};
  std::vector<std::vector<std::string>> cells(2);
  std::vector<std::string> headers;
  for (const auto& [method, r] : reports) {
    headers.push_back(method_label(method));
    cells[0].push_back(format_ratio(r.correct, r.judged));
    cells[1].push_back(format_ratio(r.correct, r.with_antecedent));
  }
  std::vector<std::size_t> widths(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    widths[c] = headers[c].size();
    widths[c] = std::max(widths[c], cells[0][c].size());
    widths[c] = std::max(widths[c], cells[1][c].size());
  }
  const std::size_t label_width = 9;  // len("Precision")
  std::ostringstream out;
  const auto emit_row = [&](const std::string& label, const std::vector<std::string>* row) {
    std::ostringstream line;
    line << std::left << std::setw(static_cast<int>(label_width)) << label;
    for (std::size_t c = 0; c < headers.size(); ++c) {
      line << "  " << std::setw(static_cast<int>(widths[c]))
           << (row == nullptr ? headers[c] : (*row)[c]);
    }
    std::string text = line.str();
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  };
  emit_row("", nullptr);
  for (int row = 0; row < 2; ++row) emit_row(row_names[row], &cells[row]);
  return out.str();
}

inline nlohmann::json report_json(const EvalReport& r) {
  nlohmann::json j;
  j["judged"] = r.judged;
  j["with_antecedent"] = r.with_antecedent;
  j["correct"] = r.correct;
  j["precision"] = r.precision() ? nlohmann::json(*r.precision()) : nlohmann::json(nullptr);
  j["recall"] = r.recall() ? nlohmann::json(*r.recall()) : nlohmann::json(nullptr);
  j["precision_text"] = format_ratio(r.correct, r.judged);
  j["recall_text"] = format_ratio(r.correct, r.with_antecedent);
  return j;
}

inline nlohmann::json ablation_json(const std::map<Method, EvalReport>& reports) {
  nlohmann::json j;
  for (const auto& [method, r] : reports) {
    j["method" + std::to_string(method_number(method))] = report_json(r);
  }
  return j;
}

}  // namespace refchain
