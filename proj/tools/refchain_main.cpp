// Command-line front end: resolves noun-phrase coreference over annotated
// corpora and scores the result against gold chains.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "refchain/refchain.hpp"

namespace {

constexpr int kExitMissingFile = 2;
constexpr int kExitParseError = 3;
constexpr int kExitNoGold = 4;

struct Options {
  std::string corpus;
  std::string lexicon;
  std::string config;
  int method = 0;  // 0 = take the config value
  std::string out;
  std::size_t jobs = 1;
  bool ablation = false;
  bool json_report = false;
};

struct Inputs {
  std::vector<refchain::CorpusEntry> entries;
  refchain::Lexicon lexicon;
  refchain::ResolverConfig config;
};

int fail_missing(const std::string& path) {
  std::cerr << "refchain: cannot open '" << path << "'\n";
  return kExitMissingFile;
}

// Flags beat the config file, the config file beats built-in defaults.
int load_inputs(const Options& opt, Inputs& in) {
  std::string config_path = opt.config;
  if (config_path.empty()) {
    if (const char* env = std::getenv("REFCHAIN_CONFIG")) config_path = env;
  }
  try {
    if (!config_path.empty()) {
      if (!std::filesystem::exists(config_path)) return fail_missing(config_path);
      in.config = refchain::load_resolver_config(config_path);
    }
    if (!opt.lexicon.empty()) {
      std::ifstream lf(opt.lexicon);
      if (!lf) return fail_missing(opt.lexicon);
      in.lexicon = refchain::parse_lexicon(lf);
    }
    std::ifstream cf(opt.corpus);
    if (!cf) return fail_missing(opt.corpus);
    in.entries = refchain::parse_corpus(cf);
  } catch (const refchain::ParseError& e) {
    std::cerr << "refchain: " << e.what() << '\n';
    return kExitParseError;
  } catch (const refchain::ValidationError& e) {
    std::cerr << "refchain: " << e.what() << '\n';
    return kExitParseError;
  }
  if (opt.method != 0) {
    in.config.method = *refchain::method_from_number(opt.method);
  }
  return 0;
}

// Integral scores print as integers so records stay compact and stable.
nlohmann::json score_json(refchain::Score v) {
  if (std::floor(v) == v && std::abs(v) < 1e15) {
    return static_cast<long long>(v);
  }
  return v;
}

nlohmann::json candidate_json(const refchain::Candidate& c) {
  nlohmann::json j;
  switch (c.kind) {
    case refchain::Candidate::Kind::Antecedent:
      j["kind"] = "antecedent";
      j["antecedent"] = c.antecedent_id;
      break;
    case refchain::Candidate::Kind::Indefinite:
      j["kind"] = "indefinite";
      break;
    case refchain::Candidate::Kind::Generic:
      j["kind"] = "generic";
      break;
  }
  return j;
}

int with_output(const std::string& out_path, const std::function<void(std::ostream&)>& write) {
  if (out_path.empty()) {
    write(std::cout);
    return 0;
  }
  std::ofstream out(out_path);
  if (!out) {
    std::cerr << "refchain: cannot write '" << out_path << "'\n";
    return kExitMissingFile;
  }
  write(out);
  return 0;
}

int cmd_resolve(const Options& opt) {
  Inputs in;
  if (int rc = load_inputs(opt, in); rc != 0) return rc;

  const auto runs = refchain::resolve_corpus(in.entries, in.lexicon, in.config, opt.jobs);
  return with_output(opt.out, [&](std::ostream& os) {
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const auto& doc_id = in.entries[i].document.id;
      for (const auto& d : runs[i]) {
        nlohmann::json j;
        j["doc"] = doc_id;
        j["mention"] = d.mention_id;
        j["decision"] = candidate_json(d.chosen);
        j["total"] = score_json(d.total);
        auto trace = nlohmann::json::array();
        for (const auto& p : d.trace) {
          nlohmann::json t;
          t["rule"] = p.rule_id;
          t["candidate"] = candidate_json(p.candidate);
          t["points"] = score_json(p.points);
          trace.push_back(std::move(t));
        }
        j["trace"] = std::move(trace);
        os << j.dump() << '\n';
      }
    }
  });
}

int cmd_eval(const Options& opt) {
  Inputs in;
  if (int rc = load_inputs(opt, in); rc != 0) return rc;

  for (const auto& e : in.entries) {
    if (!e.gold) {
      std::cerr << "refchain: document '" << e.document.id << "' has no gold annotation\n";
      return kExitNoGold;
    }
  }

  if (opt.ablation) {
    const auto reports = refchain::ablation(in.entries, in.lexicon, in.config, opt.jobs);
    return with_output(opt.out, [&](std::ostream& os) {
      if (opt.json_report) {
        os << refchain::ablation_json(reports).dump() << '\n';
      } else {
        os << refchain::format_ablation_table(reports);
      }
    });
  }
  const auto report = refchain::evaluate_corpus(in.entries, in.lexicon, in.config, opt.jobs);
  return with_output(opt.out, [&](std::ostream& os) {
    if (opt.json_report) {
      os << refchain::report_json(report).dump() << '\n';
    } else {
      os << refchain::format_report_text(report);
    }
  });
}

void add_common_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--corpus", opt.corpus, "corpus file (one JSON document per line)")
      ->required();
  cmd->add_option("--lexicon", opt.lexicon, "noun semantic-marker lexicon (TSV)");
  cmd->add_option("--config", opt.config,
                  "resolver config (JSON); defaults to $REFCHAIN_CONFIG or built-ins");
  cmd->add_option("--method", opt.method, "resolution method 1..4, overrides the config")
      ->check(CLI::Range(1, 4));
  cmd->add_option("--out", opt.out, "output file (default stdout)");
  cmd->add_option("--jobs", opt.jobs, "documents resolved in parallel")
      ->check(CLI::Range(std::size_t{1}, std::size_t{256}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noun-phrase coreference resolver"};
  app.require_subcommand(1);

  Options resolve_opt;
  auto* resolve = app.add_subcommand("resolve", "resolve antecedents, one record per mention");
  add_common_flags(resolve, resolve_opt);

  Options eval_opt;
  auto* eval = app.add_subcommand("eval", "score decisions against gold annotations");
  add_common_flags(eval, eval_opt);
  eval->add_flag("--ablation", eval_opt.ablation, "run and report methods 1..4");
  eval->add_flag("--json", eval_opt.json_report, "emit the report as JSON");

  CLI11_PARSE(app, argc, argv);

  try {
    if (resolve->parsed()) return cmd_resolve(resolve_opt);
    return cmd_eval(eval_opt);
  } catch (const refchain::ParseError& e) {
    std::cerr << "refchain: " << e.what() << '\n';
    return kExitParseError;
  } catch (const refchain::ValidationError& e) {
    std::cerr << "refchain: " << e.what() << '\n';
    return kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << "refchain: " << e.what() << '\n';
    return 1;
  }
}
