// End-to-end checks of the installed command-line surface: exit codes,
// output shapes, reproducibility, and flag/config precedence.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = REFCHAIN_CLI_PATH;
const std::string kData = REFCHAIN_DATA_DIR;

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "refchain_cli_tests";
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args, const std::string& env = "") {
  static int counter = 0;
  const auto out_path = scratch_dir() / ("out" + std::to_string(counter));
  const auto err_path = scratch_dir() / ("err" + std::to_string(counter));
  ++counter;
  std::string cmd = env;
  if (!cmd.empty()) cmd += " ";
  cmd += "\"" + kCli + "\" " + args + " > \"" + out_path.string() + "\" 2> \"" +
         err_path.string() + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.exit_code = status;
#else
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
#endif
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  return r;
}

std::string q(const std::string& path) { return "\"" + path + "\""; }

std::string mini_args() {
  return "--corpus " + q(kData + "/mini_corpus.jsonl") + " --lexicon " + q(kData + "/lexicon.tsv");
}

std::vector<nlohmann::json> parse_lines(const std::string& text) {
  std::vector<nlohmann::json> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(nlohmann::json::parse(line));
  }
  return out;
}

}  // namespace

TEST_CASE("resolve emits one record per mention") {
  const auto r = run("resolve " + mini_args());
  REQUIRE(r.exit_code == 0);
  const auto records = parse_lines(r.out);
  CHECK(records.size() == 33);
  for (const auto& rec : records) {
    CHECK(rec.contains("doc"));
    CHECK(rec.contains("mention"));
    CHECK(rec.contains("decision"));
    CHECK(rec.contains("total"));
    CHECK(rec.contains("trace"));
  }
}

TEST_CASE("missing input files exit with status 2") {
  CHECK(run("resolve --corpus /no/such/file.jsonl").exit_code == 2);
  CHECK(run("resolve " + mini_args() + " --config /no/such/config.json").exit_code == 2);
}

TEST_CASE("parse errors exit with status 3 and name the line") {
  const auto bad = scratch_dir() / "bad.jsonl";
  std::ofstream(bad) << "{\"id\":\"d\",\"sentences\":[]}\nnot json\n";
  const auto r = run("resolve --corpus " + q(bad.string()));
  CHECK(r.exit_code == 3);
  CHECK(r.err.find("corpus line 2") != std::string::npos);
}

TEST_CASE("eval without gold annotations exits with status 4") {
  const auto nogold = scratch_dir() / "nogold.jsonl";
  std::ofstream(nogold)
      << R"({"id":"d","sentences":[{"tense":"past","mentions":[{"id":"a","head":"X"}]}]})"
      << "\n";
  const auto r = run("eval --corpus " + q(nogold.string()));
  CHECK(r.exit_code == 4);
}

TEST_CASE("eval prints the report as NN% (c/j)") {
  const auto r = run("eval " + mini_args());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("Precision 81% (13/16)") != std::string::npos);
  CHECK(r.out.find("Recall    81% (13/16)") != std::string::npos);

  const auto j = run("eval " + mini_args() + " --json");
  REQUIRE(j.exit_code == 0);
  const auto parsed = nlohmann::json::parse(j.out);
  CHECK(parsed["judged"] == 16);
  CHECK(parsed["correct"] == 13);
  CHECK(parsed["with_antecedent"] == 16);
}

TEST_CASE("eval --ablation prints four method columns") {
  const auto r = run("eval " + mini_args() + " --ablation");
  REQUIRE(r.exit_code == 0);
  for (const char* label : {"Method 1", "Method 2", "Method 3", "Method 4"}) {
    CHECK(r.out.find(label) != std::string::npos);
  }
  CHECK(r.out.find("81% (13/16)") != std::string::npos);  // M1 precision
  CHECK(r.out.find("70% (14/20)") != std::string::npos);  // M4 precision
  CHECK(r.out.find("88% (14/16)") != std::string::npos);  // M4 recall
}

TEST_CASE("method 4 differs from method 1 exactly on the constraint-filtered pair") {
  const auto fixture = q(kData + "/fixtures/migi_hidari.jsonl");
  const auto lex = q(kData + "/lexicon.tsv");
  const auto m1 = run("resolve --corpus " + fixture + " --lexicon " + lex);
  const auto m4 = run("resolve --corpus " + fixture + " --lexicon " + lex + " --method 4");
  REQUIRE(m1.exit_code == 0);
  REQUIRE(m4.exit_code == 0);

  const auto r1 = parse_lines(m1.out);
  const auto r4 = parse_lines(m4.out);
  REQUIRE(r1.size() == r4.size());
  for (std::size_t i = 0; i < r1.size(); ++i) {
    if (r1[i]["mention"] == "m6") {
      CHECK(r1[i]["decision"]["kind"] == "indefinite");
      CHECK(r4[i]["decision"]["kind"] == "antecedent");
      CHECK(r4[i]["decision"]["antecedent"] == "m3");
    } else {
      CHECK(r1[i] == r4[i]);
    }
  }
}

TEST_CASE("identical invocations produce byte-identical output across jobs settings") {
  const auto a = run("resolve " + mini_args() + " --jobs 1");
  const auto b = run("resolve " + mini_args() + " --jobs 1");
  const auto c = run("resolve " + mini_args() + " --jobs 4");
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);

  const auto e1 = run("eval " + mini_args() + " --ablation --jobs 1");
  const auto e4 = run("eval " + mini_args() + " --ablation --jobs 4");
  CHECK(e1.out == e4.out);
}

TEST_CASE("--out writes the same bytes as stdout") {
  const auto out_file = scratch_dir() / "decisions.jsonl";
  const auto direct = run("resolve " + mini_args());
  const auto filed = run("resolve " + mini_args() + " --out " + q(out_file.string()));
  REQUIRE(filed.exit_code == 0);
  CHECK(slurp(out_file) == direct.out);
}

TEST_CASE("config precedence: flags beat config file beats built-ins") {
  // a config pinning method 4
  const auto cfg4 = scratch_dir() / "m4.json";
  std::ofstream(cfg4) << R"({"method": 4})";

  const auto fixture = q(kData + "/fixtures/migi_hidari.jsonl");
  const auto lex = q(kData + "/lexicon.tsv");
  const auto plain_m4 = run("resolve --corpus " + fixture + " --lexicon " + lex + " --method 4");
  const auto via_cfg = run("resolve --corpus " + fixture + " --lexicon " + lex + " --config " +
                           q(cfg4.string()));
  CHECK(via_cfg.out == plain_m4.out);

  // environment variable supplies the config path
  const auto via_env = run("resolve --corpus " + fixture + " --lexicon " + lex,
                           "REFCHAIN_CONFIG=" + q(cfg4.string()));
  CHECK(via_env.out == plain_m4.out);

  // an explicit flag overrides the config file
  const auto plain_m1 = run("resolve --corpus " + fixture + " --lexicon " + lex);
  const auto flag_wins = run("resolve --corpus " + fixture + " --lexicon " + lex + " --config " +
                             q(cfg4.string()) + " --method 1");
  CHECK(flag_wins.out == plain_m1.out);

  // the shipped config file reproduces the built-in defaults
  const auto shipped = run("resolve " + mini_args() + " --config " +
                           q(kData + "/config/default.json"));
  const auto builtin = run("resolve " + mini_args());
  CHECK(shipped.out == builtin.out);
}
