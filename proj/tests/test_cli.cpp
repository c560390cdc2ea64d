#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "neariso/cli.hpp"

using namespace neariso;
using namespace neariso::cli;

namespace {

ParseOutcome parse(std::vector<const char*> args, const char* env_seed = nullptr) {
  args.insert(args.begin(), "neariso");
  return parse_args(static_cast<int>(args.size()), args.data(), env_seed);
}

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<const char*> args) {
  args.insert(args.begin(), "neariso");
  std::ostringstream out;
  std::ostringstream err;
  const int status = run(static_cast<int>(args.size()), args.data(), out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

}  // namespace

TEST_CASE("parse: demo sharp-l1") {
  const ParseOutcome p = parse({"demo", "sharp-l1", "--eps", "0.5", "--delta", "0.25"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::demo);
  CHECK(p.config->map_id == "sharp-l1");
  CHECK(p.config->params.eps == 0.5);
  CHECK(p.config->params.delta == 0.25);
  CHECK(p.config->sampler.seed == kDefaultSeed);
  CHECK(p.config->sampler.radius == 5.0);
  CHECK(p.config->format == Format::json);
  CHECK(p.config->out.empty());
}

TEST_CASE("parse: suite with seed, csv and output path") {
  const ParseOutcome p = parse({"suite", "--seed", "42", "--format", "csv", "--out", "report.csv"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::suite);
  CHECK(p.config->sampler.seed == 42);
  CHECK(p.config->format == Format::csv);
  CHECK(p.config->out == "report.csv");
}

TEST_CASE("parse: fit with tolerance and repeated bounds") {
  const ParseOutcome p = parse({"fit", "ramp-hilbert", "--eps", "0.5", "--delta", "0.25", "--tol", "1e-3"});
  REQUIRE(p.config);
  CHECK(p.config->command == Command::fit);
  CHECK(p.config->tol == 1e-3);
  const ParseOutcome q = parse({"verify", "ramp-hilbert", "--eps", "0.5", "--delta", "0.25", "--bound",
                                "hilbert-2e-d,hilbert-pythag", "--bound", "nearsurj-2eps"});
  REQUIRE(q.config);
  CHECK(q.config->bounds == std::vector<BoundKind>{BoundKind::hilbert_2e_d, BoundKind::hilbert_pythag,
                                                   BoundKind::nearsurj_2eps});
}

TEST_CASE("parse: usage errors") {
  CHECK(parse({"demo", "sharp-l1", "--eps", "0.5"}).status == kExitUsage);
  CHECK_FALSE(parse({"demo", "sharp-l1", "--eps", "0.5"}).config);
  CHECK(parse({"demo", "sharp-l1", "--eps", "0.5"}).message.find("--delta") != std::string::npos);
  CHECK(parse({"demo", "hyers-ulam", "--eps", "0.5", "--bogus", "1"}).status == kExitUsage);
  CHECK(parse({"demo", "unknown-map", "--eps", "0.5"}).status == kExitUsage);
  CHECK(parse({"demo", "hyers-ulam", "--eps", "-1"}).status == kExitUsage);
  CHECK(parse({"demo", "hyers-ulam", "--eps", "0.5", "--radius", "0"}).status == kExitUsage);
  CHECK(parse({"demo", "hyers-ulam", "--eps", "0.5", "--tol", "0"}).status == kExitUsage);
  CHECK(parse({"demo", "hyers-ulam", "--eps", "0.5", "--format", "xml"}).status == kExitUsage);
  CHECK(parse({"verify", "hyers-ulam", "--eps", "0.5", "--bound", "3eps"}).status == kExitUsage);
  CHECK(parse({"demo", "perturbed", "--eps", "0.5", "--p", "0.5"}).status == kExitUsage);
  CHECK(parse({}).status == kExitUsage);
  CHECK(parse({"suite", "--eps", "0.5"}).status == kExitUsage);
  const ParseOutcome help = parse({"--help"});
  CHECK_FALSE(help.config);
  CHECK(help.status == kExitPass);
}

TEST_CASE("parse: seed from the environment") {
  const ParseOutcome a = parse({"suite"}, "777");
  REQUIRE(a.config);
  CHECK(a.config->sampler.seed == 777);
  const ParseOutcome b = parse({"suite", "--seed", "5"}, "777");
  REQUIRE(b.config);
  CHECK(b.config->sampler.seed == 5);
  CHECK(parse({"suite"}, "seven").status == kExitUsage);
  const ParseOutcome c = parse({"demo", "perturbed", "--eps", "0.1"}, "9");
  REQUIRE(c.config);
  CHECK(c.config->params.seed == 9);
}

TEST_CASE("verify sharp-l1 reports the sharp value") {
  const Run r = run_cli({"verify", "sharp-l1", "--eps", "0.5", "--delta", "0.25", "--bound",
                         "delta-onto-2e2d"});
  CHECK(r.status == kExitPass);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["version"] == kVersion);
  REQUIRE(j["reports"].size() == 1);
  const nlohmann::json& rep = j["reports"][0];
  CHECK(rep["kind"] == "delta-onto-2e2d");
  CHECK(std::abs(rep["measured"].get<double>() - 1.5) <= 1e-12);
  CHECK(rep["bound"].get<double>() == 1.5);
  CHECK(rep["passed"] == true);
  CHECK(rep["argmax"][0].get<double>() == doctest::Approx(0.75));
  CHECK(j["config"]["map"] == "sharp-l1");
}

TEST_CASE("demo of the degenerate square-root map") {
  const Run r = run_cli({"demo", "hyers-ulam", "--eps", "0"});
  CHECK(r.status == kExitPass);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  REQUIRE(j["reports"].size() >= 2);
  for (const auto& rep : j["reports"]) {
    CHECK(rep["measured"].get<double>() == 0.0);
    CHECK(rep["passed"] == true);
  }
  for (const auto& d : j["details"]["ray_deviation"]) CHECK(d["deviation"].get<double>() == 0.0);
}

TEST_CASE("exit statuses") {
  CHECK(run_cli({"verify", "hyers-ulam", "--eps", "0.5", "--bound", "nearsurj-2eps"}).status ==
        kExitViolation);
  const Run unsupported = run_cli({"fit", "sharp-l1", "--eps", "0.5", "--delta", "0.25"});
  CHECK(unsupported.status == kExitInternal);
  const nlohmann::json j = nlohmann::json::parse(unsupported.out);
  CHECK(j["error"]["code"] == "not-uniformly-convex");
  CHECK(run_cli({"verify", "sharp-l1", "--eps", "0.5", "--delta", "0.25", "--bound", "hilbert-2e-d"})
            .status == kExitInternal);
  CHECK(run_cli({"demo", "sharp-l1", "--eps", "0.5"}).status == kExitUsage);
}

TEST_CASE("fit reports the isometry and the left inverse") {
  const Run r = run_cli({"fit", "ramp-hilbert", "--eps", "0.5", "--delta", "0.25", "--tol", "1e-3"});
  CHECK(r.status == kExitPass);
  const nlohmann::json j = nlohmann::json::parse(r.out);
  CHECK(j["details"]["phi"].size() == 2);
  CHECK(std::abs(j["details"]["phi"][0][0].get<double>() - 1.0) <= 1e-3);
  CHECK(j["details"]["T"].size() == 1);
  bool saw_figiel = false;
  for (const auto& rep : j["reports"]) {
    CHECK(rep["passed"] == true);
    saw_figiel = saw_figiel || rep["kind"] == "figiel-2eps";
  }
  CHECK(saw_figiel);
}

TEST_CASE("JSON output is byte-identical for identical configurations") {
  const std::vector<const char*> args = {"demo", "perturbed", "--eps", "0.3", "--p", "3", "--dim", "2",
                                         "--count", "500", "--seed", "17"};
  const Run a = run_cli(args);
  const Run b = run_cli(args);
  CHECK(a.status == kExitPass);
  CHECK(a.out == b.out);
  std::vector<const char*> other = args;
  other.back() = "18";
  CHECK(run_cli(other).out != a.out);
}

TEST_CASE("CSV and JSON carry the same numbers") {
  std::vector<const char*> args = {"demo", "ramp-hilbert", "--eps", "0.5", "--delta", "0.25",
                                   "--step", "0.01"};
  const Run json_run = run_cli(args);
  args.push_back("--format");
  args.push_back("csv");
  const Run csv_run = run_cli(args);
  CHECK(json_run.status == csv_run.status);
  const nlohmann::json j = nlohmann::json::parse(json_run.out);

  std::istringstream lines(csv_run.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == csv_header());
  std::size_t row = 0;
  while (std::getline(lines, line)) {
    REQUIRE(row < j["reports"].size());
    const nlohmann::json& rep = j["reports"][row];
    const std::vector<std::string> cells = split(line, ',');
    REQUIRE(cells.size() == 9);
    CHECK(cells[0] == "demo");
    CHECK(cells[1] == rep["kind"].get<std::string>());
    CHECK(std::stod(cells[3]) == rep["measured"].get<double>());
    CHECK(std::stod(cells[4]) == rep["bound"].get<double>());
    CHECK(std::stod(cells[5]) == rep["margin"].get<double>());
    CHECK(cells[6] == (rep["passed"].get<bool>() ? "true" : "false"));
    CHECK(std::stoull(cells[7]) == rep["samples"].get<std::size_t>());
    const std::vector<std::string> at = split(cells[8], ';');
    REQUIRE(at.size() == rep["argmax"].size());
    for (std::size_t i = 0; i < at.size(); ++i) CHECK(std::stod(at[i]) == rep["argmax"][i].get<double>());
    ++row;
  }
  CHECK(row == j["reports"].size());
}

TEST_CASE("report goes to the --out file") {
  const std::string path = "test_cli_report.json";
  std::remove(path.c_str());
  const Run r = run_cli({"verify", "ramp-hilbert", "--eps", "0.5", "--delta", "0.25", "--step", "0.01",
                         "--out", path.c_str()});
  CHECK(r.status == kExitPass);
  CHECK(r.out.empty());
  std::ifstream file(path);
  REQUIRE(file.good());
  const nlohmann::json j = nlohmann::json::parse(file);
  CHECK(j["reports"].size() == 4);
  std::remove(path.c_str());
}
