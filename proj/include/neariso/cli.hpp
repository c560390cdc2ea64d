#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "neariso/maps.hpp"
#include "neariso/sampler.hpp"
#include "neariso/verify.hpp"

namespace neariso::cli {

inline constexpr const char* kVersion = "1.0.0";

enum class Command { demo, fit, verify, suite };
enum class Format { json, csv };

const char* to_string(Command c) noexcept;
const char* to_string(Format f) noexcept;

/// Exit statuses.
inline constexpr int kExitPass = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

struct RunConfig {
  Command command = Command::suite;
  std::string map_id;
  CatalogParams params;
  Sampler sampler;
  double tol = 1e-3;
  /// Empty means every bound applicable to the map.
  std::vector<BoundKind> bounds;
  Format format = Format::json;
  std::string out;
};

struct ParseOutcome {
  std::optional<RunConfig> config;
  /// Meaningful when `config` is empty: 0 after --help, kExitUsage otherwise.
  int status = kExitUsage;
  std::string message;
};

/// Parses argv. `env_seed` is the value of NEARISO_SEED, if set; an explicit
/// --seed wins over it.
ParseOutcome parse_args(int argc, const char* const* argv,
                        const char* env_seed = nullptr);

/// One row of a report; CSV writes exactly these columns.
struct ReportRow {
  std::string kind;
  std::string label;
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;
  bool passed = false;
  std::vector<double> argmax;
  std::size_t samples = 0;
  std::string detail;
};

struct Report {
  nlohmann::json config;
  std::vector<ReportRow> rows;
  /// Command-specific extras (map metadata, fitted matrices, notes).
  nlohmann::json details = nlohmann::json::object();
  /// Set when a module error aborted the command.
  std::optional<nlohmann::json> error;
  int status = kExitPass;
};

Report execute(const RunConfig& config);

nlohmann::json config_to_json(const RunConfig& config);
nlohmann::json report_to_json(const Report& report);
std::string render_json(const Report& report);
std::string render_csv(const Report& report);
/// Header line of the CSV output, without newline.
const std::string& csv_header();

/// Parses, executes, writes the report to --out or `out`, and returns the
/// exit status. Usage problems go to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace neariso::cli
