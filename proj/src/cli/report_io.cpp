#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

#include "neariso/cli.hpp"

namespace neariso::cli {

nlohmann::json config_to_json(const RunConfig& config) {
  nlohmann::json j;
  j["command"] = to_string(config.command);
  if (config.command != Command::suite) {
    j["map"] = config.map_id;
    j["eps"] = config.params.eps ? nlohmann::json(*config.params.eps) : nlohmann::json();
    j["delta"] = config.params.delta ? nlohmann::json(*config.params.delta) : nlohmann::json();
    j["p"] = config.params.p == kInf ? nlohmann::json("inf") : nlohmann::json(config.params.p);
    j["dim"] = config.params.dim;
    j["radius"] = config.sampler.radius;
    j["step"] = config.sampler.step;
    j["count"] = config.sampler.count;
    j["tol"] = config.tol;
    nlohmann::json bounds = nlohmann::json::array();
    for (BoundKind kind : config.bounds) bounds.push_back(to_string(kind));
    j["bounds"] = std::move(bounds);
  }
  j["seed"] = config.sampler.seed;
  j["format"] = to_string(config.format);
  return j;
}

nlohmann::json report_to_json(const Report& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const ReportRow& r : report.rows) {
    nlohmann::json row = {{"kind", r.kind},       {"label", r.label},   {"measured", r.measured},
                          {"bound", r.bound},     {"margin", r.margin}, {"passed", r.passed},
                          {"argmax", r.argmax},   {"samples", r.samples}};
    if (!r.detail.empty()) row["detail"] = r.detail;
    rows.push_back(std::move(row));
  }
  nlohmann::json j = {{"config", report.config}, {"reports", std::move(rows)},
                      {"version", kVersion}};
  if (!report.details.empty()) j["details"] = report.details;
  if (report.error) j["error"] = *report.error;
  j["exit_status"] = report.status;
  return j;
}

std::string render_json(const Report& report) { return report_to_json(report).dump(2) + "\n"; }

const std::string& csv_header() {
  static const std::string header =
      "command,kind,label,measured,bound,margin,passed,samples,argmax";
  return header;
}

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_csv(const Report& report) {
  std::ostringstream os;
  os << csv_header() << "\n";
  const std::string command = report.config.value("command", "");
  for (const ReportRow& r : report.rows) {
    std::string at;
    for (std::size_t i = 0; i < r.argmax.size(); ++i) {
      if (i > 0) at += ';';
      at += number(r.argmax[i]);
    }
    os << command << ',' << quoted(r.kind) << ',' << quoted(r.label) << ',' << number(r.measured)
       << ',' << number(r.bound) << ',' << number(r.margin) << ',' << (r.passed ? "true" : "false")
       << ',' << r.samples << ',' << at << "\n";
  }
  if (report.error) {
    os << "# error " << report.error->value("code", "") << ": "
       << report.error->value("message", "") << "\n";
  }
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const ParseOutcome parsed = parse_args(argc, argv, std::getenv("NEARISO_SEED"));
  if (!parsed.config) {
    (parsed.status == kExitPass ? out : err) << parsed.message;
    if (!parsed.message.empty() && parsed.message.back() != '\n') {
      (parsed.status == kExitPass ? out : err) << "\n";
    }
    return parsed.status;
  }
  const RunConfig& config = *parsed.config;
  const Report report = execute(config);
  const std::string text =
      config.format == Format::csv ? render_csv(report) : render_json(report);
  if (config.out.empty()) {
    out << text;
  } else {
    std::ofstream file(config.out, std::ios::binary);
    file << text;
    if (!file) {
      err << "cannot write " << config.out << "\n";
      return kExitInternal;
    }
  }
  if (report.error) {
    err << "error (" << report.error->value("code", "") << "): "
        << report.error->value("message", "") << "\n";
  }
  return report.status;
}

}  // namespace neariso::cli
