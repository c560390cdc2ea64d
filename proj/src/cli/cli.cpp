#include "neariso/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <exception>

#include <CLI11.hpp>

#include "neariso/acceptance.hpp"
#include "neariso/construct.hpp"
#include "neariso/defect.hpp"
#include "neariso/error.hpp"

namespace neariso::cli {

const char* to_string(Command c) noexcept {
  switch (c) {
    case Command::demo: return "demo";
    case Command::fit: return "fit";
    case Command::verify: return "verify";
    case Command::suite: return "suite";
  }
  return "?";
}

const char* to_string(Format f) noexcept { return f == Format::csv ? "csv" : "json"; }

namespace {

struct Flags {
  std::string map_id;
  std::optional<double> eps;
  std::optional<double> delta;
  double p = 2.0;
  std::size_t dim = 2;
  double radius = 5.0;
  double step = 0.0;
  std::size_t count = 10000;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-3;
  std::vector<std::string> bounds;
  std::string format = "json";
  std::string out;
};

void add_common(CLI::App& sub, Flags& flags, bool with_map) {
  if (with_map) {
    sub.add_option("map", flags.map_id, "catalog map identifier")
        ->required()
        ->check(CLI::IsMember(catalog_ids()));
    sub.add_option("--eps", flags.eps, "nearisometry constant")->check(CLI::NonNegativeNumber);
    sub.add_option("--delta", flags.delta, "onto constant")->check(CLI::NonNegativeNumber);
    sub.add_option("--p", flags.p, "norm exponent of the perturbed map (>= 1, inf allowed)")
        ->check(CLI::Range(1.0, kInf));
    sub.add_option("--dim", flags.dim, "dimension of the perturbed map")->check(CLI::PositiveNumber);
    sub.add_option("--radius", flags.radius, "sampling radius")->check(CLI::PositiveNumber);
    sub.add_option("--step", flags.step, "grid step (0 selects a default)")
        ->check(CLI::NonNegativeNumber);
    sub.add_option("--count", flags.count, "random sample count")->check(CLI::PositiveNumber);
    sub.add_option("--tol", flags.tol, "directional limit tolerance")->check(CLI::PositiveNumber);
    sub.add_option("--bound", flags.bounds, "bound kinds to check (repeatable or comma separated)")
        ->delimiter(',')
        ->check([](const std::string& s) {
          try {
            parse_bound_kind(s);
            return std::string();
          } catch (const Error& e) {
            return std::string(e.what());
          }
        });
  }
  sub.add_option("--seed", flags.seed, "random seed");
  sub.add_option("--format", flags.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  sub.add_option("--out", flags.out, "report path (stdout when omitted)");
}

}  // namespace

ParseOutcome parse_args(int argc, const char* const* argv, const char* env_seed) {
  CLI::App app{"Nearisometry numerical lab", "neariso"};
  app.require_subcommand(1, 1);
  Flags flags;
  CLI::App* demo = app.add_subcommand("demo", "evaluate a catalog map: defects and deviations");
  CLI::App* fit = app.add_subcommand("fit", "build the limit isometry and its left inverse");
  CLI::App* verify = app.add_subcommand("verify", "check approximation bounds on samples");
  CLI::App* suite = app.add_subcommand("suite", "run the acceptance criteria");
  for (CLI::App* sub : {demo, fit, verify}) add_common(*sub, flags, true);
  add_common(*suite, flags, false);

  ParseOutcome outcome;
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    outcome.status = kExitPass;
    outcome.message = app.help();
    for (CLI::App* sub : app.get_subcommands()) outcome.message = sub->help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.status = kExitUsage;
    outcome.message = std::string(e.what()) + "\n" + app.help();
    return outcome;
  }

  RunConfig config;
  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == demo) config.command = Command::demo;
  if (chosen == fit) config.command = Command::fit;
  if (chosen == verify) config.command = Command::verify;
  if (chosen == suite) config.command = Command::suite;

  std::uint64_t seed = flags.seed;
  if (chosen->count("--seed") == 0 && env_seed != nullptr && *env_seed != '\0') {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env_seed, &end, 10);
    if (errno != 0 || *end != '\0' || *env_seed == '-') {
      outcome.message = std::string("NEARISO_SEED is not an unsigned integer: ") + env_seed;
      return outcome;
    }
    seed = v;
  }

  config.map_id = flags.map_id;
  config.params = CatalogParams{.eps = flags.eps, .delta = flags.delta, .p = flags.p,
                                .dim = flags.dim, .seed = seed};
  config.sampler.radius = flags.radius;
  config.sampler.step = flags.step;
  config.sampler.count = flags.count;
  config.sampler.seed = seed;
  config.tol = flags.tol;
  for (const std::string& b : flags.bounds) config.bounds.push_back(parse_bound_kind(b));
  config.format = flags.format == "csv" ? Format::csv : Format::json;
  config.out = flags.out;

  if (config.command != Command::suite) {
    try {
      (void)make_catalog_map(config.map_id, config.params);
    } catch (const Error& e) {
      outcome.message = e.what();
      return outcome;
    }
  }
  outcome.config = std::move(config);
  outcome.status = kExitPass;
  return outcome;
}

namespace {

std::vector<double> coords(const Vector& v) { return {v.data(), v.data() + v.size()}; }

nlohmann::json matrix_json(const Matrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::json certificates_json(const std::vector<LimitCertificate>& certs) {
  nlohmann::json out = nlohmann::json::array();
  for (const LimitCertificate& c : certs) {
    out.push_back({{"s_used", c.s_used}, {"rate_bound", c.rate_bound}});
  }
  return out;
}

ReportRow row_from(const BoundReport& b) {
  return ReportRow{.kind = to_string(b.kind),
                   .label = b.label,
                   .measured = b.measured,
                   .bound = b.bound,
                   .margin = b.margin,
                   .passed = b.passed,
                   .argmax = coords(b.argmax),
                   .samples = b.samples,
                   .detail = {}};
}

ReportRow row_from(const std::string& kind, const std::string& label, const DefectReport& d,
                   double claim) {
  std::vector<double> at;
  for (const Vector& v : d.argmax) {
    for (Eigen::Index i = 0; i < v.size(); ++i) at.push_back(v[i]);
  }
  return ReportRow{.kind = kind,
                   .label = label,
                   .measured = d.estimate,
                   .bound = claim,
                   .margin = claim - d.estimate,
                   .passed = d.consistent_with_claim.value_or(true),
                   .argmax = std::move(at),
                   .samples = d.samples_used,
                   .detail = "sampled estimate"};
}

ReportRow threshold_row(const std::string& kind, const std::string& label, double measured,
                        double bound) {
  return ReportRow{.kind = kind,
                   .label = label,
                   .measured = measured,
                   .bound = bound,
                   .margin = bound - measured,
                   .passed = measured <= bound,
                   .argmax = {},
                   .samples = 0,
                   .detail = {}};
}

nlohmann::json map_json(const MapInstance& f) {
  nlohmann::json m = {{"id", f.id},
                      {"domain", f.domain.label()},
                      {"codomain", f.codomain.label()},
                      {"claimed_eps", f.claimed_eps}};
  m["claimed_delta"] = f.claimed_delta ? nlohmann::json(*f.claimed_delta) : nlohmann::json();
  if (f.reference) m["reference"] = matrix_json(f.reference->matrix);
  return m;
}

void note(Report& report, const std::string& text) {
  report.details["notes"].push_back(text);
}

// The isometry used for codomain-side bounds: the planted one when known.
LinearOperator isometry_for(const MapInstance& f, double tol) {
  if (f.reference) return *f.reference;
  return build_linear_isometry(f, tol).op;
}

void add_bound_rows(Report& report, const MapInstance& f, const RunConfig& config,
                    const std::vector<BoundKind>& kinds) {
  const LinearOperator u = isometry_for(f, config.tol);
  std::optional<LinearOperator> t;
  for (BoundKind kind : kinds) {
    if (kind == BoundKind::figiel_2eps) {
      if (!t) {
        try {
          t = build_left_inverse_T(f, u).t;
        } catch (const Error& e) {
          if (e.code() != Errc::unsupported || !config.bounds.empty()) throw;
          note(report, std::string("figiel-2eps skipped: ") + e.what());
          continue;
        }
      }
      report.rows.push_back(row_from(check_bound(f, *t, kind, config.sampler)));
    } else {
      report.rows.push_back(row_from(check_bound(f, u, kind, config.sampler)));
    }
  }
}

std::vector<BoundKind> requested_kinds(const MapInstance& f, const RunConfig& config) {
  if (!config.bounds.empty()) {
    for (BoundKind kind : config.bounds) {
      if (!bound_checkable(kind, f)) {
        throw Error(Errc::invalid_argument,
                    std::string("bound ") + to_string(kind) + " cannot be evaluated for " + f.id +
                        " into " + f.codomain.label());
      }
    }
    return config.bounds;
  }
  std::vector<BoundKind> out;
  for (BoundKind kind : all_bound_kinds()) {
    if (bound_applicable(kind, f)) out.push_back(kind);
  }
  return out;
}

void run_demo(Report& report, const MapInstance& f, const RunConfig& config) {
  report.details["map"] = map_json(f);
  report.rows.push_back(
      row_from("eps-hat", f.id, estimate_epsilon(f, config.sampler), f.claimed_eps));
  if (f.claimed_delta && f.target_subspace) {
    try {
      const DeltaReport d = estimate_delta(f, *f.target_subspace, config.sampler);
      report.rows.push_back(row_from("delta-hat", f.id, d.overall, *f.claimed_delta));
    } catch (const Error& e) {
      if (e.code() != Errc::unsupported) throw;
      note(report, std::string("delta-hat skipped: ") + e.what());
    }
  }
  if (f.reference) {
    nlohmann::json ray = nlohmann::json::array();
    Vector x = Vector::Zero(f.domain.dim());
    for (double t : {1.0, 10.0, 100.0, 1000.0}) {
      x[0] = t;
      ray.push_back({{"t", t}, {"deviation", distance(f(x), (*f.reference)(x), f.codomain)}});
    }
    report.details["ray_deviation"] = std::move(ray);
  }
  add_bound_rows(report, f, config, requested_kinds(f, config));
}

void run_fit(Report& report, const MapInstance& f, const RunConfig& config) {
  report.details["map"] = map_json(f);
  const IsometryFit fit = build_linear_isometry(f, config.tol);
  report.details["phi"] = matrix_json(fit.op.matrix);
  report.details["certificates"] = certificates_json(fit.certificates);
  report.rows.push_back(
      threshold_row("isometry-defect", f.id, fit.isometry_defect, 2.0 * config.tol));
  report.rows.push_back(
      threshold_row("linearity-defect", f.id, fit.linearity_defect, 3.0 * config.tol));
  try {
    const LeftInverse li = build_left_inverse_T(f, fit.op);
    report.details["projection"] = matrix_json(li.projection.matrix);
    report.details["T"] = matrix_json(li.t.matrix);
    report.rows.push_back(threshold_row("inverse-defect", f.id, li.inverse_defect, 1e-9));
    report.rows.push_back(
        threshold_row("T-norm-gap", f.id, std::abs(li.norm_estimate - 1.0), 1e-6));
    report.rows.push_back(row_from(check_bound(f, li.t, BoundKind::figiel_2eps, config.sampler)));
  } catch (const Error& e) {
    if (e.code() != Errc::unsupported) throw;
    note(report, std::string("left inverse skipped: ") + e.what());
  }
}

void run_suite(Report& report, const RunConfig& config) {
  for (const CriterionResult& c : run_acceptance(config.sampler.seed)) {
    const double measured = c.passed ? 1.0 : 0.0;
    report.rows.push_back(ReportRow{.kind = "criterion",
                                    .label = std::to_string(c.id) + " " + c.name,
                                    .measured = measured,
                                    .bound = 1.0,
                                    .margin = measured - 1.0,
                                    .passed = c.passed,
                                    .argmax = {},
                                    .samples = 0,
                                    .detail = c.detail});
  }
}

}  // namespace

Report execute(const RunConfig& config) {
  Report report;
  report.config = config_to_json(config);
  try {
    if (config.command == Command::suite) {
      run_suite(report, config);
    } else {
      const MapInstance f = make_catalog_map(config.map_id, config.params);
      switch (config.command) {
        case Command::demo: run_demo(report, f, config); break;
        case Command::fit: run_fit(report, f, config); break;
        case Command::verify:
          report.details["map"] = map_json(f);
          add_bound_rows(report, f, config, requested_kinds(f, config));
          break;
        case Command::suite: break;
      }
    }
  } catch (const Error& e) {
    report.error = nlohmann::json{{"code", neariso::to_string(e.code())}, {"message", e.what()}};
  } catch (const std::exception& e) {
    report.error = nlohmann::json{{"code", "internal"}, {"message", e.what()}};
  }
  if (report.error) {
    report.status = kExitInternal;
  } else {
    for (const ReportRow& row : report.rows) {
      if (!row.passed) report.status = kExitViolation;
    }
  }
  return report;
}

}  // namespace neariso::cli
