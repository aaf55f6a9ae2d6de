#include "app.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cqed/analysis.hpp"
#include "cqed/run_config.hpp"
#include "cqed/trace_csv.hpp"
#include "cqed/validation.hpp"

namespace cqed::cli {

namespace {

std::string resolve_output(const std::string& flag, const RunConfig& cfg) {
  const std::string path = flag.empty() ? cfg.output_path : flag;
  if (path.empty()) throw ConfigError("no output path: pass --out or set output_path in the config");
  return path;
}

std::string format_complex(Complex z) {
  const std::string im = format_double(z.imag());
  return format_double(z.real()) + (im.front() == '-' ? "" : "+") + im + "i";
}

void add_run_metadata(Trace& trace, const RunConfig& cfg) {
  const SystemParams p = cfg.system_params();
  trace.comments.push_back("omega = " + format_double(p.omega));
  trace.comments.push_back("e_z = " + format_double(p.e_z));
  trace.comments.push_back("e_j = " + format_double(p.e_j));
  trace.comments.push_back("gamma = " + format_double(p.gamma));
  trace.comments.push_back("beta = " + format_complex(p.beta));
  if (cfg.initial_fock) {
    trace.comments.push_back("initial = |e," + std::to_string(*cfg.initial_fock) + ">");
  } else {
    trace.comments.push_back("alpha = " + format_complex(cfg.alpha));
  }
  trace.comments.push_back("n_max = " + std::to_string(cfg.n_max));
  if (p.g_magnitude() > 0.0) {
    trace.comments.push_back("tau = |g| t, |g| = " + format_double(p.g_magnitude()));
  } else {
    trace.comments.push_back("tau = t (beta = 0)");
  }
}

void add_warnings(Trace& trace, const EvolutionResult& r) {
  for (const std::string& w : r.warnings) trace.comments.push_back("warning: " + w);
}

int cmd_simulate(const std::string& config_path, const std::string& out_flag, bool allow_small, std::ostream& out) {
  RunConfig cfg = load_run_config(config_path);
  cfg.allow_small_cutoff = cfg.allow_small_cutoff || allow_small;
  const std::string path = resolve_output(out_flag, cfg);
  const EvolutionResult r = run_simulation(cfg);

  Trace trace;
  trace.comments.push_back(std::string("method = ") + to_string(cfg.method));
  if (cfg.method == RunMethod::analytic) {
    trace.comments.push_back(std::string("analytic_convention = ") + to_string(cfg.analytic_convention));
  }
  add_run_metadata(trace, cfg);
  if (r.mean_photon) trace.comments.push_back("mean_photon = " + format_double(*r.mean_photon));
  add_warnings(trace, r);
  trace.columns = {"tau", "W"};
  trace.data = {r.grid.tau(), r.sigma_z};
  write_trace_file(path, trace);
  out << "wrote " << trace.rows() << " rows to " << path << "\n";
  return kOk;
}

int cmd_compare(const std::string& config_path, const std::string& out_flag, bool allow_small, std::ostream& out) {
  RunConfig cfg = load_run_config(config_path);
  cfg.allow_small_cutoff = cfg.allow_small_cutoff || allow_small;
  const std::string path = resolve_output(out_flag, cfg);
  const SystemParams p = cfg.system_params();
  if (p.beta == Complex{}) throw ConfigError("compare: beta = 0 leaves the transformed and analytic paths undefined");
  if (p.beta.imag() != 0.0) throw ConfigError("compare: the analytic column requires a real beta");
  if (cfg.initial_fock) throw ConfigError("compare: needs a coherent field (initial_fock is set)");

  const EvolutionResult analytic = run_method(cfg, RunMethod::analytic);
  const EvolutionResult transformed = run_method(cfg, RunMethod::transformed);
  const EvolutionResult full = run_method(cfg, RunMethod::full);

  Trace trace;
  trace.comments.push_back("method = compare");
  trace.comments.push_back(std::string("analytic_convention = ") + to_string(cfg.analytic_convention));
  add_run_metadata(trace, cfg);
  if (transformed.mean_photon) trace.comments.push_back("mean_photon = " + format_double(*transformed.mean_photon));
  const std::vector<std::pair<std::string, std::pair<const EvolutionResult*, const EvolutionResult*>>> pairs{
      {"analytic_vs_transformed", {&analytic, &transformed}},
      {"transformed_vs_full", {&transformed, &full}},
      {"analytic_vs_full", {&analytic, &full}},
  };
  for (const auto& [name, ab] : pairs) {
    trace.comments.push_back("sup_deviation " + name + " = " + format_double(sup_deviation(ab.first->sigma_z, ab.second->sigma_z)));
    trace.comments.push_back("mean_abs_deviation " + name + " = " +
                             format_double(mean_abs_deviation(ab.first->sigma_z, ab.second->sigma_z)));
  }
  add_warnings(trace, transformed);
  trace.columns = {"tau", "W_analytic", "W_transformed", "W_full"};
  trace.data = {transformed.grid.tau(), analytic.sigma_z, transformed.sigma_z, full.sigma_z};
  write_trace_file(path, trace);
  for (std::size_t i = 0; i < trace.comments.size(); ++i) {
    if (trace.comments[i].rfind("sup_", 0) == 0 || trace.comments[i].rfind("mean_abs", 0) == 0) {
      out << trace.comments[i] << "\n";
    }
  }
  out << "wrote " << trace.rows() << " rows to " << path << "\n";
  return kOk;
}

void print_report(const std::string& column, const RevivalReport& rep, std::ostream& out) {
  out << "column: " << column << "\n";
  if (rep.collapse_tau) {
    out << "collapse_tau: " << format_double(*rep.collapse_tau) << (rep.collapse_complete ? " (complete)" : " (partial)")
        << "\n";
  } else {
    out << "collapse_tau: none\n";
  }
  out << "revival_events: " << rep.revival_events.size() << "\n";
  for (const RevivalEvent& e : rep.revival_events) {
    out << "  tau_peak = " << format_double(e.tau_peak) << ", amplitude = " << format_double(e.amplitude) << "\n";
  }
  out << "super_revival: " << (rep.super_revival.detected ? "detected" : "not detected") << "\n";
  out << "envelope_period: "
      << (rep.super_revival.envelope_period ? format_double(*rep.super_revival.envelope_period) : std::string("none"))
      << "\n";
  out << "modulation_depth: " << format_double(rep.super_revival.modulation_depth) << "\n";
}

int cmd_analyze(const std::string& trace_path, std::ostream& out) {
  Trace trace;
  try {
    trace = read_trace_file(trace_path);
  } catch (const TraceFormatError& e) {
    throw ConfigError(std::string("malformed trace: ") + e.what());
  }
  RevivalOptions options;
  if (const auto n = trace.comment_value("mean_photon")) {
    try {
      const double mean_photon = std::stod(*n);
      if (mean_photon > 0.0) options.revival_tau = ordinary_revival_tau(mean_photon);
    } catch (const std::exception&) {
      throw ConfigError("malformed trace: unreadable mean_photon comment");
    }
  }
  const auto& tau = trace.data.front();
  if (options.revival_tau && tau.back() - tau.front() < *options.revival_tau) options.revival_tau.reset();
  for (std::size_t c = 1; c < trace.columns.size(); ++c) {
    if (c > 1) out << "\n";
    print_report(trace.columns[c], detect_revivals(tau, trace.data[c], options), out);
  }
  return kOk;
}

int cmd_validate(std::ostream& out) {
  const auto checks = run_validation_suite(30);
  bool all = true;
  for (const ValidationCheck& c : checks) {
    all = all && c.passed;
    out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(44) << c.name << " value = " << format_double(c.value)
        << "  tol = " << format_double(c.tolerance) << "\n";
  }
  out << checks.size() << " checks, " << (all ? "all passed" : "FAILURES") << "\n";
  return all ? kOk : kValidationFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Charge qubit in a cavity: inversion dynamics"};
  app.require_subcommand(1);
  bool allow_small = false;
  app.add_flag("--allow-small-cutoff", allow_small, "Skip the n_max >= r^2 + 10 r sizing rule");

  std::string config_path;
  std::string out_path;
  std::string trace_path;
  CLI::App* simulate = app.add_subcommand("simulate", "Run one method and write a tau,W trace");
  simulate->add_option("--config", config_path, "JSON run configuration")->required();
  simulate->add_option("--out", out_path, "Output CSV (defaults to output_path in the config)");
  simulate->add_flag("--allow-small-cutoff", allow_small, "Skip the cutoff sizing rule");
  CLI::App* compare = app.add_subcommand("compare", "Run analytic, transformed and full paths side by side");
  compare->add_option("--config", config_path, "JSON run configuration")->required();
  compare->add_option("--out", out_path, "Output CSV (defaults to output_path in the config)");
  compare->add_flag("--allow-small-cutoff", allow_small, "Skip the cutoff sizing rule");
  CLI::App* analyze = app.add_subcommand("analyze", "Report collapse, revivals and super-revivals of a trace");
  analyze->add_option("--trace", trace_path, "CSV trace")->required();
  CLI::App* validate = app.add_subcommand("validate", "Run the invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (*simulate) return cmd_simulate(config_path, out_path, allow_small, out);
    if (*compare) return cmd_compare(config_path, out_path, allow_small, out);
    if (*analyze) return cmd_analyze(trace_path, out);
    if (*validate) return cmd_validate(out);
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace cqed::cli
