// Run configuration (JSON) and single-method orchestration.
#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "cqed/dynamics.hpp"
#include "cqed/inversion.hpp"

namespace cqed {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class RunMethod { analytic, transformed, full, jcm_numeric, two_photon };

const char* to_string(RunMethod m);
RunMethod parse_run_method(const std::string& name);

/// Exactly one of `system` / `circuit` is set. Complex numbers are stored in
/// JSON as `<name>_re` / `<name>_im`.
struct RunConfig {
  std::optional<SystemParams> system;
  std::optional<CircuitParams> circuit;
  Complex alpha{};
  std::optional<int> initial_fock;  // replaces the coherent field by |n>
  RunMethod method = RunMethod::full;
  int n_max = 40;
  double tau_max = 25.0;
  int n_steps = 2000;  // number of grid points
  std::string output_path;
  bool allow_small_cutoff = false;
  AmplitudeConvention analytic_convention = AmplitudeConvention::printed;

  void validate() const;
  SystemParams system_params() const;

  bool operator==(const RunConfig&) const = default;
};

/// Throws ConfigError on malformed JSON, unknown keys or invalid values.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string serialize_run_config(const RunConfig& cfg);

/// |g| for the scaled time axis; 1 when beta = 0 (tau = t).
double time_scale(const SystemParams& p);

TimeGrid run_grid(const RunConfig& cfg);

/// Amplitude bound used by the cutoff sizing rule: the largest of |alpha|,
/// |alpha - beta| and |alpha - i beta^*/2|.
double sizing_amplitude(Complex alpha, Complex beta);

/// Initial state |e> (x) field for `cfg`, after the cutoff check.
StateVector initial_state(const RunConfig& cfg, const FockCutoff& cutoff);

/// Runs `method` (overriding cfg.method) on cfg's grid.
EvolutionResult run_method(const RunConfig& cfg, RunMethod method, Execution exec = Execution::parallel);
inline EvolutionResult run_simulation(const RunConfig& cfg, Execution exec = Execution::parallel) {
  return run_method(cfg, cfg.method, exec);
}

}  // namespace cqed
