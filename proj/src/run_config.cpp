#include "cqed/run_config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cqed {

namespace {

using Json = nlohmann::ordered_json;

void reject_unknown(const Json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
  }
}

double number(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + ": '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError(where + ": '" + key + "' must be finite");
  return x;
}

double number_or(const Json& obj, const std::string& key, double fallback, const std::string& where) {
  return obj.contains(key) ? number(obj, key, where) : fallback;
}

int integer(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  const Json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + ": '" + key + "' must be an integer");
  return v.get<int>();
}

Complex complex_or_zero(const Json& obj, const std::string& name, const std::string& where) {
  return {number_or(obj, name + "_re", 0.0, where), number_or(obj, name + "_im", 0.0, where)};
}

}  // namespace

const char* to_string(RunMethod m) {
  switch (m) {
    case RunMethod::analytic:
      return "analytic";
    case RunMethod::transformed:
      return "transformed";
    case RunMethod::full:
      return "full";
    case RunMethod::jcm_numeric:
      return "jcm_numeric";
    case RunMethod::two_photon:
      return "two_photon";
  }
  return "?";
}

RunMethod parse_run_method(const std::string& name) {
  for (RunMethod m : {RunMethod::analytic, RunMethod::transformed, RunMethod::full, RunMethod::jcm_numeric,
                      RunMethod::two_photon}) {
    if (name == to_string(m)) return m;
  }
  throw ConfigError("unknown method '" + name + "' (analytic, transformed, full, jcm_numeric, two_photon)");
}

void RunConfig::validate() const {
  if (system.has_value() == circuit.has_value()) {
    throw ConfigError("config: exactly one of 'system' or 'circuit' must be present");
  }
  try {
    if (system) system->validate();
    if (circuit) circuit->validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (!std::isfinite(alpha.real()) || !std::isfinite(alpha.imag())) throw ConfigError("config: alpha must be finite");
  if (n_max < 1) throw ConfigError("config: n_max must be >= 1");
  if (!(tau_max > 0.0) || !std::isfinite(tau_max)) throw ConfigError("config: tau_max must be > 0");
  if (n_steps < 2) throw ConfigError("config: n_steps must be >= 2");
  if (initial_fock) {
    if (*initial_fock < 0 || *initial_fock > n_max - 2) {
      throw ConfigError("config: initial_fock must lie in [0, n_max - 2]");
    }
    if (alpha != Complex{}) throw ConfigError("config: initial_fock and a nonzero alpha are mutually exclusive");
    if (method == RunMethod::analytic) throw ConfigError("config: the analytic method needs a coherent field");
  }
}

SystemParams RunConfig::system_params() const {
  if (system) return *system;
  if (circuit) return derive_system_params(*circuit);
  throw ConfigError("config: no parameter block");
}

RunConfig parse_run_config(const std::string& json_text) {
  Json root;
  try {
    root = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: top level must be an object");
  reject_unknown(root,
                 {"system", "circuit", "alpha_re", "alpha_im", "initial_fock", "method", "n_max", "tau_max", "n_steps",
                  "output_path", "allow_small_cutoff", "analytic_convention"},
                 "config");

  RunConfig cfg;
  if (root.contains("system")) {
    const Json& s = root.at("system");
    if (!s.is_object()) throw ConfigError("system: must be an object");
    reject_unknown(s, {"omega", "e_z", "e_j", "gamma", "beta_re", "beta_im"}, "system");
    SystemParams p;
    p.omega = number(s, "omega", "system");
    p.e_z = number(s, "e_z", "system");
    p.e_j = number(s, "e_j", "system");
    p.gamma = number(s, "gamma", "system");
    p.beta = complex_or_zero(s, "beta", "system");
    cfg.system = p;
  }
  if (root.contains("circuit")) {
    const Json& c = root.at("circuit");
    if (!c.is_object()) throw ConfigError("circuit: must be an object");
    reject_unknown(c, {"e_ch", "n_g", "e_j", "phi_ratio", "beta_re", "beta_im"}, "circuit");
    CircuitParams p;
    p.e_ch = number(c, "e_ch", "circuit");
    p.n_g = number(c, "n_g", "circuit");
    p.e_j = number(c, "e_j", "circuit");
    p.phi_ratio = number(c, "phi_ratio", "circuit");
    p.beta = complex_or_zero(c, "beta", "circuit");
    cfg.circuit = p;
  }
  cfg.alpha = complex_or_zero(root, "alpha", "config");
  if (root.contains("initial_fock")) cfg.initial_fock = integer(root, "initial_fock", "config");
  if (!root.contains("method") || !root.at("method").is_string()) throw ConfigError("config: 'method' must be a string");
  cfg.method = parse_run_method(root.at("method").get<std::string>());
  cfg.n_max = integer(root, "n_max", "config");
  cfg.tau_max = number(root, "tau_max", "config");
  cfg.n_steps = integer(root, "n_steps", "config");
  if (root.contains("output_path")) {
    if (!root.at("output_path").is_string()) throw ConfigError("config: 'output_path' must be a string");
    cfg.output_path = root.at("output_path").get<std::string>();
  }
  if (root.contains("allow_small_cutoff")) {
    if (!root.at("allow_small_cutoff").is_boolean()) throw ConfigError("config: 'allow_small_cutoff' must be a boolean");
    cfg.allow_small_cutoff = root.at("allow_small_cutoff").get<bool>();
  }
  if (root.contains("analytic_convention")) {
    const Json& v = root.at("analytic_convention");
    const std::string name = v.is_string() ? v.get<std::string>() : "";
    if (name == "printed") {
      cfg.analytic_convention = AmplitudeConvention::printed;
    } else if (name == "operator") {
      cfg.analytic_convention = AmplitudeConvention::operator_path;
    } else {
      throw ConfigError("config: 'analytic_convention' must be \"printed\" or \"operator\"");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

std::string serialize_run_config(const RunConfig& cfg) {
  cfg.validate();
  Json root;
  if (cfg.system) {
    const SystemParams& p = *cfg.system;
    root["system"] = {{"omega", p.omega},     {"e_z", p.e_z},          {"e_j", p.e_j},
                      {"gamma", p.gamma},     {"beta_re", p.beta.real()}, {"beta_im", p.beta.imag()}};
  } else {
    const CircuitParams& c = *cfg.circuit;
    root["circuit"] = {{"e_ch", c.e_ch},           {"n_g", c.n_g},          {"e_j", c.e_j},
                       {"phi_ratio", c.phi_ratio}, {"beta_re", c.beta.real()}, {"beta_im", c.beta.imag()}};
  }
  root["alpha_re"] = cfg.alpha.real();
  root["alpha_im"] = cfg.alpha.imag();
  if (cfg.initial_fock) root["initial_fock"] = *cfg.initial_fock;
  root["method"] = to_string(cfg.method);
  root["n_max"] = cfg.n_max;
  root["tau_max"] = cfg.tau_max;
  root["n_steps"] = cfg.n_steps;
  root["output_path"] = cfg.output_path;
  root["allow_small_cutoff"] = cfg.allow_small_cutoff;
  root["analytic_convention"] = to_string(cfg.analytic_convention);
  return root.dump(2) + "\n";
}

double time_scale(const SystemParams& p) {
  const double g = p.g_magnitude();
  return g > 0.0 ? g : 1.0;
}

TimeGrid run_grid(const RunConfig& cfg) {
  return TimeGrid::uniform(cfg.tau_max, cfg.n_steps, time_scale(cfg.system_params()));
}

double sizing_amplitude(Complex alpha, Complex beta) {
  return std::max({std::abs(alpha), std::abs(alpha - beta), std::abs(alpha - 0.5 * kI * std::conj(beta))});
}

StateVector initial_state(const RunConfig& cfg, const FockCutoff& cutoff) {
  if (cfg.initial_fock) return product_state(Qubit::e, fock_state(*cfg.initial_fock, cutoff));
  check_cutoff(cutoff, sizing_amplitude(cfg.alpha, cfg.system_params().beta), cfg.allow_small_cutoff);
  return product_state(Qubit::e, coherent_state(cfg.alpha, cutoff, true));
}

EvolutionResult run_method(const RunConfig& cfg, RunMethod method, Execution exec) {
  cfg.validate();
  const SystemParams p = cfg.system_params();
  const TimeGrid grid = run_grid(cfg);
  const EvolveOptions options{.execution = exec, .keep_states = false};
  if (method == RunMethod::analytic) {
    if (cfg.initial_fock) throw ConfigError("config: the analytic method needs a coherent field");
    return analytic_inversion(cfg.alpha, p, grid, SeriesConfig{}, cfg.analytic_convention, exec);
  }
  const FockCutoff cutoff(cfg.n_max);
  const StateVector psi0 = initial_state(cfg, cutoff);
  switch (method) {
    case RunMethod::transformed:
      return evolve_transformed(p, psi0, grid, cutoff, options);
    case RunMethod::full:
      return evolve_numeric(build_full_hamiltonian(p, cutoff), psi0, grid, Method::full_numeric, p, options);
    case RunMethod::jcm_numeric:
      return evolve_numeric(build_jcm_hamiltonian(p, cutoff), psi0, grid, Method::jcm_numeric, p, options);
    case RunMethod::two_photon:
      return evolve_numeric(build_two_photon_hamiltonian(p, cutoff), psi0, grid, Method::two_photon_numeric, p,
                            options);
    case RunMethod::analytic:
      break;
  }
  throw std::logic_error("run_method: unhandled method");
}

}  // namespace cqed
