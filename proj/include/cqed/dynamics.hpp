// Time evolution: exact-diagonalization oracle, the closed-form JCM
// propagator, and the transformed-picture composition
//   |psi(t)> = T^dag(t) U_0T(t) U_I(t) T(0) |psi(0)>.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cqed/execution.hpp"
#include "cqed/hamiltonians.hpp"
#include "cqed/operator_algebra.hpp"

namespace cqed {

/// Scaled times tau = |g| t, starting at 0 and strictly increasing.
class TimeGrid {
 public:
  TimeGrid(std::vector<double> tau_values, double g_magnitude);

  /// n_points samples evenly spaced over [0, tau_max].
  static TimeGrid uniform(double tau_max, int n_points, double g_magnitude);

  const std::vector<double>& tau() const { return tau_; }
  double g_magnitude() const { return g_magnitude_; }
  std::size_t size() const { return tau_.size(); }
  double physical_time(std::size_t i) const { return tau_[i] / g_magnitude_; }

 private:
  std::vector<double> tau_;
  double g_magnitude_;
};

enum class Method { full_numeric, jcm_numeric, transformed_analytic, two_photon_numeric, closed_form_series };

const char* to_string(Method m);

struct EvolutionResult {
  TimeGrid grid;
  std::vector<StateVector> states;  // empty unless requested
  std::vector<double> sigma_z;
  Method method;
  std::optional<FockCutoff> cutoff;  // absent for the closed-form series
  SystemParams params;
  std::vector<std::string> warnings;
  /// Mean photon number of the field state driving the dynamics; sets the
  /// ordinary revival time 2 pi sqrt(n) used by the revival analysis.
  std::optional<double> mean_photon{};
};

struct EvolveOptions {
  Execution execution = Execution::parallel;
  bool keep_states = false;
};

/// exp(-i H t) by spectral decomposition.
OperatorMatrix propagator(const OperatorMatrix& h, double t);

/// Diagonalizes `h` once and samples <sigma_z (x) I> on the grid.
EvolutionResult evolve_numeric(const OperatorMatrix& h, const StateVector& psi0, const TimeGrid& grid, Method method,
                               const SystemParams& params, const EvolveOptions& options = {});

/// Closed-form JCM evolution operator
///   U_I = 1/2 [C_{n+1} + C_n] + 1/2 [C_{n+1} - C_n] sigma_z
///         + (beta/|beta|) S_{n+1} a sigma_+ - (beta^*/|beta|) a^dag S_{n+1} sigma_-
/// with C_{n+1} = cos(|g| t sqrt(a a^dag)), S_{n+1} = sin(|g| t sqrt(a a^dag)) / sqrt(a a^dag).
/// Throws std::invalid_argument for beta = 0.
OperatorMatrix jcm_evolution_operator(const SystemParams& p, double t, const FockCutoff& cutoff);

/// The transformation
///   T = 1/sqrt2 { -1/2 [D^dag - D] - 1/2 [D^dag + D] sigma_z + D sigma_+ + D^dag sigma_- }
/// with D = e^{i E_z t} e^{i gamma/2} exp[1/2 (xi a^dag - xi^* a)], xi(t) = i beta^* e^{i omega t}.
OperatorMatrix transform_T(const SystemParams& p, double t, const FockCutoff& cutoff);

/// Reusable factory for T(t): diagonalizes the displacement generator once
/// and rotates it, D(xi e^{i theta}) = R(theta) D(xi) R(theta)^dag with R = e^{i theta a^dag a}.
class TransformFamily {
 public:
  TransformFamily(const SystemParams& p, const FockCutoff& cutoff);

  /// The phased half-displacement D(t) entering T(t).
  Matrix displacement_at(double t) const;
  OperatorMatrix at(double t) const;

  /// exp[1/2 (xi(0) a^dag - xi(0)^* a)] without the scalar phases.
  const Matrix& bare_displacement() const { return d0_; }

 private:
  SystemParams params_;
  FockCutoff cutoff_;
  Matrix d0_;  // exp[1/2 (xi(0) a^dag - xi(0)^* a)]
};

/// Transformed-picture evolution of `psi0`. Requires beta != 0; records a
/// warning when the one-photon resonance condition does not hold.
EvolutionResult evolve_transformed(const SystemParams& p, const StateVector& psi0, const TimeGrid& grid,
                                   const FockCutoff& cutoff, const EvolveOptions& options = {});

/// sum_n |<e,n|psi>|^2 - |<g,n|psi>|^2.
double expectation_sigma_z(const StateVector& psi);

}  // namespace cqed
