// Closed-form qubit inversion for the resonant one-photon case:
//
//   W(t) = 1/2 e^{-|d|^2} sum_n |d|^{2n}/n! { 2 cos(E_J t) c_{n+1} c_n
//          + [d^* e^{i E_J t} + d e^{-i E_J t}] n!/sqrt(n!(n+1)!) (c_{n+2} - c_n) s_{n+1}
//          - [d^*2 e^{i E_J t} + d^2 e^{-i E_J t}] n!/sqrt(n!(n+2)!) s_{n+2} s_{n+1} }
//
// with c_n = cos(|g| t sqrt n), s_n = sin(|g| t sqrt n) and d the displaced
// field amplitude. The printed formula uses d = alpha - beta (beta real); the
// transformation T(0) actually displaces the field by i beta^*/2, so the
// operator-consistent amplitude is d = alpha - i beta^*/2.
#pragma once

#include <vector>

#include "cqed/dynamics.hpp"
#include "cqed/execution.hpp"

namespace cqed {

struct SeriesConfig {
  double tail_epsilon = 1e-12;  // stop once the Poisson mass reaches 1 - tail_epsilon
  int max_terms = 512;

  void validate() const;
};

enum class AmplitudeConvention { printed, operator_path };

const char* to_string(AmplitudeConvention c);

Complex effective_amplitude(Complex alpha, Complex beta, AmplitudeConvention convention);

/// |alpha - beta|^2, the Poisson mean of the printed series.
double effective_mean_photon(Complex alpha, double beta);

/// Poisson weights and factorial ratios for one amplitude, truncated by the
/// tail criterion. Throws NumericalError if max_terms is reached first.
class InversionSeries {
 public:
  InversionSeries(Complex delta, const SeriesConfig& cfg);

  Complex delta() const { return delta_; }
  int terms() const { return static_cast<int>(weights_.size()); }
  double retained_mass() const { return retained_mass_; }

  /// W at physical time t. `freeze_drive_phase` replaces every E_J t by 0
  /// (test hook isolating the JCM part).
  Complex evaluate(double g_magnitude, double e_j, double t, bool freeze_drive_phase = false) const;

 private:
  Complex delta_;
  std::vector<double> weights_;
  std::vector<double> ratio1_;  // n!/sqrt(n!(n+1)!)
  std::vector<double> ratio2_;  // n!/sqrt(n!(n+2)!)
  double retained_mass_ = 0.0;
};

/// Samples the series on `grid`; each sample's imaginary residue must stay below 1e-10.
std::vector<double> inversion_series(const InversionSeries& series, double g_magnitude, double e_j, const TimeGrid& grid,
                                     Execution exec = Execution::parallel, bool freeze_drive_phase = false);

/// W(tau) for |e> (x) |alpha> at the one-photon resonance. Requires a real,
/// nonzero beta in `p`.
EvolutionResult analytic_inversion(Complex alpha, const SystemParams& p, const TimeGrid& grid,
                                   const SeriesConfig& cfg = {},
                                   AmplitudeConvention convention = AmplitudeConvention::printed,
                                   Execution exec = Execution::parallel);

}  // namespace cqed
