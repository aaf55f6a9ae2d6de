// Collapse / revival / super-revival features of inversion traces.
#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "cqed/dynamics.hpp"

namespace cqed {

inline constexpr double kDefaultEnvelopeWindow = kPi / 2.0;

struct EnvelopePoint {
  double tau;
  double upper;
  double lower;
};

/// Sliding max/min of `w` over centered windows of width `window_tau`.
std::vector<EnvelopePoint> envelope(std::span<const double> tau, std::span<const double> w, double window_tau);
std::vector<EnvelopePoint> envelope(const EvolutionResult& trace, double window_tau = kDefaultEnvelopeWindow);

struct RevivalEvent {
  double tau_peak;
  double amplitude;  // envelope half-width (upper - lower) / 2 at the peak

  bool operator==(const RevivalEvent&) const = default;
};

struct SuperRevival {
  bool detected = false;
  std::optional<double> envelope_period;  // distance between the two super-envelope peaks
  double modulation_depth = 0.0;          // trough-then-peak depth of the super-envelope

  bool operator==(const SuperRevival&) const = default;
};

struct RevivalReport {
  std::optional<double> collapse_tau;
  bool collapse_complete = false;  // envelope width fell below the collapse threshold
  std::vector<RevivalEvent> revival_events;
  SuperRevival super_revival;
  double super_window_tau = 0.0;  // window of the envelope-of-envelopes

  bool operator==(const RevivalReport&) const = default;
};

struct RevivalOptions {
  double collapse_threshold = 0.1;  // on envelope width
  double revival_threshold = 0.25;  // hysteresis on envelope half-width
  double super_depth = 0.1;
  double window_tau = kDefaultEnvelopeWindow;
  /// Ordinary revival time 2 pi sqrt(n). When absent it is estimated from the
  /// spacing of detected revivals.
  std::optional<double> revival_tau;
};

/// 2 pi sqrt(mean_photon).
double ordinary_revival_tau(double mean_photon);

RevivalReport detect_revivals(std::span<const double> tau, std::span<const double> w, const RevivalOptions& options = {});

/// Uses the trace's mean photon number for the revival time unless the
/// options already carry one.
RevivalReport detect_revivals(const EvolutionResult& trace, RevivalOptions options = {});

struct ConvergencePoint {
  int n_max;
  double sup_deviation;  // against the previous cutoff; 0 for the first entry
};

/// Evolves |e> (x) |alpha> under the full Hamiltonian at each cutoff and
/// reports the sup-norm change of W between consecutive cutoffs.
std::vector<ConvergencePoint> convergence_study(const SystemParams& p, Complex alpha, const TimeGrid& grid,
                                                const std::vector<FockCutoff>& cutoffs,
                                                Execution exec = Execution::parallel);

/// Same, for an arbitrary initial state built at each cutoff.
std::vector<ConvergencePoint> convergence_study(const SystemParams& p,
                                                const std::function<StateVector(const FockCutoff&)>& initial,
                                                const TimeGrid& grid, const std::vector<FockCutoff>& cutoffs,
                                                Execution exec = Execution::parallel);

double sup_deviation(std::span<const double> a, std::span<const double> b);
double mean_abs_deviation(std::span<const double> a, std::span<const double> b);

}  // namespace cqed
