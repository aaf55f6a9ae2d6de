#include "cqed/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

namespace cqed {

namespace {

// Sliding extremum over centered windows [tau_i - h, tau_i + h] on a sorted grid.
template <typename Better>
std::vector<double> sliding_extremum(std::span<const double> tau, std::span<const double> w, double half, Better better) {
  const std::size_t n = tau.size();
  std::vector<double> out(n);
  std::deque<std::size_t> window;
  std::size_t right = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (right < n && tau[right] <= tau[i] + half) {
      while (!window.empty() && !better(w[window.back()], w[right])) window.pop_back();
      window.push_back(right);
      ++right;
    }
    while (tau[window.front()] < tau[i] - half) window.pop_front();
    out[i] = w[window.front()];
  }
  return out;
}

std::vector<double> sliding_max(std::span<const double> tau, std::span<const double> w, double half) {
  return sliding_extremum(tau, w, half, [](double kept, double incoming) { return kept > incoming; });
}

std::vector<double> sliding_min(std::span<const double> tau, std::span<const double> w, double half) {
  return sliding_extremum(tau, w, half, [](double kept, double incoming) { return kept < incoming; });
}

// Peak position: centre of a flat top, otherwise a parabola through three samples.
double locate_peak(std::span<const double> tau, const std::vector<double>& a, std::size_t i) {
  std::size_t lo = i;
  std::size_t hi = i;
  while (lo > 0 && a[lo - 1] == a[i]) --lo;
  while (hi + 1 < a.size() && a[hi + 1] == a[i]) ++hi;
  if (hi > lo) return 0.5 * (tau[lo] + tau[hi]);
  if (i == 0 || i + 1 >= a.size()) return tau[i];
  const double x0 = tau[i - 1], x1 = tau[i], x2 = tau[i + 1];
  const double y0 = a[i - 1], y1 = a[i], y2 = a[i + 1];
  const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
  const double c2 = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
  const double c1 = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
  if (!(c2 < 0.0)) return x1;
  return std::clamp(-c1 / (2.0 * c2), x0, x2);
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 == 1 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

std::vector<EnvelopePoint> envelope(std::span<const double> tau, std::span<const double> w, double window_tau) {
  if (tau.size() != w.size()) throw std::invalid_argument("envelope: tau and W lengths differ");
  if (tau.size() < 2) throw std::invalid_argument("envelope: need at least two samples");
  double max_step = 0.0;
  for (std::size_t i = 1; i < tau.size(); ++i) max_step = std::max(max_step, tau[i] - tau[i - 1]);
  if (!(window_tau > max_step)) {
    throw std::invalid_argument("envelope: window_tau must exceed the grid spacing");
  }
  const double half = 0.5 * window_tau;
  const auto upper = sliding_max(tau, w, half);
  const auto lower = sliding_min(tau, w, half);
  std::vector<EnvelopePoint> out(tau.size());
  for (std::size_t i = 0; i < tau.size(); ++i) out[i] = {tau[i], upper[i], lower[i]};
  return out;
}

std::vector<EnvelopePoint> envelope(const EvolutionResult& trace, double window_tau) {
  return envelope(trace.grid.tau(), trace.sigma_z, window_tau);
}

double ordinary_revival_tau(double mean_photon) { return 2.0 * kPi * std::sqrt(mean_photon); }

RevivalReport detect_revivals(std::span<const double> tau, std::span<const double> w, const RevivalOptions& options) {
  if (tau.size() < 3 || tau.back() - tau.front() < 2.0 * options.window_tau) {
    throw std::invalid_argument("detect_revivals: trace too short for the envelope window");
  }
  if (options.revival_tau && tau.back() - tau.front() < *options.revival_tau) {
    throw std::invalid_argument("detect_revivals: trace too short to contain one revival time");
  }
  const auto env = envelope(tau, w, options.window_tau);
  const std::size_t n = env.size();
  std::vector<double> half_width(n);
  for (std::size_t i = 0; i < n; ++i) half_width[i] = 0.5 * (env[i].upper - env[i].lower);

  RevivalReport report;

  // Revival events: hysteresis on the half-width. The initial peak at tau = 0
  // is the reference state, not an event.
  const double thr = options.revival_threshold;
  bool rising = false;
  double run_min = half_width[0];
  double run_max = 0.0;
  std::size_t max_idx = 0;
  std::size_t first_trough = 0;
  std::optional<std::size_t> trough_before_first;
  auto emit = [&](std::size_t idx) {
    if (report.revival_events.empty()) trough_before_first = first_trough;
    report.revival_events.push_back({locate_peak(tau, half_width, idx), half_width[idx]});
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double a = half_width[i];
    if (!rising) {
      if (a < run_min) {
        run_min = a;
        if (report.revival_events.empty()) first_trough = i;
      }
      if (a >= run_min + thr) {
        rising = true;
        run_max = a;
        max_idx = i;
      }
    } else {
      if (a > run_max) {
        run_max = a;
        max_idx = i;
      }
      if (a <= run_max - thr) {
        emit(max_idx);
        rising = false;
        run_min = a;
      }
    }
  }
  // An unconfirmed final peak counts if it is not pinned to the trace edge.
  if (rising && tau.back() - tau[max_idx] >= options.window_tau) emit(max_idx);

  for (std::size_t i = 0; i < n; ++i) {
    if (env[i].upper - env[i].lower < options.collapse_threshold) {
      report.collapse_tau = tau[i];
      report.collapse_complete = true;
      break;
    }
  }
  if (!report.collapse_tau && trough_before_first) {
    report.collapse_tau = tau[*trough_before_first];
  }

  // Super-revival: trough-then-peak of the envelope of envelopes, whose window
  // spans two ordinary revival periods.
  std::optional<double> revival_tau = options.revival_tau;
  if (!revival_tau) {
    const auto& ev = report.revival_events;
    if (ev.size() >= 2) {
      std::vector<double> spacing;
      for (std::size_t k = 1; k < ev.size(); ++k) spacing.push_back(ev[k].tau_peak - ev[k - 1].tau_peak);
      revival_tau = median(spacing);
    } else if (ev.size() == 1) {
      revival_tau = ev.front().tau_peak;
    }
  }
  if (!revival_tau || report.revival_events.empty()) {
    return report;
  }
  report.super_window_tau = 2.0 * *revival_tau;
  const auto super_env = sliding_max(tau, half_width, 0.5 * report.super_window_tau);

  std::vector<std::size_t> prefix_arg(n), suffix_arg(n);
  prefix_arg[0] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    prefix_arg[i] = super_env[i] > super_env[prefix_arg[i - 1]] ? i : prefix_arg[i - 1];
  }
  suffix_arg[n - 1] = n - 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    suffix_arg[i] = super_env[i] >= super_env[suffix_arg[i + 1]] ? i : suffix_arg[i + 1];
  }
  double best = 0.0;
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double depth = std::min(super_env[prefix_arg[i]] - super_env[i], super_env[suffix_arg[i]] - super_env[i]);
    if (depth > best) {
      best = depth;
      best_i = i;
    }
  }
  report.super_revival.modulation_depth = std::clamp(best, 0.0, 1.0);
  report.super_revival.detected = best >= options.super_depth;
  if (report.super_revival.detected) {
    report.super_revival.envelope_period = tau[suffix_arg[best_i]] - tau[prefix_arg[best_i]];
  }
  return report;
}

RevivalReport detect_revivals(const EvolutionResult& trace, RevivalOptions options) {
  if (!options.revival_tau && trace.mean_photon && *trace.mean_photon > 0.0) {
    options.revival_tau = ordinary_revival_tau(*trace.mean_photon);
  }
  return detect_revivals(trace.grid.tau(), trace.sigma_z, options);
}

double sup_deviation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw std::invalid_argument("sup_deviation: length mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

double mean_abs_deviation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) throw std::invalid_argument("mean_abs_deviation: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum / static_cast<double>(a.size());
}

std::vector<ConvergencePoint> convergence_study(const SystemParams& p,
                                                const std::function<StateVector(const FockCutoff&)>& initial,
                                                const TimeGrid& grid, const std::vector<FockCutoff>& cutoffs,
                                                Execution exec) {
  if (cutoffs.size() < 2) throw std::invalid_argument("convergence_study: need at least two cutoffs");
  for (std::size_t k = 1; k < cutoffs.size(); ++k) {
    if (cutoffs[k].n_max() < cutoffs[k - 1].n_max()) {
      throw std::invalid_argument("convergence_study: cutoffs must be non-decreasing");
    }
  }
  std::vector<ConvergencePoint> out;
  std::vector<double> previous;
  for (const FockCutoff& cutoff : cutoffs) {
    const EvolutionResult r = evolve_numeric(build_full_hamiltonian(p, cutoff), initial(cutoff), grid,
                                             Method::full_numeric, p, {.execution = exec, .keep_states = false});
    out.push_back({cutoff.n_max(), previous.empty() ? 0.0 : sup_deviation(previous, r.sigma_z)});
    previous = r.sigma_z;
  }
  return out;
}

std::vector<ConvergencePoint> convergence_study(const SystemParams& p, Complex alpha, const TimeGrid& grid,
                                                const std::vector<FockCutoff>& cutoffs, Execution exec) {
  const auto initial = [alpha](const FockCutoff& cutoff) {
    return product_state(Qubit::e, coherent_state(alpha, cutoff, true));
  };
  return convergence_study(p, initial, grid, cutoffs, exec);
}

}  // namespace cqed
