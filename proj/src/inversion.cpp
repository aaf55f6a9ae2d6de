#include "cqed/inversion.hpp"

#include <cmath>
#include <sstream>

namespace cqed {

void SeriesConfig::validate() const {
  if (!(tail_epsilon > 0.0 && tail_epsilon < 1e-3)) {
    throw std::invalid_argument("SeriesConfig: tail_epsilon must lie in (0, 1e-3)");
  }
  if (max_terms < 1) throw std::invalid_argument("SeriesConfig: max_terms must be positive");
}

const char* to_string(AmplitudeConvention c) {
  return c == AmplitudeConvention::printed ? "printed" : "operator";
}

Complex effective_amplitude(Complex alpha, Complex beta, AmplitudeConvention convention) {
  if (convention == AmplitudeConvention::printed) {
    return alpha - beta;
  }
  return alpha - 0.5 * kI * std::conj(beta);
}

double effective_mean_photon(Complex alpha, double beta) { return std::norm(alpha - beta); }

InversionSeries::InversionSeries(Complex delta, const SeriesConfig& cfg) : delta_(delta) {
  cfg.validate();
  const double r2 = std::norm(delta);
  const double log_r2 = r2 > 0.0 ? std::log(r2) : 0.0;
  double mass = 0.0;
  for (int n = 0;; ++n) {
    if (n >= cfg.max_terms) {
      std::ostringstream msg;
      msg << "inversion series: max_terms = " << cfg.max_terms << " reached with Poisson mass " << mass
          << " (|d|^2 = " << r2 << " too large for this configuration)";
      throw NumericalError(msg.str());
    }
    double w = 0.0;
    if (r2 == 0.0) {
      w = n == 0 ? 1.0 : 0.0;
    } else {
      w = std::exp(-r2 + n * log_r2 - std::lgamma(n + 1.0));
    }
    weights_.push_back(w);
    // Log space keeps these finite past n ~ 170.
    ratio1_.push_back(std::exp(std::lgamma(n + 1.0) - 0.5 * std::lgamma(n + 1.0) - 0.5 * std::lgamma(n + 2.0)));
    ratio2_.push_back(std::exp(std::lgamma(n + 1.0) - 0.5 * std::lgamma(n + 1.0) - 0.5 * std::lgamma(n + 3.0)));
    mass += w;
    if (mass >= 1.0 - cfg.tail_epsilon && static_cast<double>(n) >= r2) break;
  }
  retained_mass_ = mass;
}

Complex InversionSeries::evaluate(double g_magnitude, double e_j, double t, bool freeze_drive_phase) const {
  const int terms = this->terms();
  const double x = g_magnitude * t;
  const double drive = freeze_drive_phase ? 0.0 : e_j * t;
  std::vector<double> c(static_cast<std::size_t>(terms + 2));
  std::vector<double> s(static_cast<std::size_t>(terms + 2));
  for (int k = 0; k < terms + 2; ++k) {
    const double arg = x * std::sqrt(static_cast<double>(k));
    c[static_cast<std::size_t>(k)] = std::cos(arg);
    s[static_cast<std::size_t>(k)] = std::sin(arg);
  }
  const Complex up = std::exp(kI * drive);
  const Complex down = std::conj(up);
  const Complex bracket1 = std::conj(delta_) * up + delta_ * down;
  const Complex bracket2 = std::conj(delta_ * delta_) * up + delta_ * delta_ * down;
  const double cos_drive = std::cos(drive);

  Complex sum{};
  for (int n = 0; n < terms; ++n) {
    const auto i = static_cast<std::size_t>(n);
    const Complex term = 2.0 * cos_drive * c[i + 1] * c[i] + bracket1 * ratio1_[i] * (c[i + 2] - c[i]) * s[i + 1] -
                         bracket2 * ratio2_[i] * s[i + 2] * s[i + 1];
    sum += weights_[i] * term;
  }
  return 0.5 * sum;
}

std::vector<double> inversion_series(const InversionSeries& series, double g_magnitude, double e_j, const TimeGrid& grid,
                                     Execution exec, bool freeze_drive_phase) {
  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<double> out(grid.size());
  std::vector<double> residue(grid.size());
  auto point = [&](std::ptrdiff_t i) {
    const auto k = static_cast<std::size_t>(i);
    const Complex w = series.evaluate(g_magnitude, e_j, grid.physical_time(k), freeze_drive_phase);
    out[k] = w.real();
    residue[k] = std::abs(w.imag());
  };
  if (exec == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) point(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) point(i);
  }
  for (std::size_t k = 0; k < residue.size(); ++k) {
    if (residue[k] > 1e-10) {
      std::ostringstream msg;
      msg << "inversion series: imaginary residue " << residue[k] << " at tau = " << grid.tau()[k];
      throw NumericalError(msg.str());
    }
  }
  return out;
}

EvolutionResult analytic_inversion(Complex alpha, const SystemParams& p, const TimeGrid& grid, const SeriesConfig& cfg,
                                   AmplitudeConvention convention, Execution exec) {
  if (p.beta.imag() != 0.0) {
    throw std::invalid_argument("analytic inversion requires a real beta; use the transformed operator path for complex beta");
  }
  if (!(p.g_magnitude() > 0.0)) {
    throw std::invalid_argument("analytic inversion requires |g| = |beta| omega / 2 > 0");
  }
  std::vector<std::string> warnings;
  if (!resonance_check(p, Resonance::one_photon).satisfied) {
    warnings.emplace_back("one-photon resonance not satisfied; the closed form assumes omega = E_J and gamma = pi/4");
  }
  if (p.e_z != 0.0) {
    warnings.emplace_back("e_z != 0 is not represented by the closed form");
  }
  const InversionSeries series(effective_amplitude(alpha, p.beta, convention), cfg);
  std::vector<double> w = inversion_series(series, p.g_magnitude(), p.e_j, grid, exec);
  return EvolutionResult{grid,         {}, std::move(w), Method::closed_form_series, std::nullopt, p, std::move(warnings),
                         std::norm(series.delta())};
}

}  // namespace cqed
