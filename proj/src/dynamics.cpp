#include "cqed/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace cqed {

namespace {

constexpr double kNormTolerance = 1e-9;

void check_norm(const Vector& psi, std::size_t index) {
  const double dev = std::abs(psi.squaredNorm() - 1.0);
  if (dev > kNormTolerance) {
    std::ostringstream msg;
    msg << "state norm drifted by " << dev << " at grid point " << index;
    throw NumericalError(msg.str());
  }
}

double photon_number_of(const Vector& psi) {
  const auto nf = psi.size() / 2;
  double mean = 0.0;
  for (Eigen::Index n = 0; n < nf; ++n) {
    mean += static_cast<double>(n) * (std::norm(psi(n)) + std::norm(psi(nf + n)));
  }
  return mean;
}

double sigma_z_of(const Vector& psi) {
  const auto nf = psi.size() / 2;
  return psi.tail(nf).squaredNorm() - psi.head(nf).squaredNorm();
}

// Diagonals of cos(x sqrt(a a^dag)), cos(x sqrt(a^dag a)) and
// sin(x sqrt(a a^dag)) / sqrt(a a^dag), taken from the spectral functions of
// the (diagonal) number-type operators.
struct JcmDiagonals {
  RealVector cos_n1;
  RealVector cos_n;
  RealVector sin_n1;
};

JcmDiagonals jcm_diagonals(const RealVector& aad, const RealVector& ada, double x) {
  JcmDiagonals d{RealVector(aad.size()), RealVector(ada.size()), RealVector(aad.size())};
  for (Eigen::Index k = 0; k < aad.size(); ++k) {
    const double w1 = std::max(0.0, aad(k));
    const double w0 = std::max(0.0, ada(k));
    d.cos_n1(k) = std::cos(x * std::sqrt(w1));
    d.cos_n(k) = std::cos(x * std::sqrt(w0));
    // sin(x sqrt w)/sqrt w -> x as w -> 0 (only the truncated top level).
    d.sin_n1(k) = w1 > 0.0 ? std::sin(x * std::sqrt(w1)) / std::sqrt(w1) : x;
  }
  return d;
}

struct NumberSpectra {
  RealVector aad;  // diag(a a^dag) = (1, 2, ..., n_max, 0)
  RealVector ada;  // diag(a^dag a) = (0, 1, ..., n_max)
};

NumberSpectra number_spectra(const FockCutoff& cutoff) {
  const OperatorMatrix a = annihilation(cutoff);
  const OperatorMatrix ad = creation(cutoff);
  const SpectralDecomposition aad((a * ad).matrix());
  const SpectralDecomposition ada((ad * a).matrix());
  // Both are diagonal in the Fock basis, so eigenvalues are in Fock order.
  return {aad.eigenvalues(), ada.eigenvalues()};
}

Complex unit_phase(Complex beta) {
  if (beta == Complex{}) {
    throw std::invalid_argument("the JCM evolution operator needs beta != 0 (phase beta/|beta| undefined); "
                                "use the numeric JCM path for beta = 0");
  }
  return beta / std::abs(beta);
}

// U_I(t) applied to psi without forming the matrix.
Vector apply_jcm(const JcmDiagonals& d, Complex phase, const Vector& psi) {
  const auto nf = psi.size() / 2;
  Vector out(psi.size());
  for (Eigen::Index n = 0; n < nf; ++n) {
    Complex g_part = d.cos_n(n) * psi(n);
    Complex e_part = d.cos_n1(n) * psi(nf + n);
    if (n + 1 < nf) {
      // (e, n) <- (g, n+1): phase S_{n} sqrt(n+1)
      e_part += phase * d.sin_n1(n) * std::sqrt(static_cast<double>(n + 1)) * psi(n + 1);
    }
    if (n >= 1) {
      // (g, n) <- (e, n-1): -phase^* sqrt(n) S_{n-1}
      g_part -= std::conj(phase) * std::sqrt(static_cast<double>(n)) * d.sin_n1(n - 1) * psi(nf + n - 1);
    }
    out(n) = g_part;
    out(nf + n) = e_part;
  }
  return out;
}

}  // namespace

// TimeGrid -------------------------------------------------------------------

TimeGrid::TimeGrid(std::vector<double> tau_values, double g_magnitude)
    : tau_(std::move(tau_values)), g_magnitude_(g_magnitude) {
  if (tau_.empty() || tau_.front() != 0.0) {
    throw std::invalid_argument("TimeGrid: first value must be 0");
  }
  for (std::size_t i = 0; i < tau_.size(); ++i) {
    if (!std::isfinite(tau_[i])) throw std::invalid_argument("TimeGrid: non-finite value");
    if (i > 0 && !(tau_[i] > tau_[i - 1])) throw std::invalid_argument("TimeGrid: values must be strictly increasing");
  }
  if (!(g_magnitude_ > 0.0) || !std::isfinite(g_magnitude_)) {
    throw std::invalid_argument("TimeGrid: g_magnitude must be positive");
  }
}

TimeGrid TimeGrid::uniform(double tau_max, int n_points, double g_magnitude) {
  if (n_points < 2 || !(tau_max > 0.0)) {
    throw std::invalid_argument("TimeGrid::uniform: need n_points >= 2 and tau_max > 0");
  }
  std::vector<double> tau(static_cast<std::size_t>(n_points));
  for (int i = 0; i < n_points; ++i) {
    tau[static_cast<std::size_t>(i)] = tau_max * static_cast<double>(i) / static_cast<double>(n_points - 1);
  }
  return TimeGrid(std::move(tau), g_magnitude);
}

const char* to_string(Method m) {
  switch (m) {
    case Method::full_numeric:
      return "full_numeric";
    case Method::jcm_numeric:
      return "jcm_numeric";
    case Method::transformed_analytic:
      return "transformed_analytic";
    case Method::two_photon_numeric:
      return "two_photon_numeric";
    case Method::closed_form_series:
      return "closed_form_series";
  }
  return "?";
}

// Propagation -----------------------------------------------------------------

OperatorMatrix propagator(const OperatorMatrix& h, double t) {
  return hermitian_function(h, [t](double lambda) { return std::exp(-kI * (lambda * t)); });
}

EvolutionResult evolve_numeric(const OperatorMatrix& h, const StateVector& psi0, const TimeGrid& grid, Method method,
                               const SystemParams& params, const EvolveOptions& options) {
  if (h.space() != Space::composite || psi0.space() != Space::composite || h.dim() != psi0.dim()) {
    throw std::invalid_argument("evolve_numeric: Hamiltonian and state must share one composite space");
  }
  if (std::abs(psi0.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("evolve_numeric: initial state is not normalized");
  }
  const SpectralDecomposition spectrum(h.matrix());
  const Matrix& v = spectrum.eigenvectors();
  const RealVector& lambda = spectrum.eigenvalues();
  const Vector c0 = v.adjoint() * psi0.amplitudes();

  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<double> trace(grid.size());
  std::vector<Vector> kept(options.keep_states ? grid.size() : 0);

  auto point = [&](std::ptrdiff_t i) {
    const double t = grid.physical_time(static_cast<std::size_t>(i));
    Vector coeff(c0.size());
    for (Eigen::Index k = 0; k < c0.size(); ++k) {
      coeff(k) = std::exp(-kI * (lambda(k) * t)) * c0(k);
    }
    const Vector psi = v * coeff;
    check_norm(psi, static_cast<std::size_t>(i));
    trace[static_cast<std::size_t>(i)] = sigma_z_of(psi);
    if (options.keep_states) kept[static_cast<std::size_t>(i)] = psi;
  };

  if (options.execution == Execution::parallel) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) point(i);
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i) point(i);
  }

  EvolutionResult result{grid, {}, std::move(trace), method, h.cutoff(), params, {}, photon_number_of(psi0.amplitudes())};
  result.states.reserve(kept.size());
  for (auto& psi : kept) result.states.emplace_back(Space::composite, std::move(psi));
  return result;
}

OperatorMatrix jcm_evolution_operator(const SystemParams& p, double t, const FockCutoff& cutoff) {
  const Complex phase = unit_phase(p.beta);
  const NumberSpectra spectra = number_spectra(cutoff);
  const JcmDiagonals d = jcm_diagonals(spectra.aad, spectra.ada, p.g_magnitude() * t);
  const int nf = cutoff.field_dim();
  Matrix u = Matrix::Zero(2 * nf, 2 * nf);
  for (int n = 0; n < nf; ++n) {
    u(n, n) = d.cos_n(n);            // g block: 1/2 (C_{n+1} + C_n) - 1/2 (C_{n+1} - C_n)
    u(nf + n, nf + n) = d.cos_n1(n);  // e block
    if (n + 1 < nf) {
      const double root = std::sqrt(static_cast<double>(n + 1));
      u(nf + n, n + 1) = phase * d.sin_n1(n) * root;            // S_{n+1} a sigma_+
      u(n + 1, nf + n) = -std::conj(phase) * root * d.sin_n1(n);  // a^dag S_{n+1} sigma_-
    }
  }
  return OperatorMatrix(Space::composite, std::move(u));
}

// Transformation ----------------------------------------------------------------

TransformFamily::TransformFamily(const SystemParams& p, const FockCutoff& cutoff) : params_(p), cutoff_(cutoff) {
  const Complex xi0 = kI * std::conj(p.beta);
  d0_ = displacement(0.5 * xi0, cutoff).matrix();
}

Matrix TransformFamily::displacement_at(double t) const {
  const int nf = cutoff_.field_dim();
  const double theta = params_.omega * t;
  const Complex scalar = std::exp(kI * (params_.e_z * t + 0.5 * params_.gamma));
  Vector r(nf);
  for (int m = 0; m < nf; ++m) r(m) = std::exp(kI * (theta * m));
  return scalar * (r.asDiagonal() * d0_ * r.conjugate().asDiagonal());
}

OperatorMatrix TransformFamily::at(double t) const {
  const OperatorMatrix d(Space::field_only, displacement_at(t));
  const OperatorMatrix dd = d.adjoint();
  const OperatorMatrix body = (-0.5) * tensor(qubit_identity(), dd - d) - 0.5 * tensor(pauli(Pauli::z), dd + d) +
                              tensor(pauli(Pauli::plus), d) + tensor(pauli(Pauli::minus), dd);
  return (1.0 / std::sqrt(2.0)) * body;
}

OperatorMatrix transform_T(const SystemParams& p, double t, const FockCutoff& cutoff) {
  return TransformFamily(p, cutoff).at(t);
}

EvolutionResult evolve_transformed(const SystemParams& p, const StateVector& psi0, const TimeGrid& grid,
                                   const FockCutoff& cutoff, const EvolveOptions& options) {
  const Complex phase = unit_phase(p.beta);
  if (psi0.space() != Space::composite || psi0.dim() != cutoff.composite_dim()) {
    throw std::invalid_argument("evolve_transformed: initial state does not match the cutoff");
  }
  if (std::abs(psi0.norm() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("evolve_transformed: initial state is not normalized");
  }
  std::vector<std::string> warnings;
  const ResonanceStatus res = resonance_check(p, Resonance::one_photon);
  if (!res.satisfied) {
    std::ostringstream msg;
    msg << "one-photon resonance not satisfied (detuning " << res.detuning << ", gamma offset " << res.gamma_offset
        << "); the transformed-picture JCM is outside its validated regime";
    warnings.push_back(msg.str());
  }
  if (p.e_z != 0.0) {
    warnings.push_back("e_z != 0: outside the regime of the closed-form inversion");
  }

  const TransformFamily family(p, cutoff);
  const Vector psi_t0 = family.at(0.0).matrix() * psi0.amplitudes();
  const NumberSpectra spectra = number_spectra(cutoff);
  const int nf = cutoff.field_dim();
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);

  const auto n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<double> trace(grid.size());
  std::vector<Vector> kept(options.keep_states ? grid.size() : 0);

  auto finish = [&](std::ptrdiff_t i, Vector psi) {
    check_norm(psi, static_cast<std::size_t>(i));
    trace[static_cast<std::size_t>(i)] = sigma_z_of(psi);
    if (options.keep_states) kept[static_cast<std::size_t>(i)] = std::move(psi);
  };

  if (options.execution == Execution::serial) {
    // Reference: every factor formed as an explicit matrix.
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double t = grid.physical_time(static_cast<std::size_t>(i));
      const OperatorMatrix u_i = jcm_evolution_operator(p, t, cutoff);
      const OperatorMatrix u_0t = propagator(0.5 * p.e_j * tensor(pauli(Pauli::z), identity(Space::field_only, cutoff)), t);
      const OperatorMatrix t_dag = family.at(t).adjoint();
      finish(i, t_dag.matrix() * (u_0t.matrix() * (u_i.matrix() * psi_t0)));
    }
  } else {
    const Matrix& d0_bare = family.bare_displacement();
    const Matrix d0_bare_adj = d0_bare.adjoint();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const double t = grid.physical_time(static_cast<std::size_t>(i));
      const JcmDiagonals d = jcm_diagonals(spectra.aad, spectra.ada, p.g_magnitude() * t);
      Vector v = apply_jcm(d, phase, psi_t0);
      // U_0T = exp(-i E_J/2 sigma_z t): g block e^{+i E_J t/2}, e block e^{-i E_J t/2}.
      const Complex half = std::exp(kI * (0.5 * p.e_j * t));
      v.head(nf) *= half;
      v.tail(nf) *= std::conj(half);
      // T^dag [v_g; v_e] = [D^dag (v_g + v_e); D (v_g - v_e)] / sqrt2, D = s R D0 R^dag.
      const Complex s = std::exp(kI * (p.e_z * t + 0.5 * p.gamma));
      Vector r(nf);
      for (int m = 0; m < nf; ++m) r(m) = std::exp(kI * (p.omega * t * m));
      const Vector sum = r.conjugate().cwiseProduct(v.head(nf) + v.tail(nf));
      const Vector diff = r.conjugate().cwiseProduct(v.head(nf) - v.tail(nf));
      Vector psi(2 * nf);
      psi.head(nf) = (std::conj(s) * inv_sqrt2) * r.cwiseProduct(d0_bare_adj * sum);
      psi.tail(nf) = (s * inv_sqrt2) * r.cwiseProduct(d0_bare * diff);
      finish(i, std::move(psi));
    }
  }

  EvolutionResult result{grid, {},         std::move(trace), Method::transformed_analytic, cutoff, p, std::move(warnings),
                         photon_number_of(psi_t0)};
  result.states.reserve(kept.size());
  for (auto& psi : kept) result.states.emplace_back(Space::composite, std::move(psi));
  return result;
}

double expectation_sigma_z(const StateVector& psi) {
  if (psi.space() != Space::composite) {
    throw std::invalid_argument(std::string("expectation_sigma_z: expected a composite state, got ") +
                                to_string(psi.space()));
  }
  return sigma_z_of(psi.amplitudes());
}

}  // namespace cqed
