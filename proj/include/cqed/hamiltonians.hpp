// Hamiltonians of a charge qubit coupled to a single cavity mode (hbar = 1).
#pragma once

#include "cqed/operator_algebra.hpp"

namespace cqed {

inline constexpr double kPi = 3.14159265358979323846;

/// Circuit-level description: charging energy, gate charge, Josephson
/// energy, classical flux in units of the flux quantum, and the quantum-flux
/// coupling beta = pi * eta / Phi_0.
struct CircuitParams {
  double e_ch = 0.0;
  double n_g = 0.5;
  double e_j = 0.0;
  double phi_ratio = 0.25;
  Complex beta{};

  void validate() const;

  bool operator==(const CircuitParams&) const = default;
};

struct SystemParams {
  double omega = 1.0;  // cavity angular frequency
  double e_z = 0.0;    // qubit energy (sigma_z coefficient)
  double e_j = 1.0;    // Josephson energy
  double gamma = kPi / 4.0;
  Complex beta{};

  void validate() const;

  /// |g| = |beta| omega / 2.
  double g_magnitude() const { return std::abs(beta) * omega / 2.0; }
  /// g = beta omega / 2, carrying the phase of beta.
  Complex g() const { return beta * (omega / 2.0); }

  bool operator==(const SystemParams&) const = default;
};

SystemParams derive_system_params(const CircuitParams& c);

/// omega a^dag a + e_z sigma_z - e_j sigma_x (x) cos(gamma + beta a + beta^* a^dag),
/// with the cosine evaluated by spectral decomposition.
OperatorMatrix build_full_hamiltonian(const SystemParams& p, const FockCutoff& cutoff);

/// -i g^* (sigma_- (x) a^dag) + i g (sigma_+ (x) a).
OperatorMatrix build_jcm_hamiltonian(const SystemParams& p, const FockCutoff& cutoff);

/// Two-photon exchange Hamiltonian, hermitized:
///   i (E_J/2) [ beta^*2 a^dag2 sigma_- - beta^2 a^2 sigma_+ ].
/// The printed form, i (E_J/2)[beta^*2 a^dag2 sigma_+ - beta^2 a^2 sigma_+], is
/// not Hermitian; this keeps its coefficients and pairs a^dag2 with sigma_-,
/// coupling |e,n> to |g,n+2>.
OperatorMatrix build_two_photon_hamiltonian(const SystemParams& p, const FockCutoff& cutoff);

enum class Resonance { one_photon, two_photon };

struct ResonanceStatus {
  bool satisfied = false;
  double detuning = 0.0;      // omega - E_J, or 2 omega - E_J
  double gamma_offset = 0.0;  // gamma - pi/4 wrapped to (-pi/2, pi/2]
};

ResonanceStatus resonance_check(const SystemParams& p, Resonance which);

/// Excitation-number operators conserved by the resonant models.
OperatorMatrix jcm_excitation_operator(const FockCutoff& cutoff);
OperatorMatrix two_photon_excitation_operator(const FockCutoff& cutoff);

}  // namespace cqed
