#include "cqed/hamiltonians.hpp"

#include <cmath>
#include <sstream>

namespace cqed {

namespace {

void require_hermitian(const OperatorMatrix& h, const char* what) {
  const double defect = hermiticity_defect(h);
  if (defect > 1e-12) {
    std::ostringstream msg;
    msg << what << ": result not Hermitian (defect " << defect << ")";
    throw std::logic_error(msg.str());
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void CircuitParams::validate() const {
  if (!(e_ch > 0.0)) throw std::invalid_argument("CircuitParams: e_ch must be > 0");
  if (!(e_j > 0.0)) throw std::invalid_argument("CircuitParams: e_j must be > 0");
  if (!(n_g >= 0.0 && n_g <= 1.0)) throw std::invalid_argument("CircuitParams: n_g must lie in [0, 1]");
  if (!std::isfinite(phi_ratio) || !finite(beta)) throw std::invalid_argument("CircuitParams: non-finite value");
}

void SystemParams::validate() const {
  if (!(omega > 0.0)) throw std::invalid_argument("SystemParams: omega must be > 0");
  if (!(e_j > 0.0)) throw std::invalid_argument("SystemParams: e_j must be > 0");
  if (!std::isfinite(e_z) || !std::isfinite(gamma) || !finite(beta)) {
    throw std::invalid_argument("SystemParams: non-finite value");
  }
}

SystemParams derive_system_params(const CircuitParams& c) {
  c.validate();
  SystemParams p;
  p.omega = 4.0 * c.e_ch;
  p.e_z = -2.0 * c.e_ch * (1.0 - 2.0 * c.n_g);
  p.e_j = c.e_j;
  p.gamma = kPi * c.phi_ratio;
  p.beta = c.beta;
  return p;
}

OperatorMatrix build_full_hamiltonian(const SystemParams& p, const FockCutoff& cutoff) {
  const OperatorMatrix a = annihilation(cutoff);
  const OperatorMatrix ad = creation(cutoff);
  const OperatorMatrix phase_arg = p.gamma * identity(Space::field_only, cutoff) + p.beta * a + std::conj(p.beta) * ad;
  // beta a + beta^* a^dag is Hermitian up to rounding in the sum; symmetrize.
  const OperatorMatrix arg_h(Space::field_only, 0.5 * (phase_arg.matrix() + phase_arg.matrix().adjoint()));
  const OperatorMatrix cosine = hermitian_function(arg_h, [](double x) { return Complex{std::cos(x)}; });

  const OperatorMatrix h = p.omega * tensor(qubit_identity(), number_operator(cutoff)) +
                           p.e_z * tensor(pauli(Pauli::z), identity(Space::field_only, cutoff)) -
                           p.e_j * tensor(pauli(Pauli::x), cosine);
  // Hermitian by construction; remove the rounding asymmetry of V f V^dag.
  OperatorMatrix sym(Space::composite, 0.5 * (h.matrix() + h.matrix().adjoint()));
  require_hermitian(sym, "build_full_hamiltonian");
  return sym;
}

OperatorMatrix build_jcm_hamiltonian(const SystemParams& p, const FockCutoff& cutoff) {
  const Complex g = p.g();
  const OperatorMatrix h = (-kI * std::conj(g)) * tensor(pauli(Pauli::minus), creation(cutoff)) +
                           (kI * g) * tensor(pauli(Pauli::plus), annihilation(cutoff));
  require_hermitian(h, "build_jcm_hamiltonian");
  return h;
}

OperatorMatrix build_two_photon_hamiltonian(const SystemParams& p, const FockCutoff& cutoff) {
  const OperatorMatrix a = annihilation(cutoff);
  const OperatorMatrix ad = creation(cutoff);
  const Complex c = kI * (p.e_j / 2.0) * std::conj(p.beta * p.beta);
  const OperatorMatrix emit = c * tensor(pauli(Pauli::minus), ad * ad);
  const OperatorMatrix h = emit + emit.adjoint();
  require_hermitian(h, "build_two_photon_hamiltonian");
  return h;
}

ResonanceStatus resonance_check(const SystemParams& p, Resonance which) {
  ResonanceStatus status;
  status.detuning = which == Resonance::one_photon ? p.omega - p.e_j : 2.0 * p.omega - p.e_j;
  // Wrap gamma - pi/4 into (-pi/2, pi/2].
  double offset = std::remainder(p.gamma - kPi / 4.0, kPi);
  if (offset <= -kPi / 2.0) offset += kPi;
  status.gamma_offset = offset;
  constexpr double kRelTol = 1e-9;
  status.satisfied = std::abs(status.detuning) <= kRelTol * p.e_j && std::abs(offset) <= kRelTol * (kPi / 4.0);
  return status;
}

OperatorMatrix jcm_excitation_operator(const FockCutoff& cutoff) {
  return 0.5 * tensor(pauli(Pauli::z), identity(Space::field_only, cutoff)) +
         tensor(qubit_identity(), number_operator(cutoff));
}

OperatorMatrix two_photon_excitation_operator(const FockCutoff& cutoff) {
  return tensor(pauli(Pauli::z), identity(Space::field_only, cutoff)) +
         tensor(qubit_identity(), number_operator(cutoff));
}

}  // namespace cqed
