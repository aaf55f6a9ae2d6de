#include "cqed/validation.hpp"

#include <chrono>
#include <cmath>

#include "cqed/dynamics.hpp"
#include "cqed/inversion.hpp"

namespace cqed {

namespace {

// Fock levels near the cutoff where truncated displacements lose unitarity.
constexpr int kEdgeLevels = 10;

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SystemParams reference_params(double beta) {
  SystemParams p;
  p.omega = 1.0;
  p.e_j = 1.0;
  p.e_z = 0.0;
  p.gamma = kPi / 4.0;
  p.beta = beta;
  return p;
}

}  // namespace

std::vector<ValidationCheck> run_validation_suite(int n_max) {
  const auto start = std::chrono::steady_clock::now();
  std::vector<ValidationCheck> checks;
  auto record = [&](std::string name, double value, double tolerance) {
    checks.push_back({std::move(name), value, tolerance, std::isfinite(value) && value < tolerance});
  };

  const FockCutoff cutoff(n_max);
  const SystemParams p = reference_params(0.2);
  SystemParams detuned = p;
  detuned.e_z = 0.3;
  detuned.beta = Complex(0.15, -0.1);

  const OperatorMatrix h_full = build_full_hamiltonian(detuned, cutoff);
  const OperatorMatrix h_jcm = build_jcm_hamiltonian(detuned, cutoff);
  const OperatorMatrix h_two = build_two_photon_hamiltonian(detuned, cutoff);
  record("hermiticity/full", hermiticity_defect(h_full), 1e-12);
  record("hermiticity/jcm", hermiticity_defect(h_jcm), 1e-12);
  record("hermiticity/two_photon", hermiticity_defect(h_two), 1e-12);

  record("unitarity/propagator_full", unitarity_defect(propagator(h_full, 3.7)), 1e-10);
  record("unitarity/propagator_two_photon", unitarity_defect(propagator(h_two, 11.0)), 1e-10);

  auto commutator = [](const OperatorMatrix& a, const OperatorMatrix& b) { return a * b - b * a; };
  const OperatorMatrix zero = identity(Space::composite, cutoff) - identity(Space::composite, cutoff);
  record("commutator/jcm_excitation",
         interior_deviation(commutator(h_jcm, jcm_excitation_operator(cutoff)), zero, 2), 1e-12);
  record("commutator/two_photon_excitation",
         interior_deviation(commutator(h_two, two_photon_excitation_operator(cutoff)), zero, 2), 1e-12);

  // Norm conservation along a full-H trajectory.
  {
    const Complex alpha(1.2, 0.4);
    const StateVector psi0 = product_state(Qubit::e, coherent_state(alpha, cutoff));
    const TimeGrid grid = TimeGrid::uniform(20.0, 41, detuned.g_magnitude());
    const EvolutionResult r = evolve_numeric(h_full, psi0, grid, Method::full_numeric, detuned,
                                             {.execution = Execution::serial, .keep_states = true});
    double worst = 0.0;
    for (const StateVector& s : r.states) worst = std::max(worst, std::abs(s.norm() - 1.0));
    record("norm/full_trajectory", worst, 1e-9);
  }

  // T(t) unitarity away from the cutoff edge.
  {
    const TransformFamily family(detuned, cutoff);
    double worst = 0.0;
    for (double t : {0.0, 0.9, 2.5, 7.0}) worst = std::max(worst, unitarity_defect(family.at(t), kEdgeLevels));
    record("unitarity/transform_T_interior", worst, 1e-8);
    // Rotated D(t) against a fresh displacement with xi(t) = i beta^* e^{i omega t}.
    const double t = 2.5;
    const Complex xi = kI * std::conj(detuned.beta) * std::exp(kI * detuned.omega * t);
    const Complex scalar = std::exp(kI * (detuned.e_z * t + 0.5 * detuned.gamma));
    record("oracle/rotated_vs_direct_displacement",
           max_abs(family.displacement_at(t) - scalar * displacement(0.5 * xi, cutoff).matrix()), 1e-10);
  }

  // D(a) D(b) = exp(i Im(a b^*)) D(a + b).
  {
    const Complex a(0.3, 0.1);
    const Complex b(-0.2, 0.4);
    const OperatorMatrix lhs = displacement(a, cutoff) * displacement(b, cutoff);
    const OperatorMatrix rhs = std::exp(kI * std::imag(a * std::conj(b))) * displacement(a + b, cutoff);
    record("displacement/composition_law", interior_deviation(lhs, rhs, kEdgeLevels), 1e-6);
    const StateVector displaced_vacuum = apply(displacement(a, cutoff), fock_state(0, cutoff));
    const StateVector coherent = coherent_state(a, cutoff);
    record("displacement/vacuum_to_coherent",
           (displaced_vacuum.amplitudes() - coherent.amplitudes()).head(cutoff.field_dim() - kEdgeLevels).cwiseAbs().maxCoeff(),
           1e-10);
  }

  // Closed-form JCM evolution operator against exp(-i H_jcm t).
  {
    double worst = 0.0;
    for (double t : {0.5, 4.0, 17.0}) {
      worst = std::max(worst, max_abs(jcm_evolution_operator(detuned, t, cutoff).matrix() -
                                      propagator(build_jcm_hamiltonian(detuned, cutoff), t).matrix()));
    }
    record("oracle/jcm_closed_form_vs_propagator", worst, 1e-10);
  }

  // Transformed path against the operator-convention series.
  {
    const Complex alpha(1.0, 0.5);
    const TimeGrid grid = TimeGrid::uniform(25.0, 101, p.g_magnitude());
    const StateVector psi0 = product_state(Qubit::e, coherent_state(alpha, cutoff));
    const EvolutionResult transformed = evolve_transformed(p, psi0, grid, cutoff, {.execution = Execution::serial});
    const EvolutionResult series =
        analytic_inversion(alpha, p, grid, SeriesConfig{}, AmplitudeConvention::operator_path, Execution::serial);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      worst = std::max(worst, std::abs(transformed.sigma_z[i] - series.sigma_z[i]));
    }
    record("oracle/transformed_vs_series", worst, 1e-8);

    const EvolutionResult transformed_par = evolve_transformed(p, psi0, grid, cutoff, {.execution = Execution::parallel});
    double diff = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      diff = std::max(diff, std::abs(transformed.sigma_z[i] - transformed_par.sigma_z[i]));
    }
    record("execution/serial_vs_parallel_transformed", diff, 1e-12);
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  record("runtime/seconds", seconds, 60.0);
  return checks;
}

}  // namespace cqed
