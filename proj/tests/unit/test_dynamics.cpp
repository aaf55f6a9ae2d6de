#include <doctest.h>

#include <cmath>

#include "cqed/dynamics.hpp"
#include "cqed/inversion.hpp"
#include "oracles.hpp"

using namespace cqed;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

SystemParams resonant(Complex beta) {
  SystemParams p;
  p.beta = beta;
  return p;
}

StateVector excited_coherent(Complex alpha, const FockCutoff& c) {
  return product_state(Qubit::e, coherent_state(alpha, c, true));
}

}  // namespace

TEST_CASE("time grid validation") {
  CHECK_THROWS_AS(TimeGrid({0.1, 0.2}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.0, 0.2, 0.2}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid({0.0, 1.0}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(TimeGrid::uniform(1.0, 1, 1.0), std::invalid_argument);
  const TimeGrid g = TimeGrid::uniform(25.0, 2000, 0.1);
  CHECK(g.size() == 2000);
  CHECK(g.tau().back() == 25.0);
  CHECK(g.physical_time(1999) == doctest::Approx(250.0));
}

TEST_CASE("propagator examples") {
  const FockCutoff c(3);
  const OperatorMatrix sz = tensor(pauli(Pauli::z), identity(Space::field_only, c));
  CHECK(max_abs(propagator(sz, 0.0).matrix() - Matrix::Identity(8, 8)) < 1e-15);
  const OperatorMatrix u = propagator(sz, kPi / 2.0);
  CHECK(std::abs(u(0, 0) - kI) < 1e-15);   // |g>: e^{+i pi/2}
  CHECK(std::abs(u(4, 4) + kI) < 1e-15);   // |e>: e^{-i pi/2}

  const OperatorMatrix h = build_full_hamiltonian(resonant(Complex(0.2, 0.1)), FockCutoff(15));
  const Matrix lhs = propagator(h, 1.3).matrix() * propagator(h, 2.1).matrix();
  CHECK(max_abs(lhs - propagator(h, 3.4).matrix()) < 1e-10);
  CHECK(unitarity_defect(propagator(h, 17.0)) < 1e-10);
}

TEST_CASE("evolve_numeric examples") {
  const FockCutoff c(6);
  const SystemParams p = resonant(0.2);
  const TimeGrid grid = TimeGrid::uniform(10.0, 101, p.g_magnitude());
  const OperatorMatrix zero = identity(Space::composite, c) - identity(Space::composite, c);
  const StateVector e0 = product_state(Qubit::e, fock_state(0, c));
  const EvolutionResult still = evolve_numeric(zero, e0, grid, Method::full_numeric, p);
  for (double w : still.sigma_z) CHECK(w == 1.0);

  const EvolutionResult rabi = evolve_numeric(build_jcm_hamiltonian(p, c), e0, grid, Method::jcm_numeric, p,
                                              {.execution = Execution::serial, .keep_states = true});
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(rabi.sigma_z[i] == doctest::Approx(std::cos(2.0 * grid.tau()[i])).epsilon(1e-12));
    CHECK(std::abs(rabi.states[i].norm() - 1.0) < 1e-10);
  }
  CHECK(rabi.mean_photon.has_value());
  CHECK(*rabi.mean_photon == doctest::Approx(0.0));

  CHECK_THROWS_AS(evolve_numeric(build_jcm_hamiltonian(p, FockCutoff(5)), e0, grid, Method::jcm_numeric, p),
                  std::invalid_argument);
}

TEST_CASE("evolve_numeric on the full Hamiltonian matches a matrix-exponential oracle") {
  const int n_max = 24;
  const FockCutoff c(n_max);
  SystemParams p = resonant(Complex(0.3, 0.1));
  p.e_z = 0.2;
  const Complex alpha(1.1, -0.4);
  const TimeGrid grid = TimeGrid::uniform(3.0, 7, p.g_magnitude());
  const EvolutionResult r = evolve_numeric(build_full_hamiltonian(p, c), excited_coherent(alpha, c), grid,
                                           Method::full_numeric, p);
  const oracle::Mat h = oracle::full_hamiltonian(p.omega, p.e_z, p.e_j, p.gamma, p.beta, n_max);
  oracle::Vec psi0 = oracle::Vec::Zero(2 * (n_max + 1));
  psi0.tail(n_max + 1) = oracle::coherent(alpha, n_max);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(r.sigma_z[i] == doctest::Approx(oracle::inversion_by_expm(h, psi0, grid.physical_time(i))).epsilon(1e-10));
  }
}

TEST_CASE("energy is conserved along a full-H trajectory") {
  const FockCutoff c(30);
  const SystemParams p = resonant(0.2);
  const OperatorMatrix h = build_full_hamiltonian(p, c);
  const TimeGrid grid = TimeGrid::uniform(20.0, 21, p.g_magnitude());
  const EvolutionResult r = evolve_numeric(h, excited_coherent(Complex(2.0, 0.5), c), grid, Method::full_numeric, p,
                                           {.keep_states = true});
  auto energy = [&](const StateVector& s) { return s.amplitudes().dot(h.matrix() * s.amplitudes()).real(); };
  const double e0 = energy(r.states.front());
  for (const StateVector& s : r.states) CHECK(std::abs(energy(s) - e0) < 1e-9 * std::abs(e0));
}

TEST_CASE("closed-form JCM operator") {
  const FockCutoff c(30);
  const SystemParams p = resonant(0.2);
  CHECK(max_abs(jcm_evolution_operator(p, 0.0, c).matrix() - Matrix::Identity(62, 62)) < 1e-15);

  const double t = 7.3;
  const StateVector out = apply(jcm_evolution_operator(p, t, c), product_state(Qubit::e, fock_state(0, c)));
  const double gt = p.g_magnitude() * t;
  CHECK(std::abs(out[31] - std::cos(gt)) < 1e-14);  // |e,0>
  CHECK(std::abs(out[1] + std::sin(gt)) < 1e-14);   // |g,1>

  for (Complex beta : {Complex(0.2), Complex(0.1, -0.25)}) {
    const SystemParams q = resonant(beta);
    for (double tt : {0.5, 12.0, 90.0}) {
      CHECK(interior_deviation(jcm_evolution_operator(q, tt, c), propagator(build_jcm_hamiltonian(q, c), tt), 2) < 1e-9);
    }
  }
  CHECK_THROWS_AS(jcm_evolution_operator(resonant(0.0), 1.0, c), std::invalid_argument);
}

TEST_CASE("JCM numeric path agrees with the closed-form operator on W") {
  const FockCutoff c(40);
  const SystemParams p = resonant(0.2);
  const StateVector psi0 = excited_coherent(Complex(2.5, 1.0), c);
  const TimeGrid grid = TimeGrid::uniform(50.0, 201, p.g_magnitude());
  const EvolutionResult r = evolve_numeric(build_jcm_hamiltonian(p, c), psi0, grid, Method::jcm_numeric, p);
  for (std::size_t i = 0; i < grid.size(); i += 10) {
    const StateVector s = apply(jcm_evolution_operator(p, grid.physical_time(i), c), psi0);
    CHECK(std::abs(r.sigma_z[i] - expectation_sigma_z(s)) < 1e-9);
  }
}

TEST_CASE("JCM numeric reproduces the Poisson-weighted Rabi sum") {
  const FockCutoff c(60);
  const SystemParams p = resonant(0.2);
  const double nbar = 9.0;
  const TimeGrid grid = TimeGrid::uniform(40.0, 161, p.g_magnitude());
  const EvolutionResult r = evolve_numeric(build_jcm_hamiltonian(p, c), excited_coherent(3.0, c), grid,
                                           Method::jcm_numeric, p);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(r.sigma_z[i] == doctest::Approx(oracle::jcm_inversion(nbar, p.g_magnitude(), grid.physical_time(i), 60)).epsilon(1e-10));
  }
}

TEST_CASE("transform T examples") {
  const FockCutoff c(40);
  SystemParams p = resonant(0.0);
  p.gamma = 0.0;
  const Matrix t0 = transform_T(p, 0.0, c).matrix();
  const Matrix had = ((tensor(pauli(Pauli::x), identity(Space::field_only, c)) -
                       tensor(pauli(Pauli::z), identity(Space::field_only, c))).matrix()) /
                     std::sqrt(2.0);
  CHECK(max_abs(t0 - had) < 1e-14);
  CHECK(max_abs(t0 * t0 - Matrix::Identity(82, 82)) < 1e-14);

  const SystemParams q = resonant(0.2);
  CHECK(unitarity_defect(transform_T(q, 1.0, c), 10) < 1e-8);
  const double period = 2.0 * kPi / q.omega;
  CHECK(max_abs(transform_T(q, 1.0, c).matrix() - transform_T(q, 1.0 + period, c).matrix()) < 1e-10);

  const TransformFamily family(q, c);
  CHECK(max_abs(family.at(2.2).matrix() - transform_T(q, 2.2, c).matrix()) < 1e-12);
}

TEST_CASE("T maps sigma_z to -sigma_x") {
  const FockCutoff c(30);
  const SystemParams p = resonant(Complex(0.2, 0.1));
  const OperatorMatrix t = transform_T(p, 1.7, c);
  const Matrix lhs = (t * tensor(pauli(Pauli::z), identity(Space::field_only, c)) * t.adjoint()).matrix();
  const Matrix rhs = -tensor(pauli(Pauli::x), identity(Space::field_only, c)).matrix();
  CHECK(max_abs((lhs - rhs).topLeftCorner(20, 20)) < 1e-10);
}

TEST_CASE("transformed path: t = 0, bounds, oracle") {
  const FockCutoff c(60);
  const SystemParams p = resonant(0.2);
  const Complex alpha(3.0, 0.5);
  const StateVector psi0 = excited_coherent(alpha, c);
  const TimeGrid grid = TimeGrid::uniform(30.0, 121, p.g_magnitude());
  const EvolutionResult r = evolve_transformed(p, psi0, grid, c, {.execution = Execution::serial, .keep_states = true});
  CHECK((r.states.front().amplitudes() - psi0.amplitudes()).cwiseAbs().maxCoeff() < 1e-10);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(std::abs(r.sigma_z[i]) <= 1.0 + 1e-9);
    CHECK(r.sigma_z[i] ==
          doctest::Approx(oracle::transformed_inversion(alpha, 0.2, p.e_j, p.omega, grid.physical_time(i), 60)).epsilon(1e-10));
  }
  CHECK(r.warnings.empty());
  CHECK(*r.mean_photon == doctest::Approx(std::norm(alpha - 0.5 * kI * 0.2)));
}

TEST_CASE("transformed path: serial reference and OpenMP kernel agree") {
  const FockCutoff c(50);
  const SystemParams p = resonant(Complex(0.2, -0.05));
  const StateVector psi0 = excited_coherent(Complex(2.0, 1.0), c);
  const TimeGrid grid = TimeGrid::uniform(25.0, 301, p.g_magnitude());
  const EvolutionResult s = evolve_transformed(p, psi0, grid, c, {.execution = Execution::serial});
  const EvolutionResult q = evolve_transformed(p, psi0, grid, c, {.execution = Execution::parallel});
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(std::abs(s.sigma_z[i] - q.sigma_z[i]) < 1e-12);
}

TEST_CASE("evolve_numeric: serial and parallel loops are identical") {
  const FockCutoff c(30);
  const SystemParams p = resonant(0.2);
  const OperatorMatrix h = build_full_hamiltonian(p, c);
  const StateVector psi0 = excited_coherent(Complex(1.5, 0.5), c);
  const TimeGrid grid = TimeGrid::uniform(25.0, 500, p.g_magnitude());
  const EvolutionResult s = evolve_numeric(h, psi0, grid, Method::full_numeric, p, {.execution = Execution::serial});
  const EvolutionResult q = evolve_numeric(h, psi0, grid, Method::full_numeric, p, {.execution = Execution::parallel});
  CHECK(s.sigma_z == q.sigma_z);
}

TEST_CASE("transformed path: degenerate amplitude tracks cos cos") {
  // The transformed initial displacement is i beta^*/2, so alpha = i beta/2 (beta real) empties the field.
  const FockCutoff c(30);
  const SystemParams p = resonant(0.2);
  const Complex alpha = 0.5 * kI * 0.2;
  const TimeGrid grid = TimeGrid::uniform(25.0, 251, p.g_magnitude());
  const EvolutionResult r = evolve_transformed(p, excited_coherent(alpha, c), grid, c);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid.physical_time(i);
    CHECK(std::abs(r.sigma_z[i] - std::cos(p.e_j * t) * std::cos(p.g_magnitude() * t)) < 1e-6);
  }
}

TEST_CASE("transformed path warnings and errors") {
  const FockCutoff c(30);
  SystemParams p = resonant(0.2);
  p.e_j = 1.3;
  p.e_z = 0.1;
  const TimeGrid grid = TimeGrid::uniform(5.0, 11, p.g_magnitude());
  const EvolutionResult r = evolve_transformed(p, excited_coherent(1.0, c), grid, c);
  CHECK(r.warnings.size() == 2);
  CHECK_THROWS_AS(evolve_transformed(resonant(0.0), excited_coherent(1.0, c), grid, c), std::invalid_argument);
}

TEST_CASE("expectation_sigma_z examples") {
  const FockCutoff c(5);
  CHECK(expectation_sigma_z(product_state(Qubit::e, coherent_state(Complex(0.7, 0.2), c, true))) ==
        doctest::Approx(1.0).epsilon(1e-15));
  Vector v = Vector::Zero(12);
  v(0) = 1.0 / std::sqrt(2.0);
  v(6) = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(expectation_sigma_z(StateVector(Space::composite, v))) < 1e-15);
  CHECK_THROWS_AS(expectation_sigma_z(fock_state(0, c)), std::invalid_argument);
}
