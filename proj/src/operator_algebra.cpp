#include "cqed/operator_algebra.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace cqed {

namespace {

constexpr double kHermitianTolerance = 1e-12;

int field_dim_of(Space space, int dim) {
  if (space == Space::composite) {
    return dim / 2;
  }
  return dim;
}

void check_dims_match(const OperatorMatrix& a, const OperatorMatrix& b, const char* what) {
  if (a.space() != b.space() || a.dim() != b.dim()) {
    std::ostringstream msg;
    msg << what << ": dimension mismatch (" << to_string(a.space()) << ", " << a.dim() << ") vs ("
        << to_string(b.space()) << ", " << b.dim() << ")";
    throw std::invalid_argument(msg.str());
  }
}

bool is_diagonal(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != Complex{}) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

const char* to_string(Space space) {
  switch (space) {
    case Space::field_only:
      return "field_only";
    case Space::qubit_only:
      return "qubit_only";
    case Space::composite:
      return "composite";
  }
  return "?";
}

FockCutoff::FockCutoff(int n_max) : n_max_(n_max) {
  if (n_max < 1) {
    throw std::invalid_argument("FockCutoff: n_max must be >= 1, got " + std::to_string(n_max));
  }
}

int FockCutoff::dim(Space space) const {
  switch (space) {
    case Space::field_only:
      return field_dim();
    case Space::qubit_only:
      return 2;
    case Space::composite:
      return composite_dim();
  }
  return 0;
}

int required_n_max(double amplitude) {
  const double r = std::abs(amplitude);
  return std::max(1, static_cast<int>(std::ceil(r * r + 10.0 * r - 1e-12)));
}

void check_cutoff(const FockCutoff& cutoff, double amplitude, bool allow_small) {
  if (allow_small) {
    return;
  }
  const int needed = required_n_max(amplitude);
  if (cutoff.n_max() < needed) {
    std::ostringstream msg;
    msg << "n_max = " << cutoff.n_max() << " is below the sizing rule r^2 + 10 r = " << needed
        << " for amplitude r = " << std::abs(amplitude) << " (pass --allow-small-cutoff to override)";
    throw CutoffError(msg.str());
  }
}

// OperatorMatrix -------------------------------------------------------------

OperatorMatrix::OperatorMatrix(Space space, Matrix entries) : space_(space), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) {
    throw std::invalid_argument("OperatorMatrix: matrix must be square");
  }
  const auto dim = entries_.rows();
  const bool ok = (space_ == Space::qubit_only && dim == 2) || (space_ == Space::field_only && dim >= 2) ||
                  (space_ == Space::composite && dim >= 4 && dim % 2 == 0);
  if (!ok) {
    throw std::invalid_argument(std::string("OperatorMatrix: dimension ") + std::to_string(dim) +
                                " inconsistent with space " + to_string(space_));
  }
}

FockCutoff OperatorMatrix::cutoff() const {
  if (space_ == Space::qubit_only) {
    throw std::logic_error("OperatorMatrix::cutoff: qubit_only operator has no Fock cutoff");
  }
  return FockCutoff(field_dim_of(space_, dim()) - 1);
}

OperatorMatrix OperatorMatrix::adjoint() const { return OperatorMatrix(space_, entries_.adjoint()); }

OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b) {
  check_dims_match(a, b, "operator+");
  return OperatorMatrix(a.space_, a.entries_ + b.entries_);
}

OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b) {
  check_dims_match(a, b, "operator-");
  return OperatorMatrix(a.space_, a.entries_ - b.entries_);
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
  check_dims_match(a, b, "operator*");
  return OperatorMatrix(a.space_, a.entries_ * b.entries_);
}

OperatorMatrix operator*(Complex s, const OperatorMatrix& a) { return OperatorMatrix(a.space_, s * a.entries_); }

// StateVector ----------------------------------------------------------------

StateVector::StateVector(Space space, Vector amplitudes, double discarded_weight)
    : space_(space), amplitudes_(std::move(amplitudes)), discarded_weight_(discarded_weight) {}

StateVector apply(const OperatorMatrix& op, const StateVector& psi) {
  if (op.space() != psi.space() || op.dim() != psi.dim()) {
    throw std::invalid_argument("apply: operator and state dimensions differ");
  }
  return StateVector(psi.space(), op.matrix() * psi.amplitudes());
}

// Builders -------------------------------------------------------------------

OperatorMatrix annihilation(const FockCutoff& cutoff) {
  const int dim = cutoff.field_dim();
  Matrix a = Matrix::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) {
    a(n - 1, n) = std::sqrt(static_cast<double>(n));
  }
  return OperatorMatrix(Space::field_only, std::move(a));
}

OperatorMatrix creation(const FockCutoff& cutoff) { return annihilation(cutoff).adjoint(); }

OperatorMatrix number_operator(const FockCutoff& cutoff) {
  const int dim = cutoff.field_dim();
  Matrix n = Matrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    n(k, k) = static_cast<double>(k);
  }
  return OperatorMatrix(Space::field_only, std::move(n));
}

OperatorMatrix identity(Space space, const FockCutoff& cutoff) {
  const int dim = cutoff.dim(space);
  return OperatorMatrix(space, Matrix::Identity(dim, dim));
}

OperatorMatrix qubit_identity() { return OperatorMatrix(Space::qubit_only, Matrix::Identity(2, 2)); }

OperatorMatrix pauli(Pauli which) {
  Matrix m = Matrix::Zero(2, 2);
  switch (which) {
    case Pauli::z:
      m(0, 0) = -1.0;
      m(1, 1) = 1.0;
      break;
    case Pauli::plus:  // |e><g|
      m(1, 0) = 1.0;
      break;
    case Pauli::minus:  // |g><e|
      m(0, 1) = 1.0;
      break;
    case Pauli::x:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
  }
  return OperatorMatrix(Space::qubit_only, std::move(m));
}

OperatorMatrix tensor(const OperatorMatrix& qubit_op, const OperatorMatrix& field_op) {
  if (qubit_op.space() != Space::qubit_only || field_op.space() != Space::field_only) {
    throw std::invalid_argument("tensor: expected (qubit_only, field_only) operands, got (" +
                                std::string(to_string(qubit_op.space())) + ", " + to_string(field_op.space()) + ")");
  }
  const int nf = field_op.dim();
  Matrix out(2 * nf, 2 * nf);
  for (int s = 0; s < 2; ++s) {
    for (int r = 0; r < 2; ++r) {
      out.block(s * nf, r * nf, nf, nf) = qubit_op(s, r) * field_op.matrix();
    }
  }
  return OperatorMatrix(Space::composite, std::move(out));
}

// Diagnostics ----------------------------------------------------------------

double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).cwiseAbs().maxCoeff(); }

namespace {

// Indices kept by an interior restriction, in the operator's own ordering.
std::vector<int> interior_indices(Space space, int dim, int excluded_levels) {
  std::vector<int> keep;
  if (space == Space::qubit_only) {
    for (int i = 0; i < dim; ++i) keep.push_back(i);
    return keep;
  }
  const int nf = field_dim_of(space, dim);
  const int last = nf - 1 - std::max(0, excluded_levels);
  const int blocks = space == Space::composite ? 2 : 1;
  for (int s = 0; s < blocks; ++s) {
    for (int n = 0; n <= last; ++n) keep.push_back(s * nf + n);
  }
  return keep;
}

}  // namespace

double unitarity_defect(const OperatorMatrix& op, int excluded_levels) {
  const Matrix product = op.matrix().adjoint() * op.matrix();
  const auto keep = interior_indices(op.space(), op.dim(), excluded_levels);
  double worst = 0.0;
  for (int i : keep) {
    for (int j : keep) {
      const Complex expected = i == j ? Complex{1.0} : Complex{};
      worst = std::max(worst, std::abs(product(i, j) - expected));
    }
  }
  return worst;
}

double interior_deviation(const OperatorMatrix& a, const OperatorMatrix& b, int excluded_levels) {
  check_dims_match(a, b, "interior_deviation");
  const auto keep = interior_indices(a.space(), a.dim(), excluded_levels);
  double worst = 0.0;
  for (int i : keep) {
    for (int j : keep) {
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    }
  }
  return worst;
}

// Matrix functions -----------------------------------------------------------

SpectralDecomposition::SpectralDecomposition(const Matrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) {
    throw std::invalid_argument("SpectralDecomposition: matrix must be square");
  }
  const double defect = hermiticity_defect(hermitian);
  if (defect > kHermitianTolerance) {
    std::ostringstream msg;
    msg << "SpectralDecomposition: input is not Hermitian (max |M - M^dagger| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
  if (is_diagonal(hermitian)) {
    diagonal_ = true;
    eigenvalues_ = hermitian.diagonal().real();
    eigenvectors_ = Matrix::Identity(hermitian.rows(), hermitian.cols());
    return;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("SpectralDecomposition: eigendecomposition did not converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Matrix SpectralDecomposition::apply(const std::function<Complex(double)>& f) const {
  const auto n = eigenvalues_.size();
  Vector fvals(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    fvals(k) = f(eigenvalues_(k));
  }
  if (diagonal_) {
    return fvals.asDiagonal();
  }
  return eigenvectors_ * fvals.asDiagonal() * eigenvectors_.adjoint();
}

OperatorMatrix hermitian_function(const OperatorMatrix& m, const std::function<Complex(double)>& f) {
  return OperatorMatrix(m.space(), SpectralDecomposition(m.matrix()).apply(f));
}

OperatorMatrix displacement(Complex xi, const FockCutoff& cutoff) {
  // xi a^dag - xi^* a = -i K with K = i (xi a^dag - xi^* a) Hermitian,
  // so exp(xi a^dag - xi^* a) = exp(-i K).
  const Matrix a = annihilation(cutoff).matrix();
  const Matrix k = kI * (xi * a.adjoint() - std::conj(xi) * a);
  const OperatorMatrix generator(Space::field_only, 0.5 * (k + k.adjoint()));
  return hermitian_function(generator, [](double lambda) { return std::exp(-kI * lambda); });
}

StateVector coherent_state(Complex alpha, const FockCutoff& cutoff, bool allow_small_cutoff) {
  check_cutoff(cutoff, std::abs(alpha), allow_small_cutoff);
  const int dim = cutoff.field_dim();
  const double r = std::abs(alpha);
  const double phase = std::arg(alpha);
  Vector c = Vector::Zero(dim);
  for (int n = 0; n < dim; ++n) {
    if (r == 0.0) {
      c(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
    c(n) = std::polar(std::exp(log_mag), n * phase);
  }
  const double kept = c.squaredNorm();
  c /= std::sqrt(kept);
  return StateVector(Space::field_only, std::move(c), std::max(0.0, 1.0 - kept));
}

StateVector fock_state(int n, const FockCutoff& cutoff) {
  if (n < 0 || n > cutoff.n_max()) {
    throw std::invalid_argument("fock_state: occupation " + std::to_string(n) + " outside [0, n_max]");
  }
  Vector c = Vector::Zero(cutoff.field_dim());
  c(n) = 1.0;
  return StateVector(Space::field_only, std::move(c));
}

StateVector product_state(Qubit s, const StateVector& field) {
  if (field.space() != Space::field_only) {
    throw std::invalid_argument("product_state: expected a field_only state");
  }
  const int nf = field.dim();
  Vector c = Vector::Zero(2 * nf);
  c.segment(static_cast<int>(s) * nf, nf) = field.amplitudes();
  return StateVector(Space::composite, std::move(c), field.discarded_weight());
}

}  // namespace cqed
