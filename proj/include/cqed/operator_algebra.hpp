// Truncated Fock-space linear algebra for a qubit coupled to one bosonic mode.
//
// Basis convention for the composite space: |s> (x) |n> lives at index
// s * (n_max + 1) + n, with s = 0 for |g> and s = 1 for |e>. The creation
// operator maps |n_max> to zero (hard cutoff).
#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace cqed {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

/// Raised when a numerical routine cannot deliver a trustworthy result
/// (eigensolver failure, series non-convergence, undersized cutoff).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CutoffError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

enum class Space { field_only, qubit_only, composite };

const char* to_string(Space space);

class FockCutoff {
 public:
  explicit FockCutoff(int n_max);

  int n_max() const { return n_max_; }
  int field_dim() const { return n_max_ + 1; }
  int composite_dim() const { return 2 * (n_max_ + 1); }
  int dim(Space space) const;

  bool operator==(const FockCutoff&) const = default;

 private:
  int n_max_;
};

/// Smallest n_max satisfying the sizing rule n_max >= r^2 + 10 r.
int required_n_max(double amplitude);

/// Throws CutoffError if `cutoff` violates the sizing rule for a coherent
/// amplitude of magnitude `amplitude`, unless `allow_small` is set.
void check_cutoff(const FockCutoff& cutoff, double amplitude, bool allow_small);

class OperatorMatrix {
 public:
  OperatorMatrix(Space space, Matrix entries);

  Space space() const { return space_; }
  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& matrix() const { return entries_; }
  Complex operator()(int row, int col) const { return entries_(row, col); }

  /// Fock cutoff implied by the dimension (not defined for qubit_only).
  FockCutoff cutoff() const;

  OperatorMatrix adjoint() const;

  friend OperatorMatrix operator+(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator-(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);
  friend OperatorMatrix operator*(Complex s, const OperatorMatrix& a);

 private:
  Space space_;
  Matrix entries_;
};

class StateVector {
 public:
  StateVector(Space space, Vector amplitudes, double discarded_weight = 0.0);

  Space space() const { return space_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Vector& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }
  double norm() const { return amplitudes_.norm(); }

  /// Probability mass lost to truncation before renormalization.
  double discarded_weight() const { return discarded_weight_; }

 private:
  Space space_;
  Vector amplitudes_;
  double discarded_weight_;
};

StateVector apply(const OperatorMatrix& op, const StateVector& psi);

// Builders ------------------------------------------------------------------

OperatorMatrix annihilation(const FockCutoff& cutoff);
OperatorMatrix creation(const FockCutoff& cutoff);
OperatorMatrix number_operator(const FockCutoff& cutoff);
OperatorMatrix identity(Space space, const FockCutoff& cutoff);

enum class Pauli { z, plus, minus, x };

/// 2x2 qubit operator in the ordered basis (|g>, |e>); sigma_z = diag(-1, +1).
OperatorMatrix pauli(Pauli which);
OperatorMatrix qubit_identity();

/// Kronecker product qubit (x) field in the composite ordering.
OperatorMatrix tensor(const OperatorMatrix& qubit_op, const OperatorMatrix& field_op);

// Diagnostics ---------------------------------------------------------------

/// max |M - M^dagger| over all entries.
double hermiticity_defect(const Matrix& m);
inline double hermiticity_defect(const OperatorMatrix& op) { return hermiticity_defect(op.matrix()); }

/// max |M^dagger M - I| restricted to Fock indices n <= n_max - excluded_levels
/// (in every qubit block for composite operators).
double unitarity_defect(const OperatorMatrix& op, int excluded_levels = 0);

/// max |A - B| over Fock indices n <= n_max - excluded_levels in each block.
double interior_deviation(const OperatorMatrix& a, const OperatorMatrix& b, int excluded_levels);

// Matrix functions ----------------------------------------------------------

/// Eigendecomposition M = V diag(lambda) V^dagger of a Hermitian matrix.
/// Diagonal input short-circuits to V = I.
class SpectralDecomposition {
 public:
  explicit SpectralDecomposition(const Matrix& hermitian);

  const RealVector& eigenvalues() const { return eigenvalues_; }
  const Matrix& eigenvectors() const { return eigenvectors_; }
  bool diagonal() const { return diagonal_; }

  /// V f(Lambda) V^dagger.
  Matrix apply(const std::function<Complex(double)>& f) const;

 private:
  RealVector eigenvalues_;
  Matrix eigenvectors_;
  bool diagonal_ = false;
};

/// f(M) for Hermitian M via spectral decomposition. Throws
/// std::invalid_argument when M is not Hermitian within 1e-12.
OperatorMatrix hermitian_function(const OperatorMatrix& m, const std::function<Complex(double)>& f);

/// exp(xi a^dagger - conj(xi) a) on the truncated field space.
OperatorMatrix displacement(Complex xi, const FockCutoff& cutoff);

/// Truncated coherent state, renormalized; the lost tail is recorded.
StateVector coherent_state(Complex alpha, const FockCutoff& cutoff, bool allow_small_cutoff = false);

StateVector fock_state(int n, const FockCutoff& cutoff);

enum class Qubit { g = 0, e = 1 };

/// |s> (x) field.
StateVector product_state(Qubit s, const StateVector& field);

}  // namespace cqed
