#pragma once

// Core state types: density matrices, pure vectors, restriction targets and
// the entropies evaluated on them. All entropies are in nats.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "subent/error.hpp"

namespace subent {

using complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tolerance {
inline constexpr double hermitian = 1e-12;
inline constexpr double trace = 1e-12;
inline constexpr double eigen_clamp = 1e-10;  // eigenvalues in [-clamp, 0] count as 0
inline constexpr double norm = 1e-12;
inline constexpr double rank_cutoff = 1e-12;
inline constexpr double weight_prune = 1e-14;
}  // namespace tolerance

/// Hermitian, positive semidefinite, unit-trace d x d matrix.
///
/// Instances only come out of `validate_density` (or library routines that
/// route through it), so holding one is proof the invariants hold.
class DensityMatrix {
 public:
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  complex operator()(std::size_t j, std::size_t k) const {
    return m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
  }

 private:
  explicit DensityMatrix(Matrix m) : m_(std::move(m)) {}
  friend DensityMatrix validate_density(const Matrix& entries);

  Matrix m_;
};

/// Unit vector in C^d.
class StateVector {
 public:
  /// Throws NotNormalized unless the Euclidean norm is within 1e-12 of 1.
  explicit StateVector(Vector amplitudes);
  /// Rescales a nonzero vector to unit norm.
  static StateVector normalized(const Vector& v);

  std::size_t dim() const { return static_cast<std::size_t>(v_.size()); }
  const Vector& amplitudes() const { return v_; }
  complex operator[](std::size_t k) const { return v_(static_cast<Eigen::Index>(k)); }
  Matrix projector() const { return v_ * v_.adjoint(); }

 private:
  Vector v_;
};

/// Classical distribution (the state restricted to the diagonal subalgebra).
class ProbabilityVector {
 public:
  explicit ProbabilityVector(std::vector<double> probs);

  std::size_t size() const { return p_.size(); }
  const std::vector<double>& probs() const { return p_; }
  double operator[](std::size_t k) const { return p_[k]; }

 private:
  std::vector<double> p_;
};

/// Restriction target: the maximal abelian (diagonal) subalgebra, or the
/// first tensor factor A of C^{d_A} (x) C^{d_B} with basis |a>|b> -> a*d_B + b.
struct SubalgebraSpec {
  enum class Kind { Diagonal, FactorA };

  Kind kind = Kind::Diagonal;
  std::size_t dim_a = 0;
  std::size_t dim_b = 0;

  static SubalgebraSpec diagonal() { return {}; }
  static SubalgebraSpec factor_a(std::size_t dim_a, std::size_t dim_b);

  /// Throws DimensionMismatch if this target cannot act on C^dim.
  void check_dim(std::size_t dim) const;
  /// Dimension of the restricted state.
  std::size_t restricted_dim(std::size_t ambient) const;
};

/// s(t) = -t ln t with s(0) = 0; t is clamped into [0, 1] within 1e-12.
double shannon_term(double t);

/// Entropy of a spectrum / distribution; entries in [-1e-10, 0] are dropped,
/// anything more negative is a NumericalError.
double spectrum_entropy(const RealVector& eigenvalues);
double shannon_entropy(const ProbabilityVector& p);

double von_neumann_entropy(const DensityMatrix& rho);

/// Validates a square matrix, naming the first violated invariant
/// (NotHermitian, NotUnitTrace, NotPositive). The stored matrix is the
/// Hermitian part of the input.
DensityMatrix validate_density(const Matrix& entries);

DensityMatrix restrict_state(const DensityMatrix& rho, const SubalgebraSpec& sub);

/// Diagonal of rho as a distribution.
ProbabilityVector diagonal_distribution(const DensityMatrix& rho);

/// Partial trace over the B factor of a (d_A d_B)-dimensional operator.
Matrix partial_trace_b(const Matrix& m, std::size_t dim_a, std::size_t dim_b);

/// <phi|rho|phi>.
double overlap(const DensityMatrix& rho, const StateVector& phi);

DensityMatrix pure_state(const StateVector& phi);
DensityMatrix maximally_mixed(std::size_t dim);

/// Eigenpairs of a density matrix with eigenvalue above `cutoff`, sorted by
/// decreasing eigenvalue.
struct Spectrum {
  RealVector values;
  Matrix vectors;  // columns are eigenvectors
  std::size_t rank() const { return static_cast<std::size_t>(values.size()); }
};
Spectrum positive_spectrum(const DensityMatrix& rho, double cutoff = tolerance::rank_cutoff);

/// Square root of a PSD Hermitian matrix via its eigendecomposition.
Matrix psd_sqrt(const Matrix& m);

}  // namespace subent
