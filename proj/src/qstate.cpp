#include "subent/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace subent {

StateVector::StateVector(Vector amplitudes) : v_(std::move(amplitudes)) {
  if (v_.size() == 0) fail(ErrorCode::NotNormalized, "empty state vector");
  const double n = v_.norm();
  if (std::abs(n - 1.0) > tolerance::norm) {
    fail(ErrorCode::NotNormalized, "state vector norm " + std::to_string(n));
  }
}

StateVector StateVector::normalized(const Vector& v) {
  const double n = v.norm();
  if (!(n > 0.0)) fail(ErrorCode::NotNormalized, "cannot normalize a zero vector");
  return StateVector(v / n);
}

ProbabilityVector::ProbabilityVector(std::vector<double> probs) : p_(std::move(probs)) {
  double sum = 0.0;
  for (double p : p_) {
    if (p < -1e-12) fail(ErrorCode::DomainError, "negative probability " + std::to_string(p));
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    fail(ErrorCode::DomainError, "probabilities sum to " + std::to_string(sum));
  }
}

SubalgebraSpec SubalgebraSpec::factor_a(std::size_t dim_a, std::size_t dim_b) {
  if (dim_a == 0 || dim_b == 0) fail(ErrorCode::DimensionMismatch, "zero local dimension");
  return {Kind::FactorA, dim_a, dim_b};
}

void SubalgebraSpec::check_dim(std::size_t dim) const {
  if (kind == Kind::FactorA && dim_a * dim_b != dim) {
    fail(ErrorCode::DimensionMismatch,
         "factor " + std::to_string(dim_a) + "x" + std::to_string(dim_b) +
             " does not match dimension " + std::to_string(dim));
  }
}

std::size_t SubalgebraSpec::restricted_dim(std::size_t ambient) const {
  return kind == Kind::Diagonal ? ambient : dim_a;
}

double shannon_term(double t) {
  if (t < -1e-12 || t > 1.0 + 1e-12) {
    fail(ErrorCode::DomainError, "s(t) needs t in [0,1], got " + std::to_string(t));
  }
  t = std::clamp(t, 0.0, 1.0);
  return t > 0.0 ? -t * std::log(t) : 0.0;
}

double spectrum_entropy(const RealVector& eigenvalues) {
  double s = 0.0;
  for (double mu : eigenvalues) {
    if (mu < -tolerance::eigen_clamp) {
      fail(ErrorCode::NumericalError, "eigenvalue " + std::to_string(mu) + " below clamp window");
    }
    if (mu > 0.0) s -= mu * std::log(mu);
  }
  return s;
}

double shannon_entropy(const ProbabilityVector& p) {
  return spectrum_entropy(Eigen::Map<const RealVector>(p.probs().data(),
                                                       static_cast<Eigen::Index>(p.size())));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::NumericalError, "eigensolver failed");
  return spectrum_entropy(es.eigenvalues());
}

DensityMatrix validate_density(const Matrix& entries) {
  if (entries.rows() != entries.cols() || entries.rows() == 0) {
    fail(ErrorCode::DimensionMismatch, "density matrix must be square and nonempty");
  }
  const double asym = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
  if (asym > tolerance::hermitian) {
    fail(ErrorCode::NotHermitian, "max |M - M^H| = " + std::to_string(asym));
  }
  const complex tr = entries.trace();
  if (std::abs(tr.real() - 1.0) > tolerance::trace || std::abs(tr.imag()) > tolerance::trace) {
    fail(ErrorCode::NotUnitTrace, "trace = " + std::to_string(tr.real()));
  }
  Matrix herm = 0.5 * (entries + entries.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) fail(ErrorCode::NumericalError, "eigensolver failed");
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < -tolerance::eigen_clamp) {
    fail(ErrorCode::NotPositive, "smallest eigenvalue " + std::to_string(lowest));
  }
  return DensityMatrix(std::move(herm));
}

Matrix partial_trace_b(const Matrix& m, std::size_t dim_a, std::size_t dim_b) {
  const auto da = static_cast<Eigen::Index>(dim_a);
  const auto db = static_cast<Eigen::Index>(dim_b);
  Matrix out = Matrix::Zero(da, da);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index a2 = 0; a2 < da; ++a2) {
      complex acc = 0.0;
      for (Eigen::Index b = 0; b < db; ++b) acc += m(a * db + b, a2 * db + b);
      out(a, a2) = acc;
    }
  }
  return out;
}

DensityMatrix restrict_state(const DensityMatrix& rho, const SubalgebraSpec& sub) {
  sub.check_dim(rho.dim());
  if (sub.kind == SubalgebraSpec::Kind::Diagonal) {
    Matrix d = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    d.diagonal() = rho.matrix().diagonal().real().cast<complex>();
    return validate_density(d);
  }
  return validate_density(partial_trace_b(rho.matrix(), sub.dim_a, sub.dim_b));
}

ProbabilityVector diagonal_distribution(const DensityMatrix& rho) {
  std::vector<double> p(rho.dim());
  for (std::size_t k = 0; k < p.size(); ++k) p[k] = rho(k, k).real();
  return ProbabilityVector(std::move(p));
}

double overlap(const DensityMatrix& rho, const StateVector& phi) {
  if (rho.dim() != phi.dim()) fail(ErrorCode::DimensionMismatch, "overlap dimensions differ");
  const Vector& v = phi.amplitudes();
  return (v.adjoint() * rho.matrix() * v)(0, 0).real();
}

DensityMatrix pure_state(const StateVector& phi) { return validate_density(phi.projector()); }

DensityMatrix maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return validate_density(Matrix::Identity(n, n) / static_cast<double>(dim));
}

Spectrum positive_spectrum(const DensityMatrix& rho, double cutoff) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix());
  if (es.info() != Eigen::Success) fail(ErrorCode::NumericalError, "eigensolver failed");
  // Eigen sorts ascending; keep the tail above the cutoff, largest first.
  const RealVector& ev = es.eigenvalues();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = ev.size() - 1; k >= 0; --k) {
    if (ev(k) > cutoff) keep.push_back(k);
  }
  Spectrum s;
  s.values.resize(static_cast<Eigen::Index>(keep.size()));
  s.vectors.resize(ev.size(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const auto c = static_cast<Eigen::Index>(i);
    s.values(c) = ev(keep[i]);
    s.vectors.col(c) = es.eigenvectors().col(keep[i]);
  }
  return s;
}

Matrix psd_sqrt(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) fail(ErrorCode::NumericalError, "eigensolver failed");
  const RealVector roots = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * roots.cast<complex>().asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace subent
