#include "subent/decomp.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "subent/optimizer.hpp"

namespace subent {

namespace {

void check_weights(const std::vector<double>& weights) {
  if (weights.empty()) fail(ErrorCode::InvalidDecomposition, "empty decomposition");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w > 0.0)) fail(ErrorCode::InvalidDecomposition, "non-positive weight " + std::to_string(w));
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    fail(ErrorCode::InvalidDecomposition, "weights sum to " + std::to_string(sum));
  }
}

double weight_sum(const std::vector<double>& w) { return std::accumulate(w.begin(), w.end(), 0.0); }

// x ln x, with 0 ln 0 = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

}  // namespace

ExtremalDecomposition::ExtremalDecomposition(std::vector<double> weights,
                                             std::vector<StateVector> decomposers)
    : weights_(std::move(weights)), decomposers_(std::move(decomposers)) {
  check_weights(weights_);
  if (weights_.size() != decomposers_.size()) {
    fail(ErrorCode::InvalidDecomposition, "weights and decomposers differ in length");
  }
  const std::size_t d = decomposers_.front().dim();
  for (const auto& v : decomposers_) {
    if (v.dim() != d) fail(ErrorCode::DimensionMismatch, "decomposers of different dimension");
  }
  if (weights_.size() > d * d) {
    fail(ErrorCode::InvalidDecomposition,
         "length " + std::to_string(weights_.size()) + " exceeds d^2 = " + std::to_string(d * d));
  }
}

MixedDecomposition::MixedDecomposition(std::vector<double> weights,
                                       std::vector<DensityMatrix> components)
    : weights_(std::move(weights)), components_(std::move(components)) {
  check_weights(weights_);
  if (weights_.size() != components_.size()) {
    fail(ErrorCode::InvalidDecomposition, "weights and components differ in length");
  }
  const std::size_t d = components_.front().dim();
  for (const auto& c : components_) {
    if (c.dim() != d) fail(ErrorCode::DimensionMismatch, "components of different dimension");
  }
}

DensityMatrix reconstruct(const ExtremalDecomposition& dec) {
  const auto d = static_cast<Eigen::Index>(dec.dim());
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < dec.size(); ++j) {
    const Vector& v = dec.decomposers()[j].amplitudes();
    m.noalias() += dec.weights()[j] * (v * v.adjoint());
  }
  return validate_density(m / weight_sum(dec.weights()));
}

DensityMatrix reconstruct(const MixedDecomposition& dec) {
  const auto d = static_cast<Eigen::Index>(dec.dim());
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t j = 0; j < dec.size(); ++j) m += dec.weights()[j] * dec.components()[j].matrix();
  return validate_density(m / weight_sum(dec.weights()));
}

double weighted_restricted_entropy(const Eigen::Ref<const Vector>& u, const SubalgebraSpec& sub) {
  const double lambda = u.squaredNorm();
  if (lambda <= 0.0) return 0.0;
  double acc = 0.0;
  if (sub.kind == SubalgebraSpec::Kind::Diagonal) {
    for (Eigen::Index k = 0; k < u.size(); ++k) acc += xlogx(std::norm(u(k)));
    return xlogx(lambda) - acc;
  }
  const auto da = static_cast<Eigen::Index>(sub.dim_a);
  const auto db = static_cast<Eigen::Index>(sub.dim_b);
  Matrix c(da, db);
  for (Eigen::Index a = 0; a < da; ++a) {
    for (Eigen::Index b = 0; b < db; ++b) c(a, b) = u(a * db + b);
  }
  const Matrix reduced = c * c.adjoint();
  if (da == 1) return 0.0;
  if (da == 2) {
    const double t = reduced(0, 0).real() + reduced(1, 1).real();
    const double diff = reduced(0, 0).real() - reduced(1, 1).real();
    const double r = std::sqrt(diff * diff + 4.0 * std::norm(reduced(0, 1)));
    return xlogx(lambda) - xlogx(0.5 * (t + r)) - xlogx(std::max(0.0, 0.5 * (t - r)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(reduced, Eigen::EigenvaluesOnly);
  for (double nu : es.eigenvalues()) acc += xlogx(std::max(nu, 0.0));
  return xlogx(lambda) - acc;
}

double objective(const ExtremalDecomposition& dec, const SubalgebraSpec& sub) {
  sub.check_dim(dec.dim());
  double e = 0.0;
  for (std::size_t j = 0; j < dec.size(); ++j) {
    e += dec.weights()[j] *
         weighted_restricted_entropy(dec.decomposers()[j].amplitudes(), sub);
  }
  return e;
}

double objective(const MixedDecomposition& dec, const SubalgebraSpec& sub) {
  sub.check_dim(dec.dim());
  double e = 0.0;
  for (std::size_t j = 0; j < dec.size(); ++j) {
    e += dec.weights()[j] * von_neumann_entropy(restrict_state(dec.components()[j], sub));
  }
  return e;
}

MixedDecomposition povm_decomposition(const DensityMatrix& rho, const std::vector<Matrix>& povm) {
  if (povm.empty()) fail(ErrorCode::InvalidPOVM, "empty POVM");
  const auto d = static_cast<Eigen::Index>(rho.dim());
  Matrix total = Matrix::Zero(d, d);
  for (const Matrix& m : povm) {
    if (m.rows() != d || m.cols() != d) fail(ErrorCode::InvalidPOVM, "element dimension mismatch");
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
      fail(ErrorCode::InvalidPOVM, "element not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) fail(ErrorCode::InvalidPOVM, "element not PSD");
    total += m;
  }
  if ((total - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10) {
    fail(ErrorCode::InvalidPOVM, "elements do not sum to the identity");
  }
  const Matrix root = psd_sqrt(rho.matrix());
  std::vector<double> weights;
  std::vector<Matrix> parts;
  for (const Matrix& m : povm) {
    const double w = (rho.matrix() * m).trace().real();
    if (w < tolerance::weight_prune) continue;
    weights.push_back(w);
    parts.push_back(root * m * root / w);
  }
  const double sum = weight_sum(weights);
  std::vector<DensityMatrix> components;
  components.reserve(parts.size());
  for (auto& w : weights) w /= sum;
  for (const Matrix& p : parts) {
    // Rounding of the square root can leave the trace off by ~1e-15.
    const Matrix herm = 0.5 * (p + p.adjoint());
    components.push_back(validate_density(herm / herm.trace().real()));
  }
  return MixedDecomposition(std::move(weights), std::move(components));
}

ExtremalDecomposition ensemble_from_spectrum(const Spectrum& spectrum, const Matrix& mixer) {
  const Matrix basis = spectrum.vectors * spectrum.values.cwiseSqrt().cast<complex>().asDiagonal();
  return ensemble_from_vectors(basis * mixer.transpose());
}

ExtremalDecomposition ensemble_from_vectors(const Matrix& vectors) {
  std::vector<double> weights;
  std::vector<StateVector> decomposers;
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
    const double w = vectors.col(j).squaredNorm();
    if (w < tolerance::weight_prune) continue;
    weights.push_back(w);
    decomposers.push_back(StateVector::normalized(vectors.col(j)));
  }
  const double sum = weight_sum(weights);
  for (auto& w : weights) w /= sum;
  return ExtremalDecomposition(std::move(weights), std::move(decomposers));
}

ExtremalDecomposition mixer_ensemble(const DensityMatrix& rho, const Matrix& mixer) {
  const Spectrum spectrum = positive_spectrum(rho);
  if (static_cast<std::size_t>(mixer.cols()) != spectrum.rank()) {
    fail(ErrorCode::RankMismatch, "mixer has " + std::to_string(mixer.cols()) +
                                      " columns, state rank is " + std::to_string(spectrum.rank()));
  }
  const Matrix gram = mixer.adjoint() * mixer;
  const double dev = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) fail(ErrorCode::NotIsometry, "mixer columns not orthonormal: " + std::to_string(dev));
  return ensemble_from_spectrum(spectrum, mixer);
}

double entropy_of_subalgebra(const DensityMatrix& rho, const SubalgebraSpec& sub,
                             const OptimizerConfig& cfg) {
  const OptimizationResult res = minimize_objective(rho, sub, cfg);
  if (!res.converged) fail(ErrorCode::NonConvergence, "optimizer did not reach tol");
  return von_neumann_entropy(restrict_state(rho, sub)) - res.value;
}

}  // namespace subent
