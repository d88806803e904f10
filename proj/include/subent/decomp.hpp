#pragma once

#include <cstddef>
#include <vector>

#include "subent/optimizer_config.hpp"
#include "subent/qstate.hpp"

namespace subent {

/// rho = sum_j weights[j] |phi_j><phi_j| with positive weights summing to 1
/// and at most d^2 terms.
class ExtremalDecomposition {
 public:
  ExtremalDecomposition(std::vector<double> weights, std::vector<StateVector> decomposers);

  std::size_t size() const { return weights_.size(); }
  std::size_t dim() const { return decomposers_.front().dim(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<StateVector>& decomposers() const { return decomposers_; }

 private:
  std::vector<double> weights_;
  std::vector<StateVector> decomposers_;
};

/// rho = sum_j weights[j] rho_j over mixed components.
class MixedDecomposition {
 public:
  MixedDecomposition(std::vector<double> weights, std::vector<DensityMatrix> components);

  std::size_t size() const { return weights_.size(); }
  std::size_t dim() const { return components_.front().dim(); }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<DensityMatrix>& components() const { return components_; }

 private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> components_;
};

DensityMatrix reconstruct(const ExtremalDecomposition& dec);
DensityMatrix reconstruct(const MixedDecomposition& dec);

/// sum_j lambda_j S(pi_j restricted to sub).
double objective(const ExtremalDecomposition& dec, const SubalgebraSpec& sub);
double objective(const MixedDecomposition& dec, const SubalgebraSpec& sub);

/// lambda * S(|u><u|/lambda restricted to sub) for an unnormalized vector u
/// with lambda = |u|^2. This is the per-term cost the optimizer sums.
double weighted_restricted_entropy(const Eigen::Ref<const Vector>& u, const SubalgebraSpec& sub);

/// Decomposition induced by a POVM: weights Tr(rho M_j), components
/// sqrt(rho) M_j sqrt(rho) / Tr(rho M_j). Terms with weight < 1e-14 are dropped.
MixedDecomposition povm_decomposition(const DensityMatrix& rho, const std::vector<Matrix>& povm);

/// Ensemble u_j = sum_k mixer(j,k) sqrt(mu_k) e_k built from the eigenpairs
/// (mu_k, e_k) of rho above the rank cutoff. `mixer` is n x rank with
/// orthonormal columns; rows producing weight < 1e-14 are dropped.
ExtremalDecomposition mixer_ensemble(const DensityMatrix& rho, const Matrix& mixer);

/// Same construction from a precomputed spectrum, no isometry check.
ExtremalDecomposition ensemble_from_spectrum(const Spectrum& spectrum, const Matrix& mixer);
/// Decomposition whose unnormalized vectors u_j are the columns; terms with
/// weight below tolerance::weight_prune are dropped and the rest renormalized.
ExtremalDecomposition ensemble_from_vectors(const Matrix& vectors);

/// H_rho(A) = S(rho|A) - E(rho; A). Throws NonConvergence if the optimizer
/// did not converge.
double entropy_of_subalgebra(const DensityMatrix& rho, const SubalgebraSpec& sub,
                             const OptimizerConfig& cfg);

}  // namespace subent
