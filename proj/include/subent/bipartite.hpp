#pragma once

// Bipartite C^d (x) C^d states with basis |j>|k> -> j*d + k: the doubling
// map onto the diagonal class, isotropic states, entanglement of formation,
// and the qubit-to-(n+1) embeddings of optimal pairs.

#include <cstddef>

#include "subent/optimizer.hpp"
#include "subent/qstate.hpp"

namespace subent {

struct BipartiteState {
  std::size_t local_dim = 0;
  DensityMatrix state;

  SubalgebraSpec factor() const { return SubalgebraSpec::factor_a(local_dim, local_dim); }
};

/// Index of |j>|k> in C^d (x) C^d.
constexpr std::size_t pair_index(std::size_t d, std::size_t j, std::size_t k) { return j * d + k; }

/// sum_{jk} R_jk |j><k| (x) |j><k|.
BipartiteState doubling(const DensityMatrix& rho_a);

/// Inverse of `doubling` on the diagonal class; any entry outside the
/// positions (jd+j, kd+k) above 1e-10 in modulus is NotInDiagonalClass.
DensityMatrix undouble(const BipartiteState& rho_ab);

/// sum_j c_j |jj> for a vector c in C^d.
Vector double_vector(const Vector& c);

/// (1/sqrt d) sum_j |jj>.
StateVector maximally_entangled(std::size_t d);

/// ((1-F)/(d^2-1)) (1 - |Psi><Psi|) + F |Psi><Psi|.
BipartiteState isotropic(std::size_t d, double fidelity);

/// Entanglement of formation. With cfg.diagonal_class set the state must be
/// in the diagonal class and the search runs over ensembles of undouble(rho)
/// lifted through |j> -> |jj>; the objective is still the entropy of the
/// partial trace of each lifted decomposer.
OptimizationResult eof(const BipartiteState& rho_ab, const OptimizerConfig& cfg);

/// z1 |00> + (z2 / sqrt n) sum_{j=1}^{n} |jj> in (n+1)^2 dimensions.
StateVector embed(complex z1, complex z2, std::size_t n);

/// F** = 4(n-1)/n^2 for local dimension n >= 3.
double f_double_star(std::size_t n);

/// (1/d!) sum_pi (U_pi (x) U_pi)^-1 |phi><phi| (U_pi (x) U_pi); d <= 5.
BipartiteState permutation_average(const StateVector& phi);

}  // namespace subent
