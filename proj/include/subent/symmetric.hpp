#pragma once

// Permutation-invariant states rho_F on C^d, their cyclic-orbit
// decompositions, and the closed-form entanglement values with respect to
// the diagonal subalgebra.

#include <array>
#include <cstddef>
#include <vector>

#include "subent/decomp.hpp"
#include "subent/qstate.hpp"

namespace subent {

/// Bifurcation fidelity below which the optimal d = 3 orbit vector splits
/// into two mirror partners: (2 x* + 1) / 3 with x* = -0.4150234.
inline constexpr double kFStar = 0.0566511;
inline constexpr double kXStar = -0.4150234;

/// Upper end of the single-orbit regime for d = 3.
inline constexpr double kF89 = 8.0 / 9.0;

/// (1/sqrt d) sum_j |j>.
StateVector uniform_vector(std::size_t d);

/// Diagonal 1/d, off-diagonal x/d with F = (1 + (d-1) x) / d.
DensityMatrix perm_symmetric_state(std::size_t d, double fidelity);

double x_to_fidelity(std::size_t d, double x);
double fidelity_to_x(std::size_t d, double fidelity);

struct Case1Solution {
  double entanglement = 0.0;
  ExtremalDecomposition decomposition;
  double lambda = 0.0;
};

/// Optimal decomposition of [[a, b], [b*, 1-a]] with respect to the diagonal
/// subalgebra: decomposers (z1, z2) and (z2*, z1*) with
/// |z1|^2 = (1 + sqrt(1 - 4|b|^2)) / 2, z1 z2* = b. For |b| = 1/2 the state is
/// pure and the decomposition has a single term (lambda reported as a).
Case1Solution case1_optimal(double a, complex b);

/// Case-1 value for the permutation-invariant qubit state of fidelity F.
double case1_symmetric_entanglement(double fidelity);

/// Components (a + 2b cos t, a - 2b cos(t - pi/3), a - 2b cos(t + pi/3)) / 3
/// with a = sqrt(3F), b = sqrt(3(1-F)/2).
std::array<double, 3> orbit_components(double fidelity, double theta);
StateVector orbit_vector(double fidelity, double theta);

/// Single-orbit closed form; throws FOutOfDomain outside [F*, 8/9].
double case2_entanglement(double fidelity);
/// The same expression without the domain check.
double case2_formula(double fidelity);

/// s(p_F) + (d-1) s((1-p_F)/(d-1)), p_F = (sqrt F + sqrt((d-1)(1-F)))^2 / d.
double prop23_entanglement(std::size_t d, double fidelity);

/// Weights 1/d on V^j w, j = 0..d-1, where (V w)_k = w_{k-1}.
ExtremalDecomposition cyclic_orbit_decomposition(const StateVector& w);

/// Distinct component values of a real-realizable vector.
struct OrbitClass {
  std::vector<double> distinct_values;  // descending
  std::vector<std::size_t> multiplicities;
};

/// Rotates the global phase so the largest component is real-positive, then
/// clusters the real parts (single linkage, gap tol). Throws NotRealizable if
/// an imaginary part above tol survives, MoreThanThreeValues for > 3 clusters.
OrbitClass classify_components(const StateVector& w, double tol);

/// Largest |Im| left after aligning the global phase of w.
double phase_residual(const StateVector& w);

/// Bijection k -> image[k] on {0..d-1}; acts on vectors by e_k -> e_{image[k]}.
class PermutationAction {
 public:
  explicit PermutationAction(std::vector<std::size_t> image);

  std::size_t size() const { return image_.size(); }
  const std::vector<std::size_t>& image() const { return image_; }
  Matrix matrix() const;
  Vector apply(const Vector& v) const;

  static PermutationAction identity(std::size_t d);
  static PermutationAction cyclic_shift(std::size_t d);
  static PermutationAction transposition(std::size_t d, std::size_t i, std::size_t j);

 private:
  std::vector<std::size_t> image_;
};

/// All d! permutations of {0..d-1} in lexicographic order.
std::vector<PermutationAction> all_permutations(std::size_t d);

ExtremalDecomposition permute_decomposition(const ExtremalDecomposition& dec,
                                            const PermutationAction& g);

}  // namespace subent
