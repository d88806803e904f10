#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "subent/decomp.hpp"
#include "subent/optimizer_config.hpp"
#include "subent/qstate.hpp"

namespace subent {

struct OptimizationResult {
  double value = 0.0;  // nats
  ExtremalDecomposition decomposition;
  bool converged = false;
  /// max - min over the per-restart optima.
  double restart_spread = 0.0;
  std::vector<double> restart_values;
  std::size_t best_restart = 0;
};

/// n x r isometries from complex Givens angles.
///
/// The mixer is R_1 R_2 ... R_m [I_r; 0], one rotation on rows (i, i+1) for
/// each elimination step of a column-by-column QR reduction, so every
/// isometry is reachable up to left row phases (which never change the
/// ensemble's projectors). Parameters come in (theta, phi) pairs.
class IsometryParametrization {
 public:
  IsometryParametrization(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t parameter_count() const { return 2 * planes_.size(); }

  Matrix build(const Eigen::VectorXd& params) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::size_t> planes_;  // rotation acts on rows (i, i+1); applied last-to-first
};

/// E(rho; A) by multistart simplex descent over mixers of the given length.
/// Each restart runs Nelder-Mead over the Givens angles of the mixer on a
/// quarter of max_iters, then sweeps two-angle simplex descents over the
/// pairwise plane rotations of the ensemble (one plane solve counts as one
/// iteration) until a full sweep gains no more than tol.
/// Restart k draws its start from a generator seeded with splitmix64(seed + k);
/// the best value wins and ties within tol go to the lowest restart index.
/// `converged` is false when no restart met tol within max_iters.
OptimizationResult minimize_objective(const DensityMatrix& rho, const SubalgebraSpec& sub,
                                      const OptimizerConfig& cfg);

/// Generic form: minimize over ensembles of `rho` the sum of `cost(u_j)`
/// over the unnormalized ensemble vectors. `lift` maps final decomposers to
/// the space the decomposition is reported in (identity when empty).
using TermCost = std::function<double(const Eigen::Ref<const Vector>&)>;
using Lift = std::function<Vector(const Vector&)>;
OptimizationResult minimize_ensemble(const DensityMatrix& rho, const TermCost& cost,
                                     const OptimizerConfig& cfg, const Lift& lift = {});

std::uint64_t splitmix64(std::uint64_t x);

// --- one-angle reduction for permutation-invariant qutrit states ---------

struct ThetaMinimum {
  double theta = 0.0;  // in [0, 2 pi / 3)
  double value = 0.0;
};

struct ThetaProfile {
  double fidelity = 0.0;
  std::vector<double> grid;    // uniform on [0, 2 pi)
  std::vector<double> values;  // sum_j s(|w_j(F; theta)|^2)
  std::vector<ThetaMinimum> minima;  // distinct local minima, sorted by theta
};

/// Cyclic-orbit objective sum_j s(|w_j(F; theta)|^2) for the d = 3 orbit vector.
double orbit_profile(double fidelity, double theta);

/// Scans the orbit objective on a uniform grid of [0, 2 pi), refines every
/// discrete local minimum (and its mirror image -theta) by golden section to
/// 1e-10, and merges minima that agree modulo 2 pi / 3 within 1e-6.
ThetaProfile theta_scan(double fidelity, std::size_t grid_size);

struct OrbitMinimum {
  double value = 0.0;
  std::vector<double> minimizers;  // theta*, modulo 2 pi / 3
};

inline constexpr std::size_t default_theta_grid = 720;

/// S(F): global minimum of the orbit objective and every angle attaining it
/// (values within 1e-12 of the minimum).
OrbitMinimum s_of_f(double fidelity, std::size_t grid_size = default_theta_grid);

/// True when s_of_f(F) has a minimizer within 1e-5 of theta = 0 (mod 2 pi / 3).
bool minimizer_at_zero(double fidelity);

/// Bisection on F for the point where the minimizer leaves theta = 0.
double find_bifurcation(double f_lo, double f_hi, double tol_f);

/// Indices i (interior points) whose centered second difference is below -1e-9.
std::vector<std::size_t> convexity_profile(const std::vector<double>& grid,
                                           const std::vector<double>& values);

}  // namespace subent
