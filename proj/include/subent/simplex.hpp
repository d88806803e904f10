#pragma once

// Derivative-free minimization: Nelder-Mead with dimension-adaptive
// coefficients (Gao & Han 2012), and golden-section search on an interval.

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

namespace subent {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct SimplexOptions {
  double initial_step = 0.5;
  /// Converged once max f - min f over the simplex is <= ftol.
  double ftol = 1e-9;
  std::size_t max_iters = 100000;
};

struct SimplexResult {
  Eigen::VectorXd x;
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
};

SimplexResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const SimplexOptions& opt);

/// Repeated Nelder-Mead rounds from fresh simplices around the incumbent,
/// until a round improves by no more than ftol or the iteration budget runs
/// out. A single degenerate simplex can stall short of a minimum; the
/// rebuilt simplex does not.
SimplexResult polished_nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                                   const SimplexOptions& opt);

struct LineMinimum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for a local minimum of f on [lo, hi], stopping when
/// the bracket is narrower than xtol.
LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                           double xtol);

}  // namespace subent
