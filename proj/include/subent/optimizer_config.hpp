#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

namespace subent {

struct OptimizerConfig {
  /// Ensemble size; unset means d^2 for a d-dimensional state.
  std::optional<std::size_t> length;
  std::size_t restarts = 32;
  std::uint64_t seed = 0;
  /// Convergence threshold: objective spread of a simplex, and the gain of a
  /// full sweep of plane rotations.
  double tol = 1e-9;
  /// Iteration budget per restart (simplex iterations plus plane solves).
  std::size_t max_iters = 200000;
  /// Confine eof searches to vectors supported on {|jj>} (diagonal class).
  bool diagonal_class = false;
  /// Worker threads for restarts; 0 picks the hardware concurrency.
  std::size_t threads = 0;

  /// Throws InvalidConfig on length == 0, restarts == 0 or tol <= 0.
  void validate() const;
};

}  // namespace subent
