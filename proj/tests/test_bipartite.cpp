#include <cmath>

#include "subent/bipartite.hpp"
#include "subent/symmetric.hpp"
#include "test_support.hpp"

using namespace subent;
using namespace subent::testing;

TEST_CASE("doubling map") {
  const BipartiteState flat = doubling(maximally_mixed(3));
  Matrix expected = Matrix::Zero(9, 9);
  for (int j = 0; j < 3; ++j) expected(4 * j, 4 * j) = 1.0 / 3.0;
  CHECK(max_abs(flat.state.matrix() - expected) < 1e-15);

  const BipartiteState psi = doubling(pure_state(uniform_vector(3)));
  CHECK(max_abs(psi.state.matrix() - maximally_entangled(3).projector()) < 1e-15);

  // Entrywise: ((1-F)/(d-1)) (sum_j |jj><jj| - |Psi><Psi|) + F |Psi><Psi|.
  const double f = 0.35;
  const BipartiteState rho = doubling(perm_symmetric_state(3, f));
  const Matrix big_psi = maximally_entangled(3).projector();
  Matrix diag_class = Matrix::Zero(9, 9);
  for (int j = 0; j < 3; ++j) diag_class(4 * j, 4 * j) = 1.0;
  const Matrix formula = (1.0 - f) / 2.0 * (diag_class - big_psi) + f * big_psi;
  CHECK(max_abs(rho.state.matrix() - formula) < 1e-15);
}

TEST_CASE("undoubling") {
  std::mt19937_64 rng(40);
  for (int t = 0; t < 10; ++t) {
    const DensityMatrix r = random_state(rng, 3, 1 + static_cast<std::size_t>(t) % 3);
    CHECK(max_abs(undouble(doubling(r)).matrix() - r.matrix()) <= 1e-14);
  }
  CHECK(error_of([] { undouble(isotropic(3, 0.5)); }) == ErrorCode::NotInDiagonalClass);
  CHECK(max_abs(undouble(doubling(maximally_mixed(4))).matrix() - maximally_mixed(4).matrix()) == 0.0);
}

TEST_CASE("maximally entangled vectors") {
  const Vector two = maximally_entangled(2).amplitudes();
  CHECK(std::abs(two(0) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(two(3) - 1.0 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(two(1)) == 0.0);
  CHECK(overlap(doubling(perm_symmetric_state(3, 0.6)).state, maximally_entangled(3)) == doctest::Approx(0.6).epsilon(1e-14));
  const StateVector w1 = embed(1.0 / std::sqrt(3.0), std::sqrt(2.0 / 3.0), 2);
  CHECK(max_abs(w1.amplitudes() - maximally_entangled(3).amplitudes()) < 1e-15);
}

TEST_CASE("isotropic states") {
  CHECK(max_abs(isotropic(3, 1.0).state.matrix() - maximally_entangled(3).projector()) < 1e-15);
  CHECK(max_abs(isotropic(3, 1.0 / 9.0).state.matrix() - Matrix::Identity(9, 9) / 9.0) < 1e-15);
  for (double f : {0.0, 0.3, 0.8}) {
    CHECK(std::abs(overlap(isotropic(4, f).state, maximally_entangled(4)) - f) <= 1e-14);
  }
  CHECK(error_of([] { isotropic(3, -0.1); }) == ErrorCode::FOutOfRange);
}

TEST_CASE("entanglement of formation examples") {
  OptimizerConfig cfg;
  cfg.restarts = 4;
  // (|12><12| + |21><21|) / 2 is separable.
  Matrix swap = Matrix::Zero(4, 4);
  swap(1, 1) = 0.5;
  swap(2, 2) = 0.5;
  const BipartiteState sep{2, validate_density(swap)};
  CHECK(eof(sep, cfg).value < 1e-9);

  cfg.length = 9;
  CHECK(std::abs(eof(isotropic(3, 1.0), cfg).value - std::log(3.0)) < 1e-9);

  OptimizerConfig restricted;
  restricted.restarts = 4;
  restricted.diagonal_class = true;
  const OptimizationResult d89 = eof(doubling(perm_symmetric_state(3, kF89)), restricted);
  CHECK(std::abs(d89.value - (std::log(3.0) - std::log(2.0) / 3.0)) < 1e-4);
  CHECK(d89.decomposition.dim() == 9);
  CHECK(max_abs(reconstruct(d89.decomposition).matrix() - doubling(perm_symmetric_state(3, kF89)).state.matrix()) < 1e-8);

  cfg.length = 4;
  cfg.restarts = 4;
  CHECK(eof(isotropic(2, 0.5), cfg).value < 1e-6);
}

TEST_CASE("unrestricted eof is no worse than the restricted search") {
  const BipartiteState rho = doubling(perm_symmetric_state(2, 0.8));
  OptimizerConfig restricted;
  restricted.restarts = 4;
  restricted.diagonal_class = true;
  OptimizerConfig full;
  full.restarts = 4;
  full.length = 4;
  const double r = eof(rho, restricted).value;
  CHECK(eof(rho, full).value <= r + 1e-9);
  CHECK(std::abs(r - case1_symmetric_entanglement(0.8)) < 1e-8);
}

TEST_CASE("embeddings") {
  const Vector psi = maximally_entangled(3).amplitudes();
  const double s3 = 1.0 / std::sqrt(3.0);
  const double s23 = std::sqrt(2.0 / 3.0);
  CHECK(std::abs(std::norm(psi.dot(embed(s3, s23, 2).amplitudes())) - 1.0) < 1e-15);
  CHECK(std::abs(std::norm(psi.dot(embed(s23, s3, 2).amplitudes())) - 8.0 / 9.0) < 1e-15);
  for (std::size_t n : {2u, 3u, 5u}) {
    const double z1 = 1.0 / std::sqrt(n + 1.0);
    const double z2 = std::sqrt(n / (n + 1.0));
    const Vector big = maximally_entangled(n + 1).amplitudes();
    const double f = std::norm(big.dot(embed(z2, z1, n).amplitudes()));
    CHECK(f == doctest::Approx(4.0 * n / ((n + 1.0) * (n + 1.0))).epsilon(1e-14));
  }
  CHECK(error_of([] { embed(0.5, 0.5, 2); }) == ErrorCode::NotNormalized);
  CHECK(error_of([] { embed(1.0, 0.0, 1); }) == ErrorCode::DimensionTooSmall);
}

TEST_CASE("embedded optimal qubit pairs") {
  // The lifted pair costs its qubit value plus the weight on the n-fold
  // block times ln n.
  const double a = 0.3;
  const complex b(0.2, 0.05);
  const Case1Solution sol = case1_optimal(a, b);
  const std::size_t n = 2;
  std::vector<StateVector> lifted;
  for (const StateVector& w : sol.decomposition.decomposers()) lifted.push_back(embed(w[0], w[1], n));
  const ExtremalDecomposition dec(sol.decomposition.weights(), lifted);
  const BipartiteState mixture{n + 1, reconstruct(dec)};
  const double closed = sol.entanglement + (1.0 - a) * std::log(static_cast<double>(n));
  CHECK(std::abs(objective(dec, mixture.factor()) - closed) < 1e-12);
  OptimizerConfig cfg;
  cfg.restarts = 4;
  cfg.diagonal_class = true;
  CHECK(std::abs(eof(mixture, cfg).value - closed) < 1e-4);
}

TEST_CASE("F double star") {
  CHECK(f_double_star(3) == 8.0 / 9.0);
  CHECK(f_double_star(4) == 0.75);
  CHECK(error_of([] { f_double_star(2); }) == ErrorCode::DimensionTooSmall);
}

TEST_CASE("permutation average") {
  const BipartiteState psi = permutation_average(maximally_entangled(3));
  CHECK(max_abs(psi.state.matrix() - maximally_entangled(3).projector()) < 1e-14);

  const double f = 0.4;
  const StateVector w = orbit_vector(f, 0.0);
  const BipartiteState avg = permutation_average(StateVector(double_vector(w.amplitudes())));
  CHECK(max_abs(avg.state.matrix() - doubling(perm_symmetric_state(3, f)).state.matrix()) < 1e-14);
  CHECK(std::abs(overlap(avg.state, maximally_entangled(3)) - f) < 1e-14);

  Vector e12 = Vector::Zero(4);
  e12(1) = 1.0;
  const BipartiteState swap = permutation_average(StateVector(e12));
  Matrix expected = Matrix::Zero(4, 4);
  expected(1, 1) = 0.5;
  expected(2, 2) = 0.5;
  CHECK(max_abs(swap.state.matrix() - expected) < 1e-15);

  // Idempotent: averaging the eigenvectors of an average reproduces it.
  const Spectrum sp = positive_spectrum(avg.state);
  Matrix again = Matrix::Zero(9, 9);
  for (Eigen::Index k = 0; k < sp.values.size(); ++k) {
    again += sp.values(k) * permutation_average(StateVector::normalized(sp.vectors.col(k))).state.matrix();
  }
  CHECK(max_abs(again - avg.state.matrix()) <= 1e-12);
}
