#include <cmath>
#include <numbers>

#include "subent/optimizer.hpp"
#include "subent/symmetric.hpp"
#include "test_support.hpp"

using namespace subent;
using namespace subent::testing;

TEST_CASE("permutation-invariant states") {
  CHECK(max_abs(perm_symmetric_state(3, 1.0).matrix() - uniform_vector(3).projector()) < 1e-15);
  CHECK(max_abs(perm_symmetric_state(3, 1.0 / 3.0).matrix() - Matrix::Identity(3, 3) / 3.0) < 1e-15);
  const DensityMatrix zero = perm_symmetric_state(3, 0.0);
  CHECK(zero(0, 1).real() == doctest::Approx(-0.5 / 3.0).epsilon(1e-15));
  for (double f : {0.0, 0.2, 0.7, 1.0}) {
    CHECK(overlap(perm_symmetric_state(5, f), uniform_vector(5)) == doctest::Approx(f).epsilon(1e-13));
  }
  const DensityMatrix rho = perm_symmetric_state(3, 0.4);
  for (const PermutationAction& g : all_permutations(3)) {
    const Matrix p = g.matrix();
    CHECK(max_abs(p * rho.matrix() * p.adjoint() - rho.matrix()) <= 1e-14);
  }
  CHECK(error_of([] { perm_symmetric_state(3, 1.2); }) == ErrorCode::FOutOfRange);
}

TEST_CASE("fidelity and x") {
  CHECK(x_to_fidelity(3, kXStar) == doctest::Approx(kFStar).epsilon(1e-7));
  CHECK(x_to_fidelity(4, 1.0) == 1.0);
  CHECK(x_to_fidelity(4, 0.0) == 0.25);
  CHECK(fidelity_to_x(3, x_to_fidelity(3, -0.3)) == doctest::Approx(-0.3));
  CHECK(error_of([] { x_to_fidelity(3, -0.6); }) == ErrorCode::XOutOfRange);
}

TEST_CASE("qubit closed form") {
  const Case1Solution diag = case1_optimal(0.5, 0.0);
  CHECK(diag.entanglement == 0.0);
  CHECK(diag.decomposition.size() == 2);

  // 30-digit reference: s(p) + s(1 - p) with p = (1 + sqrt(0.75)) / 2.
  const Case1Solution quarter = case1_optimal(0.5, 0.25);
  CHECK(std::abs(quarter.entanglement - 0.245775366668471) < 1e-14);

  const Case1Solution pure = case1_optimal(0.5, 0.5);
  CHECK(pure.entanglement == doctest::Approx(std::log(2.0)).epsilon(1e-12));
  REQUIRE(pure.decomposition.size() == 1);
  CHECK(std::abs(pure.decomposition.decomposers()[0][0] - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(pure.lambda == 0.5);

  std::mt19937_64 rng(30);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int t = 0; t < 50; ++t) {
    const double a = u(rng);
    const complex b = std::polar(std::sqrt(a * (1.0 - a)) * u(rng), 6.0 * u(rng));
    const Case1Solution s = case1_optimal(a, b);
    Matrix m(2, 2);
    m << a, b, std::conj(b), 1.0 - a;
    CHECK(max_abs(reconstruct(s.decomposition).matrix() - m) < 1e-12);
    CHECK(std::abs(objective(s.decomposition, SubalgebraSpec::diagonal()) - s.entanglement) < 1e-12);
  }
  CHECK(error_of([] { case1_optimal(0.5, 0.6); }) == ErrorCode::InvalidBlochParams);
  CHECK(error_of([] { case1_optimal(1.5, 0.0); }) == ErrorCode::InvalidBlochParams);
}

TEST_CASE("qubit closed form against the optimizer") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  OptimizerConfig cfg;
  cfg.restarts = 8;
  for (int t = 0; t < 10; ++t) {
    const double a = u(rng);
    const complex b = std::polar(std::sqrt(a * (1.0 - a)) * u(rng), 6.0 * u(rng));
    Matrix m(2, 2);
    m << a, b, std::conj(b), 1.0 - a;
    const double numeric = minimize_objective(validate_density(m), SubalgebraSpec::diagonal(), cfg).value;
    CHECK(std::abs(numeric - case1_optimal(a, b).entanglement) < 1e-6);
  }
}

TEST_CASE("symmetric qubit formula") {
  CHECK(case1_symmetric_entanglement(1.0) == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  CHECK(case1_symmetric_entanglement(0.5) == 0.0);
  CHECK(std::abs(case1_symmetric_entanglement(0.75) - 0.245775366668471) < 1e-14);
  for (double f : {0.1, 0.4, 0.75, 0.9}) {
    CHECK(std::abs(prop23_entanglement(2, f) - case1_symmetric_entanglement(f)) < 1e-12);
  }
}

TEST_CASE("qutrit orbit vector") {
  const StateVector top = orbit_vector(kF89, 0.0);
  CHECK(std::abs(top[0].real() - 0.816496580927726) < 1e-12);
  CHECK(std::abs(top[1].real() - 0.408248290463863) < 1e-12);
  CHECK(std::abs(top[2].real() - 0.408248290463863) < 1e-12);
  const StateVector flat = orbit_vector(1.0, 0.8);
  CHECK(max_abs(flat.amplitudes() - uniform_vector(3).amplitudes()) < 1e-14);
  const StateVector edge = orbit_vector(0.0, -std::numbers::pi / 6.0);
  CHECK(std::abs(std::abs(edge[0].real()) - 1.0 / std::sqrt(2.0)) < 1e-12);
  CHECK(std::abs(edge[1].real()) < 1e-12);
  CHECK(std::abs(edge[0].real() + edge[2].real()) < 1e-12);
}

TEST_CASE("qutrit closed forms") {
  CHECK(std::abs(case2_entanglement(kF89) - (std::log(3.0) - std::log(2.0) / 3.0)) < 1e-12);
  CHECK(std::abs(case2_entanglement(1.0 / 3.0)) < 1e-15);
  CHECK(std::abs(case2_entanglement(0.2) - 0.124888375166852) < 1e-14);
  CHECK(std::abs(case2_entanglement(kFStar) - s_of_f(kFStar).value) < 1e-9);
  CHECK(error_of([] { case2_entanglement(0.02); }) == ErrorCode::FOutOfDomain);
  CHECK(error_of([] { case2_entanglement(0.95); }) == ErrorCode::FOutOfDomain);
  CHECK(std::abs(case2_formula(0.1) - 0.346113205259504) < 1e-14);

  for (int i = 0; i < 50; ++i) {
    const double f = kFStar + (kF89 - kFStar) * i / 49.0;
    CHECK(std::abs(case2_entanglement(f) - prop23_entanglement(3, f)) <= 1e-12);
    CHECK(std::abs(case2_entanglement(f) - s_of_f(f).value) <= 1e-9);
  }
}

TEST_CASE("general-d single-orbit formula") {
  CHECK(std::abs(prop23_entanglement(4, 0.25)) < 1e-15);
  CHECK(std::abs(prop23_entanglement(3, kF89) - (std::log(3.0) - std::log(2.0) / 3.0)) < 1e-12);
  CHECK(std::abs(prop23_entanglement(4, 0.5) - 0.319368435554353) < 1e-14);
  CHECK(std::abs(prop23_entanglement(5, 0.3) - 0.0896392390822215) < 1e-14);
}

TEST_CASE("cyclic orbit decompositions") {
  const ExtremalDecomposition flat = cyclic_orbit_decomposition(uniform_vector(3));
  CHECK(max_abs(reconstruct(flat).matrix() - uniform_vector(3).projector()) < 1e-15);
  const ExtremalDecomposition top = cyclic_orbit_decomposition(orbit_vector(kF89, 0.0));
  CHECK(max_abs(reconstruct(top).matrix() - perm_symmetric_state(3, kF89).matrix()) < 1e-14);
  Vector e0 = Vector::Zero(3);
  e0(0) = 1.0;
  const ExtremalDecomposition basis = cyclic_orbit_decomposition(StateVector(e0));
  CHECK(max_abs(reconstruct(basis).matrix() - Matrix::Identity(3, 3) / 3.0) < 1e-15);
  CHECK(objective(basis, SubalgebraSpec::diagonal()) == 0.0);
}

TEST_CASE("component classes") {
  const OrbitClass top = classify_components(orbit_vector(kF89, 0.0), 1e-4);
  REQUIRE(top.distinct_values.size() == 2);
  CHECK(top.distinct_values[0] == doctest::Approx(0.816496580927726).epsilon(1e-10));
  CHECK(top.multiplicities == std::vector<std::size_t>{1, 2});
  const OrbitClass flat = classify_components(uniform_vector(4), 1e-4);
  CHECK(flat.distinct_values.size() == 1);
  CHECK(flat.multiplicities == std::vector<std::size_t>{4});
  const double alpha = s_of_f(0.02).minimizers.front();
  const OrbitClass split = classify_components(orbit_vector(0.02, alpha), 1e-4);
  CHECK(split.multiplicities == std::vector<std::size_t>{1, 1, 1});

  Vector twisted(2);
  twisted << complex(0.6, 0.0), complex(0.0, 0.8);
  CHECK(error_of([&] { classify_components(StateVector(twisted), 1e-4); }) == ErrorCode::NotRealizable);
  Vector spread(4);
  spread << 0.1, 0.3, 0.5, 0.7;
  CHECK(error_of([&] { classify_components(StateVector::normalized(spread), 1e-4); }) ==
        ErrorCode::MoreThanThreeValues);
}

TEST_CASE("permutation actions") {
  CHECK(all_permutations(3).size() == 6);
  CHECK(all_permutations(4).size() == 24);
  CHECK(error_of([] { PermutationAction({0, 0, 1}); }) == ErrorCode::InvalidPermutation);
  const ExtremalDecomposition orbit = cyclic_orbit_decomposition(orbit_vector(0.5, 0.3));
  const ExtremalDecomposition same = permute_decomposition(orbit, PermutationAction::identity(3));
  CHECK(max_abs(reconstruct(same).matrix() - reconstruct(orbit).matrix()) == 0.0);
  const ExtremalDecomposition shifted = permute_decomposition(orbit, PermutationAction::cyclic_shift(3));
  // The shift maps the orbit onto itself: decomposer j goes to decomposer j + 1.
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(max_abs(shifted.decomposers()[j].amplitudes() - orbit.decomposers()[(j + 1) % 3].amplitudes()) < 1e-15);
  }
  // A transposition carries the orbit of one minimizer to its mirror partner.
  const OrbitMinimum m = s_of_f(0.02);
  const ExtremalDecomposition w = cyclic_orbit_decomposition(orbit_vector(0.02, m.minimizers.front()));
  const ExtremalDecomposition partner = permute_decomposition(w, PermutationAction::transposition(3, 1, 2));
  CHECK(std::abs(objective(partner, SubalgebraSpec::diagonal()) - m.value) < 1e-12);
  CHECK(max_abs(reconstruct(partner).matrix() - perm_symmetric_state(3, 0.02).matrix()) < 1e-12);
}

TEST_CASE("optimal decomposers of real states are real") {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> g;
  OptimizerConfig cfg;
  cfg.restarts = 8;
  cfg.tol = 1e-12;
  for (std::size_t d : {2u, 3u}) {
    for (int t = 0; t < 3; ++t) {
      Eigen::MatrixXd a(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
      for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = g(rng);
      Eigen::MatrixXd m = a * a.transpose();
      m /= m.trace();
      cfg.length = d;
      const OptimizationResult r = minimize_objective(validate_density(m.cast<complex>()), SubalgebraSpec::diagonal(), cfg);
      for (const StateVector& w : r.decomposition.decomposers()) CHECK(phase_residual(w) <= 1e-5);
    }
  }
}
