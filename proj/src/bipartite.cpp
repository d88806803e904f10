#include "subent/bipartite.hpp"

#include <cmath>
#include <string>

#include "subent/symmetric.hpp"

namespace subent {

namespace {

std::size_t local_dimension(std::size_t total) {
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(total))));
  if (d * d != total) fail(ErrorCode::DimensionMismatch, std::to_string(total) + " is not a square");
  return d;
}

}  // namespace

BipartiteState doubling(const DensityMatrix& rho_a) {
  const std::size_t d = rho_a.dim();
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix m = Matrix::Zero(n, n);
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t k = 0; k < d; ++k) {
      m(static_cast<Eigen::Index>(pair_index(d, j, j)), static_cast<Eigen::Index>(pair_index(d, k, k))) =
          rho_a(j, k);
    }
  }
  return {d, validate_density(m)};
}

DensityMatrix undouble(const BipartiteState& rho_ab) {
  const std::size_t d = rho_ab.local_dim;
  const Matrix& m = rho_ab.state.matrix();
  const auto dd = static_cast<Eigen::Index>(d);
  Matrix r(dd, dd);
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      const bool in_class = row % (dd + 1) == 0 && col % (dd + 1) == 0;
      if (in_class) {
        r(row / (dd + 1), col / (dd + 1)) = m(row, col);
      } else if (std::abs(m(row, col)) > 1e-10) {
        fail(ErrorCode::NotInDiagonalClass,
             "entry (" + std::to_string(row) + "," + std::to_string(col) + ") is nonzero");
      }
    }
  }
  return validate_density(r);
}

Vector double_vector(const Vector& c) {
  const auto d = c.size();
  Vector out = Vector::Zero(d * d);
  for (Eigen::Index j = 0; j < d; ++j) out(j * d + j) = c(j);
  return out;
}

StateVector maximally_entangled(std::size_t d) {
  if (d < 2) fail(ErrorCode::DimensionTooSmall, "need d >= 2");
  return StateVector(double_vector(uniform_vector(d).amplitudes()));
}

BipartiteState isotropic(std::size_t d, double fidelity) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    fail(ErrorCode::FOutOfRange, "F = " + std::to_string(fidelity));
  }
  const Matrix psi = maximally_entangled(d).projector();
  const auto n = static_cast<Eigen::Index>(d * d);
  const double mix = (1.0 - fidelity) / static_cast<double>(d * d - 1);
  const Matrix m = mix * (Matrix::Identity(n, n) - psi) + fidelity * psi;
  return {d, validate_density(m)};
}

OptimizationResult eof(const BipartiteState& rho_ab, const OptimizerConfig& cfg) {
  const SubalgebraSpec sub = rho_ab.factor();
  if (!cfg.diagonal_class) return minimize_objective(rho_ab.state, sub, cfg);
  const DensityMatrix core = undouble(rho_ab);
  return minimize_ensemble(
      core,
      [&sub](const Eigen::Ref<const Vector>& u) {
        return weighted_restricted_entropy(double_vector(u), sub);
      },
      cfg, [](const Vector& c) { return double_vector(c); });
}

StateVector embed(complex z1, complex z2, std::size_t n) {
  if (n < 2) fail(ErrorCode::DimensionTooSmall, "embedding needs n >= 2");
  const double norm2 = std::norm(z1) + std::norm(z2);
  if (std::abs(norm2 - 1.0) > 1e-12) {
    fail(ErrorCode::NotNormalized, "|z1|^2 + |z2|^2 = " + std::to_string(norm2));
  }
  const std::size_t local = n + 1;
  Vector c(static_cast<Eigen::Index>(local));
  c(0) = z1;
  c.tail(static_cast<Eigen::Index>(n)).setConstant(z2 / std::sqrt(static_cast<double>(n)));
  return StateVector::normalized(double_vector(c));
}

double f_double_star(std::size_t n) {
  if (n < 3) fail(ErrorCode::DimensionTooSmall, "F** needs local dimension >= 3");
  const double dn = static_cast<double>(n);
  return 4.0 * (dn - 1.0) / (dn * dn);
}

BipartiteState permutation_average(const StateVector& phi) {
  const std::size_t d = local_dimension(phi.dim());
  if (d > 5) fail(ErrorCode::InvalidConfig, "permutation average limited to d <= 5");
  const auto n = static_cast<Eigen::Index>(d * d);
  Matrix acc = Matrix::Zero(n, n);
  const auto perms = all_permutations(d);
  for (const PermutationAction& g : perms) {
    // (U (x) U)^-1 phi permutes both tensor indices by the inverse map.
    Vector moved(n);
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        moved(static_cast<Eigen::Index>(pair_index(d, j, k))) =
            phi[pair_index(d, g.image()[j], g.image()[k])];
      }
    }
    acc.noalias() += moved * moved.adjoint();
  }
  return {d, validate_density(acc / static_cast<double>(perms.size()))};
}

}  // namespace subent
