#include "subent/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace subent {

namespace {

void check_fidelity(double f) {
  if (!(f >= 0.0 && f <= 1.0)) fail(ErrorCode::FOutOfRange, "F = " + std::to_string(f));
}

void check_dim(std::size_t d) {
  if (d < 2) fail(ErrorCode::DimensionTooSmall, "need d >= 2");
}

}  // namespace

StateVector uniform_vector(std::size_t d) {
  check_dim(d);
  const auto n = static_cast<Eigen::Index>(d);
  return StateVector(Vector::Constant(n, complex(1.0 / std::sqrt(static_cast<double>(d)), 0.0)));
}

double x_to_fidelity(std::size_t d, double x) {
  check_dim(d);
  const double dm1 = static_cast<double>(d - 1);
  if (x < -1.0 / dm1 - 1e-15 || x > 1.0 + 1e-15) {
    fail(ErrorCode::XOutOfRange, "x = " + std::to_string(x));
  }
  return (1.0 + dm1 * x) / static_cast<double>(d);
}

double fidelity_to_x(std::size_t d, double fidelity) {
  check_dim(d);
  check_fidelity(fidelity);
  return (static_cast<double>(d) * fidelity - 1.0) / static_cast<double>(d - 1);
}

DensityMatrix perm_symmetric_state(std::size_t d, double fidelity) {
  const double x = fidelity_to_x(d, fidelity);
  const auto n = static_cast<Eigen::Index>(d);
  const double inv_d = 1.0 / static_cast<double>(d);
  Matrix m = Matrix::Constant(n, n, complex(x * inv_d, 0.0));
  m.diagonal().setConstant(complex(inv_d, 0.0));
  return validate_density(m);
}

Case1Solution case1_optimal(double a, complex b) {
  if (!(a >= 0.0 && a <= 1.0) || std::norm(b) > a * (1.0 - a) + 1e-12) {
    fail(ErrorCode::InvalidBlochParams,
         "need 0 <= a <= 1 and |b|^2 <= a(1-a); a = " + std::to_string(a) +
             ", |b| = " + std::to_string(std::abs(b)));
  }
  const double disc = std::max(0.0, 1.0 - 4.0 * std::norm(b));
  const double root = std::sqrt(disc);
  const double p1 = 0.5 * (1.0 + root);
  const double z1 = std::sqrt(p1);
  const complex z2 = std::conj(b) / z1;
  const double entanglement = shannon_term(p1) + shannon_term(std::clamp(1.0 - p1, 0.0, 1.0));

  Vector w1(2);
  w1 << z1, z2;
  if (disc <= 1e-12) {
    // Pure state on the |b| = 1/2 circle: lambda is 0/0, one decomposer suffices.
    return {entanglement, ExtremalDecomposition({1.0}, {StateVector::normalized(w1)}), a};
  }
  const double lambda = std::clamp(0.5 * (1.0 + (2.0 * a - 1.0) / root), 0.0, 1.0);
  Vector w2(2);
  w2 << std::conj(z2), z1;
  std::vector<double> weights;
  std::vector<StateVector> vecs;
  if (lambda > tolerance::weight_prune) {
    weights.push_back(lambda);
    vecs.push_back(StateVector::normalized(w1));
  }
  if (1.0 - lambda > tolerance::weight_prune) {
    weights.push_back(1.0 - lambda);
    vecs.push_back(StateVector::normalized(w2));
  }
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  for (auto& w : weights) w /= sum;
  return {entanglement, ExtremalDecomposition(std::move(weights), std::move(vecs)), lambda};
}

double case1_symmetric_entanglement(double fidelity) {
  check_fidelity(fidelity);
  const double r = 2.0 * std::sqrt(fidelity * (1.0 - fidelity));
  return shannon_term(std::min(1.0, 0.5 * (1.0 + r))) + shannon_term(std::max(0.0, 0.5 * (1.0 - r)));
}

std::array<double, 3> orbit_components(double fidelity, double theta) {
  check_fidelity(fidelity);
  const double a = std::sqrt(3.0 * fidelity);
  const double b = std::sqrt(1.5 * (1.0 - fidelity));
  constexpr double third = std::numbers::pi / 3.0;
  return {(a + 2.0 * b * std::cos(theta)) / 3.0, (a - 2.0 * b * std::cos(theta - third)) / 3.0,
          (a - 2.0 * b * std::cos(theta + third)) / 3.0};
}

StateVector orbit_vector(double fidelity, double theta) {
  const auto c = orbit_components(fidelity, theta);
  Vector v(3);
  v << c[0], c[1], c[2];
  return StateVector::normalized(v);
}

double case2_formula(double fidelity) {
  check_fidelity(fidelity);
  const double q = std::sqrt(2.0 * fidelity * (1.0 - fidelity));
  const double big = std::clamp((2.0 - fidelity + 2.0 * q) / 3.0, 0.0, 1.0);
  const double small = std::clamp((1.0 + fidelity - 2.0 * q) / 6.0, 0.0, 1.0);
  return shannon_term(big) + 2.0 * shannon_term(small);
}

double case2_entanglement(double fidelity) {
  check_fidelity(fidelity);
  if (fidelity < kFStar || fidelity > kF89) {
    fail(ErrorCode::FOutOfDomain,
         "single-orbit formula is proven only on [F*, 8/9]; F = " + std::to_string(fidelity));
  }
  return case2_formula(fidelity);
}

double prop23_entanglement(std::size_t d, double fidelity) {
  check_dim(d);
  check_fidelity(fidelity);
  const double dm1 = static_cast<double>(d - 1);
  const double amp = std::sqrt(fidelity) + std::sqrt(dm1 * (1.0 - fidelity));
  const double p = std::clamp(amp * amp / static_cast<double>(d), 0.0, 1.0);
  return shannon_term(p) + dm1 * shannon_term((1.0 - p) / dm1);
}

ExtremalDecomposition cyclic_orbit_decomposition(const StateVector& w) {
  const std::size_t d = w.dim();
  const PermutationAction shift = PermutationAction::cyclic_shift(d);
  std::vector<StateVector> vecs;
  vecs.reserve(d);
  Vector current = w.amplitudes();
  for (std::size_t j = 0; j < d; ++j) {
    vecs.push_back(StateVector::normalized(current));
    current = shift.apply(current);
  }
  return ExtremalDecomposition(std::vector<double>(d, 1.0 / static_cast<double>(d)), std::move(vecs));
}

namespace {

Vector phase_aligned(const StateVector& w) {
  const Vector& v = w.amplitudes();
  Eigen::Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const complex c = v(k);
  return v * (std::conj(c) / std::abs(c));
}

}  // namespace

double phase_residual(const StateVector& w) { return phase_aligned(w).imag().cwiseAbs().maxCoeff(); }

OrbitClass classify_components(const StateVector& w, double tol) {
  const Vector aligned = phase_aligned(w);
  const double residual = aligned.imag().cwiseAbs().maxCoeff();
  if (residual > tol) {
    fail(ErrorCode::NotRealizable, "imaginary residual " + std::to_string(residual));
  }
  std::vector<double> vals(static_cast<std::size_t>(aligned.size()));
  for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = aligned(static_cast<Eigen::Index>(k)).real();
  std::sort(vals.begin(), vals.end(), std::greater<>());

  OrbitClass out;
  double sum = vals.front();
  std::size_t count = 1;
  for (std::size_t k = 1; k <= vals.size(); ++k) {
    if (k == vals.size() || vals[k - 1] - vals[k] > tol) {
      out.distinct_values.push_back(sum / static_cast<double>(count));
      out.multiplicities.push_back(count);
      if (k == vals.size()) break;
      sum = 0.0;
      count = 0;
    }
    sum += vals[k];
    ++count;
  }
  if (out.distinct_values.size() > 3) {
    fail(ErrorCode::MoreThanThreeValues,
         std::to_string(out.distinct_values.size()) + " distinct component values");
  }
  return out;
}

PermutationAction::PermutationAction(std::vector<std::size_t> image) : image_(std::move(image)) {
  std::vector<bool> seen(image_.size(), false);
  for (std::size_t v : image_) {
    if (v >= image_.size() || seen[v]) fail(ErrorCode::InvalidPermutation, "not a bijection");
    seen[v] = true;
  }
}

Matrix PermutationAction::matrix() const {
  const auto n = static_cast<Eigen::Index>(image_.size());
  Matrix p = Matrix::Zero(n, n);
  for (std::size_t k = 0; k < image_.size(); ++k) {
    p(static_cast<Eigen::Index>(image_[k]), static_cast<Eigen::Index>(k)) = 1.0;
  }
  return p;
}

Vector PermutationAction::apply(const Vector& v) const {
  if (static_cast<std::size_t>(v.size()) != image_.size()) {
    fail(ErrorCode::DimensionMismatch, "permutation size differs from vector dimension");
  }
  Vector out(v.size());
  for (std::size_t k = 0; k < image_.size(); ++k) {
    out(static_cast<Eigen::Index>(image_[k])) = v(static_cast<Eigen::Index>(k));
  }
  return out;
}

PermutationAction PermutationAction::identity(std::size_t d) {
  std::vector<std::size_t> img(d);
  std::iota(img.begin(), img.end(), 0);
  return PermutationAction(std::move(img));
}

PermutationAction PermutationAction::cyclic_shift(std::size_t d) {
  std::vector<std::size_t> img(d);
  for (std::size_t k = 0; k < d; ++k) img[k] = (k + 1) % d;
  return PermutationAction(std::move(img));
}

PermutationAction PermutationAction::transposition(std::size_t d, std::size_t i, std::size_t j) {
  std::vector<std::size_t> img(d);
  std::iota(img.begin(), img.end(), 0);
  if (i >= d || j >= d) fail(ErrorCode::InvalidPermutation, "transposition index out of range");
  std::swap(img[i], img[j]);
  return PermutationAction(std::move(img));
}

std::vector<PermutationAction> all_permutations(std::size_t d) {
  std::vector<std::size_t> img(d);
  std::iota(img.begin(), img.end(), 0);
  std::vector<PermutationAction> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

ExtremalDecomposition permute_decomposition(const ExtremalDecomposition& dec,
                                            const PermutationAction& g) {
  std::vector<StateVector> vecs;
  vecs.reserve(dec.size());
  for (const auto& v : dec.decomposers()) vecs.emplace_back(g.apply(v.amplitudes()));
  return ExtremalDecomposition(dec.weights(), std::move(vecs));
}

}  // namespace subent
