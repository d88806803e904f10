#include "subent/optimizer.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <thread>

#include "subent/simplex.hpp"
#include "subent/symmetric.hpp"

namespace subent {

void OptimizerConfig::validate() const {
  if (length && *length == 0) fail(ErrorCode::InvalidConfig, "length must be >= 1");
  if (restarts == 0) fail(ErrorCode::InvalidConfig, "restarts must be >= 1");
  if (!(tol > 0.0)) fail(ErrorCode::InvalidConfig, "tol must be > 0");
  if (max_iters == 0) fail(ErrorCode::InvalidConfig, "max_iters must be >= 1");
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

IsometryParametrization::IsometryParametrization(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols) {
  if (cols == 0 || rows < cols) {
    fail(ErrorCode::InvalidConfig, "isometry needs rows >= cols >= 1");
  }
  for (std::size_t k = cols; k-- > 0;) {
    for (std::size_t i = k; i + 1 < rows; ++i) planes_.push_back(i);
  }
}

Matrix IsometryParametrization::build(const Eigen::VectorXd& params) const {
  const auto n = static_cast<Eigen::Index>(rows_);
  const auto r = static_cast<Eigen::Index>(cols_);
  Matrix m = Matrix::Zero(n, r);
  m.topRows(r).setIdentity();
  for (std::size_t p = 0; p < planes_.size(); ++p) {
    const auto i = static_cast<Eigen::Index>(planes_[p]);
    const double c = std::cos(params(static_cast<Eigen::Index>(2 * p)));
    const double s = std::sin(params(static_cast<Eigen::Index>(2 * p)));
    const complex phase = std::polar(1.0, params(static_cast<Eigen::Index>(2 * p + 1)));
    for (Eigen::Index col = 0; col < r; ++col) {
      const complex top = m(i, col);
      const complex bottom = m(i + 1, col);
      m(i, col) = c * top - std::conj(phase) * s * bottom;
      m(i + 1, col) = phase * s * top + c * bottom;
    }
  }
  return m;
}

namespace {

struct RestartOutcome {
  Matrix vectors;
  double value = 0.0;
  bool converged = false;
};

std::size_t worker_count(const OptimizerConfig& cfg) {
  std::size_t t = cfg.threads;
  if (t == 0) t = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  return std::min(t, cfg.restarts);
}

struct SweepResult {
  std::size_t iterations = 0;
  bool converged = false;
};

// Sweeps of two-parameter simplex descents over the plane rotations
//   (u_i, u_j) -> (c u_i - e^{-i phi} s u_j, e^{i phi} s u_i + c u_j)
// of every pair of ensemble vectors. Each rotation keeps sum_j u_j u_j^*
// fixed, and together the planes generate the whole unitary group, so this
// is a block-coordinate simplex descent over mixers. It keeps making
// progress close to product decomposers, where the full-dimensional simplex
// crawls. Stops once a sweep gains no more than tol.
SweepResult plane_sweeps(const TermCost& cost, Matrix& vectors, double tol, std::size_t budget) {
  const Eigen::Index n = vectors.cols();
  std::vector<double> terms(static_cast<std::size_t>(n));
  for (Eigen::Index j = 0; j < n; ++j) terms[static_cast<std::size_t>(j)] = cost(vectors.col(j));
  auto total = [&] { return std::accumulate(terms.begin(), terms.end(), 0.0); };

  SimplexOptions opts;
  opts.initial_step = 0.3;
  opts.ftol = 1e-15;
  opts.max_iters = 2000;
  SweepResult out;
  double current = total();
  Vector ui;
  Vector uj;
  while (out.iterations < budget) {
    const double before = current;
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        ui = vectors.col(i);
        uj = vectors.col(j);
        auto rotated = [&](const Eigen::VectorXd& p) {
          const double c = std::cos(p(0));
          const double s = std::sin(p(0));
          const complex phase = std::polar(1.0, p(1));
          return std::pair<Vector, Vector>{c * ui - std::conj(phase) * s * uj, phase * s * ui + c * uj};
        };
        const Objective f = [&](const Eigen::VectorXd& p) {
          const auto [a, b] = rotated(p);
          return cost(a) + cost(b);
        };
        const SimplexResult r = nelder_mead(f, Eigen::VectorXd::Zero(2), opts);
        ++out.iterations;  // one plane solve counts as one iteration of the budget
        const auto si = static_cast<std::size_t>(i);
        const auto sj = static_cast<std::size_t>(j);
        if (r.value < terms[si] + terms[sj]) {
          auto [a, b] = rotated(r.x);
          vectors.col(i) = a;
          vectors.col(j) = b;
          terms[si] = cost(vectors.col(i));
          terms[sj] = cost(vectors.col(j));
        }
      }
    }
    current = total();
    if (before - current <= tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace

OptimizationResult minimize_ensemble(const DensityMatrix& rho, const TermCost& cost,
                                     const OptimizerConfig& cfg, const Lift& lift) {
  cfg.validate();
  const Spectrum spectrum = positive_spectrum(rho);
  const std::size_t dim = rho.dim();
  const std::size_t rank = spectrum.rank();
  const std::size_t length = cfg.length.value_or(dim * dim);
  if (length < rank) {
    fail(ErrorCode::InvalidConfig, "length " + std::to_string(length) + " below rank " +
                                       std::to_string(rank));
  }
  if (length > dim * dim) {
    fail(ErrorCode::InvalidConfig, "length " + std::to_string(length) + " above d^2 = " +
                                       std::to_string(dim * dim));
  }

  const IsometryParametrization iso(length, rank);
  const Matrix basis = spectrum.vectors * spectrum.values.cwiseSqrt().cast<complex>().asDiagonal();
  const Objective f = [&](const Eigen::VectorXd& x) {
    const Matrix vectors = basis * iso.build(x).transpose();
    double total = 0.0;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) total += cost(vectors.col(j));
    return total;
  };

  SimplexOptions opts;
  opts.initial_step = 0.5;
  opts.ftol = cfg.tol;
  opts.max_iters = cfg.max_iters;

  const auto params = static_cast<Eigen::Index>(iso.parameter_count());
  std::vector<RestartOutcome> outcomes(cfg.restarts);
  auto run_restart = [&](std::size_t k) {
    std::mt19937_64 rng(splitmix64(cfg.seed + k));
    std::uniform_real_distribution<double> angle(0.0, std::numbers::pi);
    Eigen::VectorXd x0(params);
    for (Eigen::Index i = 0; i < params; ++i) x0(i) = (i % 2 == 0 ? 1.0 : 2.0) * angle(rng);
    // A full-dimensional simplex phase on a quarter of the budget, then
    // plane sweeps on what is left.
    SimplexOptions phase = opts;
    phase.max_iters = std::max<std::size_t>(1, cfg.max_iters / 4);
    const SimplexResult r = polished_nelder_mead(f, x0, phase);
    const Eigen::VectorXd& x = r.x;
    Matrix vectors = basis * iso.build(x).transpose();
    const SweepResult s = plane_sweeps(cost, vectors, cfg.tol, cfg.max_iters - r.iterations);
    double value = 0.0;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) value += cost(vectors.col(j));
    outcomes[k] = {std::move(vectors), value, s.converged};
  };

  const std::size_t workers = worker_count(cfg);
  if (workers <= 1) {
    for (std::size_t k = 0; k < cfg.restarts; ++k) run_restart(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < cfg.restarts; k = next++) run_restart(k);
      });
    }
  }

  std::vector<double> values(cfg.restarts);
  bool any_converged = false;
  for (std::size_t k = 0; k < cfg.restarts; ++k) {
    values[k] = outcomes[k].value;
    any_converged = any_converged || outcomes[k].converged;
  }
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  std::size_t best = 0;
  while (values[best] > lo + cfg.tol) ++best;

  ExtremalDecomposition dec = ensemble_from_vectors(outcomes[best].vectors);
  if (lift) {
    std::vector<StateVector> lifted;
    lifted.reserve(dec.size());
    for (const auto& v : dec.decomposers()) lifted.push_back(StateVector::normalized(lift(v.amplitudes())));
    dec = ExtremalDecomposition(dec.weights(), std::move(lifted));
  }
  return OptimizationResult{values[best], std::move(dec), any_converged, hi - lo, std::move(values), best};
}

OptimizationResult minimize_objective(const DensityMatrix& rho, const SubalgebraSpec& sub,
                                      const OptimizerConfig& cfg) {
  sub.check_dim(rho.dim());
  return minimize_ensemble(
      rho, [&sub](const Eigen::Ref<const Vector>& u) { return weighted_restricted_entropy(u, sub); },
      cfg);
}

// --- one-angle reduction -------------------------------------------------

namespace {

constexpr double kOrbitPeriod = 2.0 * std::numbers::pi / 3.0;

double reduce_angle(double theta) {
  double t = std::fmod(theta, kOrbitPeriod);
  if (t < 0.0) t += kOrbitPeriod;
  // Same window as the merge of minima: a refined minimum at the seam is 0.
  if (t > kOrbitPeriod - 1e-6 || t < 1e-6) t = 0.0;
  return t;
}

double circular_distance(double a, double b) {
  const double d = std::abs(a - b);
  return std::min(d, kOrbitPeriod - d);
}

}  // namespace

double orbit_profile(double fidelity, double theta) {
  const auto w = orbit_components(fidelity, theta);
  double total = 0.0;
  for (double c : w) total += shannon_term(std::min(c * c, 1.0));
  return total;
}

ThetaProfile theta_scan(double fidelity, std::size_t grid_size) {
  if (!(fidelity >= 0.0 && fidelity <= 1.0)) {
    fail(ErrorCode::FOutOfRange, "F = " + std::to_string(fidelity));
  }
  if (grid_size < 16) fail(ErrorCode::InvalidConfig, "theta grid needs >= 16 points");

  ThetaProfile prof;
  prof.fidelity = fidelity;
  const double h = 2.0 * std::numbers::pi / static_cast<double>(grid_size);
  prof.grid.resize(grid_size);
  prof.values.resize(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    prof.grid[i] = h * static_cast<double>(i);
    prof.values[i] = orbit_profile(fidelity, prof.grid[i]);
  }
  const auto [vmin, vmax] = std::minmax_element(prof.values.begin(), prof.values.end());
  if (*vmax - *vmin <= 1e-14) {
    prof.minima.push_back({0.0, *vmin});
    return prof;
  }

  auto f = [fidelity](double t) { return orbit_profile(fidelity, t); };
  std::vector<ThetaMinimum> found;
  auto refine = [&](double center) {
    const LineMinimum m = golden_section(f, center - h, center + h, 1e-10);
    const double at_center = f(center);
    found.push_back(m.value <= at_center ? ThetaMinimum{reduce_angle(m.x), m.value}
                                         : ThetaMinimum{reduce_angle(center), at_center});
  };
  for (std::size_t i = 0; i < grid_size; ++i) {
    const double prev = prof.values[(i + grid_size - 1) % grid_size];
    const double next = prof.values[(i + 1) % grid_size];
    if (prof.values[i] <= prev && prof.values[i] < next) {
      // The profile is even in theta (components 2 and 3 swap), so a minimum
      // at theta has a partner at -theta that a coarse grid may not separate.
      refine(prof.grid[i]);
      refine(-prof.grid[i]);
    }
  }

  std::sort(found.begin(), found.end(),
            [](const ThetaMinimum& a, const ThetaMinimum& b) { return a.theta < b.theta; });
  for (const ThetaMinimum& m : found) {
    auto same = std::find_if(prof.minima.begin(), prof.minima.end(), [&](const ThetaMinimum& q) {
      return circular_distance(q.theta, m.theta) <= 1e-6;
    });
    if (same == prof.minima.end()) {
      prof.minima.push_back(m);
    } else if (m.value < same->value) {
      *same = m;
    }
  }
  return prof;
}

OrbitMinimum s_of_f(double fidelity, std::size_t grid_size) {
  const ThetaProfile prof = theta_scan(fidelity, grid_size);
  OrbitMinimum out;
  out.value = std::min_element(prof.minima.begin(), prof.minima.end(),
                               [](const ThetaMinimum& a, const ThetaMinimum& b) {
                                 return a.value < b.value;
                               })->value;
  for (const ThetaMinimum& m : prof.minima) {
    if (m.value <= out.value + 1e-12) out.minimizers.push_back(m.theta);
  }
  return out;
}

bool minimizer_at_zero(double fidelity) {
  const OrbitMinimum m = s_of_f(fidelity);
  return std::any_of(m.minimizers.begin(), m.minimizers.end(),
                     [](double t) { return circular_distance(t, 0.0) <= 1e-5; });
}

double find_bifurcation(double f_lo, double f_hi, double tol_f) {
  if (!(f_lo < f_hi)) fail(ErrorCode::InvalidConfig, "need f_lo < f_hi");
  if (f_lo < 0.0 || f_hi > 1.0) fail(ErrorCode::FOutOfRange, "bracket outside [0,1]");
  if (!(tol_f > 0.0)) fail(ErrorCode::InvalidConfig, "tol_f must be > 0");
  const bool at_lo = minimizer_at_zero(f_lo);
  const bool at_hi = minimizer_at_zero(f_hi);
  if (at_lo == at_hi) {
    fail(ErrorCode::NoBracket, "minimizer structure identical at both ends of [" +
                                   std::to_string(f_lo) + ", " + std::to_string(f_hi) + "]");
  }
  while (f_hi - f_lo > tol_f) {
    const double mid = 0.5 * (f_lo + f_hi);
    if (minimizer_at_zero(mid) == at_lo) {
      f_lo = mid;
    } else {
      f_hi = mid;
    }
  }
  return 0.5 * (f_lo + f_hi);
}

std::vector<std::size_t> convexity_profile(const std::vector<double>& grid,
                                           const std::vector<double>& values) {
  if (grid.size() != values.size()) fail(ErrorCode::DimensionMismatch, "grid/value size mismatch");
  std::vector<std::size_t> violations;
  if (grid.size() < 3) return violations;
  const double step = (grid.back() - grid.front()) / static_cast<double>(grid.size() - 1);
  if (!(step > 0.0)) fail(ErrorCode::NonUniformGrid, "grid not strictly increasing");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double di = grid[i] - grid[i - 1];
    if (!(di > 0.0) || std::abs(di - step) > 1e-9 * std::max(1.0, std::abs(step))) {
      fail(ErrorCode::NonUniformGrid, "spacing differs at index " + std::to_string(i));
    }
  }
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    if (values[i - 1] - 2.0 * values[i] + values[i + 1] < -1e-9) violations.push_back(i);
  }
  return violations;
}

}  // namespace subent
