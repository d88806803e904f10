#include "subent/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace subent {

SimplexResult nelder_mead(const Objective& f, const Eigen::VectorXd& x0, const SimplexOptions& opt) {
  const auto n = x0.size();
  SimplexResult res;
  if (n == 0) {
    res.x = x0;
    res.value = f(x0);
    res.evaluations = 1;
    res.converged = true;
    return res;
  }
  const double dn = static_cast<double>(n);
  // Adaptive coefficients reduce to the standard ones for n = 2; below that
  // the shrink factor would collapse the simplex.
  const bool adaptive = n > 2;
  const double alpha = 1.0;
  const double beta = adaptive ? 1.0 + 2.0 / dn : 2.0;
  const double gamma = adaptive ? 0.75 - 1.0 / (2.0 * dn) : 0.5;
  const double delta = adaptive ? 1.0 - 1.0 / dn : 0.5;

  std::vector<Eigen::VectorXd> pts(static_cast<std::size_t>(n) + 1, x0);
  std::vector<double> vals(pts.size());
  for (Eigen::Index i = 0; i < n; ++i) pts[static_cast<std::size_t>(i) + 1](i) += opt.initial_step;
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = f(pts[i]);
  res.evaluations = pts.size();

  std::vector<std::size_t> order(pts.size());
  Eigen::VectorXd centroid(n);
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    // Stable sort keeps the run deterministic when values tie.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[order.size() - 2];
    if (vals[worst] - vals[best] <= opt.ftol) {
      res.converged = true;
      break;
    }
    if (res.iterations >= opt.max_iters) break;
    ++res.iterations;

    centroid.setZero();
    for (std::size_t i = 0; i + 1 < order.size(); ++i) centroid += pts[order[i]];
    centroid /= dn;

    const Eigen::VectorXd xr = centroid + alpha * (centroid - pts[worst]);
    const double fr = f(xr);
    ++res.evaluations;
    if (fr < vals[best]) {
      const Eigen::VectorXd xe = centroid + beta * (xr - centroid);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe < fr) {
        pts[worst] = xe;
        vals[worst] = fe;
      } else {
        pts[worst] = xr;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second]) {
      pts[worst] = xr;
      vals[worst] = fr;
      continue;
    }
    const bool outside = fr < vals[worst];
    const Eigen::VectorXd xc = outside ? Eigen::VectorXd(centroid + gamma * (xr - centroid))
                                       : Eigen::VectorXd(centroid - gamma * (centroid - pts[worst]));
    const double fc = f(xc);
    ++res.evaluations;
    if ((outside && fc <= fr) || (!outside && fc < vals[worst])) {
      pts[worst] = xc;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 1; i < order.size(); ++i) {
      const std::size_t k = order[i];
      pts[k] = pts[best] + delta * (pts[k] - pts[best]);
      vals[k] = f(pts[k]);
    }
    res.evaluations += order.size() - 1;
  }
  const auto it = std::min_element(vals.begin(), vals.end());
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  res.value = *it;
  return res;
}

SimplexResult polished_nelder_mead(const Objective& f, const Eigen::VectorXd& x0,
                                   const SimplexOptions& opt) {
  SimplexResult total;
  total.x = x0;
  total.value = f(x0);
  total.evaluations = 1;
  SimplexOptions round = opt;
  for (int r = 0;; ++r) {
    round.max_iters = opt.max_iters - total.iterations;
    SimplexResult step = nelder_mead(f, total.x, round);
    total.iterations += step.iterations;
    total.evaluations += step.evaluations;
    const double gain = total.value - step.value;
    if (step.value < total.value) {
      total.x = std::move(step.x);
      total.value = step.value;
    }
    if (!step.converged) break;  // budget exhausted
    if (r > 0 && gain <= opt.ftol) {
      total.converged = true;
      break;
    }
    if (total.iterations >= opt.max_iters) break;
    // Later rounds probe more locally.
    round.initial_step = std::max(0.1 * opt.initial_step, 0.5 * round.initial_step);
  }
  return total;
}

LineMinimum golden_section(const std::function<double(double)>& f, double lo, double hi,
                           double xtol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > xtol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? LineMinimum{c, fc} : LineMinimum{d, fd};
}

}  // namespace subent
