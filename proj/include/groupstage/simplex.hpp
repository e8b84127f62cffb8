#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace groupstage {

struct SimplexOptions {
  double f_tolerance = 1e-10;  // spread of vertex values at termination
  int max_iterations = 2000;
  double initial_step = 0.5;  // relative to |x0_i|, absolute when x0_i == 0
};

struct SimplexResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Nelder-Mead downhill simplex minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Derivative-free;
/// the objective may return large finite penalties for infeasible points.
inline SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                 const std::vector<double>& x0,
                                 const SimplexOptions& opt = {}) {
  const std::size_t n = x0.size();
  if (n == 0) throw std::invalid_argument("nelder_mead needs at least one dimension");

  std::vector<std::vector<double>> pts(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    const double step = x0[i] != 0.0 ? opt.initial_step * std::fabs(x0[i]) : opt.initial_step;
    pts[i + 1][i] += step;
  }
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fv[i] = f(pts[i]);

  std::vector<std::size_t> order(n + 1);
  SimplexResult res;
  for (res.iterations = 0; res.iterations < opt.max_iterations; ++res.iterations) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
    const std::size_t best = order[0];
    const std::size_t worst = order[n];
    const std::size_t second_worst = order[n - 1];

    if (std::fabs(fv[worst] - fv[best]) <=
        opt.f_tolerance * (std::fabs(fv[best]) + std::fabs(fv[worst]) + 1e-30) + opt.f_tolerance) {
      res.converged = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < n; ++d) centroid[d] += pts[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t d = 0; d < n; ++d) p[d] = centroid[d] + t * (pts[worst][d] - centroid[d]);
      return p;
    };

    const std::vector<double> reflected = blend(-1.0);
    const double fr = f(reflected);
    if (fr < fv[best]) {
      const std::vector<double> expanded = blend(-2.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        fv[worst] = fe;
      } else {
        pts[worst] = reflected;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr < fv[second_worst]) {
      pts[worst] = reflected;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr < fv[worst];
    const std::vector<double> contracted = blend(outside ? -0.5 : 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, fv[worst])) {
      pts[worst] = contracted;
      fv[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= n; ++i) {  // shrink toward the best vertex
      if (i == best) continue;
      for (std::size_t d = 0; d < n; ++d)
        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
      fv[i] = f(pts[i]);
    }
  }

  const std::size_t arg = static_cast<std::size_t>(
      std::min_element(fv.begin(), fv.end()) - fv.begin());
  res.x = pts[arg];
  res.f = fv[arg];
  return res;
}

}  // namespace groupstage
