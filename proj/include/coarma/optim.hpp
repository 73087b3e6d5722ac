#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

namespace coarma {

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int evals = 0;
  bool converged = false;
};

/// Unconstrained Nelder-Mead; deterministic for a fixed start.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> start, double step = 0.5,
                                    double ftol = 1e-9, int max_evals = 2000) {
  const std::size_t n = start.size();
  NelderMeadResult res;
  if (n == 0) {
    res.x = start;
    res.f = f(start);
    res.evals = 1;
    res.converged = true;
    return res;
  }
  std::vector<std::vector<double>> simplex(n + 1, start);
  std::vector<double> fv(n + 1);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step;
  int evals = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    fv[i] = f(simplex[i]);
    ++evals;
  }
  std::vector<std::size_t> ord(n + 1);
  const auto sort_simplex = [&]() {
    std::iota(ord.begin(), ord.end(), std::size_t{0});
    std::sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
  };
  while (evals < max_evals) {
    sort_simplex();
    const std::size_t best = ord[0], worst = ord[n], second = ord[n - 1];
    if (std::fabs(fv[worst] - fv[best]) <= ftol * (1.0 + std::fabs(fv[best]))) {
      res.converged = true;
      break;
    }
    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    const auto blend = [&](double t) {
      std::vector<double> p(n);
      for (std::size_t j = 0; j < n; ++j)
        p[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      return p;
    };
    auto xr = blend(-1.0);
    double fr = f(xr);
    ++evals;
    if (fr < fv[ord[0]]) {
      auto xe = blend(-2.0);
      double fe = f(xe);
      ++evals;
      if (fe < fr) {
        simplex[worst] = std::move(xe);
        fv[worst] = fe;
      } else {
        simplex[worst] = std::move(xr);
        fv[worst] = fr;
      }
    } else if (fr < fv[second]) {
      simplex[worst] = std::move(xr);
      fv[worst] = fr;
    } else {
      const bool outside = fr < fv[worst];
      auto xc = blend(outside ? -0.5 : 0.5);
      double fc = f(xc);
      ++evals;
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = std::move(xc);
        fv[worst] = fc;
      } else {
        for (std::size_t i = 0; i <= n; ++i) {
          if (i == best) continue;
          for (std::size_t j = 0; j < n; ++j)
            simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          fv[i] = f(simplex[i]);
          ++evals;
        }
      }
    }
  }
  sort_simplex();
  res.x = simplex[ord[0]];
  res.f = fv[ord[0]];
  res.evals = evals;
  return res;
}

}  // namespace coarma
