#pragma once

#include <functional>
#include <vector>

namespace coarma::quad {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of order n (thread-safe after first use per n).
const GaussLegendre& gauss_legendre(int n);

/// Integrate f over [a, b] with an n-node rule.
double integrate(const std::function<double(double)>& f, double a, double b, int n);

/// Integrate f over [0,1]^2 with an n x n tensor rule.
double integrate2(const std::function<double(double, double)>& f, int n);

}  // namespace coarma::quad
