#include "coarma/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "coarma/errors.hpp"

namespace coarma::quad {

namespace {

GaussLegendre build_rule(int n) {
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton iteration on Legendre polynomials, symmetric roots.
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double x1 = x - p0 / dp;
      const bool done = std::fabs(x1 - x) < 1e-15;
      x = x1;
      if (done) break;
    }
    double p0 = 1.0, p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      const double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
    }
    dp = n * (x * p0 - p1) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw domain_error("gauss_legendre: order must be >= 1");
  static std::map<int, GaussLegendre> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, build_rule(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int n) {
  if (a == b) return 0.0;
  const auto& rule = gauss_legendre(n);
  const double c = 0.5 * (b - a);
  const double d = 0.5 * (b + a);
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += rule.weights[i] * f(c * rule.nodes[i] + d);
  return c * s;
}

double integrate2(const std::function<double(double, double)>& f, int n) {
  const auto& rule = gauss_legendre(n);
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = 0.5 * (rule.nodes[i] + 1.0);
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double y = 0.5 * (rule.nodes[j] + 1.0);
      row += rule.weights[j] * f(x, y);
    }
    s += rule.weights[i] * row;
  }
  return 0.25 * s;
}

}  // namespace coarma::quad
