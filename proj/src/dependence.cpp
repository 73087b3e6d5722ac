#include "coarma/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "coarma/errors.hpp"
#include "coarma/parallel.hpp"
#include "coarma/quadrature.hpp"
#include "coarma/rng.hpp"
#include "coarma/stats.hpp"

namespace coarma {

namespace {

// Gauss-Legendre sum of f over [a, b], splitting panels at interior
// discontinuity points.
double integrate_split(const std::function<double(double)>& f, double a, double b, int n,
                       const std::vector<double>& splits) {
  std::vector<double> cuts{a};
  for (double s : splits)
    if (s > a + 1e-14 && s < b - 1e-14) cuts.push_back(s);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    total += quad::integrate(f, cuts[i], cuts[i + 1], n);
  return total;
}

// Composite rule with panels refined geometrically toward both ends;
// h-functions have unbounded derivatives at the endpoints and a single
// Gauss-Legendre panel stalls near 1e-6 accuracy there.
double integrate_refined(const std::function<double(double)>& f, double a, double b,
                         int n) {
  static const double fractions[] = {0.0,  1e-6, 1e-3, 0.02, 0.1,        0.5,
                                     0.9,  0.98, 1.0 - 1e-3, 1.0 - 1e-6, 1.0};
  if (b - a < 1e-12) return quad::integrate(f, a, b, n);
  const int per_panel = std::max(16, n / 2);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < std::size(fractions); ++i) {
    const double lo = a + fractions[i] * (b - a);
    const double hi = a + fractions[i + 1] * (b - a);
    total += quad::integrate(f, lo, hi, per_panel);
  }
  return total;
}

const CopulaSpec& mag_pair(const CoarmaSpec& spec, int j) {
  return spec.mag.pair_copulas[static_cast<std::size_t>(j)];
}

// F(x1,x2) = int_0^1 K(x1, K_{2|1}(x2|s)) ds for the 1-dependent process.
double joint_mag1(const CoarmaSpec& spec, double x1, double x2, const QuadOptions& opts) {
  const CopulaSpec& k = mag_pair(spec, 0);
  const auto f = [&](double s) { return cdf(k, x1, hfunc(k, x2, s)); };
  if (k.is_singular()) return integrate_split(f, 0.0, 1.0, opts.nodes_dim1, {x2});
  return integrate_refined(f, 0.0, 1.0, opts.nodes_dim1);
}

// (1,1): int_0^1 int_0^{C^{-1}(K(x2|w2)|w2)} K(x1|w1) c(w1,w2) dw1 dw2.
double joint_11(const CoarmaSpec& spec, double x1, double x2, const QuadOptions& opts) {
  const CopulaSpec& k = mag_pair(spec, 0);
  const CopulaSpec& c = spec.ar.pair_copulas[0];
  if (c.is_singular())
    throw unsupported_error("joint_cdf(1,1): AR pair must be absolutely continuous");
  const bool atoms = k.is_singular();
  const auto outer = [&](double w2) {
    const double upper = hinv(c, hfunc(k, x2, w2), w2);
    const auto inner = [&](double w1) { return hfunc(k, x1, w1) * pdf(c, w1, w2); };
    if (atoms) return integrate_split(inner, 0.0, upper, opts.nodes_dim2, {x1});
    return integrate_refined(inner, 0.0, upper, opts.nodes_dim2);
  };
  if (atoms) return integrate_split(outer, 0.0, 1.0, opts.nodes_dim2, {x2});
  return integrate_refined(outer, 0.0, 1.0, opts.nodes_dim2);
}

// (1,2): int c(w2,w3) int_0^{B} K_{3|21}(x1|e1,w2) de1 dw2 dw3,
// B = K_{3|21}(x2 | C_{2|1}(w2|w3), w3).
double joint_12(const CoarmaSpec& spec, double x1, double x2, const QuadOptions& opts) {
  const CopulaSpec& c = spec.ar.pair_copulas[0];
  if (c.is_singular() || spec.mag.has_singular_pair())
    throw unsupported_error("joint_cdf(1,2): pairs must be absolutely continuous");
  const int n = opts.nodes_dim3;
  const auto& rule = quad::gauss_legendre(n);
  double total = 0.0;
  std::vector<double> cond(2);
  for (int i = 0; i < n; ++i) {
    const double w2 = 0.5 * (rule.nodes[i] + 1.0);
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w3 = 0.5 * (rule.nodes[j] + 1.0);
      cond[0] = hfunc(c, w2, w3);  // recovered e_{t-2}
      cond[1] = w3;
      const double bound = mag_backward(spec.mag, x2, cond);
      const double weight = pdf(c, w2, w3);
      const auto inner = [&](double e1) {
        std::vector<double> cc{e1, w2};
        return mag_backward(spec.mag, x1, cc);
      };
      row += rule.weights[j] * weight * quad::integrate(inner, 0.0, bound, n);
    }
    total += rule.weights[i] * row;
  }
  return 0.25 * total;
}

// (2,1): int int_0^{D} K(x1|w1) c3(w1,w2,w3) dw1 dw2 dw3,
// D = C_{3|21}^{-1}(K(x2|w2) | w2, w3).
double joint_21(const CoarmaSpec& spec, double x1, double x2, const QuadOptions& opts) {
  const CopulaSpec& k = mag_pair(spec, 0);
  if (spec.ar.has_singular_pair() || k.is_singular())
    throw unsupported_error("joint_cdf(2,1): pairs must be absolutely continuous");
  const int n = opts.nodes_dim3;
  const auto& rule = quad::gauss_legendre(n);
  double total = 0.0;
  std::vector<double> hist(2), point(3);
  for (int i = 0; i < n; ++i) {
    const double w2 = 0.5 * (rule.nodes[i] + 1.0);
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w3 = 0.5 * (rule.nodes[j] + 1.0);
      hist[0] = w2;
      hist[1] = w3;
      const double upper = ar_cond_quantile(spec.ar, hfunc(k, x2, w2), hist);
      const auto inner = [&](double w1) {
        point[0] = w3;
        point[1] = w2;
        point[2] = w1;
        return hfunc(k, x1, w1) * vine_density(spec.ar, point);
      };
      row += rule.weights[j] * quad::integrate(inner, 0.0, upper, n);
    }
    total += rule.weights[i] * row;
  }
  return 0.25 * total;
}

// (2,2): int c3(w2,w3,w4) int_0^{E} K_{3|21}(x1|e1,w2) de1 dw2 dw3 dw4,
// E = K_{3|21}(x2 | C_{3|21}(w2|w3,w4), w3).
double joint_22(const CoarmaSpec& spec, double x1, double x2, const QuadOptions& opts) {
  if (spec.ar.has_singular_pair() || spec.mag.has_singular_pair())
    throw unsupported_error("joint_cdf(2,2): pairs must be absolutely continuous");
  const int n = opts.nodes_dim4;
  const auto& rule = quad::gauss_legendre(n);
  double total = 0.0;
  std::vector<double> hist(2), point(3), cond(2);
  for (int i = 0; i < n; ++i) {
    const double w2 = 0.5 * (rule.nodes[i] + 1.0);
    double plane = 0.0;
    for (int j = 0; j < n; ++j) {
      const double w3 = 0.5 * (rule.nodes[j] + 1.0);
      double row = 0.0;
      for (int l = 0; l < n; ++l) {
        const double w4 = 0.5 * (rule.nodes[l] + 1.0);
        hist[0] = w3;
        hist[1] = w4;
        const double e2 = ar_cond_cdf(spec.ar, w2, hist);
        cond[0] = e2;
        cond[1] = w3;
        const double bound = mag_backward(spec.mag, x2, cond);
        point[0] = w4;
        point[1] = w3;
        point[2] = w2;
        const double weight = vine_density(spec.ar, point);
        const auto inner = [&](double e1) {
          std::vector<double> cc{e1, w2};
          return mag_backward(spec.mag, x1, cc);
        };
        row += rule.weights[l] * weight * quad::integrate(inner, 0.0, bound, n);
      }
      plane += rule.weights[j] * row;
    }
    total += rule.weights[i] * plane;
  }
  return 0.125 * total;
}

}  // namespace

double joint_cdf(const CoarmaSpec& spec, double x1, double x2, const QuadOptions& opts) {
  spec.validate();
  if (x1 < 0.0 || x1 > 1.0 || x2 < 0.0 || x2 > 1.0)
    throw domain_error("joint_cdf: arguments outside [0,1]");
  if (x1 == 0.0 || x2 == 0.0) return 0.0;
  if (x1 == 1.0) return x2;
  if (x2 == 1.0) return x1;
  if (spec.p == 0 && spec.q == 1) return joint_mag1(spec, x1, x2, opts);
  if (spec.p == 1 && spec.q == 1) return joint_11(spec, x1, x2, opts);
  if (spec.p == 1 && spec.q == 2) return joint_12(spec, x1, x2, opts);
  if (spec.p == 2 && spec.q == 1) return joint_21(spec, x1, x2, opts);
  if (spec.p == 2 && spec.q == 2) return joint_22(spec, x1, x2, opts);
  throw unsupported_error("joint_cdf: unsupported orders (" + std::to_string(spec.p) +
                          "," + std::to_string(spec.q) + ")");
}

double joint_cdf_mc(const CoarmaSpec& spec, double x1, double x2, std::size_t n_pairs,
                    std::uint64_t seed, int thin) {
  spec.validate();
  const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::uint64_t> hits(threads, 0);
  std::vector<std::size_t> counts(threads, 0);
  for (unsigned c = 0; c < threads; ++c)
    counts[c] = n_pairs / threads + (c < n_pairs % threads ? 1 : 0);
  parallel_for(
      threads,
      [&](std::size_t c) {
        // One continuing chain per worker; pairs taken every `thin`
        // steps are effectively independent in the contraction regime.
        const std::size_t steps =
            counts[c] * static_cast<std::size_t>(thin) + static_cast<std::size_t>(thin);
        const SimulationPaths path =
            simulate_paths(spec, steps, Rng(seed).split(c).key());
        std::uint64_t h = 0;
        for (std::size_t k = 0; k < counts[c]; ++k) {
          const std::size_t t = (k + 1) * static_cast<std::size_t>(thin);
          if (path.u[t] <= x1 && path.u[t - 1] <= x2) ++h;
        }
        hits[c] = h;
      },
      threads);
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  return static_cast<double>(total) / static_cast<double>(n_pairs);
}

double spearman_rho(const CoarmaSpec& spec, const QuadOptions& opts) {
  const int n = opts.spearman_nodes;
  const auto& rule = quad::gauss_legendre(n);
  std::vector<double> rows(n, 0.0);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double x = 0.5 * (rule.nodes[i] + 1.0);
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      const double y = 0.5 * (rule.nodes[j] + 1.0);
      acc += rule.weights[j] * joint_cdf(spec, x, y, opts);
    }
    rows[i] = acc;
  });
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += rule.weights[i] * rows[i];
  return 12.0 * 0.25 * s - 3.0;
}

DepMeasures tail_measures(const CoarmaSpec& spec, double u, TailOrderConvention convention,
                          const QuadOptions& opts) {
  if (!(u > 0.0 && u <= 0.25)) throw domain_error("tail_measures: u must be in (0, 0.25]");
  DepMeasures m;
  const double f_low = joint_cdf(spec, u, u, opts);
  const double f_high = joint_cdf(spec, 1.0 - u, 1.0 - u, opts);
  const double survival = 1.0 - 2.0 * (1.0 - u) + f_high;
  m.lower_tdc = f_low / u;
  m.upper_tdc = survival / u;
  m.lower_order = std::log(std::max(f_low, 1e-300)) / std::log(u);
  if (convention == TailOrderConvention::Survival)
    m.upper_order = std::log(std::max(survival, 1e-300)) / std::log(u);
  else
    m.upper_order = std::log(std::max(f_high, 1e-300)) / std::log(u);
  m.spearman_rho = spearman_rho(spec, opts);
  return m;
}

double frechet_mag1_joint(double alpha, double x1, double x2) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw domain_error("frechet: alpha in [0,1]");
  if (x1 < 0.0 || x1 > 1.0 || x2 < 0.0 || x2 > 1.0)
    throw domain_error("frechet joint: arguments outside [0,1]");
  // F(x1, x2) = int_0^1 K(x1, h(x2|s)) ds.  The conditional h(x2|s) is
  // piecewise constant in s (a step of height alpha at s = x2), so the
  // integral collapses to two closed-form terms.  Both endpoints of the
  // family reduce to the product: the process is i.i.d. at alpha = 0
  // and a pure one-step shift at alpha = 1.
  const double a = alpha;
  const auto kcdf = [a](double u, double v) {
    return (1.0 - a) * u * v + a * std::min(u, v);
  };
  const double t_hi = (1.0 - a) * x2 + a;
  const double t_lo = (1.0 - a) * x2;
  return x2 * kcdf(x1, t_hi) + (1.0 - x2) * kcdf(x1, t_lo);
}

namespace {

CoarmaSpec mag1_spec(Family family, double parameter) {
  std::vector<double> params;
  if (family == Family::StudentT) params = {parameter, 4.0};
  else params = {parameter};
  return CoarmaSpec(VineSpec(VineKind::StationaryDVine, {}),
                    VineSpec(VineKind::MagDVine, {CopulaSpec(family, params)}));
}

void fill_sim_rho(const CoarmaSpec& spec, std::size_t sim_n, int sim_reps,
                  std::uint64_t seed, DepScanRow& row) {
  std::vector<double> rhos(static_cast<std::size_t>(sim_reps));
  for (int r = 0; r < sim_reps; ++r) {
    const auto u = simulate(spec, sim_n, Rng(seed).split(static_cast<std::uint64_t>(r)).key());
    std::vector<double> lagged(u.begin(), u.end() - 1);
    std::vector<double> current(u.begin() + 1, u.end());
    rhos[static_cast<std::size_t>(r)] = stats::spearman(current, lagged);
  }
  row.rho_sim = stats::mean(rhos);
  row.rho_sim_se =
      sim_reps > 1 ? std::sqrt(stats::variance(rhos) / static_cast<double>(sim_reps)) : 0.0;
}

}  // namespace

std::vector<DepScanRow> scan_mag1(Family family, const std::vector<double>& grid, double u,
                                  std::size_t sim_n, int sim_reps, std::uint64_t seed,
                                  const QuadOptions& opts) {
  std::vector<DepScanRow> rows(grid.size());
  parallel_for(grid.size(), [&](std::size_t g) {
    const CoarmaSpec spec = mag1_spec(family, grid[g]);
    DepScanRow row;
    row.parameter = grid[g];
    const DepMeasures m = tail_measures(spec, u, TailOrderConvention::Survival, opts);
    row.rho_quad = m.spearman_rho;
    row.tdc_lower = m.lower_tdc;
    row.tdc_upper = m.upper_tdc;
    row.order_lower = m.lower_order;
    row.order_upper = m.upper_order;
    fill_sim_rho(spec, sim_n, sim_reps, Rng(seed).split(g).key(), row);
    rows[g] = row;
  });
  return rows;
}

std::vector<DepScanRow> scan_coarma11(const CopulaSpec& ar_template,
                                      const std::vector<double>& ar_grid,
                                      const CopulaSpec& mag_pair_spec, std::size_t sim_n,
                                      int sim_reps, std::uint64_t seed,
                                      bool with_quadrature, const QuadOptions& opts) {
  std::vector<DepScanRow> rows(ar_grid.size());
  parallel_for(ar_grid.size(), [&](std::size_t g) {
    CopulaSpec ar_pair = ar_template;
    ar_pair.params[0] = ar_grid[g];
    const CoarmaSpec spec(VineSpec(VineKind::StationaryDVine, {ar_pair}),
                          VineSpec(VineKind::MagDVine, {mag_pair_spec}));
    DepScanRow row;
    row.parameter = ar_grid[g];
    if (with_quadrature) {
      const DepMeasures m = tail_measures(spec, 0.05, TailOrderConvention::Survival, opts);
      row.rho_quad = m.spearman_rho;
      row.tdc_lower = m.lower_tdc;
      row.tdc_upper = m.upper_tdc;
      row.order_lower = m.lower_order;
      row.order_upper = m.upper_order;
    }
    fill_sim_rho(spec, sim_n, sim_reps, Rng(seed).split(g).key(), row);
    rows[g] = row;
  });
  return rows;
}

}  // namespace coarma
