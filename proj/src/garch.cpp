#include "coarma/garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "coarma/copula.hpp"
#include "coarma/errors.hpp"
#include "coarma/quadrature.hpp"
#include "coarma/rng.hpp"
#include "coarma/special.hpp"
#include "coarma/stats.hpp"

namespace coarma {

using special::norm_cdf;
using special::norm_quantile;

void GarchParams::validate() const {
  if (!(alpha0 > 0.0)) throw domain_error("garch: alpha0 must be positive");
  if (alpha1 < 0.0 || beta1 < 0.0) throw domain_error("garch: negative coefficient");
}

bool GarchParams::is_stationary() const {
  validate();
  if (arch_mode()) return alpha1 < 1.0;
  // E[log(alpha1 z^2 + beta1)], z standard normal, by quadrature.
  const double a1 = alpha1, b1 = beta1;
  const double e = quad::integrate(
      [&](double z) {
        return 2.0 * std::log(a1 * z * z + b1) * special::norm_pdf(z);
      },
      0.0, 12.0, 200);
  return e < 0.0;
}

// ---- tabulated CDF --------------------------------------------------------

TabulatedCdf TabulatedCdf::from_sample(std::vector<double> sample, int grid_points,
                                       bool symmetric, double tail_prob) {
  if (sample.size() < 1000) throw domain_error("TabulatedCdf: sample too small");
  if (symmetric) {
    const std::size_t n = sample.size();
    sample.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) sample.push_back(-sample[i]);
  }
  std::sort(sample.begin(), sample.end());
  const std::size_t n = sample.size();

  TabulatedCdf tab;
  tab.xs_.reserve(grid_points);
  tab.ps_.reserve(grid_points);
  double last_x = -std::numeric_limits<double>::infinity();
  for (int g = 1; g <= grid_points; ++g) {
    const double p = static_cast<double>(g) / (grid_points + 1.0);
    const double h = p * (n + 1.0);
    double x;
    if (h <= 1.0) x = sample.front();
    else if (h >= static_cast<double>(n)) x = sample.back();
    else {
      const std::size_t i = static_cast<std::size_t>(std::floor(h));
      const double frac = h - static_cast<double>(i);
      x = sample[i - 1] + frac * (sample[i] - sample[i - 1]);
    }
    if (x > last_x) {
      tab.xs_.push_back(x);
      tab.ps_.push_back(p);
      last_x = x;
    }
  }
  if (tab.xs_.size() < 16) throw numeric_error("TabulatedCdf: degenerate sample");

  // Method-of-moments GPD on tail exceedances.
  const auto fit_tail = [&](bool upper) {
    GpdTail tail;
    const double pq = upper ? tail_prob : 1.0 - tail_prob;
    const std::size_t cut = static_cast<std::size_t>(
        std::min<double>(n - 1.0, std::max(0.0, pq * static_cast<double>(n))));
    const double thresh = sample[cut];
    std::vector<double> exc;
    if (upper) {
      for (std::size_t i = cut; i < n; ++i)
        if (sample[i] > thresh) exc.push_back(sample[i] - thresh);
    } else {
      for (std::size_t i = 0; i <= cut; ++i)
        if (sample[i] < thresh) exc.push_back(thresh - sample[i]);
    }
    if (exc.size() < 50) return tail;
    const double m = stats::mean(exc);
    const double v = stats::variance(exc);
    if (!(m > 0.0) || !(v > 0.0)) return tail;
    double xi = 0.5 * (1.0 - m * m / v);
    xi = std::min(xi, 0.45);  // keep a finite tail quantile map
    tail.xi = xi;
    tail.sigma = m * (1.0 - xi);
    tail.threshold = thresh;
    tail.p_threshold = upper ? tail_prob : 1.0 - tail_prob;
    tail.active = true;
    return tail;
  };
  tab.upper_ = fit_tail(true);
  tab.lower_ = fit_tail(false);
  return tab;
}

namespace {

double gpd_cdf(double z, double xi, double sigma) {
  if (z <= 0.0) return 0.0;
  if (std::fabs(xi) < 1e-10) return -std::expm1(-z / sigma);
  const double arg = 1.0 + xi * z / sigma;
  if (arg <= 0.0) return 1.0;
  return 1.0 - std::pow(arg, -1.0 / xi);
}

double gpd_quantile(double p, double xi, double sigma) {
  if (std::fabs(xi) < 1e-10) return -sigma * std::log1p(-p);
  return sigma / xi * (std::pow(1.0 - p, -xi) - 1.0);
}

}  // namespace

double TabulatedCdf::cdf(double x) const {
  if (upper_.active && x > upper_.threshold) {
    const double tail = gpd_cdf(x - upper_.threshold, upper_.xi, upper_.sigma);
    return std::min(1.0 - 1e-12, upper_.p_threshold + (1.0 - upper_.p_threshold) * tail);
  }
  if (lower_.active && x < lower_.threshold) {
    const double tail = gpd_cdf(lower_.threshold - x, lower_.xi, lower_.sigma);
    return std::max(1e-12, lower_.p_threshold * (1.0 - tail));
  }
  if (x <= xs_.front()) return ps_.front();
  if (x >= xs_.back()) return ps_.back();
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  const double t = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
  return ps_[i - 1] + t * (ps_[i] - ps_[i - 1]);
}

double TabulatedCdf::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("TabulatedCdf::quantile: p in (0,1)");
  if (upper_.active && p > upper_.p_threshold) {
    const double q = (p - upper_.p_threshold) / (1.0 - upper_.p_threshold);
    return upper_.threshold + gpd_quantile(q, upper_.xi, upper_.sigma);
  }
  if (lower_.active && p < lower_.p_threshold) {
    const double q = 1.0 - p / lower_.p_threshold;
    return lower_.threshold - gpd_quantile(q, lower_.xi, lower_.sigma);
  }
  if (p <= ps_.front()) return xs_.front();
  if (p >= ps_.back()) return xs_.back();
  const auto it = std::upper_bound(ps_.begin(), ps_.end(), p);
  const std::size_t i = static_cast<std::size_t>(it - ps_.begin());
  const double t = (p - ps_[i - 1]) / (ps_[i] - ps_[i - 1]);
  return xs_[i - 1] + t * (xs_[i] - xs_[i - 1]);
}

// ---- simulation -----------------------------------------------------------

std::vector<double> simulate_garch_path(const GarchParams& params, std::size_t n,
                                        std::uint64_t seed, int burn_in) {
  params.validate();
  if (!params.is_stationary()) throw domain_error("garch: non-stationary parameters");
  Rng rng(seed);
  const double denom = 1.0 - params.alpha1 - params.beta1;
  double sigma2 = denom > 1e-8 ? params.alpha0 / denom : params.alpha0;
  double y = std::sqrt(sigma2) * rng.normal();
  std::vector<double> out;
  out.reserve(n);
  const std::size_t total = n + static_cast<std::size_t>(burn_in);
  for (std::size_t t = 0; t < total; ++t) {
    sigma2 = params.alpha0 + params.alpha1 * y * y + params.beta1 * sigma2;
    y = std::sqrt(sigma2) * rng.normal();
    if (t >= static_cast<std::size_t>(burn_in)) out.push_back(y);
  }
  return out;
}

std::vector<double> simulate_modified_arch_path(const GarchParams& params, std::size_t n,
                                                std::uint64_t seed, int burn_in) {
  params.validate();
  if (!params.is_stationary()) throw domain_error("garch: non-stationary parameters");
  Rng rng(seed);
  double x = std::sqrt(params.alpha0);
  std::vector<double> out;
  out.reserve(n);
  const std::size_t total = n + static_cast<std::size_t>(burn_in);
  for (std::size_t t = 0; t < total; ++t) {
    const double eta = rng.normal();
    x = std::sqrt((params.alpha0 + x * x) * (params.alpha1 * eta * eta + params.beta1));
    if (t >= static_cast<std::size_t>(burn_in)) out.push_back(x);
  }
  return out;
}

TabulatedCdf build_psi(const GarchParams& params, std::size_t n_sim, std::uint64_t seed) {
  return TabulatedCdf::from_sample(simulate_garch_path(params, n_sim, seed),
                                   4096, /*symmetric=*/true);
}

TabulatedCdf build_gamma(const GarchParams& params, std::size_t n_sim, std::uint64_t seed) {
  return TabulatedCdf::from_sample(simulate_modified_arch_path(params, n_sim, seed),
                                   4096, /*symmetric=*/false);
}

// ---- copula functions -----------------------------------------------------

double arch_ccdf(const GarchParams& params, const TabulatedCdf& psi, double u, double v) {
  u = clamp_unit(u);
  v = clamp_unit(v);
  const double num = psi.quantile(u);
  const double yv = psi.quantile(v);
  return norm_cdf(num / std::sqrt(params.alpha0 + params.alpha1 * yv * yv));
}

double arch_cquantile(const GarchParams& params, const TabulatedCdf& psi, double p,
                      double v) {
  p = clamp_unit(p);
  v = clamp_unit(v);
  const double yv = psi.quantile(v);
  return psi.cdf(std::sqrt(params.alpha0 + params.alpha1 * yv * yv) * norm_quantile(p));
}

double arch_copula_cdf(const GarchParams& params, const TabulatedCdf& psi, double u,
                       double v, int nodes) {
  return quad::integrate([&](double s) { return arch_ccdf(params, psi, u, s); }, 0.0, v,
                         nodes);
}

double GarchCopulaPair::ar_ccdf(double u, double v) const {
  u = clamp_unit(u);
  v = clamp_unit(v);
  const double xu = gamma->quantile(u);
  const double xv = gamma->quantile(v);
  const double rad = xu * xu / (params.alpha1 * (params.alpha0 + xv * xv)) -
                     params.beta1 / params.alpha1;
  if (rad <= 0.0) return 0.0;  // construction keeps this nonnegative; tabulation noise
  return 2.0 * norm_cdf(std::sqrt(rad)) - 1.0;
}

double GarchCopulaPair::ar_cquantile(double p, double v) const {
  p = clamp_unit(p);
  v = clamp_unit(v);
  const double z = norm_quantile(0.5 * (1.0 + p));  // |eta| quantile
  const double xv = gamma->quantile(v);
  return gamma->cdf(
      std::sqrt((params.alpha0 + xv * xv) * (params.alpha1 * z * z + params.beta1)));
}

double GarchCopulaPair::mag_ccdf(double u, double v) const {
  u = clamp_unit(u);
  v = clamp_unit(v);
  const double yu = psi->quantile(u);
  const double xv = gamma->quantile(v);
  return norm_cdf(yu / std::sqrt(params.alpha0 + xv * xv));
}

double GarchCopulaPair::mag_cquantile(double p, double v) const {
  p = clamp_unit(p);
  v = clamp_unit(v);
  const double xv = gamma->quantile(v);
  return psi->cdf(std::sqrt(params.alpha0 + xv * xv) * norm_quantile(p));
}

GarchCopulaPair garch_copula_pair(const GarchParams& params, const TabulatedCdf& psi,
                                  const TabulatedCdf& gamma) {
  params.validate();
  if (!(params.alpha1 > 0.0)) throw domain_error("garch copulas need alpha1 > 0");
  return GarchCopulaPair{params, &psi, &gamma};
}

std::vector<double> simulate_garch_coarma(const GarchParams& params,
                                          const TabulatedCdf& psi,
                                          const TabulatedCdf& gamma, std::size_t n,
                                          std::uint64_t seed, int burn_in) {
  params.validate();
  Rng rng(seed);
  double w = 0.5;  // PIT of the latent modified-ARCH state
  std::vector<double> out;
  out.reserve(n);
  const std::size_t total = n + static_cast<std::size_t>(burn_in);
  for (std::size_t t = 0; t < total; ++t) {
    const double e = rng.uniform();
    const double eta = norm_quantile(e);
    const double xv = gamma.quantile(clamp_unit(w));
    const double scale = std::sqrt(params.alpha0 + xv * xv);
    const double u = psi.cdf(scale * eta);
    // Latent update shares the shock, entering through eta^2; this is
    // what couples today's observation to tomorrow's volatility.
    w = gamma.cdf(scale * std::sqrt(params.alpha1 * eta * eta + params.beta1));
    if (t >= static_cast<std::size_t>(burn_in)) out.push_back(u);
  }
  return out;
}

}  // namespace coarma
