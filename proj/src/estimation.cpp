#include "coarma/estimation.hpp"

#include <cmath>

#include "coarma/errors.hpp"
#include "coarma/optim.hpp"
#include "coarma/rng.hpp"
#include "coarma/stats.hpp"

namespace coarma {

namespace {

constexpr double kDelta = 1e-6;
const double kRootHalf = 1.0 / std::sqrt(2.0);

double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

double to_bounded(double z, const ParamBounds& b) {
  return b.lo + (b.hi - b.lo) * logistic(z);
}

double to_unbounded(double x, const ParamBounds& b) {
  const double t = std::min(std::max((x - b.lo) / (b.hi - b.lo), 1e-12), 1.0 - 1e-12);
  return std::log(t / (1.0 - t));
}

CopulaSpec& locate_pair(CoarmaSpec& spec, const FreeParam& fp) {
  VineSpec& vine = fp.in_mag ? spec.mag : spec.ar;
  if (fp.pair_index < 0 || fp.pair_index >= vine.order())
    throw shape_error("free parameter: pair index out of range");
  return vine.pair_copulas[static_cast<std::size_t>(fp.pair_index)];
}

}  // namespace

ParamBounds default_bounds(const CopulaSpec& pair, int param_index, bool in_mag,
                           bool relax_mag) {
  const bool cap = in_mag && !relax_mag;
  switch (pair.family) {
    case Family::Gaussian: {
      const double hi = cap ? kRootHalf - kDelta : 1.0 - 1e-3;
      return {-hi, hi};
    }
    case Family::StudentT: {
      if (param_index == 1) return {2.0 + kDelta, 50.0};
      const double hi = cap ? kRootHalf - kDelta : 1.0 - 1e-3;
      return {-hi, hi};
    }
    case Family::Gumbel: {
      // tau = 0.5 - delta maps to theta just below 2.
      const double hi = cap ? 1.0 / (0.5 + kDelta) : 14.0;
      return {1.0 + kDelta, hi};
    }
    case Family::Clayton: {
      const double hi = cap ? 2.0 * (0.5 - kDelta) / (0.5 + kDelta) : 28.0;
      return {kDelta, hi};
    }
    case Family::Frank: {
      const double hi = cap ? tau_to_param(Family::Frank, 0.5 - kDelta) : 35.0;
      return {-hi, hi};
    }
    case Family::Frechet:
      return {kDelta, 1.0 - kDelta};
    default:
      throw unsupported_error("default_bounds: family has no free parameters");
  }
}

FitConfig make_fit_config(const CoarmaSpec& tmpl, std::vector<FreeParam> free_params,
                          std::uint64_t seed, bool relax_mag) {
  FitConfig cfg;
  cfg.tmpl = tmpl;
  cfg.free_params = std::move(free_params);
  cfg.seed = seed;
  cfg.relax_mag_bounds = relax_mag;
  for (const auto& fp : cfg.free_params) {
    CoarmaSpec tmp = tmpl;
    const CopulaSpec& pair = locate_pair(tmp, fp);
    cfg.bounds.push_back(default_bounds(pair, fp.param_index, fp.in_mag, relax_mag));
  }
  return cfg;
}

namespace {

CoarmaSpec apply_params(const FitConfig& cfg, const std::vector<double>& values) {
  CoarmaSpec spec = cfg.tmpl;
  for (std::size_t i = 0; i < cfg.free_params.size(); ++i) {
    CopulaSpec& pair = locate_pair(spec, cfg.free_params[i]);
    pair.params[static_cast<std::size_t>(cfg.free_params[i].param_index)] = values[i];
  }
  return spec;
}

// Multi-start initial values: near-independence, moderate dependence,
// then seeded random draws; the NLL is multimodal for some families.
std::vector<std::vector<double>> start_points(const FitConfig& cfg) {
  const std::size_t k = cfg.free_params.size();
  std::vector<std::vector<double>> starts;
  const auto family_of = [&](std::size_t i) {
    CoarmaSpec tmp = cfg.tmpl;
    return locate_pair(tmp, cfg.free_params[i]).family;
  };
  const auto point_at_tau = [&](double tau) {
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) {
      const Family fam = family_of(i);
      const bool is_nu = fam == Family::StudentT && cfg.free_params[i].param_index == 1;
      double x;
      if (is_nu) x = 8.0;
      else if (fam == Family::Frechet) x = std::max(kDelta, tau);
      else x = tau_to_param(fam, tau);
      v[i] = std::min(std::max(x, cfg.bounds[i].lo), cfg.bounds[i].hi);
    }
    return v;
  };
  starts.push_back(point_at_tau(0.02));
  starts.push_back(point_at_tau(0.3));
  Rng rng(cfg.seed, 77);
  while (static_cast<int>(starts.size()) < std::max(2, cfg.restarts)) {
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) {
      const auto& b = cfg.bounds[i];
      v[i] = b.lo + (b.hi - b.lo) * (0.05 + 0.9 * rng.uniform());
    }
    starts.push_back(std::move(v));
  }
  return starts;
}

}  // namespace

FitResult fit(const FitConfig& config, std::span<const double> u) {
  if (config.free_params.empty()) {
    FitResult res;
    res.spec = config.tmpl;
    const NllResult nll = neg_log_likelihood(config.tmpl, u, config.numeric);
    res.nll = nll.value;
    res.underflow_count = nll.underflow_count;
    res.converged = true;
    return res;
  }
  if (u.size() < 10 * static_cast<std::size_t>(std::max(1, std::max(config.tmpl.p, config.tmpl.q))))
    throw shape_error("fit: series too short for the model order");

  const std::size_t k = config.free_params.size();
  int evals = 0;
  const auto objective = [&](const std::vector<double>& z) {
    std::vector<double> values(k);
    for (std::size_t i = 0; i < k; ++i) values[i] = to_bounded(z[i], config.bounds[i]);
    ++evals;
    try {
      const CoarmaSpec spec = apply_params(config, values);
      return neg_log_likelihood(spec, u, config.numeric).value;
    } catch (const std::exception&) {
      return 1e100;
    }
  };

  NelderMeadResult best;
  best.f = 1e300;
  bool any_converged = false;
  for (const auto& start : start_points(config)) {
    std::vector<double> z(k);
    for (std::size_t i = 0; i < k; ++i) z[i] = to_unbounded(start[i], config.bounds[i]);
    const auto res = nelder_mead(objective, z, 0.6, config.ftol, config.max_evals);
    any_converged = any_converged || res.converged;
    if (res.f < best.f) best = res;
  }
  if (best.f >= 1e100) throw numeric_error("fit: all optimizer starts failed");

  FitResult res;
  res.estimates.resize(k);
  for (std::size_t i = 0; i < k; ++i)
    res.estimates[i] = to_bounded(best.x[i], config.bounds[i]);
  res.spec = apply_params(config, res.estimates);
  const NllResult nll = neg_log_likelihood(res.spec, u, config.numeric);
  res.nll = nll.value;
  res.underflow_count = nll.underflow_count;
  res.eval_count = evals;
  res.converged = any_converged;
  return res;
}

std::vector<ScanPoint> nll_scan(const CoarmaSpec& tmpl, const FreeParam& param,
                                std::span<const double> u, const std::vector<double>& grid,
                                const NumericOptions& opts) {
  std::vector<ScanPoint> out;
  out.reserve(grid.size());
  for (double g : grid) {
    CoarmaSpec spec = tmpl;
    locate_pair(spec, param).params[static_cast<std::size_t>(param.param_index)] = g;
    out.push_back({g, neg_log_likelihood(spec, u, opts).value});
  }
  return out;
}

ResidualReport residual_diagnostics(const CoarmaSpec& spec, std::span<const double> u,
                                    const NumericOptions& opts) {
  const FilterResult f = filter(spec, u, opts);
  const std::size_t r = static_cast<std::size_t>(f.warmup);
  std::vector<double> eps(f.eps.begin() + r, f.eps.end());
  ResidualReport rep;
  const std::size_t n = eps.size();
  if (n < 20) throw shape_error("residual_diagnostics: series too short");

  rep.lag1_autocorr = stats::autocorr(eps, 1);
  std::vector<double> diff(n - 1);
  for (std::size_t t = 0; t + 1 < n; ++t) diff[t] = eps[t + 1] - eps[t];
  rep.var_lag1_diff = stats::variance(diff);

  std::size_t flips = 0;
  for (std::size_t t = 0; t + 1 < n; ++t)
    if ((eps[t] - 0.5) * (eps[t + 1] - 0.5) < 0.0) ++flips;
  rep.sign_flip_rate = static_cast<double>(flips) / static_cast<double>(n - 1);

  const auto ks = stats::ks_uniform(eps);
  rep.ks_stat = ks.statistic;
  rep.ks_pvalue = ks.p_value;

  const std::size_t windows = 10;
  const std::size_t len = n / windows;
  for (std::size_t w = 0; w < windows && len > 1; ++w) {
    std::span<const double> win(eps.data() + w * len, len);
    rep.mean_drift = std::max(rep.mean_drift, std::fabs(stats::mean(win) - 0.5));
  }
  std::size_t boundary = 0;
  for (double e : eps)
    if (e < 1e-6 || e > 1.0 - 1e-6) ++boundary;
  rep.boundary_fraction = static_cast<double>(boundary) / static_cast<double>(n);

  rep.oscillation_flag = rep.var_lag1_diff > 1.0 / 3.0 + 0.01 ||
                         rep.sign_flip_rate > 0.8 || rep.lag1_autocorr < -0.6;
  return rep;
}

}  // namespace coarma
