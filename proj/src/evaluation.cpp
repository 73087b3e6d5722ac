#include "coarma/evaluation.hpp"

#include <algorithm>
#include <cmath>

#include "coarma/arma.hpp"
#include "coarma/errors.hpp"
#include "coarma/estimation.hpp"
#include "coarma/model_string.hpp"
#include "coarma/special.hpp"
#include "coarma/stats.hpp"

namespace coarma {

double pinball(double tau, double forecast_quantile, double realized) {
  if (!(tau > 0.0 && tau < 1.0)) throw domain_error("pinball: tau outside (0,1)");
  const double d = realized - forecast_quantile;
  return std::max(tau * d, (tau - 1.0) * d);
}

double crps_from_percentiles(std::span<const double> row, double realized) {
  if (row.size() != 99) throw shape_error("crps_from_percentiles: need 99 quantiles");
  double s = 0.0;
  for (int m = 1; m <= 99; ++m) s += pinball(m / 100.0, row[m - 1], realized);
  return 2.0 * s / 100.0;
}

PredictiveNll predictive_nll(const CoarmaSpec& spec, const MarginModel& margin,
                             std::span<const double> old_data,
                             std::span<const double> new_data,
                             const NumericOptions& opts) {
  // Likelihood factorizes as margin density times the conditional
  // copula density at the PIT value; the latter is the filter's
  // per-step density term.
  const std::size_t l = old_data.size();
  std::vector<double> full(old_data.begin(), old_data.end());
  const double lo = 1.0 / (static_cast<double>(l) + 1.0);
  const double hi = static_cast<double>(l) / (static_cast<double>(l) + 1.0);
  std::vector<double> x = stats::pobs(old_data);
  x.reserve(l + new_data.size());
  for (double y : new_data) x.push_back(std::min(std::max(margin.cdf(y), lo), hi));
  const FilterResult f = filter(spec, x, opts);

  PredictiveNll out;
  for (std::size_t k = 0; k < new_data.size(); ++k) {
    const std::size_t t = l + k;
    double lik = f.density[t] * margin.density(new_data[k]);
    if (!(lik >= opts.density_floor)) {
      lik = opts.density_floor;
      ++out.floor_count;
    }
    out.value -= std::log(lik);
  }
  return out;
}

MetricsReport grid_metrics(const ForecastGrid& grid, std::span<const double> realized) {
  if (grid.values.size() != realized.size())
    throw shape_error("grid_metrics: grid/realized length mismatch");
  MetricsReport rep;
  rep.n_eval = realized.size();
  double se = 0.0;
  for (std::size_t k = 0; k < realized.size(); ++k) {
    const auto& row = grid.values[k];
    const double y = realized[k];
    rep.crps += crps_from_percentiles(std::span<const double>(row.data(), 99), y);
    rep.pbs05 += pinball(0.05, row[4], y);
    rep.pbs95 += pinball(0.95, row[94], y);
    double mean = 0.0;
    for (double v : row) mean += v;
    mean /= 99.0;
    se += (y - mean) * (y - mean);
    rep.mae += std::fabs(y - row[49]);
  }
  const double n = static_cast<double>(rep.n_eval);
  rep.crps /= n;
  rep.pbs05 /= n;
  rep.pbs95 /= n;
  rep.rmse = std::sqrt(se / n);
  rep.mae /= n;
  return rep;
}

namespace {

struct SplitIndex {
  std::size_t n_train, n_val, n_test;
};

SplitIndex make_split(std::size_t n, double train_frac, double val_frac) {
  if (!(train_frac > 0.0 && val_frac > 0.0 && train_frac + val_frac < 1.0))
    throw domain_error("backtest: fractions must be positive and sum below 1");
  SplitIndex s;
  s.n_train = static_cast<std::size_t>(std::floor(train_frac * static_cast<double>(n)));
  s.n_val = static_cast<std::size_t>(std::floor(val_frac * static_cast<double>(n)));
  if (s.n_train < 20 || s.n_val < 5 || n <= s.n_train + s.n_val)
    throw domain_error("backtest: series too short for the requested split");
  s.n_test = n - s.n_train - s.n_val;
  return s;
}

// Percentile rows of a Gaussian predictive distribution.
ForecastGrid gaussian_grid(const ArmaForecast& fc) {
  ForecastGrid grid;
  for (std::size_t k = 0; k < fc.mean.size(); ++k) {
    std::array<double, 99> row{};
    for (int m = 1; m <= 99; ++m)
      row[m - 1] = fc.mean[k] + fc.sd[k] * special::norm_quantile(m / 100.0);
    grid.t.push_back(k);
    grid.values.push_back(row);
  }
  return grid;
}

double gaussian_predictive_nll(const ArmaForecast& fc, std::span<const double> realized) {
  double nll = 0.0;
  for (std::size_t k = 0; k < realized.size(); ++k) {
    const double z = (realized[k] - fc.mean[k]) / fc.sd[k];
    nll -= std::log(special::norm_pdf(z) / fc.sd[k]);
  }
  return nll;
}

MetricsReport window_metrics(const ForecastGrid& grid, std::span<const double> realized,
                             std::size_t offset, std::size_t count, double nll,
                             int floor_count, std::size_t abs_start) {
  ForecastGrid sub;
  for (std::size_t k = 0; k < count; ++k) {
    sub.t.push_back(k);
    sub.values.push_back(grid.values[offset + k]);
  }
  MetricsReport rep = grid_metrics(sub, realized.subspan(offset, count));
  rep.nll = nll;
  rep.floor_count = floor_count;
  rep.eval_start = abs_start;
  rep.eval_end = abs_start + count;
  return rep;
}

}  // namespace

BacktestResult backtest(const std::vector<std::string>& models,
                        std::span<const double> series, double train_frac,
                        double val_frac, std::uint64_t seed) {
  const SplitIndex split = make_split(series.size(), train_frac, val_frac);
  BacktestResult result;
  result.n_train = split.n_train;
  result.n_val = split.n_val;
  result.n_test = split.n_test;

  const auto train = series.subspan(0, split.n_train);
  const auto rest = series.subspan(split.n_train);  // val + test

  for (const auto& name : models) {
    BacktestRow row;
    row.name = name;
    if (name.rfind("arma", 0) == 0) {
      row.model_class = "arma";
      ArmaModel model;
      if (name == "arma-auto") {
        model = arma_select_aic(train, 5, 5).model;
      } else {
        // "arma(p,q)"
        const auto open = name.find('(');
        const auto comma = name.find(',', open);
        const auto close = name.find(')', comma);
        if (open == std::string::npos || comma == std::string::npos ||
            close == std::string::npos)
          throw parse_error("bad arma spec '" + name + "'", 0);
        const int p = std::stoi(name.substr(open + 1, comma - open - 1));
        const int q = std::stoi(name.substr(comma + 1, close - comma - 1));
        model = arma_fit(train, p, q);
      }
      row.fit_nll = -arma_loglik(model, train);
      row.free_params = model.p() + model.q() + 2;
      const ArmaForecast fc = arma_one_step(model, series, split.n_train);
      const ForecastGrid grid = gaussian_grid(fc);
      ArmaForecast val_fc{{fc.mean.begin(), fc.mean.begin() + split.n_val},
                          {fc.sd.begin(), fc.sd.begin() + split.n_val}};
      ArmaForecast test_fc{{fc.mean.begin() + split.n_val, fc.mean.end()},
                           {fc.sd.begin() + split.n_val, fc.sd.end()}};
      row.validation =
          window_metrics(grid, rest, 0, split.n_val,
                         gaussian_predictive_nll(val_fc, rest.subspan(0, split.n_val)), 0,
                         split.n_train);
      row.test = window_metrics(
          grid, rest, split.n_val, split.n_test,
          gaussian_predictive_nll(test_fc, rest.subspan(split.n_val, split.n_test)), 0,
          split.n_train + split.n_val);
    } else {
      ParsedModel parsed = parse_model_string(name);
      row.model_class = parsed.spec.q == 0 ? "ar" : "coarma";
      const MarginModel margin = MarginModel::fit(parsed.margin, train);
      CoarmaSpec fitted = parsed.spec;
      if (parsed.has_free()) {
        const std::vector<double> pit = stats::pobs(train);
        FitConfig cfg = make_fit_config(parsed.spec, parsed.free_params, seed);
        const FitResult fr = fit(cfg, pit);
        fitted = fr.spec;
        row.fit_nll = fr.nll;
      } else {
        row.fit_nll = neg_log_likelihood(parsed.spec, stats::pobs(train)).value;
      }
      row.free_params = static_cast<int>(parsed.free_params.size());

      const ForecastGrid grid = forecast_percentiles(fitted, margin, train, rest);
      // One filtering pass covers validation and test; the test NLL is
      // the full-window value minus the validation part.
      const PredictiveNll val_nll =
          predictive_nll(fitted, margin, train, rest.subspan(0, split.n_val));
      const PredictiveNll full_nll = predictive_nll(fitted, margin, train, rest);
      PredictiveNll test_only;
      test_only.value = full_nll.value - val_nll.value;
      test_only.floor_count = full_nll.floor_count - val_nll.floor_count;
      row.validation = window_metrics(grid, rest, 0, split.n_val, val_nll.value,
                                      val_nll.floor_count, split.n_train);
      row.test = window_metrics(grid, rest, split.n_val, split.n_test, test_only.value,
                                test_only.floor_count, split.n_train + split.n_val);
    }
    result.rows.push_back(std::move(row));
  }

  // Per-class selection on validation CRPS.
  for (auto cls : {"arma", "ar", "coarma"}) {
    double best = 1e300;
    BacktestRow* best_row = nullptr;
    for (auto& row : result.rows)
      if (row.model_class == cls && row.validation.crps < best) {
        best = row.validation.crps;
        best_row = &row;
      }
    if (best_row) best_row->selected = true;
  }
  return result;
}

}  // namespace coarma
