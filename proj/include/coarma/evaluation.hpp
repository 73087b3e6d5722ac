#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coarma/margins.hpp"
#include "coarma/process.hpp"

namespace coarma {

/// Pinball (quantile) loss at level tau.
double pinball(double tau, double forecast_quantile, double realized);

/// CRPS approximation from the 99-percentile forecast row.  The
/// percentile spacing fixes the integration weight at 2/100 per level.
double crps_from_percentiles(std::span<const double> row, double realized);

struct PredictiveNll {
  double value = 0.0;
  int floor_count = 0;
};

/// Predictive negative log-likelihood over the new observations:
/// -sum log[margin density x conditional copula density at the PIT],
/// with underflowing terms floored at 1e-10 and counted.
PredictiveNll predictive_nll(const CoarmaSpec& spec, const MarginModel& margin,
                             std::span<const double> old_data,
                             std::span<const double> new_data,
                             const NumericOptions& opts = {});

struct MetricsReport {
  double crps = 0.0;
  double nll = 0.0;
  double pbs05 = 0.0;
  double pbs95 = 0.0;
  double rmse = 0.0;
  double mae = 0.0;
  std::size_t n_eval = 0;
  std::size_t eval_start = 0;  // index into the full series
  std::size_t eval_end = 0;    // one past the last evaluated index
  int floor_count = 0;
};

/// Metrics of a percentile-grid forecast against realized values.
MetricsReport grid_metrics(const ForecastGrid& grid, std::span<const double> realized);

struct BacktestRow {
  std::string name;
  std::string model_class;  // "arma", "ar" or "coarma"
  MetricsReport validation;
  MetricsReport test;
  bool selected = false;  // best of its class on validation CRPS
  double fit_nll = 0.0;
  int free_params = 0;
};

struct BacktestResult {
  std::vector<BacktestRow> rows;
  std::size_t n_train = 0, n_val = 0, n_test = 0;
};

/// Fits every model on the training window, produces one-step-ahead
/// forecasts through validation and test, and reports metrics over the
/// identical evaluation windows.  Model names: "arma(p,q)",
/// "arma-auto", or copula model strings.
BacktestResult backtest(const std::vector<std::string>& models,
                        std::span<const double> series, double train_frac,
                        double val_frac, std::uint64_t seed);

}  // namespace coarma
