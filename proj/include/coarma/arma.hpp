#pragma once

#include <span>
#include <vector>

namespace coarma {

/// Gaussian ARMA(p,q) benchmark model in state-space form:
///   y_t - mu = sum phi_j (y_{t-j} - mu) + e_t + sum theta_j e_{t-j}.
struct ArmaModel {
  std::vector<double> phi;
  std::vector<double> theta;
  double mu = 0.0;
  double sigma2 = 1.0;

  int p() const { return static_cast<int>(phi.size()); }
  int q() const { return static_cast<int>(theta.size()); }
};

struct ArmaForecast {
  std::vector<double> mean;  // one-step predictive means
  std::vector<double> sd;    // one-step predictive standard deviations
};

/// Exact Gaussian log-likelihood via the Kalman filter (stationary
/// initialization); throws for non-stationary coefficients.
double arma_loglik(const ArmaModel& model, std::span<const double> y);

/// One-step predictive means/sds for y[start..n-1], filtering through
/// the preceding observations.
ArmaForecast arma_one_step(const ArmaModel& model, std::span<const double> y,
                           std::size_t start);

/// Maximum likelihood fit with stationarity/invertibility enforced via
/// the partial-autocorrelation reparameterization.
ArmaModel arma_fit(std::span<const double> y, int p, int q);

struct ArmaSelection {
  ArmaModel model;
  int p = 0;
  int q = 0;
  double aic = 0.0;
};

/// Grid AIC selection over (p,q) <= (max_p, max_q).
ArmaSelection arma_select_aic(std::span<const double> y, int max_p = 5, int max_q = 5);

}  // namespace coarma
