#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coarma/process.hpp"

namespace coarma {

/// Location of a free parameter inside a CoarmaSpec template.
struct FreeParam {
  bool in_mag = false;
  int pair_index = 0;
  int param_index = 0;
};

struct ParamBounds {
  double lo = 0.0;
  double hi = 1.0;
};

struct FitConfig {
  CoarmaSpec tmpl;                    // placeholder values in the free slots
  std::vector<FreeParam> free_params;
  std::vector<ParamBounds> bounds;    // aligned with free_params
  int restarts = 5;
  double ftol = 1e-8;
  int max_evals = 4000;
  std::uint64_t seed = 0;
  bool relax_mag_bounds = false;  // lift the ergodicity-motivated MAG caps
  NumericOptions numeric;
};

/// Default bounds: AR pairs get the family's full practical range; MAG
/// pairs are capped at the dependence level of a Gaussian pair with
/// parameter 1/sqrt(2) (tau = 0.5), the threshold past which the
/// recovered-innovation recursion stops being ergodic.
ParamBounds default_bounds(const CopulaSpec& pair, int param_index, bool in_mag,
                           bool relax_mag);

/// Convenience constructor filling bounds from the template.
FitConfig make_fit_config(const CoarmaSpec& tmpl, std::vector<FreeParam> free_params,
                          std::uint64_t seed = 0, bool relax_mag = false);

struct FitResult {
  CoarmaSpec spec;
  double nll = 0.0;
  bool converged = false;
  int underflow_count = 0;
  int eval_count = 0;
  std::vector<double> estimates;  // free-parameter values at the optimum
};

/// Two-step second stage: maximum likelihood over the free copula
/// parameters on PIT data, Nelder-Mead in a logit-reparameterized
/// space with multi-start.
FitResult fit(const FitConfig& config, std::span<const double> u);

/// 1-D likelihood profile along a grid for one free parameter.
struct ScanPoint {
  double parameter;
  double nll;
};
std::vector<ScanPoint> nll_scan(const CoarmaSpec& tmpl, const FreeParam& param,
                                std::span<const double> u, const std::vector<double>& grid,
                                const NumericOptions& opts = {});

struct ResidualReport {
  double lag1_autocorr = 0.0;
  double var_lag1_diff = 0.0;   // stationary U(0,1) series stay below 1/3
  double sign_flip_rate = 0.0;  // alternation frequency of eps - 0.5
  double ks_stat = 0.0;
  double ks_pvalue = 0.0;
  double mean_drift = 0.0;  // max |window mean - 0.5| over 10 windows
  double boundary_fraction = 0.0;
  bool oscillation_flag = false;
};

/// Stationarity heuristics of the recovered innovations; flags the
/// non-ergodic filtering regime.
ResidualReport residual_diagnostics(const CoarmaSpec& spec, std::span<const double> u,
                                    const NumericOptions& opts = {});

}  // namespace coarma
