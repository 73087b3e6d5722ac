#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "coarma/vine.hpp"

namespace coarma {

/// Numeric knobs shared by the recursive evaluations.
struct NumericOptions {
  double clamp_eps = kDefaultClampEps;
  double density_floor = 1e-10;  // substituted for underflowing density terms
  int burn_in = 500;             // simulation warm-up steps
};

/// The copula-ARMA process: a latent copula-AR(p) path W driven by
/// i.i.d. uniform innovations feeds a q-dependent output U through the
/// MAG D-vine conditional quantile.
///
///   U_t = h(e_t, ..., e_{t-q+1}, W_{t-q}),   W_t = g(e_t, W_{t-1}, ..., W_{t-p}).
///
/// p = 0 degenerates W to the innovation stream; q = 0 outputs the
/// latent AR path itself.
struct CoarmaSpec {
  int p = 0;
  int q = 0;
  VineSpec ar;   // StationaryDVine of order p
  VineSpec mag;  // MagDVine of order q

  CoarmaSpec() = default;
  CoarmaSpec(VineSpec ar_vine, VineSpec mag_vine);

  void validate() const;
  std::string token() const;  // "coarma(p,q)|<ar token>|<mag token>"
  static CoarmaSpec from_token(const std::string& tok);
};

struct SimulationPaths {
  std::vector<double> u;    // observed process
  std::vector<double> eps;  // innovations driving the draw
  std::vector<double> w;    // latent AR path
};

/// Stationary sample of length n; reproducible for a given seed.
std::vector<double> simulate(const CoarmaSpec& spec, std::size_t n, std::uint64_t seed,
                             const NumericOptions& opts = {});

/// Simulation that also exposes the innovation and latent paths.
SimulationPaths simulate_paths(const CoarmaSpec& spec, std::size_t n, std::uint64_t seed,
                               const NumericOptions& opts = {});

struct FilterResult {
  std::vector<double> eps;       // recovered innovations, first r entries 0.5
  std::vector<double> w;         // recovered latent path, first r entries 0.5
  std::vector<double> density;   // conditional density terms, first r entries 1
  int warmup = 0;                // r = max(p, q)
};

/// Iterative state recovery; the first max(p,q) states are the 0.5
/// placeholders and contribute unit density.
FilterResult filter(const CoarmaSpec& spec, std::span<const double> u,
                    const NumericOptions& opts = {});

struct NllResult {
  double value = 0.0;
  int underflow_count = 0;  // density terms replaced by the floor
};

/// Negative log-likelihood of PIT data under the spec.
NllResult neg_log_likelihood(const CoarmaSpec& spec, std::span<const double> u,
                             const NumericOptions& opts = {});

class MarginModel;  // margins.hpp

struct ForecastGrid {
  std::vector<std::size_t> t;             // indices into the new data
  std::vector<std::array<double, 99>> values;  // original-scale percentiles 1..99
  int clamp_count = 0;                    // new observations clamped to the PIT range
};

/// One-step-ahead percentile forecasts for each new observation:
/// conditional quantiles at levels 1/100..99/100 mapped through the
/// margin quantile.  `old_data` enters as pseudo-observations, new
/// observations through the margin CDF.
ForecastGrid forecast_percentiles(const CoarmaSpec& spec, const MarginModel& margin,
                                  std::span<const double> old_data,
                                  std::span<const double> new_data,
                                  const NumericOptions& opts = {});

/// Forecast conditional CDF evaluated at the realized new values (the
/// PIT series used for calibration checks); entry k corresponds to
/// new_data[k].
std::vector<double> forecast_pit(const CoarmaSpec& spec, const MarginModel& margin,
                                 std::span<const double> old_data,
                                 std::span<const double> new_data,
                                 const NumericOptions& opts = {});

}  // namespace coarma
