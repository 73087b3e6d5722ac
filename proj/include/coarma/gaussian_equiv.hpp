#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace coarma {

/// ARMA coefficients induced by Gaussian AR/MAG copula parameters: the
/// normal-scores process satisfies
///   Y_t = eta_t + sum phi_j Y_{t-j} + sum psi_j eta_{t-j},
/// eta ~ N(0, innovation_sd^2), with unit stationary variance.
struct ArmaCoeffs {
  std::vector<double> phi;  // length p
  std::vector<double> psi;  // length p+q-1 (empty when q = 0)
  double innovation_sd = 1.0;
};

/// Levinson-type map from partial-autocorrelation-style parameters
/// alpha_j to AR(p) coefficients.
std::vector<double> ar_phi(std::span<const double> alphas);

/// Inverse map (Durbin-Levinson): AR coefficients back to the alphas.
std::vector<double> ar_phi_inverse(std::span<const double> phi);

/// MA coefficients of the pure MAG(q) normal-scores process.
std::vector<double> mag_theta(std::span<const double> betas);

/// sigma_alpha = prod sqrt(1 - alpha_j^2).
double sigma_prod(std::span<const double> params);

/// Full coefficient assembly for arbitrary (p, q) >= 0.
ArmaCoeffs coarma_psi(std::span<const double> alphas, std::span<const double> betas);

/// Theoretical autocovariances gamma(0..max_lag) of an ARMA process via
/// the psi-weight (MA-infinity) expansion.
std::vector<double> arma_autocov(const std::vector<double>& phi,
                                 const std::vector<double>& theta, double sigma,
                                 int max_lag);

/// Bartlett standard errors for sample autocorrelations of a linear
/// process with the given theoretical autocorrelations.
std::vector<double> bartlett_se(const std::vector<double>& rho, std::size_t n, int max_lag);

struct EquivalenceReport {
  std::vector<double> lag;
  std::vector<double> sample_acf;
  std::vector<double> theory_acf;
  std::vector<double> z_score;
  double sample_variance = 0.0;
  double max_abs_z = 0.0;
  bool pass = false;
};

/// Simulates the Gaussian-pair copula process, transforms to normal
/// scores and compares the sample ACF against the ARMA ACF implied by
/// the coefficient maps (3 SE per lag).
EquivalenceReport verify_equivalence(std::span<const double> alphas,
                                     std::span<const double> betas, std::size_t n,
                                     std::uint64_t seed, int max_lag = 10);

}  // namespace coarma
