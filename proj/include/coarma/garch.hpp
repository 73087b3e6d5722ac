#pragma once

#include <cstdint>
#include <vector>

namespace coarma {

struct GarchParams {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double beta1 = 0.0;

  void validate() const;
  bool arch_mode() const { return beta1 == 0.0; }
  /// Strict stationarity: E[log(alpha1 eta^2 + beta1)] < 0 for GARCH,
  /// second-order alpha1 < 1 for pure ARCH.
  bool is_stationary() const;
};

/// Monotone tabulated CDF built from a simulated sample, with linear
/// interpolation on a quantile grid and generalized-Pareto tails beyond
/// the 0.999 quantile.
class TabulatedCdf {
 public:
  static TabulatedCdf from_sample(std::vector<double> sample, int grid_points = 4096,
                                  bool symmetric = false, double tail_prob = 0.999);

  double cdf(double x) const;
  double quantile(double p) const;

  double grid_min() const { return xs_.front(); }
  double grid_max() const { return xs_.back(); }
  std::size_t grid_size() const { return xs_.size(); }

 private:
  struct GpdTail {
    bool active = false;
    double threshold = 0.0;
    double p_threshold = 0.0;
    double xi = 0.0;
    double sigma = 1.0;
  };

  std::vector<double> xs_;
  std::vector<double> ps_;
  GpdTail upper_;
  GpdTail lower_;
};

/// Direct Gaussian (G)ARCH path: Y_t = sigma_t eta_t.
std::vector<double> simulate_garch_path(const GarchParams& params, std::size_t n,
                                        std::uint64_t seed, int burn_in = 1000);

/// Modified-ARCH path X_t = sqrt((alpha0 + X_{t-1}^2)(alpha1 eta_t^2 + beta1)).
std::vector<double> simulate_modified_arch_path(const GarchParams& params, std::size_t n,
                                                std::uint64_t seed, int burn_in = 1000);

/// Stationary marginal CDF Psi of the (G)ARCH process, by simulation;
/// symmetry of the Gaussian-innovation marginal is enforced.
TabulatedCdf build_psi(const GarchParams& params, std::size_t n_sim, std::uint64_t seed);

/// Stationary CDF Gamma of the modified-ARCH process (positive support).
TabulatedCdf build_gamma(const GarchParams& params, std::size_t n_sim, std::uint64_t seed);

/// ARCH(1) copula conditional CDF C_{2|1}(u|v) and its quantile.
double arch_ccdf(const GarchParams& params, const TabulatedCdf& psi, double u, double v);
double arch_cquantile(const GarchParams& params, const TabulatedCdf& psi, double p, double v);

/// Integrated copula CDF C(u,v) by quadrature over the conditioning arg.
double arch_copula_cdf(const GarchParams& params, const TabulatedCdf& psi, double u,
                       double v, int nodes = 128);

/// Conditional CDFs / quantiles of the GARCH(1,1) AR and MAG copulas.
/// The AR pair conditions on the modified-ARCH state (Gamma scale); its
/// conditional CDF uses the folded-normal form so that cdf/quantile are
/// proper monotone inverses.
struct GarchCopulaPair {
  GarchParams params;
  const TabulatedCdf* psi = nullptr;
  const TabulatedCdf* gamma = nullptr;

  double ar_ccdf(double u, double v) const;
  double ar_cquantile(double p, double v) const;
  double mag_ccdf(double u, double v) const;
  double mag_cquantile(double p, double v) const;
};

GarchCopulaPair garch_copula_pair(const GarchParams& params, const TabulatedCdf& psi,
                                  const TabulatedCdf& gamma);

/// Simulates the coupled updating equations of the GARCH construction:
/// the latent state and the observation consume the same Gaussian shock,
/// entering the state through its square.  Returns the U(0,1) output
/// series, which reproduces GARCH(1,1) dynamics after mapping through
/// the Psi quantile.
std::vector<double> simulate_garch_coarma(const GarchParams& params,
                                          const TabulatedCdf& psi,
                                          const TabulatedCdf& gamma, std::size_t n,
                                          std::uint64_t seed, int burn_in = 1000);

}  // namespace coarma
