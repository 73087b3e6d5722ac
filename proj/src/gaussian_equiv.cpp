#include "coarma/gaussian_equiv.hpp"

#include <cmath>

#include "coarma/errors.hpp"
#include "coarma/process.hpp"
#include "coarma/special.hpp"
#include "coarma/stats.hpp"

namespace coarma {

std::vector<double> ar_phi(std::span<const double> alphas) {
  for (double a : alphas)
    if (!(std::fabs(a) < 1.0)) throw domain_error("ar_phi: |alpha| must be < 1");
  std::vector<double> phi;
  for (std::size_t k = 0; k < alphas.size(); ++k) {
    std::vector<double> next(k + 1);
    next[k] = alphas[k];
    for (std::size_t j = 0; j < k; ++j) next[j] = phi[j] - alphas[k] * phi[k - 1 - j];
    phi = std::move(next);
  }
  return phi;
}

std::vector<double> ar_phi_inverse(std::span<const double> phi) {
  std::vector<double> work(phi.begin(), phi.end());
  std::vector<double> alphas(phi.size());
  for (std::size_t k = phi.size(); k-- > 0;) {
    const double a = work[k];
    alphas[k] = a;
    if (k == 0) break;
    if (!(std::fabs(a) < 1.0)) throw domain_error("ar_phi_inverse: non-stationary phi");
    std::vector<double> prev(k);
    const double denom = 1.0 - a * a;
    for (std::size_t j = 0; j < k; ++j)
      prev[j] = (work[j] + a * work[k - 1 - j]) / denom;
    work = std::move(prev);
  }
  return alphas;
}

double sigma_prod(std::span<const double> params) {
  double s = 1.0;
  for (double b : params) s *= std::sqrt(1.0 - b * b);
  return s;
}

std::vector<double> mag_theta(std::span<const double> betas) {
  for (double b : betas)
    if (!(std::fabs(b) < 1.0)) throw domain_error("mag_theta: |beta| must be < 1");
  const double sigma_beta = sigma_prod(betas);
  std::vector<double> theta(betas.size());
  double lead = 1.0;  // prod_{j=0}^{i-1} sqrt(1-beta_j^2), beta_0 = 0
  for (std::size_t i = 0; i < betas.size(); ++i) {
    theta[i] = lead * betas[i] / sigma_beta;
    lead *= std::sqrt(1.0 - betas[i] * betas[i]);
  }
  return theta;
}

ArmaCoeffs coarma_psi(std::span<const double> alphas, std::span<const double> betas) {
  const int p = static_cast<int>(alphas.size());
  const int q = static_cast<int>(betas.size());
  ArmaCoeffs out;
  out.phi = ar_phi(alphas);
  if (q == 0) {
    out.innovation_sd = sigma_prod(alphas);
    return out;
  }
  const std::vector<double> theta = mag_theta(betas);
  out.innovation_sd = sigma_prod(betas);
  if (p == 0) {
    out.psi = theta;
    return out;
  }
  const double sigma_alpha = sigma_prod(alphas);
  out.psi.assign(static_cast<std::size_t>(p + q - 1), 0.0);
  for (int j = 1; j <= p + q - 1; ++j) {
    // The moving-average carry-over keeps theta_j for lags before q; at
    // lag q the latent AR innovation enters once, scaled by sigma_alpha.
    // (Taking the lag-q indicator inclusively would double-count theta_q
    // and break the unit-variance identity.)
    double theta_t = 0.0;
    if (j < q && q > 1) theta_t += theta[j - 1];
    if (j == q) theta_t += theta[q - 1] * sigma_alpha;
    double phi_t = (j <= p) ? out.phi[j - 1] : 0.0;
    // Cross terms come from substituting the AR recursion into the
    // lag-q state, which touches only the moving-average lags 1..q-1.
    double zeta = 0.0;
    if (q > 1) {
      for (int r = 1; r <= p; ++r) {
        const int s = j - r;
        if (s >= 1 && s <= q - 1) zeta += out.phi[r - 1] * theta[s - 1];
      }
    }
    out.psi[j - 1] = theta_t - phi_t - zeta;
  }
  return out;
}

std::vector<double> arma_autocov(const std::vector<double>& phi,
                                 const std::vector<double>& theta, double sigma,
                                 int max_lag) {
  // psi-weight expansion: psi_0 = 1, psi_k = theta_k + sum phi_j psi_{k-j}.
  const int p = static_cast<int>(phi.size());
  const int qq = static_cast<int>(theta.size());
  std::vector<double> psi{1.0};
  double tail = 1.0;
  const int hard_cap = 100000;
  for (int k = 1; k < hard_cap; ++k) {
    double v = (k <= qq) ? theta[k - 1] : 0.0;
    for (int j = 1; j <= std::min(k, p); ++j) v += phi[j - 1] * psi[k - j];
    psi.push_back(v);
    tail = std::fabs(v);
    if (k > qq + p && tail < 1e-16 && static_cast<int>(psi.size()) > max_lag + 2) break;
  }
  if (tail >= 1e-12)
    throw numeric_error("arma_autocov: psi weights did not decay (non-stationary?)");
  std::vector<double> gamma(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int h = 0; h <= max_lag; ++h) {
    double s = 0.0;
    for (std::size_t k = 0; k + h < psi.size(); ++k) s += psi[k] * psi[k + h];
    gamma[h] = sigma * sigma * s;
  }
  return gamma;
}

std::vector<double> bartlett_se(const std::vector<double>& rho, std::size_t n, int max_lag) {
  // Var(rho_hat_h) ~ (1/n) sum_k [rho_{k+h} + rho_{k-h} - 2 rho_h rho_k]^2.
  const int kmax = static_cast<int>(rho.size()) - 1;
  std::vector<double> se(static_cast<std::size_t>(max_lag) + 1, 0.0);
  const auto r = [&](int k) {
    k = std::abs(k);
    return k <= kmax ? rho[k] : 0.0;
  };
  for (int h = 1; h <= max_lag; ++h) {
    double v = 0.0;
    for (int k = 1; k <= kmax; ++k) {
      const double term = r(k + h) + r(k - h) - 2.0 * r(h) * r(k);
      v += term * term;
    }
    se[h] = std::sqrt(v / static_cast<double>(n));
  }
  return se;
}

EquivalenceReport verify_equivalence(std::span<const double> alphas,
                                     std::span<const double> betas, std::size_t n,
                                     std::uint64_t seed, int max_lag) {
  std::vector<CopulaSpec> ar_pairs, mag_pairs;
  for (double a : alphas) ar_pairs.emplace_back(Family::Gaussian, std::vector<double>{a});
  for (double b : betas) mag_pairs.emplace_back(Family::Gaussian, std::vector<double>{b});
  CoarmaSpec spec(VineSpec(VineKind::StationaryDVine, ar_pairs),
                  VineSpec(VineKind::MagDVine, mag_pairs));
  const std::vector<double> u = simulate(spec, n, seed);
  std::vector<double> y(u.size());
  for (std::size_t t = 0; t < u.size(); ++t) y[t] = special::norm_quantile(u[t]);

  const ArmaCoeffs coef = coarma_psi(alphas, betas);
  const int theory_horizon = std::max(200, 4 * max_lag);
  const std::vector<double> gamma =
      arma_autocov(coef.phi, coef.psi, coef.innovation_sd, theory_horizon);
  std::vector<double> rho(gamma.size());
  for (std::size_t h = 0; h < gamma.size(); ++h) rho[h] = gamma[h] / gamma[0];
  const std::vector<double> se = bartlett_se(rho, n, max_lag);

  EquivalenceReport rep;
  rep.sample_variance = stats::autocov(y, 0) * static_cast<double>(n) /
                        static_cast<double>(n - 1);
  rep.pass = true;
  for (int h = 0; h <= max_lag; ++h) {
    const double sample = stats::autocorr(y, h);
    const double z = (h == 0) ? 0.0 : (sample - rho[h]) / se[h];
    rep.lag.push_back(h);
    rep.sample_acf.push_back(sample);
    rep.theory_acf.push_back(rho[h]);
    rep.z_score.push_back(z);
    rep.max_abs_z = std::max(rep.max_abs_z, std::fabs(z));
    if (std::fabs(z) > 3.0) rep.pass = false;
  }
  if (std::fabs(rep.sample_variance - gamma[0]) > 0.02 * gamma[0]) rep.pass = false;
  return rep;
}

}  // namespace coarma
