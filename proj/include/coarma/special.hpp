#pragma once

namespace coarma::special {

/// Standard normal CDF, accurate to full double precision.
double norm_cdf(double x);

/// Standard normal density.
double norm_pdf(double x);

/// Standard normal quantile (Wichura's AS 241, |error| < 1e-15 in the
/// argument range reachable from doubles in (0,1)).
double norm_quantile(double p);

/// Bivariate standard normal CDF P(X <= h, Y <= k) with correlation rho
/// (Genz's reformulation of Drezner-Wesolowsky, abs error ~5e-16).
double binorm_cdf(double h, double k, double rho);

/// log Gamma.
double lgamma_fn(double x);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double inc_beta(double a, double b, double x);

/// Student-t CDF with nu degrees of freedom.
double t_cdf(double x, double nu);

/// Student-t density.
double t_pdf(double x, double nu);

/// Student-t quantile; Newton on the CDF with bisection safeguard.
double t_quantile(double p, double nu);

/// First Debye function D1(x) = (1/x) * integral_0^x t/(e^t - 1) dt.
double debye1(double x);

/// Kolmogorov distribution survival Q(lambda) = P(sqrt(n) D_n > lambda),
/// asymptotic form; used for KS p-values.
double kolmogorov_q(double lambda);

}  // namespace coarma::special
