#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace coarma::stats {

double mean(std::span<const double> x);
double variance(std::span<const double> x);  // unbiased

/// Average ranks in 1..n (ties averaged).
std::vector<double> ranks(std::span<const double> x);

/// Pseudo-observations rank/(n+1).
std::vector<double> pobs(std::span<const double> x);

/// Sample Spearman correlation of paired samples.
double spearman(std::span<const double> x, std::span<const double> y);

/// Sample Kendall tau-b via Knight's O(n log n) algorithm.
double kendall_tau(std::span<const double> x, std::span<const double> y);

/// Sample autocorrelation at the given lag (denominator lag-0 sum).
double autocorr(std::span<const double> x, int lag);

/// Sample autocovariance about the sample mean.
double autocov(std::span<const double> x, int lag);

struct KsResult {
  double statistic;  // sup-distance D_n
  double p_value;    // asymptotic
};

/// One-sample KS test against U(0,1).
KsResult ks_uniform(std::span<const double> u);

/// Two-sample KS distance and asymptotic p-value.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);

}  // namespace coarma::stats
