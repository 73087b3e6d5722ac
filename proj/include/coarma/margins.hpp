#pragma once

#include <span>
#include <string>
#include <vector>

namespace coarma {

enum class MarginKind { Empirical, Kde, Normal };

/// Stationary-margin model supplying the CDF / quantile / density used
/// by the two-step estimation and the forecast scale transforms.
class MarginModel {
 public:
  static MarginModel fit(MarginKind kind, std::span<const double> data);

  /// Normal with known parameters (handy for simulated studies).
  static MarginModel normal(double mean, double sd);

  MarginKind kind() const { return kind_; }

  /// CDF mapped strictly inside (0,1); for the empirical margin values
  /// beyond the sample range clamp to 1/(n+1) and n/(n+1).
  double cdf(double x) const;
  double quantile(double p) const;
  double density(double x) const;

  double bandwidth() const { return bandwidth_; }
  double mean() const { return mean_; }
  double sd() const { return sd_; }
  std::size_t sample_size() const { return sample_.size(); }

  std::string token() const;

 private:
  MarginModel() = default;

  MarginKind kind_ = MarginKind::Normal;
  std::vector<double> sample_;  // sorted (Empirical, Kde)
  double bandwidth_ = 0.0;      // Kde
  double mean_ = 0.0, sd_ = 1.0;
};

MarginKind margin_kind_from_token(const std::string& tok);
std::string margin_token(MarginKind kind);

}  // namespace coarma
