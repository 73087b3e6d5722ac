#include "coarma/margins.hpp"

#include <algorithm>
#include <cmath>

#include "coarma/errors.hpp"
#include "coarma/special.hpp"
#include "coarma/stats.hpp"

namespace coarma {

using special::norm_cdf;
using special::norm_pdf;
using special::norm_quantile;

MarginModel MarginModel::fit(MarginKind kind, std::span<const double> data) {
  if (data.size() < 10) throw domain_error("margin fit: need at least 10 observations");
  for (double v : data)
    if (!std::isfinite(v)) throw domain_error("margin fit: non-finite value");
  MarginModel m;
  m.kind_ = kind;
  m.mean_ = stats::mean(data);
  const double var = stats::variance(data);
  if (var <= 0.0) throw domain_error("margin fit: degenerate (constant) data");
  m.sd_ = std::sqrt(var);
  if (kind == MarginKind::Normal) return m;

  m.sample_.assign(data.begin(), data.end());
  std::sort(m.sample_.begin(), m.sample_.end());
  if (kind == MarginKind::Kde) {
    // Silverman's rule of thumb with the IQR refinement.
    const std::size_t n = m.sample_.size();
    const double q1 = m.sample_[static_cast<std::size_t>(0.25 * (n - 1))];
    const double q3 = m.sample_[static_cast<std::size_t>(0.75 * (n - 1))];
    const double iqr = q3 - q1;
    double spread = m.sd_;
    if (iqr > 0.0) spread = std::min(spread, iqr / 1.34);
    m.bandwidth_ = 0.9 * spread * std::pow(static_cast<double>(n), -0.2);
    if (m.bandwidth_ <= 0.0) throw domain_error("margin fit: zero bandwidth");
  }
  return m;
}

MarginModel MarginModel::normal(double mean, double sd) {
  if (!(sd > 0.0)) throw domain_error("margin: sd must be positive");
  MarginModel m;
  m.kind_ = MarginKind::Normal;
  m.mean_ = mean;
  m.sd_ = sd;
  return m;
}

double MarginModel::cdf(double x) const {
  switch (kind_) {
    case MarginKind::Normal:
      return norm_cdf((x - mean_) / sd_);
    case MarginKind::Kde: {
      double s = 0.0;
      for (double xi : sample_) s += norm_cdf((x - xi) / bandwidth_);
      return s / static_cast<double>(sample_.size());
    }
    case MarginKind::Empirical: {
      const double n = static_cast<double>(sample_.size());
      const auto it = std::upper_bound(sample_.begin(), sample_.end(), x);
      const double count = static_cast<double>(it - sample_.begin());
      const double p = count / (n + 1.0);
      return std::min(std::max(p, 1.0 / (n + 1.0)), n / (n + 1.0));
    }
  }
  throw domain_error("margin cdf: unknown kind");
}

double MarginModel::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw domain_error("margin quantile: p outside (0,1)");
  switch (kind_) {
    case MarginKind::Normal:
      return mean_ + sd_ * norm_quantile(p);
    case MarginKind::Kde: {
      double lo = sample_.front() - 10.0 * bandwidth_;
      double hi = sample_.back() + 10.0 * bandwidth_;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p) lo = mid;
        else hi = mid;
        if (hi - lo < 1e-12 * (1.0 + std::fabs(hi))) break;
      }
      return 0.5 * (lo + hi);
    }
    case MarginKind::Empirical: {
      // Generalized inverse of the rank/(n+1) CDF with linear
      // interpolation between order statistics.
      const double n = static_cast<double>(sample_.size());
      const double h = p * (n + 1.0);
      if (h <= 1.0) return sample_.front();
      if (h >= n) return sample_.back();
      const std::size_t i = static_cast<std::size_t>(std::floor(h));
      const double frac = h - static_cast<double>(i);
      return sample_[i - 1] + frac * (sample_[i] - sample_[i - 1]);
    }
  }
  throw domain_error("margin quantile: unknown kind");
}

double MarginModel::density(double x) const {
  switch (kind_) {
    case MarginKind::Normal:
      return norm_pdf((x - mean_) / sd_) / sd_;
    case MarginKind::Kde: {
      double s = 0.0;
      for (double xi : sample_) s += norm_pdf((x - xi) / bandwidth_);
      return s / (static_cast<double>(sample_.size()) * bandwidth_);
    }
    case MarginKind::Empirical:
      throw unsupported_error("empirical margin has no density");
  }
  throw domain_error("margin density: unknown kind");
}

std::string MarginModel::token() const { return margin_token(kind_); }

MarginKind margin_kind_from_token(const std::string& tok) {
  if (tok == "kde") return MarginKind::Kde;
  if (tok == "n" || tok == "normal") return MarginKind::Normal;
  if (tok == "emp" || tok == "empirical") return MarginKind::Empirical;
  throw parse_error("unknown margin '" + tok + "'", 0);
}

std::string margin_token(MarginKind kind) {
  switch (kind) {
    case MarginKind::Kde: return "kde";
    case MarginKind::Normal: return "n";
    case MarginKind::Empirical: return "emp";
  }
  return "?";
}

}  // namespace coarma
