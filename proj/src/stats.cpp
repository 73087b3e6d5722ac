#include "coarma/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "coarma/errors.hpp"
#include "coarma/special.hpp"

namespace coarma::stats {

double mean(std::span<const double> x) {
  if (x.empty()) throw domain_error("mean: empty sample");
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double variance(std::span<const double> x) {
  if (x.size() < 2) throw domain_error("variance: need n >= 2");
  const double m = mean(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return s / static_cast<double>(x.size() - 1);
}

std::vector<double> ranks(std::span<const double> x) {
  const std::size_t n = x.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && x[idx[j + 1]] == x[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
    i = j + 1;
  }
  return r;
}

std::vector<double> pobs(std::span<const double> x) {
  auto r = ranks(x);
  const double denom = static_cast<double>(x.size()) + 1.0;
  for (double& v : r) v /= denom;
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw shape_error("spearman: size mismatch");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double mx = mean(rx), my = mean(ry);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double a = rx[i] - mx, b = ry[i] - my;
    sxy += a * b;
    sxx += a * a;
    syy += b * b;
  }
  return sxy / std::sqrt(sxx * syy);
}

namespace {

// Merge sort counting swaps (discordant pairs among distinct pairs).
std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& buf,
                          std::size_t lo, std::size_t hi) {
  if (hi - lo < 2) return 0;
  const std::size_t mid = lo + (hi - lo) / 2;
  std::uint64_t cnt = merge_count(v, buf, lo, mid) + merge_count(v, buf, mid, hi);
  std::size_t i = lo, j = mid, k = lo;
  while (i < mid && j < hi) {
    if (v[j] < v[i]) {
      cnt += mid - i;
      buf[k++] = v[j++];
    } else {
      buf[k++] = v[i++];
    }
  }
  while (i < mid) buf[k++] = v[i++];
  while (j < hi) buf[k++] = v[j++];
  std::copy(buf.begin() + lo, buf.begin() + hi, v.begin() + lo);
  return cnt;
}

std::uint64_t tied_pairs(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  std::uint64_t t = 0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    const std::uint64_t c = j - i + 1;
    t += c * (c - 1) / 2;
    i = j + 1;
  }
  return t;
}

}  // namespace

double kendall_tau(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  if (y.size() != n || n < 2) throw shape_error("kendall_tau: size mismatch");
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (x[a] != x[b]) return x[a] < x[b];
    return y[a] < y[b];
  });
  std::vector<double> ysorted(n);
  for (std::size_t i = 0; i < n; ++i) ysorted[i] = y[idx[i]];

  // Joint ties (pairs tied in both x and y).
  std::uint64_t txy = 0;
  {
    std::size_t i = 0;
    while (i < n) {
      std::size_t j = i;
      while (j + 1 < n && x[idx[j + 1]] == x[idx[i]] && y[idx[j + 1]] == y[idx[i]]) ++j;
      const std::uint64_t c = j - i + 1;
      txy += c * (c - 1) / 2;
      i = j + 1;
    }
  }
  const std::uint64_t tx = tied_pairs(std::vector<double>(x.begin(), x.end()));
  const std::uint64_t ty = tied_pairs(std::vector<double>(y.begin(), y.end()));
  std::vector<double> buf(n);
  std::vector<double> work = ysorted;
  const std::uint64_t swaps = merge_count(work, buf, 0, n);

  const std::uint64_t n0 = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  const double num = static_cast<double>(n0) - static_cast<double>(tx) -
                     static_cast<double>(ty) + static_cast<double>(txy) -
                     2.0 * static_cast<double>(swaps);
  const double den = std::sqrt((static_cast<double>(n0) - static_cast<double>(tx)) *
                               (static_cast<double>(n0) - static_cast<double>(ty)));
  return num / den;
}

double autocov(std::span<const double> x, int lag) {
  const std::size_t n = x.size();
  if (lag < 0 || static_cast<std::size_t>(lag) >= n) throw shape_error("autocov: bad lag");
  const double m = mean(x);
  double s = 0.0;
  for (std::size_t t = 0; t + lag < n; ++t) s += (x[t] - m) * (x[t + lag] - m);
  return s / static_cast<double>(n);
}

double autocorr(std::span<const double> x, int lag) {
  return autocov(x, lag) / autocov(x, 0);
}

KsResult ks_uniform(std::span<const double> u) {
  std::vector<double> s(u.begin(), u.end());
  std::sort(s.begin(), s.end());
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e_hi = static_cast<double>(i + 1) / n;
    const double e_lo = static_cast<double>(i) / n;
    d = std::max(d, std::max(std::fabs(e_hi - s[i]), std::fabs(s[i] - e_lo)));
  }
  return {d, special::kolmogorov_q(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  std::vector<double> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() && j < sb.size()) {
    const double v = std::min(sa[i], sb[j]);
    while (i < sa.size() && sa[i] <= v) ++i;
    while (j < sb.size() && sb[j] <= v) ++j;
    d = std::max(d, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = na * nb / (na + nb);
  return {d, special::kolmogorov_q(std::sqrt(ne) * d)};
}

}  // namespace coarma::stats
