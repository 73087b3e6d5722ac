#include "coarma/process.hpp"

#include <algorithm>
#include <cmath>

#include "coarma/errors.hpp"
#include "coarma/margins.hpp"
#include "coarma/rng.hpp"
#include "coarma/stats.hpp"

namespace coarma {

CoarmaSpec::CoarmaSpec(VineSpec ar_vine, VineSpec mag_vine)
    : p(ar_vine.order()), q(mag_vine.order()), ar(std::move(ar_vine)), mag(std::move(mag_vine)) {
  validate();
}

void CoarmaSpec::validate() const {
  if (p < 0 || q < 0) throw domain_error("coarma: orders must be nonnegative");
  if (ar.kind != VineKind::StationaryDVine) throw domain_error("coarma: ar vine kind");
  if (mag.kind != VineKind::MagDVine) throw domain_error("coarma: mag vine kind");
  if (ar.order() != p) throw shape_error("coarma: ar vine order != p");
  if (mag.order() != q) throw shape_error("coarma: mag vine order != q");
  ar.validate();
  mag.validate();
}

std::string CoarmaSpec::token() const {
  return "coarma(" + std::to_string(p) + "," + std::to_string(q) + ")|" + ar.token() +
         "|" + mag.token();
}

CoarmaSpec CoarmaSpec::from_token(const std::string& tok) {
  const auto bar1 = tok.find('|');
  const auto bar2 = tok.rfind('|');
  if (bar1 == std::string::npos || bar2 == bar1)
    throw parse_error("coarma token needs 'coarma(p,q)|ar:(...)|mag:(...)'", 0);
  CoarmaSpec spec;
  spec.ar = VineSpec::from_token(tok.substr(bar1 + 1, bar2 - bar1 - 1));
  spec.mag = VineSpec::from_token(tok.substr(bar2 + 1));
  spec.p = spec.ar.order();
  spec.q = spec.mag.order();
  const std::string head = "coarma(" + std::to_string(spec.p) + "," +
                           std::to_string(spec.q) + ")";
  if (tok.substr(0, bar1) != head) throw parse_error("coarma token order mismatch", 0);
  spec.validate();
  return spec;
}

namespace {

// Ring access into a history vector: values[t-1], values[t-2], ...
// collected most-recent-first.
void collect_history(const std::vector<double>& values, std::size_t t, int count,
                     std::vector<double>& out) {
  out.clear();
  for (int j = 1; j <= count; ++j) out.push_back(values[t - j]);
}

// MAG conditioning at time t: (e_{t-1}, ..., e_{t-q+1}, W_{t-q}).
void collect_mag_cond(const std::vector<double>& eps, const std::vector<double>& w,
                      std::size_t t, int q, std::vector<double>& out) {
  out.clear();
  for (int j = 1; j <= q - 1; ++j) out.push_back(eps[t - j]);
  out.push_back(w[t - q]);
}

}  // namespace

SimulationPaths simulate_paths(const CoarmaSpec& spec, std::size_t n, std::uint64_t seed,
                               const NumericOptions& opts) {
  spec.validate();
  if (n < 1) throw domain_error("simulate: n must be >= 1");
  const int r = std::max(spec.p, spec.q);
  const std::size_t lead = static_cast<std::size_t>(opts.burn_in) +
                           static_cast<std::size_t>(r) + 1;
  const std::size_t total = lead + n;
  Rng rng(seed);

  SimulationPaths path;
  std::vector<double> eps(total), w(total), u(total);
  std::vector<double> hist;
  hist.reserve(static_cast<std::size_t>(r) + 1);
  for (std::size_t t = 0; t < total; ++t) {
    eps[t] = rng.uniform();
    if (spec.p == 0) {
      w[t] = eps[t];
    } else if (t < static_cast<std::size_t>(spec.p)) {
      w[t] = 0.5;  // warm-up start, forgotten over the burn-in
    } else {
      collect_history(w, t, spec.p, hist);
      w[t] = ar_cond_quantile(spec.ar, eps[t], hist, opts.clamp_eps);
    }
    if (spec.q == 0) {
      u[t] = w[t];
    } else if (t < static_cast<std::size_t>(spec.q)) {
      u[t] = eps[t];
    } else {
      collect_mag_cond(eps, w, t, spec.q, hist);
      u[t] = mag_forward(spec.mag, eps[t], hist, opts.clamp_eps);
    }
  }
  path.u.assign(u.begin() + lead, u.end());
  path.eps.assign(eps.begin() + lead, eps.end());
  path.w.assign(w.begin() + lead, w.end());
  return path;
}

std::vector<double> simulate(const CoarmaSpec& spec, std::size_t n, std::uint64_t seed,
                             const NumericOptions& opts) {
  return simulate_paths(spec, n, seed, opts).u;
}

FilterResult filter(const CoarmaSpec& spec, std::span<const double> u,
                    const NumericOptions& opts) {
  spec.validate();
  const int r = std::max(spec.p, spec.q);
  const std::size_t n = u.size();
  if (n <= static_cast<std::size_t>(r))
    throw shape_error("filter: series shorter than max(p,q)");
  FilterResult res;
  res.warmup = r;
  res.eps.assign(n, 0.5);
  res.w.assign(n, 0.5);
  res.density.assign(n, 1.0);
  std::vector<double> hist;
  for (std::size_t t = static_cast<std::size_t>(r); t < n; ++t) {
    const double x = clamp_unit(u[t], opts.clamp_eps);
    try {
      if (spec.q == 0) {
        // Pure AR: the observation is the latent state and the
        // innovation is its Rosenblatt residual.
        collect_history(res.w, t, spec.p, hist);
        res.eps[t] = ar_cond_cdf(spec.ar, x, hist, opts.clamp_eps);
        res.w[t] = x;
        res.density[t] = ar_cond_density(spec.ar, x, hist, opts.clamp_eps);
      } else {
        collect_mag_cond(res.eps, res.w, t, spec.q, hist);
        res.eps[t] = mag_backward(spec.mag, x, hist, opts.clamp_eps);
        // Conditional density of U_t given the recovered states: the
        // MAG vine density with independent conditioning margins.
        std::vector<double> point(hist.rbegin(), hist.rend());
        point.push_back(x);
        res.density[t] = vine_density(spec.mag, point, opts.clamp_eps);
        if (spec.p == 0) {
          res.w[t] = res.eps[t];
        } else {
          collect_history(res.w, t, spec.p, hist);
          res.w[t] = ar_cond_quantile(spec.ar, res.eps[t], hist, opts.clamp_eps);
        }
      }
    } catch (const std::exception& e) {
      throw numeric_error("filter failed at t=" + std::to_string(t) + ": " + e.what());
    }
  }
  return res;
}

NllResult neg_log_likelihood(const CoarmaSpec& spec, std::span<const double> u,
                             const NumericOptions& opts) {
  const FilterResult f = filter(spec, u, opts);
  NllResult out;
  for (std::size_t t = static_cast<std::size_t>(f.warmup); t < f.density.size(); ++t) {
    double d = f.density[t];
    if (!(d >= opts.density_floor)) {
      d = opts.density_floor;
      ++out.underflow_count;
    }
    out.value -= std::log(d);
  }
  return out;
}

namespace {

// Shared filtering pass for the forecasting entry points: old data as
// pseudo-observations, new data through the margin CDF clamped to the
// pseudo-observation range.
struct ForecastState {
  std::vector<double> x;  // PIT series over old+new
  FilterResult filt;
  std::size_t l = 0;
  int clamp_count = 0;
};

ForecastState forecast_filter(const CoarmaSpec& spec, const MarginModel& margin,
                              std::span<const double> old_data,
                              std::span<const double> new_data,
                              const NumericOptions& opts) {
  ForecastState st;
  st.l = old_data.size();
  if (st.l < 10) throw shape_error("forecast: need at least 10 training points");
  const double n_old = static_cast<double>(st.l);
  const double lo = 1.0 / (n_old + 1.0);
  const double hi = n_old / (n_old + 1.0);
  st.x = stats::pobs(old_data);
  st.x.reserve(st.l + new_data.size());
  for (double y : new_data) {
    double p = margin.cdf(y);
    if (p < lo || p > hi) {
      p = std::min(std::max(p, lo), hi);
      ++st.clamp_count;
    }
    st.x.push_back(p);
  }
  st.filt = filter(spec, st.x, opts);
  return st;
}

}  // namespace

namespace {

// A comonotone MAG(1) pair makes the observation the latent AR value
// delayed by one step, so the one-step law of U_t given the data is the
// AR conditional law with the observed series as the state history.
// The generic state recursion is degenerate there (the h-function is a
// step), so this reduction is handled directly.
ForecastGrid forecast_shifted_ar(const CoarmaSpec& spec, const MarginModel& margin,
                                 std::span<const double> old_data,
                                 std::span<const double> new_data,
                                 const NumericOptions& opts) {
  ForecastState st;
  st.l = old_data.size();
  const double n_old = static_cast<double>(st.l);
  st.x = stats::pobs(old_data);
  for (double y : new_data) {
    double p = margin.cdf(y);
    const double lo = 1.0 / (n_old + 1.0), hi = n_old / (n_old + 1.0);
    if (p < lo || p > hi) {
      p = std::min(std::max(p, lo), hi);
      ++st.clamp_count;
    }
    st.x.push_back(p);
  }
  ForecastGrid grid;
  grid.clamp_count = st.clamp_count;
  std::vector<double> hist;
  for (std::size_t k = 0; k < new_data.size(); ++k) {
    const std::size_t t = st.l + k;
    std::array<double, 99> row{};
    hist.clear();
    for (int j = 1; j <= spec.p; ++j)
      hist.push_back(t >= static_cast<std::size_t>(j) ? st.x[t - j] : 0.5);
    for (int m = 1; m <= 99; ++m)
      row[m - 1] =
          margin.quantile(ar_cond_quantile(spec.ar, m / 100.0, hist, opts.clamp_eps));
    grid.t.push_back(k);
    grid.values.push_back(row);
  }
  return grid;
}

}  // namespace

ForecastGrid forecast_percentiles(const CoarmaSpec& spec, const MarginModel& margin,
                                  std::span<const double> old_data,
                                  std::span<const double> new_data,
                                  const NumericOptions& opts) {
  if (spec.q == 1 && spec.mag.pair_copulas[0].family == Family::Comonotone)
    return forecast_shifted_ar(spec, margin, old_data, new_data, opts);
  ForecastState st = forecast_filter(spec, margin, old_data, new_data, opts);
  ForecastGrid grid;
  grid.clamp_count = st.clamp_count;
  std::vector<double> cond;
  for (std::size_t k = 0; k < new_data.size(); ++k) {
    const std::size_t t = st.l + k;
    std::array<double, 99> row{};
    if (spec.q == 0) {
      collect_history(st.filt.w, t, spec.p, cond);
      for (int m = 1; m <= 99; ++m)
        row[m - 1] = margin.quantile(
            ar_cond_quantile(spec.ar, m / 100.0, cond, opts.clamp_eps));
    } else {
      collect_mag_cond(st.filt.eps, st.filt.w, t, spec.q, cond);
      for (int m = 1; m <= 99; ++m)
        row[m - 1] =
            margin.quantile(mag_forward(spec.mag, m / 100.0, cond, opts.clamp_eps));
    }
    grid.t.push_back(k);
    grid.values.push_back(row);
  }
  return grid;
}

std::vector<double> forecast_pit(const CoarmaSpec& spec, const MarginModel& margin,
                                 std::span<const double> old_data,
                                 std::span<const double> new_data,
                                 const NumericOptions& opts) {
  ForecastState st = forecast_filter(spec, margin, old_data, new_data, opts);
  // The forecast CDF evaluated at the realized PIT value is exactly the
  // recovered innovation at that step.
  return {st.filt.eps.begin() + static_cast<std::ptrdiff_t>(st.l), st.filt.eps.end()};
}

}  // namespace coarma
