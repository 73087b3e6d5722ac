#include "coarma/arma.hpp"

#include <cmath>

#include "coarma/errors.hpp"
#include "coarma/gaussian_equiv.hpp"
#include "coarma/optim.hpp"
#include "coarma/stats.hpp"

namespace coarma {

namespace {

// Dense solve by Gaussian elimination with partial pivoting; the
// systems here are tiny (state dim <= 6, so <= 36 unknowns).
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b,
                                 std::size_t n) {
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::fabs(a[r * n + col]) > std::fabs(a[piv * n + col])) piv = r;
    if (std::fabs(a[piv * n + col]) < 1e-12)
      throw numeric_error("solve_linear: singular system");
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[col * n + j], a[piv * n + j]);
      std::swap(b[col], b[piv]);
    }
    const double d = a[col * n + col];
    for (std::size_t r = col + 1; r < n; ++r) {
      const double m = a[r * n + col] / d;
      if (m == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a[r * n + j] -= m * a[col * n + j];
      b[r] -= m * b[col];
    }
  }
  std::vector<double> x(n);
  for (std::size_t row = n; row-- > 0;) {
    double s = b[row];
    for (std::size_t j = row + 1; j < n; ++j) s -= a[row * n + j] * x[j];
    x[row] = s / a[row * n + row];
  }
  return x;
}

struct StateSpace {
  int r;
  std::vector<double> tmat;  // r x r transition
  std::vector<double> rvec;  // disturbance loading
};

StateSpace build_ss(const ArmaModel& m) {
  StateSpace ss;
  ss.r = std::max(m.p(), m.q() + 1);
  const int r = ss.r;
  ss.tmat.assign(static_cast<std::size_t>(r) * r, 0.0);
  for (int i = 0; i < r; ++i) {
    ss.tmat[static_cast<std::size_t>(i) * r + 0] = (i < m.p()) ? m.phi[i] : 0.0;
    if (i + 1 < r) ss.tmat[static_cast<std::size_t>(i) * r + i + 1] = 1.0;
  }
  ss.rvec.assign(r, 0.0);
  ss.rvec[0] = 1.0;
  for (int i = 1; i < r; ++i) ss.rvec[i] = (i <= m.q()) ? m.theta[i - 1] : 0.0;
  return ss;
}

// Stationary covariance: P = T P T' + R R', solved exactly via the
// Kronecker system (I - T (x) T) vec(P) = vec(R R').
std::vector<double> stationary_cov(const StateSpace& ss) {
  const int r = ss.r;
  const std::size_t n = static_cast<std::size_t>(r) * r;
  std::vector<double> a(n * n, 0.0);
  std::vector<double> b(n, 0.0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      const std::size_t row = static_cast<std::size_t>(i) * r + j;
      b[row] = ss.rvec[i] * ss.rvec[j];
      for (int k = 0; k < r; ++k)
        for (int l = 0; l < r; ++l) {
          const std::size_t col = static_cast<std::size_t>(k) * r + l;
          const double v = ss.tmat[static_cast<std::size_t>(i) * r + k] *
                           ss.tmat[static_cast<std::size_t>(j) * r + l];
          a[row * n + col] = (row == col ? 1.0 : 0.0) - v;
        }
    }
  return solve_linear(std::move(a), std::move(b), n);
}

struct KalmanRun {
  double sum_log_f = 0.0;
  double sum_sq = 0.0;  // sum v_t^2 / F_t
  std::vector<double> pred_mean;
  std::vector<double> pred_var;  // F_t, in units of sigma^2
};

KalmanRun kalman_pass(const ArmaModel& m, std::span<const double> y, bool keep_pred) {
  const StateSpace ss = build_ss(m);
  const int r = ss.r;
  std::vector<double> p = stationary_cov(ss);
  std::vector<double> a(r, 0.0);
  KalmanRun run;
  if (keep_pred) {
    run.pred_mean.reserve(y.size());
    run.pred_var.reserve(y.size());
  }
  std::vector<double> ta(r), tpz(r), pnew(static_cast<std::size_t>(r) * r);
  for (double yt : y) {
    const double v = (yt - m.mu) - a[0];
    const double f = p[0];
    if (!(f > 1e-300)) throw numeric_error("kalman: prediction variance collapsed");
    run.sum_log_f += std::log(f);
    run.sum_sq += v * v / f;
    if (keep_pred) {
      run.pred_mean.push_back(m.mu + a[0]);
      run.pred_var.push_back(f);
    }
    // a <- T a + (T P z') v / f ;  P <- T P T' + R R' - (TPz)(TPz)'/f
    for (int i = 0; i < r; ++i) {
      double s = 0.0, sp = 0.0;
      for (int k = 0; k < r; ++k) {
        s += ss.tmat[static_cast<std::size_t>(i) * r + k] * a[k];
        sp += ss.tmat[static_cast<std::size_t>(i) * r + k] * p[static_cast<std::size_t>(k) * r];
      }
      ta[i] = s;
      tpz[i] = sp;
    }
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        double s = 0.0;
        for (int k = 0; k < r; ++k) {
          double tp = 0.0;
          for (int l = 0; l < r; ++l)
            tp += ss.tmat[static_cast<std::size_t>(i) * r + l] *
                  p[static_cast<std::size_t>(l) * r + k];
          s += tp * ss.tmat[static_cast<std::size_t>(j) * r + k];
        }
        pnew[static_cast<std::size_t>(i) * r + j] =
            s + ss.rvec[i] * ss.rvec[j] - tpz[i] * tpz[j] / f;
      }
    for (int i = 0; i < r; ++i) a[i] = ta[i] + tpz[i] * v / f;
    p = pnew;
  }
  return run;
}

}  // namespace

double arma_loglik(const ArmaModel& model, std::span<const double> y) {
  if (y.empty()) throw shape_error("arma_loglik: empty series");
  const KalmanRun run = kalman_pass(model, y, false);
  const double n = static_cast<double>(y.size());
  const double s2 = model.sigma2;
  return -0.5 * (n * std::log(2.0 * M_PI * s2) + run.sum_log_f + run.sum_sq / s2);
}

ArmaForecast arma_one_step(const ArmaModel& model, std::span<const double> y,
                           std::size_t start) {
  if (start >= y.size()) throw shape_error("arma_one_step: start beyond series");
  const KalmanRun run = kalman_pass(model, y, true);
  ArmaForecast out;
  for (std::size_t t = start; t < y.size(); ++t) {
    out.mean.push_back(run.pred_mean[t]);
    out.sd.push_back(std::sqrt(model.sigma2 * run.pred_var[t]));
  }
  return out;
}

ArmaModel arma_fit(std::span<const double> y, int p, int q) {
  if (p < 0 || q < 0) throw domain_error("arma_fit: negative order");
  if (y.size() < static_cast<std::size_t>(10 * std::max(1, p + q)))
    throw shape_error("arma_fit: series too short");
  const double mu = stats::mean(y);
  const double n = static_cast<double>(y.size());

  const auto unpack = [&](const std::vector<double>& z) {
    ArmaModel m;
    m.mu = mu;
    std::vector<double> pac(p);
    for (int i = 0; i < p; ++i) pac[i] = std::tanh(z[i]);
    m.phi = ar_phi(pac);
    std::vector<double> mac(q);
    for (int i = 0; i < q; ++i) mac[i] = std::tanh(z[p + i]);
    m.theta = ar_phi(mac);
    return m;
  };
  const auto objective = [&](const std::vector<double>& z) {
    ArmaModel m = unpack(z);
    try {
      const KalmanRun run = kalman_pass(m, y, false);
      const double s2 = run.sum_sq / n;
      return 0.5 * (n * std::log(s2) + run.sum_log_f);
    } catch (const std::exception&) {
      return 1e100;
    }
  };

  NelderMeadResult best;
  best.f = 1e300;
  for (double s0 : {0.0, 0.3}) {
    std::vector<double> start(static_cast<std::size_t>(p + q), s0);
    const auto res = nelder_mead(objective, start, 0.4, 1e-10, 400 * std::max(1, p + q));
    if (res.f < best.f) best = res;
  }
  ArmaModel m = unpack(best.x);
  const KalmanRun run = kalman_pass(m, y, false);
  m.sigma2 = run.sum_sq / n;
  return m;
}

ArmaSelection arma_select_aic(std::span<const double> y, int max_p, int max_q) {
  ArmaSelection best;
  bool have = false;
  for (int p = 0; p <= max_p; ++p)
    for (int q = 0; q <= max_q; ++q) {
      ArmaModel m;
      try {
        m = arma_fit(y, p, q);
      } catch (const std::exception&) {
        continue;
      }
      const double ll = arma_loglik(m, y);
      const double aic = -2.0 * ll + 2.0 * (p + q + 2);
      if (!have || aic < best.aic) {
        best = {m, p, q, aic};
        have = true;
      }
    }
  if (!have) throw numeric_error("arma_select_aic: no model could be fit");
  return best;
}

}  // namespace coarma
