#include <doctest.h>

#include <cmath>
#include <vector>

#include "coarma/errors.hpp"
#include "coarma/garch.hpp"
#include "coarma/quadrature.hpp"
#include "coarma/special.hpp"
#include "coarma/stats.hpp"
#include "support/oracles.hpp"

using namespace coarma;

TEST_SUITE("garch") {

TEST_CASE("degenerate ARCH margin is the plain normal") {
  const GarchParams params{0.25, 0.0, 0.0};
  const TabulatedCdf psi = build_psi(params, 1000000, 5);
  double max_dev = 0.0;
  for (double x = -2.0; x <= 2.0; x += 0.05)
    max_dev = std::max(max_dev,
                       std::fabs(psi.cdf(x) - special::norm_cdf(x / 0.5)));
  CHECK(max_dev < 0.005);
}

TEST_CASE("ARCH marginal has the textbook excess kurtosis") {
  const GarchParams params{0.1, 0.3, 0.0};
  const auto path = simulate_garch_path(params, 1000000, 9);
  const double m2 = [&] {
    double s = 0.0;
    for (double y : path) s += y * y;
    return s / path.size();
  }();
  double m4 = 0.0;
  for (double y : path) m4 += y * y * y * y;
  m4 /= path.size();
  const double kurt = m4 / (m2 * m2);
  const double want = 3.0 * (1.0 - 0.09) / (1.0 - 3.0 * 0.09);
  CHECK(kurt > 3.0);
  CHECK(kurt == doctest::Approx(want).epsilon(0.1));
}

TEST_CASE("tabulated CDF round trips within grid resolution") {
  const GarchParams params{0.1, 0.3, 0.0};
  const TabulatedCdf psi = build_psi(params, 500000, 3);
  for (double p : {0.001, 0.05, 0.4, 0.6, 0.95, 0.999, 0.99995})
    CHECK(psi.cdf(psi.quantile(p)) == doctest::Approx(p).epsilon(1e-3));
  for (double x : {-1.5, -0.2, 0.0, 0.3, 2.0})
    CHECK(psi.quantile(psi.cdf(x)) == doctest::Approx(x).epsilon(1e-2));
}

TEST_CASE("modified-ARCH path respects the lower support bound") {
  const GarchParams params{0.1, 0.1, 0.8};
  const auto path = simulate_modified_arch_path(params, 200000, 7);
  const double bound = std::sqrt(params.alpha0 * params.beta1);
  for (double x : path) CHECK(x > bound - 1e-12);
}

TEST_CASE("beta1 = 0 reduction of the modified-ARCH distribution") {
  // With beta = 0 the modified-ARCH value is sqrt(alpha1) |Y| for a
  // direct ARCH path Y.
  const GarchParams params{0.1, 0.3, 0.0};
  const auto x_path = simulate_modified_arch_path(params, 100000, 21);
  const auto y_path = oracles::garch_path(0.1, 0.3, 0.0, 100000, 22);
  std::vector<double> ref(y_path.size());
  for (std::size_t i = 0; i < y_path.size(); ++i)
    ref[i] = std::sqrt(0.3) * std::fabs(y_path[i]);
  const auto ks = stats::ks_two_sample(x_path, ref);
  CHECK(ks.statistic < 0.01);
}

TEST_CASE("arch conditional CDF basics") {
  const GarchParams indep{0.09, 0.0, 0.0};
  const TabulatedCdf psi0 = build_psi(indep, 500000, 2);
  for (double u : {0.1, 0.5, 0.9})
    CHECK(arch_ccdf(indep, psi0, u, 0.33) == doctest::Approx(u).epsilon(0.01));

  const GarchParams params{0.1, 0.5, 0.0};
  const TabulatedCdf psi = build_psi(params, 1000000, 4);
  // Dependence enters through the squared lag: symmetric in v around 0.5.
  for (double u : {0.2, 0.6})
    for (double v : {0.1, 0.35})
      CHECK(arch_ccdf(params, psi, u, v) ==
            doctest::Approx(arch_ccdf(params, psi, u, 1.0 - v)).epsilon(0.02));
  // v = 0.5 conditions on Psi^{-1}(0.5) = 0.
  for (double u : {0.25, 0.75})
    CHECK(arch_ccdf(params, psi, u, 0.5) ==
          doctest::Approx(special::norm_cdf(psi.quantile(u) / std::sqrt(0.1)))
              .epsilon(1e-6));
  // Monotone in u, endpoints pinned.
  double prev = 0.0;
  for (double u = 0.02; u < 1.0; u += 0.02) {
    const double c = arch_ccdf(params, psi, u, 0.3);
    CHECK(c >= prev);
    prev = c;
  }
  // Uniform-margin identity via quadrature over v.
  for (double u : {0.3, 0.7}) {
    const double mass = quad::integrate(
        [&](double v) { return arch_ccdf(params, psi, u, v); }, 0.0, 1.0, 128);
    CHECK(mass == doctest::Approx(u).epsilon(2e-3));
  }
  // Roundtrip through the quantile.
  for (double p : {0.1, 0.5, 0.9})
    for (double v : {0.2, 0.7})
      CHECK(arch_ccdf(params, psi, arch_cquantile(params, psi, p, v), v) ==
            doctest::Approx(p).epsilon(1e-3));
}

TEST_CASE("garch copula pair round trips") {
  const GarchParams params{0.1, 0.1, 0.8};
  const TabulatedCdf psi = build_psi(params, 1000000, 31);
  const TabulatedCdf gamma = build_gamma(params, 1000000, 32);
  const GarchCopulaPair pair = garch_copula_pair(params, psi, gamma);
  for (double p : {0.05, 0.3, 0.5, 0.8, 0.97})
    for (double v : {0.15, 0.5, 0.85}) {
      CHECK(pair.mag_ccdf(pair.mag_cquantile(p, v), v) ==
            doctest::Approx(p).epsilon(2e-3));
      CHECK(pair.ar_ccdf(pair.ar_cquantile(p, v), v) ==
            doctest::Approx(p).epsilon(5e-3));
    }
  // Conditional CDFs span (0,1) in u.
  CHECK(pair.ar_ccdf(0.001, 0.5) < 0.02);
  CHECK(pair.ar_ccdf(0.999, 0.5) > 0.98);
  CHECK(pair.mag_ccdf(0.001, 0.5) < 0.02);
  CHECK(pair.mag_ccdf(0.999, 0.5) > 0.98);
}

TEST_CASE("stationarity checker against a Monte-Carlo Lyapunov estimate") {
  // The checker integrates E[log(alpha1 z^2 + beta1)] by quadrature;
  // the oracle estimates the same drift from raw draws and compares
  // signs wherever the estimate is resolved.
  Rng rng(17);
  for (double a1 : {0.05, 0.3, 0.6, 0.9, 1.2}) {
    for (double b1 : {0.0, 0.3, 0.6, 0.9}) {
      const GarchParams params{0.1, a1, b1};
      // Pure ARCH uses the second-order condition E[a1 z^2] < 1; the
      // GARCH branch uses the log drift.
      const std::size_t n = 200000;
      double sum = 0.0, sq = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double z = rng.normal();
        const double v = (b1 == 0.0) ? a1 * z * z - 1.0 : std::log(a1 * z * z + b1);
        sum += v;
        sq += v * v;
      }
      const double mean = sum / n;
      const double se = std::sqrt((sq / n - mean * mean) / n);
      if (std::fabs(mean) < 3.0 * se) continue;  // boundary point, unresolved
      CHECK(params.is_stationary() == (mean < 0.0));
    }
  }
}

TEST_CASE("coupled simulation reproduces GARCH(1,1) squared dynamics") {
  const GarchParams params{0.1, 0.1, 0.8};
  const std::size_t n = 100000;
  const TabulatedCdf psi = build_psi(params, 1000000, 41);
  const TabulatedCdf gamma = build_gamma(params, 1000000, 42);
  const auto u = simulate_garch_coarma(params, psi, gamma, n, 43);
  CHECK(stats::ks_uniform(u).p_value > 0.001);
  std::vector<double> y(n), y2(n);
  for (std::size_t t = 0; t < n; ++t) {
    y[t] = psi.quantile(u[t]);
    y2[t] = y[t] * y[t];
  }
  const auto ref = oracles::garch_path(0.1, 0.1, 0.8, n, 44);
  std::vector<double> ref2(n);
  for (std::size_t t = 0; t < n; ++t) ref2[t] = ref[t] * ref[t];
  const auto ks = stats::ks_two_sample(y, ref);
  CHECK(ks.statistic < 0.01);
  // Squared-process lag-1 autocorrelation within block-based 3 SE.
  const auto block_acf = [](const std::vector<double>& v, int lag) {
    const std::size_t blocks = 16, len = v.size() / blocks;
    std::vector<double> vals;
    for (std::size_t b = 0; b < blocks; ++b) {
      std::span<const double> w(v.data() + b * len, len);
      vals.push_back(stats::autocorr(w, lag));
    }
    oracles::RepStats out;
    for (double x : vals) out.mean += x;
    out.mean /= blocks;
    double s = 0.0;
    for (double x : vals) s += (x - out.mean) * (x - out.mean);
    out.se = std::sqrt(s / (blocks * (blocks - 1.0)));
    return out;
  };
  const auto a = block_acf(y2, 1);
  const auto b = block_acf(ref2, 1);
  CHECK(std::fabs(a.mean - b.mean) < 3.0 * std::sqrt(a.se * a.se + b.se * b.se));
}

TEST_CASE("parameter validation") {
  const GarchParams negative{-0.1, 0.1, 0.0};
  CHECK_THROWS_AS(negative.validate(), domain_error);
  CHECK_THROWS_AS(simulate_garch_path(GarchParams{0.1, 1.5, 0.0}, 100, 1), domain_error);
  const GarchParams good{0.1, 0.1, 0.8};
  const TabulatedCdf psi = build_psi(good, 100000, 1);
  const TabulatedCdf gamma = build_gamma(good, 100000, 2);
  CHECK_THROWS_AS(garch_copula_pair(GarchParams{0.1, 0.0, 0.8}, psi, gamma),
                  domain_error);
}

}  // TEST_SUITE
