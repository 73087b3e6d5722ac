#include <doctest.h>

#include <cmath>
#include <vector>

#include "coarma/errors.hpp"
#include "coarma/estimation.hpp"
#include "coarma/rng.hpp"
#include "coarma/stats.hpp"
#include "support/oracles.hpp"

using namespace coarma;

namespace {

CoarmaSpec mag1_gaussian(double b) {
  return CoarmaSpec(VineSpec(VineKind::StationaryDVine, {}),
                    VineSpec(VineKind::MagDVine, {CopulaSpec(Family::Gaussian, {b})}));
}

CoarmaSpec coarma11_gaussian(double a, double b) {
  return CoarmaSpec(VineSpec(VineKind::StationaryDVine, {CopulaSpec(Family::Gaussian, {a})}),
                    VineSpec(VineKind::MagDVine, {CopulaSpec(Family::Gaussian, {b})}));
}

}  // namespace

TEST_SUITE("estimation") {

TEST_CASE("default bounds enforce the MAG ergodicity cap") {
  const CopulaSpec g(Family::Gaussian, {0.2});
  const ParamBounds mag_b = default_bounds(g, 0, true, false);
  CHECK(mag_b.hi == doctest::Approx(1.0 / std::sqrt(2.0) - 1e-6));
  const ParamBounds ar_b = default_bounds(g, 0, false, false);
  CHECK(ar_b.hi > 0.99);
  const ParamBounds gum = default_bounds(CopulaSpec(Family::Gumbel, {1.5}), 0, true, false);
  CHECK(gum.hi < 2.0);
  const ParamBounds gum_relaxed =
      default_bounds(CopulaSpec(Family::Gumbel, {1.5}), 0, true, true);
  CHECK(gum_relaxed.hi > 10.0);
}

TEST_CASE("MAG(1) fit recovers the true parameter at alpha = 0.5") {
  const auto u = simulate(mag1_gaussian(0.5), 5000, 101);
  FitConfig cfg = make_fit_config(mag1_gaussian(0.5), {{true, 0, 0}}, 7);
  const FitResult res = fit(cfg, u);
  CHECK(res.converged);
  CHECK(res.estimates[0] > 0.45);
  CHECK(res.estimates[0] < 0.55);
  // In-sample optimality against the truth.
  CHECK(res.nll <= neg_log_likelihood(mag1_gaussian(0.5), u).value + 1e-9);
}

TEST_CASE("MAG(1) fit lands on the reciprocal above the critical value") {
  const auto u = simulate(mag1_gaussian(0.875), 5000, 55);
  FitConfig cfg = make_fit_config(mag1_gaussian(0.3), {{true, 0, 0}}, 7);
  const FitResult res = fit(cfg, u);
  CHECK(res.estimates[0] > 0.43);
  CHECK(res.estimates[0] < 0.53);  // reciprocal is 0.4841
}

TEST_CASE("CoARMA(1,1) joint fit") {
  const auto u = simulate(coarma11_gaussian(0.5, 0.25), 10000, 77);
  FitConfig cfg =
      make_fit_config(coarma11_gaussian(0.2, 0.2), {{false, 0, 0}, {true, 0, 0}}, 3);
  const FitResult res = fit(cfg, u);
  CHECK(std::fabs(res.estimates[0] - 0.5) < 0.07);
  CHECK(std::fabs(res.estimates[1] - 0.25) < 0.07);
}

TEST_CASE("optimizer argmin matches a dense grid argmin") {
  const auto u = simulate(mag1_gaussian(0.4), 4000, 13);
  const FreeParam fp{true, 0, 0};
  std::vector<double> grid;
  for (double b = 0.01; b < 0.705; b += 0.01) grid.push_back(b);
  const auto scan = nll_scan(mag1_gaussian(0.3), fp, u, grid);
  double best_param = scan[0].parameter, best_nll = scan[0].nll;
  for (const auto& pt : scan)
    if (pt.nll < best_nll) {
      best_nll = pt.nll;
      best_param = pt.parameter;
    }
  FitConfig cfg = make_fit_config(mag1_gaussian(0.3), {fp}, 5);
  const FitResult res = fit(cfg, u);
  CHECK(std::fabs(res.estimates[0] - best_param) < 0.011);
}

TEST_CASE("independence data: flat profile near the independence corner") {
  Rng rng(3);
  std::vector<double> u(4000);
  for (auto& v : u) v = rng.uniform();
  const FreeParam fp{true, 0, 0};
  const auto scan =
      nll_scan(mag1_gaussian(0.2), fp, u, std::vector<double>{0.02, 0.1, 0.3, 0.5, 0.68});
  double best_param = scan[0].parameter, best_nll = scan[0].nll;
  for (const auto& pt : scan)
    if (pt.nll < best_nll) {
      best_nll = pt.nll;
      best_param = pt.parameter;
    }
  CHECK(best_param <= 0.1);
}

TEST_CASE("Monte-Carlo consistency over replications") {
  std::vector<double> estimates;
  for (int rep = 0; rep < 12; ++rep) {
    const auto u = simulate(mag1_gaussian(0.5), 5000, 9000 + rep);
    FitConfig cfg = make_fit_config(mag1_gaussian(0.3), {{true, 0, 0}}, rep);
    cfg.restarts = 3;
    estimates.push_back(fit(cfg, u).estimates[0]);
  }
  CHECK(std::fabs(stats::mean(estimates) - 0.5) < 0.02);
  CHECK(std::sqrt(stats::variance(estimates)) < 0.05);
}

TEST_CASE("residual diagnostics flag the non-ergodic filtering regime") {
  const auto u = simulate(mag1_gaussian(0.875), 5000, 21);
  const ResidualReport bad = residual_diagnostics(mag1_gaussian(0.875), u);
  CHECK(bad.oscillation_flag);

  const double rec = 0.4841229182759271;
  const ResidualReport good = residual_diagnostics(mag1_gaussian(rec), u);
  CHECK_FALSE(good.oscillation_flag);
  CHECK(good.ks_pvalue > 0.01);

  const auto u2 = simulate(mag1_gaussian(0.4), 5000, 22);
  const ResidualReport true_model = residual_diagnostics(mag1_gaussian(0.4), u2);
  CHECK_FALSE(true_model.oscillation_flag);
  CHECK(true_model.ks_pvalue > 0.01);
}

TEST_CASE("fit input validation") {
  FitConfig cfg = make_fit_config(mag1_gaussian(0.3), {{true, 0, 0}}, 1);
  CHECK_THROWS_AS(fit(cfg, std::vector<double>{0.5, 0.4, 0.6}), shape_error);
}

}  // TEST_SUITE
