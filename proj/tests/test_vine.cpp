#include <doctest.h>

#include <cmath>
#include <vector>

#include "coarma/errors.hpp"
#include "coarma/gaussian_equiv.hpp"
#include "coarma/rng.hpp"
#include "coarma/special.hpp"
#include "coarma/stats.hpp"
#include "coarma/vine.hpp"
#include "support/oracles.hpp"

using namespace coarma;

namespace {

VineSpec gaussian_ar(std::vector<double> params) {
  std::vector<CopulaSpec> pairs;
  for (double a : params) pairs.emplace_back(Family::Gaussian, std::vector<double>{a});
  return VineSpec(VineKind::StationaryDVine, pairs);
}

VineSpec gaussian_mag(std::vector<double> params) {
  std::vector<CopulaSpec> pairs;
  for (double b : params) pairs.emplace_back(Family::Gaussian, std::vector<double>{b});
  return VineSpec(VineKind::MagDVine, pairs);
}

}  // namespace

TEST_SUITE("vine") {

TEST_CASE("order-1 vines reduce to the pair copula") {
  const CopulaSpec pair(Family::Gumbel, {2.0});
  const VineSpec ar(VineKind::StationaryDVine, {pair});
  const VineSpec mag(VineKind::MagDVine, {pair});
  const std::vector<double> hist{0.42};
  CHECK(ar_cond_cdf(ar, 0.7, hist) == doctest::Approx(hfunc(pair, 0.7, 0.42)));
  CHECK(ar_cond_quantile(ar, 0.7, hist) == doctest::Approx(hinv(pair, 0.7, 0.42)));
  CHECK(mag_backward(mag, 0.7, hist) == doctest::Approx(hfunc(pair, 0.7, 0.42)));
  CHECK(mag_forward(mag, 0.7, hist) == doctest::Approx(hinv(pair, 0.7, 0.42)));
}

TEST_CASE("Gaussian AR(2) conditional matches the closed form") {
  const VineSpec ar = gaussian_ar({0.5, 0.3});
  const auto q = [](double x) { return special::norm_quantile(x); };
  const double sig = std::sqrt(0.75 * 0.91);
  for (double x : {0.2, 0.5, 0.9})
    for (double h1 : {0.3, 0.7})
      for (double h2 : {0.25, 0.85}) {
        const std::vector<double> hist{h1, h2};
        const double want =
            special::norm_cdf((q(x) - 0.35 * q(h1) - 0.3 * q(h2)) / sig);
        CHECK(ar_cond_cdf(ar, x, hist) == doctest::Approx(want).epsilon(1e-12));
      }
}

TEST_CASE("AR conditional CDF against a simulation rank oracle") {
  // P(W_t <= x | history in a small bin) estimated from simulated triples.
  const VineSpec ar = gaussian_ar({0.5, 0.3});
  Rng rng(99);
  const std::size_t n = 1000000;
  double w2 = 0.5, w1 = 0.5;
  std::size_t in_bin = 0, below = 0;
  const double c1 = 0.6, c2 = 0.4, half = 0.05, x = 0.55;
  std::vector<double> hist(2);
  for (std::size_t t = 0; t < n; ++t) {
    hist[0] = w1;
    hist[1] = w2;
    const double w0 = ar_cond_quantile(ar, rng.uniform(), hist);
    if (std::fabs(w1 - c1) < half && std::fabs(w2 - c2) < half) {
      ++in_bin;
      if (w0 <= x) ++below;
    }
    w2 = w1;
    w1 = w0;
  }
  REQUIRE(in_bin > 3000);
  const std::vector<double> center{c1, c2};
  const double expect = ar_cond_cdf(ar, x, center);
  CHECK(static_cast<double>(below) / in_bin == doctest::Approx(expect).epsilon(0.03));
}

TEST_CASE("AR conditional quantile round trip and symmetry point") {
  const VineSpec ar = gaussian_ar({0.5, 0.3});
  const std::vector<double> sym{0.5, 0.5};
  CHECK(ar_cond_quantile(ar, 0.5, sym) == doctest::Approx(0.5).epsilon(1e-12));
  for (double e : {0.1, 0.45, 0.95})
    for (double h1 : {0.2, 0.7})
      for (double h2 : {0.35, 0.9}) {
        const std::vector<double> hist{h1, h2};
        const double x = ar_cond_quantile(ar, e, hist);
        CHECK(ar_cond_cdf(ar, x, hist) == doctest::Approx(e).epsilon(1e-9));
      }
  // Non-Gaussian pairs too.
  const VineSpec mixed(VineKind::StationaryDVine,
                       {CopulaSpec(Family::Gumbel, {1.8}), CopulaSpec(Family::Clayton, {1.2})});
  for (double e : {0.2, 0.6})
    for (double h1 : {0.3, 0.8}) {
      const std::vector<double> hist{h1, 0.45};
      CHECK(ar_cond_cdf(mixed, ar_cond_quantile(mixed, e, hist), hist) ==
            doctest::Approx(e).epsilon(1e-8));
    }
}

TEST_CASE("MAG forward reductions") {
  // All-independence: passes the innovation through.
  const VineSpec indep(VineKind::MagDVine, {CopulaSpec(Family::Independence, {}),
                                            CopulaSpec(Family::Independence, {})});
  CHECK(mag_forward(indep, 0.31, std::vector<double>{0.9, 0.2}) == doctest::Approx(0.31));
  // q=1 comonotone: emits the lagged state.
  const VineSpec como(VineKind::MagDVine, {CopulaSpec(Family::Comonotone, {})});
  CHECK(mag_forward(como, 0.77, std::vector<double>{0.123}) == doctest::Approx(0.123));
}

TEST_CASE("Gaussian MAG(2) forward is the exact linear representation") {
  const double b1 = 0.5, b2 = 0.3;
  const VineSpec mag = gaussian_mag({b1, b2});
  const auto theta = mag_theta(std::vector<double>{b1, b2});
  const double sb = sigma_prod(std::vector<double>{b1, b2});
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const double e0 = rng.uniform(), e1 = rng.uniform(), e2 = rng.uniform();
    const double u = mag_forward(mag, e0, std::vector<double>{e1, e2});
    const auto q = [](double x) { return special::norm_quantile(x); };
    const double want = sb * q(e0) + theta[0] * sb * q(e1) + theta[1] * sb * q(e2);
    CHECK(special::norm_quantile(u) == doctest::Approx(want).epsilon(1e-8));
  }
}

TEST_CASE("MAG backward inverts forward") {
  const VineSpec mag(VineKind::MagDVine, {CopulaSpec(Family::Gumbel, {1.6}),
                                          CopulaSpec(Family::Gaussian, {0.4})});
  for (double e : {0.05, 0.4, 0.93})
    for (double c1 : {0.2, 0.7}) {
      const std::vector<double> cond{c1, 0.55};
      const double u = mag_forward(mag, e, cond);
      CHECK(mag_backward(mag, u, cond) == doctest::Approx(e).epsilon(1e-9));
    }
  const VineSpec g1 = gaussian_mag({0.35});
  CHECK(mag_backward(g1, 0.6, std::vector<double>{0.3}) ==
        doctest::Approx(hfunc(CopulaSpec(Family::Gaussian, {0.35}), 0.6, 0.3)));
}

TEST_CASE("vine densities") {
  const VineSpec indep(VineKind::MagDVine, {CopulaSpec(Family::Independence, {}),
                                            CopulaSpec(Family::Independence, {})});
  CHECK(vine_density(indep, std::vector<double>{0.3, 0.6, 0.9}) == doctest::Approx(1.0));
  const VineSpec g1 = gaussian_mag({0.45});
  CHECK(vine_density(g1, std::vector<double>{0.25, 0.7}) ==
        doctest::Approx(pdf(CopulaSpec(Family::Gaussian, {0.45}), 0.7, 0.25)));
  // Monte-Carlo mass check for a 3-dimensional MAG vine and AR vine.
  const VineSpec mag = gaussian_mag({0.5, 0.3});
  const VineSpec ar(VineKind::StationaryDVine, {CopulaSpec(Family::Gumbel, {1.7}),
                                                CopulaSpec(Family::Gaussian, {0.3})});
  Rng rng(11);
  double mass_mag = 0.0, mass_ar = 0.0;
  const std::size_t n = 1000000;
  std::vector<double> pt(3);
  for (std::size_t i = 0; i < n; ++i) {
    pt[0] = rng.uniform();
    pt[1] = rng.uniform();
    pt[2] = rng.uniform();
    mass_mag += vine_density(mag, pt);
    mass_ar += vine_density(ar, pt);
  }
  CHECK(mass_mag / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK(mass_ar / n == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(vine_density(VineSpec(VineKind::MagDVine,
                                        {CopulaSpec(Family::Comonotone, {})}),
                               std::vector<double>{0.5, 0.5}),
                  unsupported_error);
}

TEST_CASE("rosenblatt transforms") {
  const VineSpec indep(VineKind::StationaryDVine, {CopulaSpec(Family::Independence, {}),
                                                   CopulaSpec(Family::Independence, {})});
  const std::vector<double> pt{0.2, 0.5, 0.8};
  CHECK(rosenblatt(indep, pt) == pt);
  CHECK(inverse_rosenblatt(indep, pt) == pt);

  const VineSpec ar = gaussian_ar({0.5, 0.3});
  const VineSpec mag(VineKind::MagDVine, {CopulaSpec(Family::Clayton, {1.4}),
                                          CopulaSpec(Family::Gaussian, {0.35})});
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    std::vector<double> x{rng.uniform(), rng.uniform(), rng.uniform()};
    for (const VineSpec* v : {&ar, &mag}) {
      const auto u = rosenblatt(*v, x);
      const auto back = inverse_rosenblatt(*v, u);
      for (int k = 0; k < 3; ++k) CHECK(back[k] == doctest::Approx(x[k]).epsilon(1e-8));
    }
    // Last coordinate parity with the named conditionals.
    const std::vector<double> hist{x[1], x[0]};
    CHECK(rosenblatt(ar, x)[2] == doctest::Approx(ar_cond_cdf(ar, x[2], hist)));
    CHECK(rosenblatt(mag, x)[2] == doctest::Approx(mag_backward(mag, x[2], hist)));
  }
}

TEST_CASE("uniform output of mag_forward under i.i.d. inputs") {
  const VineSpec mag(VineKind::MagDVine, {CopulaSpec(Family::Gumbel, {1.8}),
                                          CopulaSpec(Family::Gaussian, {0.5})});
  Rng rng(3);
  const std::size_t n = 100000;
  std::vector<double> u(n);
  double e1 = rng.uniform(), e2 = rng.uniform();
  for (auto& v : u) {
    const double e0 = rng.uniform();
    v = mag_forward(mag, e0, std::vector<double>{e1, e2});
    e2 = e1;
    e1 = e0;
  }
  const auto ks = stats::ks_uniform(u);
  CHECK(std::sqrt(static_cast<double>(n)) * ks.statistic < 1.94947);  // 0.1% level
}

TEST_CASE("latent AR lag-1 dependence matches the pair copula") {
  const CopulaSpec pair(Family::Gumbel, {1.7});
  const VineSpec ar(VineKind::StationaryDVine, {pair});
  const double tau_target = param_to_tau(Family::Gumbel, pair.params);
  const auto stat = [&](std::uint64_t seed) {
    Rng rng(seed);
    const std::size_t n = 10000;
    std::vector<double> w(n + 500);
    w[0] = 0.5;
    std::vector<double> hist(1);
    for (std::size_t t = 1; t < w.size(); ++t) {
      hist[0] = w[t - 1];
      w[t] = ar_cond_quantile(ar, rng.uniform(), hist);
    }
    std::vector<double> cur(w.begin() + 501, w.end());
    std::vector<double> lag(w.begin() + 500, w.end() - 1);
    return stats::kendall_tau(cur, lag);
  };
  const auto rep = oracles::replicate(stat, 10, 1234);
  CHECK(std::fabs(rep.mean - tau_target) < 3.0 * rep.se);
}

TEST_CASE("Algorithm-style placeholder parity for the conditional routes") {
  // Direct conditionals against the rosenblatt/inverse-rosenblatt idiom
  // with a dummy last coordinate.
  const VineSpec ar = gaussian_ar({0.5, 0.3});
  const VineSpec mag(VineKind::MagDVine, {CopulaSpec(Family::Gaussian, {0.4}),
                                          CopulaSpec(Family::Gumbel, {1.5})});
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    const double w1 = rng.uniform(), w2 = rng.uniform(), e = rng.uniform();
    // AR route: uniformize the history with a placeholder, then invert
    // with the innovation in the last slot.
    const auto wdag = rosenblatt(ar, std::vector<double>{w2, w1, 0.5});
    const auto winv = inverse_rosenblatt(ar, std::vector<double>{wdag[0], wdag[1], e});
    const std::vector<double> hist{w1, w2};
    CHECK(winv[2] == doctest::Approx(ar_cond_quantile(ar, e, hist)).epsilon(1e-10));
    // MAG route: conditioning coordinates pass through untouched, the
    // last rosenblatt coordinate recovers the innovation.
    const double x = rng.uniform();
    const auto edag = inverse_rosenblatt(mag, std::vector<double>{w2, w1, 0.5});
    CHECK(edag[0] == doctest::Approx(w2));
    CHECK(edag[1] == doctest::Approx(w1));
    const auto et = rosenblatt(mag, std::vector<double>{edag[0], edag[1], x});
    CHECK(et[2] == doctest::Approx(mag_backward(mag, x, hist)).epsilon(1e-10));
  }
}

TEST_CASE("shape errors") {
  const VineSpec ar = gaussian_ar({0.5, 0.3});
  CHECK_THROWS_AS(ar_cond_cdf(ar, 0.5, std::vector<double>{0.5}), shape_error);
  CHECK_THROWS_AS(rosenblatt(ar, std::vector<double>{0.5, 0.5}), shape_error);
  const VineSpec mag = gaussian_mag({0.4});
  CHECK_THROWS_AS(mag_forward(mag, 0.5, std::vector<double>{0.5, 0.5}), shape_error);
}

TEST_CASE("vine token round trip") {
  for (const char* tok :
       {"ar:(gaussian:0.5,gumbel:2)", "mag:(gaussian:0.25)", "ar:()",
        "mag:(t:0.5,4,clayton180:1.5)"}) {
    CHECK(VineSpec::from_token(tok).token() == tok);
  }
  CHECK_THROWS_AS(VineSpec::from_token("dvine:(gaussian:0.5)"), parse_error);
}

}  // TEST_SUITE
