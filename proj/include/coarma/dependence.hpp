#pragma once

#include <cstdint>
#include <vector>

#include "coarma/process.hpp"

namespace coarma {

/// Node counts per integration dimension for the joint-CDF quadrature.
struct QuadOptions {
  int nodes_dim1 = 64;
  int nodes_dim2 = 64;
  int nodes_dim3 = 32;
  int nodes_dim4 = 24;
  int spearman_nodes = 24;  // outer tensor grid for the rho integral
};

/// Joint CDF of consecutive observations F(x1, x2) by Gauss-Legendre
/// quadrature of the order-specific integral representation.  Supported
/// orders: (0,1), (1,1), (1,2), (2,1), (2,2).  Indicator factors are
/// absorbed into variable integration limits; atoms of the MAG pair
/// split the panels at the discontinuity.
double joint_cdf(const CoarmaSpec& spec, double x1, double x2,
                 const QuadOptions& opts = {});

/// Monte-Carlo estimate of the same probability from simulated pairs
/// (thinned so consecutive draws are effectively independent).  The
/// arbitration oracle for the quadrature.
double joint_cdf_mc(const CoarmaSpec& spec, double x1, double x2, std::size_t n_pairs,
                    std::uint64_t seed, int thin = 25);

/// Spearman's rho of consecutive observations: 12 * double integral of
/// the joint CDF minus 3.
double spearman_rho(const CoarmaSpec& spec, const QuadOptions& opts = {});

enum class TailOrderConvention {
  Survival,      // upper order from the survival function
  LiteralPaper,  // log F(1-u,1-u) / log u, kept for comparison
};

struct DepMeasures {
  double spearman_rho = 0.0;
  double lower_tdc = 0.0;
  double upper_tdc = 0.0;
  double lower_order = 0.0;
  double upper_order = 0.0;
};

/// Finite-level tail dependence coefficients and orders at level u
/// (the 5% approximations of the paper for u = 0.05).
DepMeasures tail_measures(const CoarmaSpec& spec, double u = 0.05,
                          TailOrderConvention convention = TailOrderConvention::Survival,
                          const QuadOptions& opts = {});

/// Closed-form joint CDF of consecutive observations for the
/// Frechet-mixture MAG(1) process.
double frechet_mag1_joint(double alpha, double x1, double x2);

struct DepScanRow {
  double parameter = 0.0;
  double rho_quad = 0.0;
  double rho_sim = 0.0;
  double rho_sim_se = 0.0;
  double tdc_lower = 0.0;
  double tdc_upper = 0.0;
  double order_lower = 0.0;
  double order_upper = 0.0;
};

/// Sweep of a MAG(1) family parameter: quadrature measures plus
/// simulated Spearman's rho with a replicate-based standard error.
std::vector<DepScanRow> scan_mag1(Family family, const std::vector<double>& grid,
                                  double u, std::size_t sim_n, int sim_reps,
                                  std::uint64_t seed, const QuadOptions& opts = {});

/// (1,1) sweep over the AR parameter with the MAG pair fixed;
/// simulation-based rho (quadrature where supported).
std::vector<DepScanRow> scan_coarma11(const CopulaSpec& ar_template,
                                      const std::vector<double>& ar_grid,
                                      const CopulaSpec& mag_pair, std::size_t sim_n,
                                      int sim_reps, std::uint64_t seed,
                                      bool with_quadrature = false,
                                      const QuadOptions& opts = {});

}  // namespace coarma
