#pragma once

#include <string>
#include <vector>

namespace coarma {

enum class Family {
  Independence,
  Comonotone,
  Gaussian,
  StudentT,
  Clayton,
  Gumbel,
  Frank,
  Frechet,
};

enum class Rotation { None, R180 };

/// Default clamp applied to unit-interval inputs before conditional
/// evaluations; recursions can push values onto the boundary.
inline constexpr double kDefaultClampEps = 1e-12;

/// Clamp u into [eps, 1-eps].
double clamp_unit(double u, double eps = kDefaultClampEps);

/// A bivariate pair copula: family, optional 180-degree rotation, and
/// its parameter vector.  All families here are exchangeable in (u, v).
struct CopulaSpec {
  Family family = Family::Independence;
  Rotation rotation = Rotation::None;
  std::vector<double> params;

  CopulaSpec() = default;
  CopulaSpec(Family f, std::vector<double> p, Rotation rot = Rotation::None)
      : family(f), rotation(rot), params(std::move(p)) {}

  /// Throws domain_error when parameters violate the family's range.
  void validate() const;

  /// True for families with a singular component (no density).
  bool is_singular() const {
    return family == Family::Comonotone || family == Family::Frechet;
  }

  std::size_t n_params() const { return params.size(); }

  /// Serialized token, e.g. "gaussian:0.5", "gumbel180:2", "t:0.5,4".
  std::string token() const;
  static CopulaSpec from_token(const std::string& tok);
};

/// C(u, v).
double cdf(const CopulaSpec& c, double u, double v);

/// Conditional CDF h(u | v) = dC(u,v)/dv.  v is clamped to
/// [eps, 1-eps]; families with atoms follow their almost-everywhere
/// forms.
double hfunc(const CopulaSpec& c, double u, double v, double eps = kDefaultClampEps);

/// Conditional quantile: inverse of hfunc in u.
double hinv(const CopulaSpec& c, double p, double v, double eps = kDefaultClampEps);

/// Copula density; throws unsupported_error for singular families.
double pdf(const CopulaSpec& c, double u, double v);

/// log density.
double log_pdf(const CopulaSpec& c, double u, double v);

/// Kendall's tau implied by the parameters (dependence parameter for t).
double param_to_tau(Family family, const std::vector<double>& params);

/// Inverse map; for StudentT returns the correlation only.
double tau_to_param(Family family, double tau);

enum class ReciprocalRule {
  Quadratic,   // rho -> sqrt(1 - rho^2)
  LiteralSqrt  // rho -> sqrt(1 - rho), kept for comparison runs
};

/// Parameter of the distributionally equivalent reversed-order MAG(1)
/// representation.  Exact for Gaussian; for Gumbel the tau-matched
/// Gaussian chain, which is approximate.
std::vector<double> reciprocal_param(Family family, const std::vector<double>& params,
                                     ReciprocalRule rule = ReciprocalRule::Quadratic);

std::string family_name(Family f);

}  // namespace coarma
