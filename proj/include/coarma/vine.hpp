#pragma once

#include <span>
#include <string>
#include <vector>

#include "coarma/copula.hpp"

namespace coarma {

enum class VineKind {
  /// D-vine on (X_t, ..., X_{t-p}) with one pair copula per tree level
  /// (translational invariance); the lag-j pair sits in tree j.
  StationaryDVine,
  /// (q+1)-dimensional D-vine of (U_t, e_{t-1}, ..., e_{t-q+1}, W_{t-q})
  /// whose conditioning margins are mutually independent; only the
  /// pairs involving the first variable are non-trivial.
  MagDVine,
};

struct VineSpec {
  VineKind kind = VineKind::StationaryDVine;
  std::vector<CopulaSpec> pair_copulas;  // [j-1] is the lag-j copula

  VineSpec() = default;
  VineSpec(VineKind k, std::vector<CopulaSpec> pairs)
      : kind(k), pair_copulas(std::move(pairs)) {}

  int order() const { return static_cast<int>(pair_copulas.size()); }
  void validate() const;
  bool has_singular_pair() const;

  /// e.g. "ar:(gaussian:0.5,gumbel:2)" / "mag:(gaussian:0.25)".
  std::string token() const;
  static VineSpec from_token(const std::string& tok);
};

// Point vectors below are in temporal order, oldest first; `history`
// and `cond` arguments are most-recent-first as used by the process
// recursions.

/// C_{(p+1)|p..1}(x | history), history = (X_{t-1}, ..., X_{t-p}).
double ar_cond_cdf(const VineSpec& v, double x, std::span<const double> history,
                   double eps = kDefaultClampEps);

/// Inverse of ar_cond_cdf in x.
double ar_cond_quantile(const VineSpec& v, double e, std::span<const double> history,
                        double eps = kDefaultClampEps);

/// Conditional density of the newest variable given the history,
/// i.e. the product of pair densities on the edges involving it.
double ar_cond_density(const VineSpec& v, double x, std::span<const double> history,
                       double eps = kDefaultClampEps);

/// U_t from innovation e_t and cond = (e_{t-1}, ..., e_{t-q+1}, W_{t-q}).
double mag_forward(const VineSpec& v, double e_t, std::span<const double> cond,
                   double eps = kDefaultClampEps);

/// Recovers the innovation: K_{(q+1)|q..1}(u_t | cond).
double mag_backward(const VineSpec& v, double u_t, std::span<const double> cond,
                    double eps = kDefaultClampEps);

/// Joint vine density at a (order+1)-dimensional point (oldest first).
double vine_density(const VineSpec& v, std::span<const double> point,
                    double eps = kDefaultClampEps);

/// Rosenblatt transform of a point (oldest first) to i.i.d. uniforms;
/// the last coordinate is the conditional CDF of the newest variable.
std::vector<double> rosenblatt(const VineSpec& v, std::span<const double> point,
                               double eps = kDefaultClampEps);

/// Inverse Rosenblatt: i.i.d. uniforms to a draw from the vine.
std::vector<double> inverse_rosenblatt(const VineSpec& v, std::span<const double> uniforms,
                                       double eps = kDefaultClampEps);

}  // namespace coarma
