#include "coarma/copula.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarma/errors.hpp"
#include "coarma/quadrature.hpp"
#include "coarma/special.hpp"

namespace coarma {

using special::norm_cdf;
using special::norm_quantile;
using special::t_cdf;
using special::t_pdf;
using special::t_quantile;

double clamp_unit(double u, double eps) { return std::min(std::max(u, eps), 1.0 - eps); }

namespace {

bool radially_symmetric(Family f) {
  switch (f) {
    case Family::Clayton:
    case Family::Gumbel:
      return false;
    default:
      return true;
  }
}

Rotation effective_rotation(const CopulaSpec& c) {
  return radially_symmetric(c.family) ? Rotation::None : c.rotation;
}

// ---- Clayton ------------------------------------------------------------

// log(e^a + e^b - 1) with overflow-safe factoring; a, b >= 0.
double log_claysum(double a, double b) {
  const double m = std::max(a, b);
  if (m < 30.0) return std::log(std::exp(a) + std::exp(b) - 1.0);
  return m + std::log(std::exp(a - m) + std::exp(b - m) - std::exp(-m));
}

double clayton_cdf(double u, double v, double th) {
  const double a = -th * std::log(u);
  const double b = -th * std::log(v);
  return std::exp(-log_claysum(a, b) / th);
}

double clayton_h(double u, double v, double th) {
  const double a = -th * std::log(u);
  const double b = -th * std::log(v);
  const double ls = log_claysum(a, b);
  return std::exp(-(th + 1.0) * std::log(v) - (1.0 / th + 1.0) * ls);
}

double clayton_hinv(double p, double v, double th) {
  // u = [p^{-th/(th+1)} v^{-th} - v^{-th} + 1]^{-1/th}; the difference of
  // the two v^{-th}-scale terms goes through expm1 to avoid cancellation
  // as p -> 1.
  const double d = -th / (th + 1.0) * std::log(p);
  const double b = -th * std::log(v);
  const double core = std::expm1(d);  // >= 0
  // log(e^b * core + 1) without overflow.
  double ls;
  if (b > 30.0) ls = b + std::log(core + std::exp(-b));
  else ls = std::log1p(std::exp(b) * core);
  return std::exp(-ls / th);
}

double clayton_logpdf(double u, double v, double th) {
  const double a = -th * std::log(u);
  const double b = -th * std::log(v);
  const double ls = log_claysum(a, b);
  return std::log1p(th) - (th + 1.0) * (std::log(u) + std::log(v)) -
         (1.0 / th + 2.0) * ls;
}

// ---- Gumbel -------------------------------------------------------------

double gumbel_logcdf(double u, double v, double th) {
  const double lx = std::log(-std::log(u));
  const double ly = std::log(-std::log(v));
  const double m = std::max(lx, ly);
  const double ls = th * m + std::log(std::exp(th * (lx - m)) + std::exp(th * (ly - m)));
  return -std::exp(ls / th);
}

double gumbel_h(double u, double v, double th) {
  const double x = -std::log(u);
  const double y = -std::log(v);
  const double lx = std::log(x), ly = std::log(y);
  const double m = std::max(lx, ly);
  const double ls = th * m + std::log(std::exp(th * (lx - m)) + std::exp(th * (ly - m)));
  const double t = std::exp(ls / th);
  return std::exp(-t + (th - 1.0) * ly + (1.0 / th - 1.0) * ls + y);
}

double gumbel_logpdf(double u, double v, double th) {
  const double x = -std::log(u);
  const double y = -std::log(v);
  const double lx = std::log(x), ly = std::log(y);
  const double m = std::max(lx, ly);
  const double ls = th * m + std::log(std::exp(th * (lx - m)) + std::exp(th * (ly - m)));
  const double t = std::exp(ls / th);
  return -t + (th - 1.0) * (lx + ly) + (2.0 / th - 2.0) * ls +
         std::log1p((th - 1.0) / t) + x + y;
}

// ---- Frank --------------------------------------------------------------

double frank_cdf(double u, double v, double th) {
  const double gu = std::expm1(-th * u);
  const double gv = std::expm1(-th * v);
  const double g1 = std::expm1(-th);
  return -std::log1p(gu * gv / g1) / th;
}

double frank_h(double u, double v, double th) {
  const double gu = std::expm1(-th * u);
  const double gv = std::expm1(-th * v);
  const double g1 = std::expm1(-th);
  return std::exp(-th * v) * gu / (g1 + gu * gv);
}

double frank_hinv(double p, double v, double th) {
  const double gv = std::expm1(-th * v);
  const double g1 = std::expm1(-th);
  const double gu = p * g1 / (1.0 + gv * (1.0 - p));
  return -std::log1p(gu) / th;
}

// c(u,v) = -th*g1*exp(-th(u+v)) / (g1 + gu*gv)^2, positive for th != 0.
double frank_pdf(double u, double v, double th) {
  const double gu = std::expm1(-th * u);
  const double gv = std::expm1(-th * v);
  const double g1 = std::expm1(-th);
  const double denom = g1 + gu * gv;
  return -th * g1 * std::exp(-th * (u + v)) / (denom * denom);
}

// ---- Student t ----------------------------------------------------------

double t_h(double u, double v, double rho, double nu) {
  const double x = t_quantile(u, nu);
  const double y = t_quantile(v, nu);
  const double s = std::sqrt((nu + y * y) * (1.0 - rho * rho) / (nu + 1.0));
  return t_cdf((x - rho * y) / s, nu + 1.0);
}

double t_hinv(double p, double v, double rho, double nu) {
  const double y = t_quantile(v, nu);
  const double s = std::sqrt((nu + y * y) * (1.0 - rho * rho) / (nu + 1.0));
  return t_cdf(t_quantile(p, nu + 1.0) * s + rho * y, nu);
}

double t_logpdf(double u, double v, double rho, double nu) {
  const double x = t_quantile(u, nu);
  const double y = t_quantile(v, nu);
  const double det = 1.0 - rho * rho;
  const double q = (x * x - 2.0 * rho * x * y + y * y) / det;
  const double lc = special::lgamma_fn((nu + 2.0) / 2.0) + special::lgamma_fn(nu / 2.0) -
                    2.0 * special::lgamma_fn((nu + 1.0) / 2.0) - 0.5 * std::log(det);
  return lc - (nu + 2.0) / 2.0 * std::log1p(q / nu) +
         (nu + 1.0) / 2.0 * (std::log1p(x * x / nu) + std::log1p(y * y / nu));
}

// ---- dispatch without rotation -------------------------------------------

double base_cdf(const CopulaSpec& c, double u, double v) {
  switch (c.family) {
    case Family::Independence:
      return u * v;
    case Family::Comonotone:
      return std::min(u, v);
    case Family::Gaussian:
      return special::binorm_cdf(norm_quantile(u), norm_quantile(v), c.params[0]);
    case Family::StudentT: {
      // No closed form kept here; integrate the h-function over the
      // conditioning argument.
      const double ui = u;
      return quad::integrate(
          [&](double s) { return t_h(ui, s, c.params[0], c.params[1]); }, 0.0, v, 64);
    }
    case Family::Clayton:
      return clayton_cdf(u, v, c.params[0]);
    case Family::Gumbel:
      return std::exp(gumbel_logcdf(u, v, c.params[0]));
    case Family::Frank:
      return frank_cdf(u, v, c.params[0]);
    case Family::Frechet:
      return (1.0 - c.params[0]) * u * v + c.params[0] * std::min(u, v);
  }
  throw domain_error("cdf: unknown family");
}

double base_hfunc(const CopulaSpec& c, double u, double v) {
  switch (c.family) {
    case Family::Independence:
      return u;
    case Family::Comonotone:
      return v <= u ? 1.0 : 0.0;
    case Family::Gaussian: {
      const double rho = c.params[0];
      return norm_cdf((norm_quantile(u) - rho * norm_quantile(v)) /
                      std::sqrt(1.0 - rho * rho));
    }
    case Family::StudentT:
      return t_h(u, v, c.params[0], c.params[1]);
    case Family::Clayton:
      return clayton_h(u, v, c.params[0]);
    case Family::Gumbel:
      return gumbel_h(u, v, c.params[0]);
    case Family::Frank:
      return frank_h(u, v, c.params[0]);
    case Family::Frechet:
      return (1.0 - c.params[0]) * u + (v <= u ? c.params[0] : 0.0);
  }
  throw domain_error("hfunc: unknown family");
}

double generic_hinv_bisect(const CopulaSpec& c, double p, double v, double eps);

double base_hinv(const CopulaSpec& c, double p, double v, double eps) {
  switch (c.family) {
    case Family::Independence:
      return p;
    case Family::Comonotone:
      return v;  // conditional law degenerate at v
    case Family::Gaussian: {
      const double rho = c.params[0];
      return norm_cdf(std::sqrt(1.0 - rho * rho) * norm_quantile(p) +
                      rho * norm_quantile(v));
    }
    case Family::StudentT:
      return t_hinv(p, v, c.params[0], c.params[1]);
    case Family::Clayton:
      return clayton_hinv(p, v, c.params[0]);
    case Family::Gumbel:
      return generic_hinv_bisect(c, p, v, eps);
    case Family::Frank:
      return frank_hinv(p, v, c.params[0]);
    case Family::Frechet: {
      const double a = c.params[0];
      if (a >= 1.0 - 1e-14) return v;
      if (p <= (1.0 - a) * v) return p / (1.0 - a);
      if (p >= (1.0 - a) * v + a) return (p - a) / (1.0 - a);
      return v;
    }
  }
  throw domain_error("hinv: unknown family");
}

// 16-point bracketing scan followed by bisection; h is nondecreasing
// in u for all supported families.
double generic_hinv_bisect(const CopulaSpec& c, double p, double v, double eps) {
  double lo = eps, hi = 1.0 - eps;
  double flo = base_hfunc(c, lo, v);
  if (p <= flo) return lo;
  double prev = lo, fprev = flo;
  bool bracketed = false;
  for (int i = 1; i <= 16; ++i) {
    const double x = static_cast<double>(i) / 17.0;
    const double fx = base_hfunc(c, x, v);
    if (fx >= p) {
      lo = prev;
      hi = x;
      bracketed = true;
      break;
    }
    prev = x;
    fprev = fx;
  }
  (void)fprev;
  if (!bracketed) {
    lo = prev;
    hi = 1.0 - eps;
    if (base_hfunc(c, hi, v) < p) return hi;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (base_hfunc(c, mid, v) < p) lo = mid;
    else hi = mid;
    if (hi - lo < 1e-14) return 0.5 * (lo + hi);
  }
  return 0.5 * (lo + hi);
}

double base_logpdf(const CopulaSpec& c, double u, double v) {
  switch (c.family) {
    case Family::Independence:
      return 0.0;
    case Family::Gaussian: {
      const double rho = c.params[0];
      const double x = norm_quantile(u), y = norm_quantile(v);
      const double det = 1.0 - rho * rho;
      return -0.5 * std::log(det) -
             (rho * rho * (x * x + y * y) - 2.0 * rho * x * y) / (2.0 * det);
    }
    case Family::StudentT:
      return t_logpdf(u, v, c.params[0], c.params[1]);
    case Family::Clayton:
      return clayton_logpdf(u, v, c.params[0]);
    case Family::Gumbel:
      return gumbel_logpdf(u, v, c.params[0]);
    case Family::Frank:
      return std::log(frank_pdf(u, v, c.params[0]));
    default:
      throw unsupported_error("pdf: family " + family_name(c.family) +
                              " has a singular component");
  }
}

}  // namespace

void CopulaSpec::validate() const {
  const auto need = [&](std::size_t n) {
    if (params.size() != n)
      throw domain_error("copula " + family_name(family) + ": expected " +
                         std::to_string(n) + " parameter(s), got " +
                         std::to_string(params.size()));
  };
  switch (family) {
    case Family::Independence:
    case Family::Comonotone:
      need(0);
      break;
    case Family::Gaussian:
      need(1);
      if (!(params[0] > -1.0 && params[0] < 1.0))
        throw domain_error("gaussian copula: rho must be in (-1,1)");
      break;
    case Family::StudentT:
      need(2);
      if (!(params[0] > -1.0 && params[0] < 1.0))
        throw domain_error("t copula: rho must be in (-1,1)");
      if (!(params[1] > 2.0))
        throw domain_error("t copula: degrees of freedom must exceed 2");
      break;
    case Family::Clayton:
      need(1);
      if (!(params[0] > 0.0)) throw domain_error("clayton copula: theta must be > 0");
      break;
    case Family::Gumbel:
      need(1);
      if (!(params[0] >= 1.0)) throw domain_error("gumbel copula: theta must be >= 1");
      break;
    case Family::Frank:
      need(1);
      if (params[0] == 0.0) throw domain_error("frank copula: theta must be nonzero");
      break;
    case Family::Frechet:
      need(1);
      if (!(params[0] >= 0.0 && params[0] <= 1.0))
        throw domain_error("frechet copula: alpha must be in [0,1]");
      break;
  }
}

double cdf(const CopulaSpec& c, double u, double v) {
  c.validate();
  if (u < 0.0 || u > 1.0 || v < 0.0 || v > 1.0)
    throw domain_error("cdf: arguments outside [0,1]");
  if (u == 0.0 || v == 0.0) return 0.0;
  if (u == 1.0) return v;
  if (v == 1.0) return u;
  if (effective_rotation(c) == Rotation::R180)
    return u + v - 1.0 + base_cdf(c, 1.0 - u, 1.0 - v);
  return base_cdf(c, u, v);
}

double hfunc(const CopulaSpec& c, double u, double v, double eps) {
  c.validate();
  u = std::min(std::max(u, 0.0), 1.0);
  v = clamp_unit(v, eps);
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  u = clamp_unit(u, eps);
  if (effective_rotation(c) == Rotation::R180)
    return 1.0 - base_hfunc(c, 1.0 - u, 1.0 - v);
  return base_hfunc(c, u, v);
}

double hinv(const CopulaSpec& c, double p, double v, double eps) {
  c.validate();
  p = clamp_unit(p, eps);
  v = clamp_unit(v, eps);
  double out;
  if (effective_rotation(c) == Rotation::R180)
    out = 1.0 - base_hinv(c, 1.0 - p, 1.0 - v, eps);
  else
    out = base_hinv(c, p, v, eps);
  return clamp_unit(out, eps);
}

double pdf(const CopulaSpec& c, double u, double v) { return std::exp(log_pdf(c, u, v)); }

double log_pdf(const CopulaSpec& c, double u, double v) {
  c.validate();
  if (c.is_singular())
    throw unsupported_error("pdf: family " + family_name(c.family) +
                            " has a singular component");
  u = clamp_unit(u);
  v = clamp_unit(v);
  if (effective_rotation(c) == Rotation::R180) return base_logpdf(c, 1.0 - u, 1.0 - v);
  return base_logpdf(c, u, v);
}

double param_to_tau(Family family, const std::vector<double>& params) {
  CopulaSpec tmp(family, params);
  tmp.validate();
  switch (family) {
    case Family::Independence:
      return 0.0;
    case Family::Comonotone:
      return 1.0;
    case Family::Gaussian:
    case Family::StudentT:
      return 2.0 / M_PI * std::asin(params[0]);
    case Family::Gumbel:
      return 1.0 - 1.0 / params[0];
    case Family::Clayton:
      return params[0] / (params[0] + 2.0);
    case Family::Frank: {
      const double th = params[0];
      return 1.0 - 4.0 / th * (1.0 - special::debye1(th));
    }
    case Family::Frechet:
      return params[0] * (params[0] + 2.0) / 3.0;
  }
  throw domain_error("param_to_tau: unknown family");
}

double tau_to_param(Family family, double tau) {
  switch (family) {
    case Family::Gaussian:
    case Family::StudentT:
      if (!(tau > -1.0 && tau < 1.0)) throw domain_error("tau outside (-1,1)");
      return std::sin(M_PI * tau / 2.0);
    case Family::Gumbel:
      if (!(tau >= 0.0 && tau < 1.0))
        throw domain_error("gumbel: tau must be in [0,1)");
      return 1.0 / (1.0 - tau);
    case Family::Clayton:
      if (!(tau > 0.0 && tau < 1.0))
        throw domain_error("clayton: tau must be in (0,1)");
      return 2.0 * tau / (1.0 - tau);
    case Family::Frank: {
      if (tau == 0.0 || !(tau > -1.0 && tau < 1.0))
        throw domain_error("frank: tau must be in (-1,1) excluding 0");
      // Monotone root find on theta.
      double lo = tau > 0.0 ? 1e-10 : -50.0;
      double hi = tau > 0.0 ? 50.0 : -1e-10;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double t = param_to_tau(Family::Frank, {mid});
        if (t < tau) lo = mid;
        else hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    case Family::Frechet:
      if (!(tau >= 0.0 && tau <= 1.0)) throw domain_error("frechet: tau in [0,1]");
      return std::sqrt(3.0 * tau + 1.0) - 1.0;
    case Family::Independence:
      if (tau != 0.0) throw domain_error("independence: tau must be 0");
      return 0.0;
    default:
      throw unsupported_error("tau_to_param: unsupported family");
  }
}

std::vector<double> reciprocal_param(Family family, const std::vector<double>& params,
                                     ReciprocalRule rule) {
  CopulaSpec tmp(family, params);
  tmp.validate();
  const auto flip = [&](double rho) {
    return rule == ReciprocalRule::Quadratic ? std::sqrt(1.0 - rho * rho)
                                             : std::sqrt(1.0 - rho);
  };
  switch (family) {
    case Family::Gaussian:
      return {flip(params[0])};
    case Family::Gumbel: {
      const double tau = param_to_tau(Family::Gumbel, params);
      const double rho_star = std::sin(M_PI * tau / 2.0);
      const double rho_dag = flip(rho_star);
      const double tau_dag = 2.0 / M_PI * std::asin(rho_dag);
      return {1.0 / (1.0 - tau_dag)};
    }
    default:
      throw unsupported_error("reciprocal_param: defined for gaussian and gumbel only");
  }
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Independence: return "independence";
    case Family::Comonotone: return "comonotone";
    case Family::Gaussian: return "gaussian";
    case Family::StudentT: return "t";
    case Family::Clayton: return "clayton";
    case Family::Gumbel: return "gumbel";
    case Family::Frank: return "frank";
    case Family::Frechet: return "frechet";
  }
  return "?";
}

namespace {

std::string format_param(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

std::string CopulaSpec::token() const {
  std::string s = family_name(family);
  if (rotation == Rotation::R180 && !radially_symmetric(family)) s += "180";
  if (!params.empty()) {
    s += ":";
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (i) s += ",";
      s += format_param(params[i]);
    }
  }
  return s;
}

CopulaSpec CopulaSpec::from_token(const std::string& tok) {
  std::string name = tok;
  std::string param_str;
  if (const auto colon = tok.find(':'); colon != std::string::npos) {
    name = tok.substr(0, colon);
    param_str = tok.substr(colon + 1);
  }
  Rotation rot = Rotation::None;
  if (name.size() > 3 && name.substr(name.size() - 3) == "180") {
    rot = Rotation::R180;
    name = name.substr(0, name.size() - 3);
  }
  Family fam;
  if (name == "independence" || name == "i") fam = Family::Independence;
  else if (name == "comonotone" || name == "m") fam = Family::Comonotone;
  else if (name == "gaussian" || name == "normal" || name == "n") fam = Family::Gaussian;
  else if (name == "t" || name == "studentt") fam = Family::StudentT;
  else if (name == "clayton" || name == "c") fam = Family::Clayton;
  else if (name == "gumbel" || name == "g") fam = Family::Gumbel;
  else if (name == "frank" || name == "f") fam = Family::Frank;
  else if (name == "frechet") fam = Family::Frechet;
  else throw parse_error("unknown copula family '" + name + "'", 0);

  std::vector<double> params;
  if (!param_str.empty()) {
    std::stringstream ss(param_str);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
      try {
        std::size_t used = 0;
        params.push_back(std::stod(piece, &used));
        if (used != piece.size()) throw std::invalid_argument(piece);
      } catch (const std::exception&) {
        throw parse_error("bad copula parameter '" + piece + "'", 0);
      }
    }
  }
  CopulaSpec spec(fam, std::move(params), rot);
  spec.validate();
  return spec;
}

}  // namespace coarma
