#include "coarma/vine.hpp"

#include <algorithm>
#include <cmath>

#include "coarma/errors.hpp"

namespace coarma {

namespace {

// Triangular conditional arrays over a D-vine path z[0..m] (oldest
// first).  left(i,j) = F(z_i | z_{i+1..j}), right(i,j) = F(z_j | z_{i..j-1});
// the lag-L pair copula joins variables L apart.
struct Triangle {
  explicit Triangle(const VineSpec& v, double eps) : vine(&v), eps(eps) {}

  void reset(std::size_t capacity) {
    dim = 0;
    const std::size_t nn = capacity * capacity;
    if (left.size() < nn) {
      left.resize(nn);
      right.resize(nn);
    }
    cap = capacity;
  }

  double& L(std::size_t i, std::size_t j) { return left[i * cap + j]; }
  double& R(std::size_t i, std::size_t j) { return right[i * cap + j]; }

  // Appends one variable (the newest so far) and fills its diagonal.
  void push(double z) {
    const std::size_t j = dim++;
    L(j, j) = z;
    R(j, j) = z;
    for (std::size_t back = 1; back <= j; ++back) {
      const std::size_t i = j - back;
      const CopulaSpec& pc = vine->pair_copulas[back - 1];
      R(i, j) = hfunc(pc, R(i + 1, j), L(i, j - 1), eps);
      L(i, j) = hfunc(pc, L(i, j - 1), R(i + 1, j), eps);
    }
  }

  const VineSpec* vine;
  double eps;
  std::size_t dim = 0;
  std::size_t cap = 0;
  std::vector<double> left, right;
};

void check_history(const VineSpec& v, std::span<const double> history) {
  if (static_cast<int>(history.size()) != v.order())
    throw shape_error("vine: expected history of length " + std::to_string(v.order()) +
                      ", got " + std::to_string(history.size()));
}

}  // namespace

void VineSpec::validate() const {
  for (const auto& pc : pair_copulas) pc.validate();
}

bool VineSpec::has_singular_pair() const {
  return std::any_of(pair_copulas.begin(), pair_copulas.end(),
                     [](const CopulaSpec& c) { return c.is_singular(); });
}

// ---- stationary D-vine ----------------------------------------------------

double ar_cond_cdf(const VineSpec& v, double x, std::span<const double> history,
                   double eps) {
  if (v.kind != VineKind::StationaryDVine)
    throw shape_error("ar_cond_cdf: vine is not a stationary D-vine");
  check_history(v, history);
  const int p = v.order();
  if (p == 0) return clamp_unit(x, eps);
  Triangle tri(v, eps);
  tri.reset(p);
  for (int k = p - 1; k >= 0; --k) tri.push(history[k]);  // oldest first
  double s = x;
  for (int i = p - 1; i >= 0; --i) {
    const CopulaSpec& pc = v.pair_copulas[p - 1 - i];
    s = hfunc(pc, s, tri.L(i, p - 1), eps);
  }
  return s;
}

double ar_cond_quantile(const VineSpec& v, double e, std::span<const double> history,
                        double eps) {
  if (v.kind != VineKind::StationaryDVine)
    throw shape_error("ar_cond_quantile: vine is not a stationary D-vine");
  check_history(v, history);
  const int p = v.order();
  if (p == 0) return clamp_unit(e, eps);
  Triangle tri(v, eps);
  tri.reset(p);
  for (int k = p - 1; k >= 0; --k) tri.push(history[k]);
  double s = e;
  for (int i = 0; i < p; ++i) {
    const CopulaSpec& pc = v.pair_copulas[p - 1 - i];
    s = hinv(pc, s, tri.L(i, p - 1), eps);
  }
  return s;
}

double ar_cond_density(const VineSpec& v, double x, std::span<const double> history,
                       double eps) {
  if (v.kind != VineKind::StationaryDVine)
    throw shape_error("ar_cond_density: vine is not a stationary D-vine");
  check_history(v, history);
  const int p = v.order();
  if (p == 0) return 1.0;
  if (v.has_singular_pair())
    throw unsupported_error("ar_cond_density: singular pair copula present");
  Triangle tri(v, eps);
  tri.reset(p);
  for (int k = p - 1; k >= 0; --k) tri.push(history[k]);
  // Edges involving the newest variable: lag L pairs F(x | latest L-1)
  // with F(z_{p-L} | same block).
  double dens = 1.0;
  double s = clamp_unit(x, eps);
  for (int i = p - 1; i >= 0; --i) {
    const CopulaSpec& pc = v.pair_copulas[p - 1 - i];
    dens *= pdf(pc, s, tri.L(i, p - 1));
    s = hfunc(pc, s, tri.L(i, p - 1), eps);
  }
  return dens;
}

// ---- MAG D-vine ------------------------------------------------------------

double mag_forward(const VineSpec& v, double e_t, std::span<const double> cond,
                   double eps) {
  if (v.kind != VineKind::MagDVine)
    throw shape_error("mag_forward: vine is not a MAG D-vine");
  check_history(v, cond);
  double s = e_t;
  for (int j = v.order(); j >= 1; --j)
    s = hinv(v.pair_copulas[j - 1], s, cond[j - 1], eps);
  return s;
}

double mag_backward(const VineSpec& v, double u_t, std::span<const double> cond,
                    double eps) {
  if (v.kind != VineKind::MagDVine)
    throw shape_error("mag_backward: vine is not a MAG D-vine");
  check_history(v, cond);
  double s = u_t;
  for (int j = 1; j <= v.order(); ++j)
    s = hfunc(v.pair_copulas[j - 1], s, cond[j - 1], eps);
  return s;
}

double vine_density(const VineSpec& v, std::span<const double> point, double eps) {
  if (static_cast<int>(point.size()) != v.order() + 1)
    throw shape_error("vine_density: point must have order+1 coordinates");
  if (v.has_singular_pair())
    throw unsupported_error("vine_density: singular pair copula present");
  const int d = v.order();
  if (d == 0) return 1.0;
  if (v.kind == VineKind::MagDVine) {
    // Conditioning margins are independent, so the joint density is the
    // product of the pair densities along the chained h-transforms.
    double s = clamp_unit(point[d], eps);
    double dens = 1.0;
    for (int j = 1; j <= d; ++j) {
      const double c = clamp_unit(point[d - j], eps);
      dens *= pdf(v.pair_copulas[j - 1], s, c);
      s = hfunc(v.pair_copulas[j - 1], s, c, eps);
    }
    return dens;
  }
  Triangle tri(v, eps);
  tri.reset(d + 1);
  for (int k = 0; k <= d; ++k) tri.push(point[k]);
  double dens = 1.0;
  for (int lag = 1; lag <= d; ++lag) {
    const CopulaSpec& pc = v.pair_copulas[lag - 1];
    for (int i = 0; i + lag <= d; ++i)
      dens *= pdf(pc, tri.L(i, i + lag - 1), tri.R(i + 1, i + lag));
  }
  return dens;
}

std::vector<double> rosenblatt(const VineSpec& v, std::span<const double> point,
                               double eps) {
  if (static_cast<int>(point.size()) != v.order() + 1)
    throw shape_error("rosenblatt: point must have order+1 coordinates");
  const int d = v.order();
  std::vector<double> out(point.size());
  if (v.kind == VineKind::MagDVine) {
    for (int k = 0; k < d; ++k) out[k] = point[k];
    std::vector<double> cond(point.begin(), point.begin() + d);
    std::reverse(cond.begin(), cond.end());
    out[d] = mag_backward(v, point[d], cond, eps);
    return out;
  }
  Triangle tri(v, eps);
  tri.reset(d + 1);
  for (int k = 0; k <= d; ++k) {
    tri.push(point[k]);
    out[k] = tri.R(0, k);
  }
  return out;
}

std::vector<double> inverse_rosenblatt(const VineSpec& v, std::span<const double> uniforms,
                                       double eps) {
  if (static_cast<int>(uniforms.size()) != v.order() + 1)
    throw shape_error("inverse_rosenblatt: need order+1 coordinates");
  const int d = v.order();
  std::vector<double> out(uniforms.size());
  if (v.kind == VineKind::MagDVine) {
    for (int k = 0; k < d; ++k) out[k] = uniforms[k];
    std::vector<double> cond(out.begin(), out.begin() + d);
    std::reverse(cond.begin(), cond.end());
    out[d] = mag_forward(v, uniforms[d], cond, eps);
    return out;
  }
  Triangle tri(v, eps);
  tri.reset(d + 1);
  for (int k = 0; k <= d; ++k) {
    double s = uniforms[k];
    for (int i = 0; i < k; ++i) {
      const CopulaSpec& pc = v.pair_copulas[k - 1 - i];
      s = hinv(pc, s, tri.L(i, k - 1), eps);
    }
    out[k] = s;
    tri.push(s);
  }
  return out;
}

namespace {

std::vector<CopulaSpec> parse_pair_list(const std::string& body) {
  std::vector<CopulaSpec> pairs;
  std::size_t start = 0;
  while (start < body.size()) {
    // Split on commas that separate tokens, not the commas inside a
    // parameter list: a token boundary comma is one followed by a family
    // letter rather than a digit/sign.
    std::size_t end = start;
    int params_started = 0;
    for (; end < body.size(); ++end) {
      const char ch = body[end];
      if (ch == ':') params_started = 1;
      if (ch == ',') {
        const char nxt = end + 1 < body.size() ? body[end + 1] : '\0';
        const bool numeric = (nxt >= '0' && nxt <= '9') || nxt == '-' || nxt == '+' ||
                             nxt == '.' || nxt == '?';
        if (!(params_started && numeric)) break;
      }
    }
    pairs.push_back(CopulaSpec::from_token(body.substr(start, end - start)));
    start = end + (end < body.size() ? 1 : 0);
  }
  return pairs;
}

}  // namespace

std::string VineSpec::token() const {
  std::string s = kind == VineKind::StationaryDVine ? "ar:(" : "mag:(";
  for (std::size_t i = 0; i < pair_copulas.size(); ++i) {
    if (i) s += ",";
    s += pair_copulas[i].token();
  }
  return s + ")";
}

VineSpec VineSpec::from_token(const std::string& tok) {
  VineKind kind;
  std::size_t at;
  if (tok.rfind("ar:(", 0) == 0) {
    kind = VineKind::StationaryDVine;
    at = 4;
  } else if (tok.rfind("mag:(", 0) == 0) {
    kind = VineKind::MagDVine;
    at = 5;
  } else {
    throw parse_error("vine token must start with 'ar:(' or 'mag:('", 0);
  }
  if (tok.empty() || tok.back() != ')') throw parse_error("vine token missing ')'", tok.size());
  const std::string body = tok.substr(at, tok.size() - at - 1);
  VineSpec v(kind, body.empty() ? std::vector<CopulaSpec>{} : parse_pair_list(body));
  v.validate();
  return v;
}

}  // namespace coarma
