#include "rcpkit/rcpcalc.hpp"

#include "rcpkit/error.hpp"
#include "rcpkit/ripcalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rcpkit {

const char* to_string(BoundKind kind) noexcept {
  switch (kind) {
    case BoundKind::rcp_jl: return "rcp_jl";
    case BoundKind::rcp_jl_rigorous: return "rcp_jl_rigorous";
    case BoundKind::rcp_ip: return "rcp_ip";
    case BoundKind::rcp_ip_spectral: return "rcp_ip_spectral";
    case BoundKind::rcp_orthogonal: return "rcp_orthogonal";
    case BoundKind::rcp_orthogonal_uniform: return "rcp_orthogonal_uniform";
    case BoundKind::rcp_orthogonal_rigorous: return "rcp_orthogonal_rigorous";
  }
  return "unknown";
}

namespace {

constexpr double kCosineSlack = 1e-12;

double checked_cosine(double inner, double na, double nb, const char* what) {
  double c = inner / (na * nb);
  if (!std::isfinite(c)) fail(ErrorKind::numeric_failure, std::string(what) + " is not finite");
  if (std::abs(c) > 1.0) {
    if (std::abs(c) - 1.0 > kCosineSlack)
      fail(ErrorKind::numeric_failure, std::string(what) + " = " + std::to_string(c) + " lies outside [-1, 1]");
    c = c > 0 ? 1.0 : -1.0;
  }
  return c;
}

void require_unit_interval(double v, const char* name) {
  require(std::isfinite(v) && v >= 0.0 && v < 1.0, std::string(name) + " must lie in [0, 1), got " + std::to_string(v));
}

void require_cosine(double c) {
  require(std::isfinite(c) && std::abs(c) <= 1.0 + kCosineSlack, "cos_alpha must lie in [-1, 1]");
}

BoundInterval ordered(double a, double b, BoundKind kind, BoundConstants k) {
  return {std::min(a, b), std::max(a, b), kind, std::move(k)};
}

}  // namespace

PairGeometry pair_geometry(const Matrix& phi, const Vector& x_u, const Vector& x_v) {
  require(x_u.size() == phi.cols() && x_v.size() == phi.cols(), "pair_geometry: signal length must equal matrix columns");
  PairGeometry g;
  g.norm_xu = x_u.norm();
  g.norm_xv = x_v.norm();
  if (g.norm_xu == 0.0 || g.norm_xv == 0.0) fail(ErrorKind::undefined_angle, "pair_geometry: zero signal has no angle");
  const Vector y_u = phi * x_u;
  const Vector y_v = phi * x_v;
  g.norm_yu = y_u.norm();
  g.norm_yv = y_v.norm();
  if (g.norm_yu == 0.0 || g.norm_yv == 0.0)
    fail(ErrorKind::degenerate_measurement, "pair_geometry: a measurement vector is zero");
  g.inner_x = x_u.dot(x_v);
  g.inner_y = y_u.dot(y_v);
  g.xi = (g.norm_xu * g.norm_xu + g.norm_xv * g.norm_xv) / (2.0 * g.norm_xu * g.norm_xv);
  g.cos_alpha = checked_cosine(g.inner_x, g.norm_xu, g.norm_xv, "cos_alpha");
  g.cos_beta = checked_cosine(g.inner_y, g.norm_yu, g.norm_yv, "cos_beta");
  g.support_u = support_of(x_u);
  g.support_v = support_of(x_v);
  g.delta_u = support_extremes(phi, g.support_u).delta;
  g.delta_v = support_extremes(phi, g.support_v).delta;
  g.delta_max = std::max(g.delta_u, g.delta_v);
  return g;
}

BoundInterval rcp_jl_bounds(double xi, double cos_alpha, double delta_max, double epsilon) {
  require_unit_interval(delta_max, "delta_max");
  require_unit_interval(epsilon, "epsilon");
  require(std::isfinite(xi) && xi >= 1.0 - 1e-12, "xi must be at least 1");
  require_cosine(cos_alpha);
  const double d = delta_max, e = epsilon;
  BoundInterval b;
  b.kind = BoundKind::rcp_jl;
  b.upper = (d - e) / (1.0 - d) * xi + (1.0 - e) / (1.0 - d) * cos_alpha;
  b.lower = (e - d) / (1.0 + d) * xi + (1.0 + e) / (1.0 + d) * cos_alpha;
  b.constants = {.epsilon = e, .delta_max = d, .xi = xi, .cos_alpha = cos_alpha};
  return b;
}

BoundInterval rcp_jl_bounds_rigorous(double xi, double cos_alpha, double delta_max, double epsilon) {
  require_unit_interval(delta_max, "delta_max");
  require_unit_interval(epsilon, "epsilon");
  require(std::isfinite(xi) && xi >= 1.0 - 1e-12, "xi must be at least 1");
  require_cosine(cos_alpha);
  const double d = delta_max, e = epsilon;
  const double num_hi = (d + e) * xi + (1.0 - e) * cos_alpha;
  const double num_lo = -(d + e) * xi + (1.0 + e) * cos_alpha;
  BoundInterval b;
  b.kind = BoundKind::rcp_jl_rigorous;
  b.upper = num_hi >= 0.0 ? num_hi / (1.0 - d) : num_hi / (1.0 + d);
  b.lower = num_lo >= 0.0 ? num_lo / (1.0 + d) : num_lo / (1.0 - d);
  b.constants = {.epsilon = e, .delta_max = d, .xi = xi, .cos_alpha = cos_alpha};
  return b;
}

BoundInterval rcp_ip_bounds(double cos_alpha, double delta_k) {
  require_unit_interval(delta_k, "delta_K");
  require_cosine(cos_alpha);
  const double lo = (1.0 - delta_k) / (1.0 + delta_k) * cos_alpha;
  const double hi = (1.0 + delta_k) / (1.0 - delta_k) * cos_alpha;
  return ordered(lo, hi, BoundKind::rcp_ip, {.delta_k = delta_k, .cos_alpha = cos_alpha});
}

BoundInterval rcp_ip_spectral_bounds(double cos_alpha, double lambda_min, double lambda_max, double delta_u,
                                     double delta_v) {
  require_unit_interval(delta_u, "delta_u");
  require_unit_interval(delta_v, "delta_v");
  require_cosine(cos_alpha);
  require(lambda_min >= 0.0 && lambda_max >= lambda_min, "need 0 <= lambda_min <= lambda_max");
  const double lo = lambda_min / std::sqrt((1.0 + delta_u) * (1.0 + delta_v)) * cos_alpha;
  const double hi = lambda_max / std::sqrt((1.0 - delta_u) * (1.0 - delta_v)) * cos_alpha;
  return ordered(lo, hi, BoundKind::rcp_ip_spectral,
                 {.cos_alpha = cos_alpha, .lambda_min = lambda_min, .lambda_max = lambda_max, .delta_u = delta_u,
                  .delta_v = delta_v});
}

BoundInterval rcp_orthogonal_bounds(double delta_k, double delta_max) {
  require_unit_interval(delta_k, "delta_K");
  require_unit_interval(delta_max, "delta_max");
  require(delta_max <= delta_k + 1e-12, "delta_max must not exceed delta_K");
  return {-delta_k / (1.0 + delta_max), delta_k / (1.0 - delta_max), BoundKind::rcp_orthogonal,
          {.delta_max = delta_max, .delta_k = delta_k}};
}

BoundInterval rcp_orthogonal_bounds_uniform(double delta_k) {
  require_unit_interval(delta_k, "delta_K");
  return {-delta_k / (1.0 + delta_k), delta_k / (1.0 - delta_k), BoundKind::rcp_orthogonal_uniform,
          {.delta_k = delta_k}};
}

BoundInterval rcp_orthogonal_bounds_rigorous(double delta_k, double delta_max) {
  require_unit_interval(delta_k, "delta_K");
  require_unit_interval(delta_max, "delta_max");
  require(delta_max <= delta_k + 1e-12, "delta_max must not exceed delta_K");
  return {-delta_k / (1.0 - delta_max), delta_k / (1.0 - delta_max), BoundKind::rcp_orthogonal_rigorous,
          {.delta_max = delta_max, .delta_k = delta_k}};
}

SandwichCheck sandwich_check(const Matrix& phi, const Vector& x_u, const Vector& x_v) {
  require(x_u.size() == phi.cols() && x_v.size() == phi.cols(), "sandwich_check: signal length must equal matrix columns");
  SandwichCheck s;
  s.joint_support = support_union(support_of(x_u), support_of(x_v));
  require(!s.joint_support.empty(), "sandwich_check: joint support is empty");
  const SupportExtremes ext = support_extremes(phi, s.joint_support);
  s.lambda_min = ext.lambda_min;
  s.lambda_max = ext.lambda_max;
  s.delta_joint = ext.delta;
  const double ip = x_u.dot(x_v);
  s.lhs = s.lambda_min * ip;
  s.rhs = s.lambda_max * ip;
  s.mid = (phi * x_u).dot(phi * x_v);
  const double tol = 1e-12 * std::max({1.0, std::abs(s.lhs), std::abs(s.mid), std::abs(s.rhs)});
  s.holds = s.lhs <= s.mid + tol && s.mid <= s.rhs + tol;
  return s;
}

double jl_epsilon(const Matrix& phi, std::span<const Vector> points) {
  require(points.size() >= 2, "jl_epsilon: need at least two points");
  for (const Vector& p : points) require(p.size() == phi.cols(), "jl_epsilon: point length must equal matrix columns");
  double eps = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      const Vector d = points[i] - points[j];
      const double dn = d.squaredNorm();
      require(dn > 0.0, "jl_epsilon: duplicate points " + std::to_string(i) + " and " + std::to_string(j));
      eps = std::max(eps, std::abs((phi * d).squaredNorm() / dn - 1.0));
    }
  }
  return eps;
}

}  // namespace rcpkit
