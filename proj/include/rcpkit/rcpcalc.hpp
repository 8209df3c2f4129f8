#pragma once

// Angle geometry of a signal pair under measurement, and the conformal
// bound intervals that bracket the measured cosine.

#include "rcpkit/types.hpp"

#include <optional>
#include <span>

namespace rcpkit {

/// Everything the bound intervals need about one pair (x_u, x_v).
struct PairGeometry {
  double xi = 1.0;  // (|x_u|^2 + |x_v|^2) / (2 |x_u| |x_v|)
  double cos_alpha = 0.0;
  double cos_beta = 0.0;
  double delta_u = 0.0;  // isometry constant of supp(x_u)
  double delta_v = 0.0;
  double delta_max = 0.0;
  double inner_x = 0.0;  // <x_u, x_v>
  double inner_y = 0.0;  // <Phi x_u, Phi x_v>
  double norm_xu = 0.0, norm_xv = 0.0;
  double norm_yu = 0.0, norm_yv = 0.0;
  Support support_u, support_v;
};

/// Throws undefined-angle for a zero signal, degenerate-measurement when
/// Phi maps a signal to zero, numeric-failure if a cosine leaves [-1, 1]
/// by more than 1e-12 (smaller excursions are clamped).
PairGeometry pair_geometry(const Matrix& phi, const Vector& x_u, const Vector& x_v);

enum class BoundKind {
  rcp_jl,                    // JL-based interval, (dmax - eps) closed form
  rcp_jl_rigorous,           // same ingredients, sign of the epsilon term corrected
  rcp_ip,                    // (1 -/+ delta_K)/(1 +/- delta_K) cos(alpha)
  rcp_ip_spectral,           // lambda_min / sqrt((1+du)(1+dv)) cos(alpha), ...
  rcp_orthogonal,            // [-dK/(1+dmax), dK/(1-dmax)]
  rcp_orthogonal_uniform,    // [-dK/(1+dK), dK/(1-dK)]
  rcp_orthogonal_rigorous,   // [-dK/(1-dmax), dK/(1-dmax)]
};

const char* to_string(BoundKind kind) noexcept;

struct BoundConstants {
  std::optional<double> epsilon{}, delta_max{}, delta_k{}, xi{}, cos_alpha{}, lambda_min{}, lambda_max{}, delta_u{}, delta_v{};
};

struct BoundInterval {
  double lower = 0.0;
  double upper = 0.0;
  BoundKind kind = BoundKind::rcp_jl;
  BoundConstants constants;

  bool contains(double value, double tol = 0.0) const noexcept {
    return value >= lower - tol && value <= upper + tol;
  }
  // Interval intersected with [-1, 1] for reporting; the raw ends stay above.
  double reported_lower() const noexcept { return lower < -1.0 ? -1.0 : lower; }
  double reported_upper() const noexcept { return upper > 1.0 ? 1.0 : upper; }
};

/// JL-based interval in its (dmax - eps) closed form:
///   upper = (dmax - eps)/(1 - dmax) xi + (1 - eps)/(1 - dmax) cos(alpha)
///   lower = (eps - dmax)/(1 + dmax) xi + (1 + eps)/(1 + dmax) cos(alpha)
/// Requires dmax, eps in [0, 1), xi >= 1, |cos(alpha)| <= 1.
///
/// This interval is NOT valid in general: the epsilon term carries the
/// wrong sign. Phi = diag(sqrt(1.2), sqrt(0.8)), x_u = (1,1), x_v = (1,-1)
/// has eps = dmax = 0.2 and cos(beta) = 0.2 above the upper end 0.
BoundInterval rcp_jl_bounds(double xi, double cos_alpha, double delta_max, double epsilon);

/// Provably valid JL-based interval from the same constants:
///   upper = ((dmax + eps) xi + (1 - eps) cos(alpha)) / (1 -/+ dmax)
///   lower = (-(dmax + eps) xi + (1 + eps) cos(alpha)) / (1 +/- dmax)
/// where each denominator is the one that makes the bound looser given the
/// sign of its numerator.
BoundInterval rcp_jl_bounds_rigorous(double xi, double cos_alpha, double delta_max, double epsilon);

/// [(1-dK)/(1+dK) cos(alpha), (1+dK)/(1-dK) cos(alpha)], endpoints reordered
/// when cos(alpha) < 0. Requires dK in [0, 1).
BoundInterval rcp_ip_bounds(double cos_alpha, double delta_k);

/// Tighter interval that holds whenever the lambda-sandwich holds:
///   [lambda_min / sqrt((1+du)(1+dv)) cos(alpha), lambda_max / sqrt((1-du)(1-dv)) cos(alpha)]
/// (reordered for cos(alpha) < 0). Requires du, dv in [0, 1).
BoundInterval rcp_ip_spectral_bounds(double cos_alpha, double lambda_min, double lambda_max, double delta_u,
                                     double delta_v);

/// Orthogonal (disjoint-support) pair: [-dK/(1+dmax), dK/(1-dmax)].
/// Requires 0 <= dmax <= dK (+1e-12) < 1. The lower end is not valid in general
/// (the correct denominator is 1 - dmax); see rcp_orthogonal_bounds_rigorous.
BoundInterval rcp_orthogonal_bounds(double delta_k, double delta_max);

/// [-dK/(1+dK), dK/(1-dK)].
BoundInterval rcp_orthogonal_bounds_uniform(double delta_k);

/// [-dK/(1-dmax), dK/(1-dmax)]; valid for every disjoint-support pair.
BoundInterval rcp_orthogonal_bounds_rigorous(double delta_k, double delta_max);

struct SandwichCheck {
  bool holds = false;
  double lhs = 0.0;  // lambda_min <x_u, x_v>
  double mid = 0.0;  // <Phi x_u, Phi x_v>
  double rhs = 0.0;  // lambda_max <x_u, x_v>
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double delta_joint = 0.0;  // isometry constant of the joint support
  Support joint_support;
};

/// lambda_min <x_u,x_v> <= <Phi x_u, Phi x_v> <= lambda_max <x_u,x_v> on the
/// joint support, with tolerance 1e-12 * max(1, |lhs|, |mid|, |rhs|).
SandwichCheck sandwich_check(const Matrix& phi, const Vector& x_u, const Vector& x_v);

/// Smallest eps with (1-eps)|u-v|^2 <= |Phi(u-v)|^2 <= (1+eps)|u-v|^2 over
/// all pairs of points. Needs at least two points, all distinct.
double jl_epsilon(const Matrix& phi, std::span<const Vector> points);

}  // namespace rcpkit
