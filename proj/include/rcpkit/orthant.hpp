#pragma once

// Rotation of a signal pair into the eigenbasis of its Gram matrix, the
// identical-orthant ratio and the minus-term sufficient conditions.

#include "rcpkit/spectra.hpp"
#include "rcpkit/types.hpp"

#include <optional>

namespace rcpkit {

struct RotatedPair {
  Vector z_u, z_v;        // V^T x_I
  Support same_sign;      // z_ui z_vi > 0
  Support opposite_sign;  // z_ui z_vi < 0
  Support zero;           // product exactly 0; counted in neither set

  Index k1() const noexcept { return static_cast<Index>(same_sign.size()); }
  Index k2() const noexcept { return static_cast<Index>(opposite_sign.size()); }
};

/// z = V^T x_I for both signals, with I the support the spectrum was
/// computed on. Throws invalid-argument if a signal has mass outside I or
/// the dimensions disagree.
RotatedPair rotate_pair(const GramSpectrum& spectrum, const Vector& x_u, const Vector& x_v, const Support& I);

/// sum_i lambda_i z_ui z_vi, which equals <Phi x_u, Phi x_v>.
double expand_inner(const GramSpectrum& spectrum, const RotatedPair& pair);

struct OrthantRatio {
  double ratio = 0.0;  // |<z_u^o, z_v^o>| / <z_u, z_v>
  double bound = 0.0;  // 1/cos(alpha) - 1
  double cos_alpha = 0.0;
  double cos_theta = 0.0;            // angle of the same-sign subvectors
  std::optional<double> cos_gamma;   // angle of the opposite-sign subvectors, if any
  bool within = false;               // ratio <= bound (1e-12 relative slack)
  bool chain_holds = false;          // cos_theta >= cos_alpha >= cos_gamma
};

/// Throws domain when <z_u, z_v> <= 0.
OrthantRatio orthant_ratio(const RotatedPair& pair);

struct MinusTermReport {
  // Both sums run over the same-sign set S.
  double sum_A = 0.0;  // sum (lambda_max cos a - lambda_i) z_ui z_vi
  double sum_B = 0.0;  // sum ((lmax - lmin)(1 - cos a)/cos^2 a - (lambda_i - lmin)) z_ui z_vi
  Index neg_count_A = 0;
  Index neg_count_B = 0;
  Index k1 = 0, k2 = 0;
  bool condition_A = false;  // sum_A >= 0
  bool condition_B = false;  // sum_B <= 0
  // lambda_min sum z z <= sum lambda z z <= lambda_max sum z z, all indices.
  bool sandwich_full = false;
  // The same, restricted to S.
  bool sandwich_same_sign = false;
  // condition_A && condition_B  =>  sandwich_full.
  bool implication_ok = false;

  bool conclusion_holds() const noexcept { return sandwich_full; }
};

/// Throws domain when cos_alpha <= 0 or the same-sign set is empty.
MinusTermReport minus_term_diag(const GramSpectrum& spectrum, const RotatedPair& pair, double cos_alpha);

}  // namespace rcpkit
