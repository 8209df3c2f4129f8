#pragma once

// Randomized invariant campaigns. Each returns a tally that the CLI
// selftest and the acceptance runner print and gate on.

#include "rcpkit/types.hpp"

#include <cstdint>
#include <string>

namespace rcpkit {

struct CheckResult {
  std::string name;
  std::int64_t instances = 0;  // instances the check applied to
  std::int64_t passes = 0;
  std::int64_t skipped = 0;    // generated but outside the check's hypotheses
  double worst = 0.0;          // largest violation or error seen
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

// Signal-pair instances cycle through (M, N, K_max) in
// {(16,32,3), (32,64,4), (64,128,8), (128,256,16)}.

/// Measured cos(beta) inside the JL interval with per-instance eps, delta_u,
/// delta_v. `rigorous` selects the corrected interval. Instances with
/// dmax >= 1 or eps >= 1 are skipped and replaced.
CheckResult check_jl_containment(std::int64_t count, std::uint64_t seed, bool rigorous);

/// Where the lambda-sandwich holds and cos(alpha) > 0, cos(beta) inside the
/// spectral interval.
CheckResult check_ip_spectral(std::int64_t count, std::uint64_t seed);

/// Disjoint-support pairs against the orthogonal interval, dK taken on the
/// joint support. `rigorous` selects [-dK/(1-dmax), dK/(1-dmax)].
CheckResult check_orthogonal(std::int64_t count, std::uint64_t seed, bool rigorous);

/// Norms and the inner product survive z = V^T x_I (relative to |x_u||x_v|).
CheckResult check_rotation(std::int64_t count, std::uint64_t seed);

/// <Phi x_u, Phi x_v> = sum lambda_i z_ui z_vi.
CheckResult check_inner_expansion(std::int64_t count, std::uint64_t seed);

/// Orthant ratio bound and the cos(theta) >= cos(alpha) >= cos(gamma) chain.
CheckResult check_orthant(std::int64_t count, std::uint64_t seed);

/// (condition_A and condition_B) implies the full lambda-sandwich.
CheckResult check_minus_term(std::int64_t count, std::uint64_t seed);

/// mean(G_ii) and var(M G_ii) / 2M from n diagonal samples.
CheckResult check_wishart_moments(Index M, std::int64_t n, std::uint64_t seed);

/// Share of pooled campaigns at (M, N, |I|) whose transformed statistic
/// passes KS at 0.01; passes when the share is at least 0.9.
CheckResult check_wishart_normality(Index M, Index N, Index supp_size, std::int64_t campaigns, std::int64_t trials,
                                   std::uint64_t seed, unsigned threads);

/// Pooled KS pass-rate grid over M in {32,64,128}, |I| in {1,2,4,8}, N = 256:
/// non-increasing in |I| for each M (slack 0.1), and the smallest |I|/M
/// cell above the largest.
CheckResult check_pass_rate_monotone(std::int64_t campaigns_per_cell, std::int64_t trials, std::uint64_t seed,
                                     unsigned threads);

/// Energy, inner product and angle preserved by the DCT, and mu_A = mu_X on
/// synthetic images.
CheckResult check_dct(std::int64_t count, std::uint64_t seed);

/// Pearson(mu_X, mu_Y) on a smooth synthetic scene against the sparse
/// ensemble.
CheckResult check_curve_contrast(std::uint64_t seed);

}  // namespace rcpkit
