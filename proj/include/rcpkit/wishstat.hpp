#pragma once

// Eigenvalue campaigns over Gaussian Gram matrices and the goodness-of-fit
// machinery used to judge the transformed statistic
//   t = (sqrt(lambda) - 1) * sqrt(2M / |I|)
// against a standard normal.

#include "rcpkit/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rcpkit {

/// Standard normal CDF, 0.5 * erfc(-x / sqrt(2)).
double normal_cdf(double x) noexcept;

double transform_eigenvalue(double lambda, Index M, Index supp_size);
double inverse_transform(double t, Index M, Index supp_size);

struct EigenCampaign {
  Index M = 0, N = 0, supp_size = 0;
  std::int64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<double> samples;      // trial-major, descending within a trial
  std::vector<double> transformed;  // elementwise transform of samples
  double max_trace_gap = 0.0;       // worst |sum lambda - trace G| / trace G
};

/// Each trial draws |I| fresh N(0, 1/M) columns (the restriction of a
/// fresh M x N Gaussian matrix to a uniformly random support) and appends
/// every eigenvalue of their Gram matrix. Trial t uses the stream
/// derive_seed(seed, t), so the result does not depend on `threads`.
EigenCampaign run_campaign(Index M, Index N, Index supp_size, std::int64_t trials, std::uint64_t seed,
                           unsigned threads = 1);

/// n samples of G_ii = |phi_i|^2 for N(0, 1/M) columns, taken from
/// gen_gaussian_matrix in blocks of 1024 columns.
std::vector<double> gram_diagonal_samples(Index M, std::int64_t n, std::uint64_t seed);

struct MomentCheck {
  double mean = 0.0;
  double variance = 0.0;  // unbiased
  std::int64_t n = 0;
  bool mean_ok = false;  // |mean - M| <= 4 sqrt(2M / n)
  bool var_ok = false;   // |variance / 2M - 1| <= 0.15
};

/// Moment check of samples of M * G_ii against chi^2(M). Needs >= 1000 samples.
MomentCheck chi_sq_moment_check(Index M, std::span<const double> scaled_samples);

struct TestOutcome {
  double statistic = 0.0;
  double critical_value = 0.0;
  double significance = 0.01;
  bool pass = false;  // statistic <= critical_value
  std::int64_t sample_size = 0;
};

/// sqrt(-ln(alpha / 2) / 2); 1.6276 at alpha = 0.01.
double ks_coefficient(double alpha);

/// Two-sided one-sample KS test against N(0, 1). Input must be sorted
/// ascending and hold at least 8 values. Critical value c(alpha)/sqrt(n).
TestOutcome ks_test(std::span<const double> sorted, double alpha = 0.01);

/// Jarque-Bera with population skewness and kurtosis. Needs >= 30 samples;
/// zero variance throws degenerate-sample. Critical value is the chi^2(2)
/// quantile, -2 ln(alpha).
TestOutcome jb_test(std::span<const double> samples, double alpha = 0.01);

struct TailProbs {
  double p_upper = 0.0;  // P(lambda >= lambda_max cos a)
  double p_lower = 0.0;  // P(lambda <= lambda_min + (lmax - lmin)(1 - cos a)/cos^2 a)
};

/// Normal approximations of the two tail events, both on the scale
/// sqrt(2M / |I|).
TailProbs tail_probs(double lambda_max, double lambda_min, double cos_alpha, Index M, Index supp_size);

enum class KsMode {
  pooled,     // one test per campaign over all trials x |I| values
  per_trial,  // one test per trial over its |I| values (|I| >= 8)
};

struct CampaignTests {
  TestOutcome ks;  // pooled
  std::optional<TestOutcome> jb;  // pooled; only with >= 30 samples
  std::int64_t per_trial_tests = 0;
  std::int64_t per_trial_passes = 0;
};

/// Pooled KS (needs >= 8 samples) and JB on the transformed samples; with per_trial also the
/// per-trial KS tally (requires |I| >= 8).
CampaignTests test_campaign(const EigenCampaign& campaign, double alpha = 0.01, bool per_trial = false);

struct PassRateCell {
  Index N = 0, M = 0, supp_size = 0;
  std::int64_t tests = 0;
  std::int64_t passes = 0;
  double rate() const noexcept { return tests > 0 ? static_cast<double>(passes) / tests : 0.0; }
};

struct ScanOptions {
  double alpha = 0.01;
  KsMode mode = KsMode::pooled;
  unsigned threads = 1;
};

/// KS pass rate for every (N, M, |I|) cell. A cell with |I| > min(M, N)
/// (or |I| < 8 in per-trial mode, or fewer than 8 pooled values) is skipped. Campaign c of cell k is
/// seeded with derive_seed(derive_seed(seed, k), c), k counting all grid
/// cells including skipped ones.
std::vector<PassRateCell> pass_rate_scan(const std::vector<Index>& N_values, const std::vector<Index>& M_grid,
                                         const std::vector<Index>& supp_grid, std::int64_t campaigns_per_cell,
                                         std::int64_t trials_per_campaign, std::uint64_t seed,
                                         const ScanOptions& options = {});

}  // namespace rcpkit
