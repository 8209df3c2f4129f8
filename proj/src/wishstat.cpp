#include "rcpkit/wishstat.hpp"

#include "rcpkit/ensembles.hpp"
#include "rcpkit/error.hpp"
#include "rcpkit/parallel.hpp"
#include "rcpkit/rng.hpp"
#include "rcpkit/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rcpkit {

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

double scale(Index M, Index supp_size) {
  require(M >= 1 && supp_size >= 1, "transform: M and |I| must be positive");
  return std::sqrt(2.0 * static_cast<double>(M) / static_cast<double>(supp_size));
}

}  // namespace

double transform_eigenvalue(double lambda, Index M, Index supp_size) {
  if (!(lambda >= 0.0)) fail(ErrorKind::domain, "transform_eigenvalue: negative eigenvalue");
  return (std::sqrt(lambda) - 1.0) * scale(M, supp_size);
}

double inverse_transform(double t, Index M, Index supp_size) {
  const double r = 1.0 + t / scale(M, supp_size);
  if (r < 0.0) fail(ErrorKind::domain, "inverse_transform: value below the image of lambda = 0");
  return r * r;
}

EigenCampaign run_campaign(Index M, Index N, Index supp_size, std::int64_t trials, std::uint64_t seed,
                           unsigned threads) {
  require(M >= 1 && N >= 1, "run_campaign: M and N must be positive");
  require(supp_size >= 1 && supp_size <= std::min(M, N), "run_campaign: need 1 <= |I| <= min(M, N)");
  require(trials >= 1, "run_campaign: trials must be at least 1");

  EigenCampaign c;
  c.M = M;
  c.N = N;
  c.supp_size = supp_size;
  c.trials = trials;
  c.seed = seed;
  const std::size_t k = static_cast<std::size_t>(supp_size);
  c.samples.resize(static_cast<std::size_t>(trials) * k);
  std::vector<double> gaps(static_cast<std::size_t>(trials));
  const double sd = 1.0 / std::sqrt(static_cast<double>(M));

  parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    // The support is drawn for fidelity with the full-matrix experiment;
    // with i.i.d. columns it does not change the distribution.
    (void)sample_subset(N, supp_size, rng);
    Matrix cols(M, supp_size);
    for (Index j = 0; j < supp_size; ++j)
      for (Index i = 0; i < M; ++i) cols(i, j) = sd * rng.normal();
    const Matrix G = gram(cols);
    const GramSpectrum s = eig_sym(G, {.max_sweeps = 100, .vectors = false});
    const double trace = G.trace();
    gaps[t] = std::abs(s.raw_eigenvalues.sum() - trace) / std::max(trace, 1e-300);
    for (std::size_t i = 0; i < k; ++i) c.samples[t * k + i] = s.eigenvalues[static_cast<Index>(i)];
  });

  c.max_trace_gap = *std::max_element(gaps.begin(), gaps.end());
  c.transformed.resize(c.samples.size());
  for (std::size_t i = 0; i < c.samples.size(); ++i)
    c.transformed[i] = transform_eigenvalue(c.samples[i], M, supp_size);
  return c;
}

std::vector<double> gram_diagonal_samples(Index M, std::int64_t n, std::uint64_t seed) {
  require(M >= 1 && n >= 1, "gram_diagonal_samples: M and n must be positive");
  constexpr Index block = 1024;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::uint64_t b = 0; static_cast<std::int64_t>(out.size()) < n; ++b) {
    const Index cols = std::min<Index>(block, n - static_cast<Index>(out.size()));
    const MeasurementMatrix phi = gen_gaussian_matrix(M, cols, derive_seed(seed, b));
    for (Index j = 0; j < cols; ++j) out.push_back(phi.entries.col(j).squaredNorm());
  }
  return out;
}

MomentCheck chi_sq_moment_check(Index M, std::span<const double> scaled_samples) {
  require(M >= 1, "chi_sq_moment_check: M must be positive");
  require(scaled_samples.size() >= 1000, "chi_sq_moment_check: needs at least 1000 samples");
  MomentCheck r;
  r.n = static_cast<std::int64_t>(scaled_samples.size());
  double mean = 0.0;
  for (double v : scaled_samples) mean += v;
  mean /= static_cast<double>(r.n);
  double ss = 0.0;
  for (double v : scaled_samples) ss += (v - mean) * (v - mean);
  r.mean = mean;
  r.variance = ss / static_cast<double>(r.n - 1);
  const double m = static_cast<double>(M);
  r.mean_ok = std::abs(mean - m) <= 4.0 * std::sqrt(2.0 * m / static_cast<double>(r.n));
  r.var_ok = std::abs(r.variance / (2.0 * m) - 1.0) <= 0.15;
  return r;
}

double ks_coefficient(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "ks: significance must lie in (0, 1)");
  return std::sqrt(-0.5 * std::log(alpha / 2.0));
}

TestOutcome ks_test(std::span<const double> sorted, double alpha) {
  require(sorted.size() >= 8, "ks_test: needs at least 8 samples");
  require(std::is_sorted(sorted.begin(), sorted.end()), "ks_test: samples must be sorted ascending");
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = normal_cdf(sorted[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  TestOutcome o;
  o.statistic = d;
  o.significance = alpha;
  o.critical_value = ks_coefficient(alpha) / std::sqrt(n);
  o.pass = o.statistic <= o.critical_value;
  o.sample_size = static_cast<std::int64_t>(sorted.size());
  return o;
}

TestOutcome jb_test(std::span<const double> samples, double alpha) {
  require(samples.size() >= 30, "jb_test: needs at least 30 samples");
  require(alpha > 0.0 && alpha < 1.0, "jb_test: significance must lie in (0, 1)");
  const double n = static_cast<double>(samples.size());
  double mean = 0.0;
  for (double v : samples) mean += v;
  mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : samples) {
    const double d = v - mean, d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  if (!(m2 > 0.0)) fail(ErrorKind::degenerate_sample, "jb_test: samples have zero variance");
  const double skew = m3 / std::pow(m2, 1.5);
  const double kurt = m4 / (m2 * m2);
  TestOutcome o;
  o.statistic = n / 6.0 * (skew * skew + (kurt - 3.0) * (kurt - 3.0) / 4.0);
  o.significance = alpha;
  o.critical_value = -2.0 * std::log(alpha);
  o.pass = o.statistic <= o.critical_value;
  o.sample_size = static_cast<std::int64_t>(samples.size());
  return o;
}

TailProbs tail_probs(double lambda_max, double lambda_min, double cos_alpha, Index M, Index supp_size) {
  require(cos_alpha > 0.0 && cos_alpha <= 1.0, "tail_probs: cos alpha must lie in (0, 1]");
  require(lambda_min >= 0.0 && lambda_max >= 0.0, "tail_probs: eigenvalues must be nonnegative");
  const double s = scale(M, supp_size);
  const double up = lambda_max * cos_alpha;
  const double low = lambda_min + (lambda_max - lambda_min) * (1.0 - cos_alpha) / (cos_alpha * cos_alpha);
  if (up < 0.0 || low < 0.0) fail(ErrorKind::domain, "tail_probs: negative operand under square root");
  TailProbs p;
  p.p_upper = 1.0 - normal_cdf((std::sqrt(up) - 1.0) * s);
  p.p_lower = normal_cdf((std::sqrt(low) - 1.0) * s);
  return p;
}

CampaignTests test_campaign(const EigenCampaign& campaign, double alpha, bool per_trial) {
  CampaignTests r;
  std::vector<double> sorted = campaign.transformed;
  std::sort(sorted.begin(), sorted.end());
  r.ks = ks_test(sorted, alpha);
  if (campaign.transformed.size() >= 30) r.jb = jb_test(campaign.transformed, alpha);
  if (per_trial) {
    const std::size_t k = static_cast<std::size_t>(campaign.supp_size);
    require(k >= 8, "test_campaign: per-trial KS needs |I| >= 8");
    std::vector<double> block(k);
    for (std::int64_t t = 0; t < campaign.trials; ++t) {
      const auto first = campaign.transformed.begin() + static_cast<std::ptrdiff_t>(t * static_cast<std::int64_t>(k));
      std::copy(first, first + static_cast<std::ptrdiff_t>(k), block.begin());
      std::sort(block.begin(), block.end());
      ++r.per_trial_tests;
      r.per_trial_passes += ks_test(block, alpha).pass;
    }
  }
  return r;
}

std::vector<PassRateCell> pass_rate_scan(const std::vector<Index>& N_values, const std::vector<Index>& M_grid,
                                         const std::vector<Index>& supp_grid, std::int64_t campaigns_per_cell,
                                         std::int64_t trials_per_campaign, std::uint64_t seed,
                                         const ScanOptions& options) {
  require(!N_values.empty() && !M_grid.empty() && !supp_grid.empty(), "pass_rate_scan: grids must be nonempty");
  require(campaigns_per_cell >= 1 && trials_per_campaign >= 1, "pass_rate_scan: counts must be positive");
  std::vector<PassRateCell> out;
  std::uint64_t cell_index = 0;
  for (Index N : N_values) {
    for (Index M : M_grid) {
      for (Index k : supp_grid) {
        const std::uint64_t cell_seed = derive_seed(seed, cell_index++);
        const bool per_trial = options.mode == KsMode::per_trial;
        if (k < 1 || k > std::min(M, N) || (per_trial && k < 8) || trials_per_campaign * k < 8) continue;
        PassRateCell cell{.N = N, .M = M, .supp_size = k};
        for (std::int64_t c = 0; c < campaigns_per_cell; ++c) {
          const EigenCampaign camp =
              run_campaign(M, N, k, trials_per_campaign, derive_seed(cell_seed, c), options.threads);
          if (per_trial) {
            const CampaignTests t = test_campaign(camp, options.alpha, true);
            cell.tests += t.per_trial_tests;
            cell.passes += t.per_trial_passes;
          } else {
            std::vector<double> sorted = camp.transformed;
            std::sort(sorted.begin(), sorted.end());
            cell.tests += 1;
            cell.passes += ks_test(sorted, options.alpha).pass;
          }
        }
        out.push_back(cell);
      }
    }
  }
  return out;
}

}  // namespace rcpkit
