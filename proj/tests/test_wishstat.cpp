#include "oracles.hpp"

#include "rcpkit/error.hpp"
#include "rcpkit/rng.hpp"
#include "rcpkit/wishstat.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

using namespace rcpkit;

namespace {

// Phi^{-1}(p) by bisection on the series CDF.
double inverse_cdf(double p) {
  double lo = -10, hi = 10;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (static_cast<double>(oracle::normal_cdf(mid)) < p ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> plug_in_quantiles(int n) {
  std::vector<double> q(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) q[static_cast<std::size_t>(i)] = inverse_cdf((i + 0.5) / n);
  return q;
}

double sample_variance(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
  double s = 0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

}  // namespace

TEST_CASE("normal_cdf matches the series oracle") {
  for (int g = -800; g <= 800; ++g) {
    const double x = g * 0.01;
    REQUIRE(std::abs(normal_cdf(x) - static_cast<double>(oracle::normal_cdf(x))) <= 1e-7);
  }
  CHECK(normal_cdf(0.0) == 0.5);
}

TEST_CASE("eigenvalue transform") {
  CHECK(transform_eigenvalue(1.0, 128, 16) == 0.0);
  CHECK(transform_eigenvalue(1.21, 128, 16) == doctest::Approx(0.1 * 4));
  CHECK(transform_eigenvalue(0.0, 50, 4) == doctest::Approx(-5.0));
  for (double lambda : {0.0, 0.3, 1.0, 1.7, 4.0}) {
    const double t = transform_eigenvalue(lambda, 64, 8);
    CHECK(std::abs(inverse_transform(t, 64, 8) - lambda) <= 1e-12);
  }
  CHECK_THROWS_AS(transform_eigenvalue(-0.1, 64, 8), Error);
  CHECK_THROWS_AS(inverse_transform(-4.1, 64, 8), Error);
  CHECK_THROWS_AS(transform_eigenvalue(1.0, 0, 8), Error);
}

TEST_CASE("ks statistic") {
  CHECK(ks_coefficient(0.01) == doctest::Approx(1.6276).epsilon(1e-4));
  CHECK(ks_coefficient(0.05) == doctest::Approx(1.3581).epsilon(1e-4));

  const std::vector<double> q = plug_in_quantiles(500);
  TestOutcome o = ks_test(q);
  CHECK(o.statistic == doctest::Approx(0.5 / 500).epsilon(1e-6));
  CHECK(o.pass);
  CHECK(o.critical_value == doctest::Approx(ks_coefficient(0.01) / std::sqrt(500.0)));
  CHECK(o.sample_size == 500);

  Rng rng(31);
  std::vector<double> u(1000);
  for (double& x : u) x = rng.uniform();
  std::sort(u.begin(), u.end());
  o = ks_test(u);
  CHECK(o.statistic == doctest::Approx(oracle::ks_brute(u)).epsilon(1e-9));
  CHECK(o.statistic > 0.49);
  CHECK_FALSE(o.pass);

  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> z(100);
    for (double& x : z) x = rng.normal();
    std::sort(z.begin(), z.end());
    REQUIRE(std::abs(ks_test(z).statistic - oracle::ks_brute(z)) <= 1e-9);
  }

  std::vector<double> z(1000);
  for (double& x : z) x = rng.normal();
  std::sort(z.begin(), z.end());
  CHECK(ks_test(z).pass);

  CHECK_THROWS_AS(ks_test(std::vector<double>(7, 0.0)), Error);
  CHECK_THROWS_AS(ks_test(std::vector<double>{3, 2, 1, 0, 1, 2, 3, 4}), Error);
  CHECK_THROWS_AS(ks_test(q, 1.0), Error);
}

TEST_CASE("jarque-bera") {
  // Two-point sample: skewness 0, kurtosis 1, statistic n/6.
  std::vector<double> two(30);
  for (std::size_t i = 0; i < two.size(); ++i) two[i] = i % 2 ? 1.0 : -1.0;
  TestOutcome o = jb_test(two);
  CHECK(o.statistic == doctest::Approx(5.0));
  CHECK(o.critical_value == doctest::Approx(-2 * std::log(0.01)));
  CHECK(o.pass);

  CHECK(jb_test(plug_in_quantiles(1000)).statistic < 1.0);

  Rng rng(32);
  std::vector<double> e(1000);
  for (double& x : e) x = -std::log(1.0 - rng.uniform());
  CHECK_FALSE(jb_test(e).pass);

  try {
    jb_test(std::vector<double>(40, 2.5));
    FAIL("expected degenerate sample");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::degenerate_sample);
  }
  CHECK_THROWS_AS(jb_test(std::vector<double>(29, 1.0)), Error);
}

TEST_CASE("tail probabilities") {
  TailProbs p = tail_probs(1.0, 1.0, 1.0, 128, 16);
  CHECK(p.p_upper == doctest::Approx(0.5));
  CHECK(p.p_lower == doctest::Approx(0.5));

  p = tail_probs(1.3, 0.7, 0.99, 128, 16);
  const double s = std::sqrt(2.0 * 128 / 16);
  const double up = std::sqrt(1.3 * 0.99), low = std::sqrt(0.7 + 0.6 * 0.01 / (0.99 * 0.99));
  CHECK(std::abs(p.p_upper - (1 - static_cast<double>(oracle::normal_cdf((up - 1) * s)))) <= 1e-6);
  CHECK(std::abs(p.p_lower - static_cast<double>(oracle::normal_cdf((low - 1) * s))) <= 1e-6);
  CHECK_THROWS_AS(tail_probs(1.3, 0.7, 0.0, 128, 16), Error);
  CHECK_THROWS_AS(tail_probs(1.3, -0.1, 0.9, 128, 16), Error);
}

TEST_CASE("chi-square moments of gram diagonals") {
  const Index M = 64;
  std::vector<double> d = gram_diagonal_samples(M, 20000, 33);
  CHECK(d.size() == 20000);
  for (double& x : d) x *= static_cast<double>(M);
  const MomentCheck m = chi_sq_moment_check(M, d);
  CHECK(m.mean_ok);
  CHECK(m.var_ok);
  CHECK(m.n == 20000);
  CHECK(gram_diagonal_samples(M, 3000, 33) == std::vector<double>(gram_diagonal_samples(M, 3000, 33)));

  const MomentCheck flat = chi_sq_moment_check(M, std::vector<double>(1000, static_cast<double>(M)));
  CHECK(flat.mean_ok);
  CHECK_FALSE(flat.var_ok);
  CHECK_THROWS_AS(chi_sq_moment_check(M, std::vector<double>(999, 1.0)), Error);
}

TEST_CASE("run_campaign structure and reproducibility") {
  const EigenCampaign c = run_campaign(64, 128, 8, 50, 34);
  REQUIRE(c.samples.size() == 400);
  REQUIRE(c.transformed.size() == 400);
  for (std::size_t t = 0; t < 50; ++t)
    for (std::size_t i = 1; i < 8; ++i) CHECK(c.samples[8 * t + i] <= c.samples[8 * t + i - 1]);
  for (std::size_t i = 0; i < c.samples.size(); ++i)
    CHECK(c.transformed[i] == doctest::Approx(transform_eigenvalue(c.samples[i], 64, 8)));
  CHECK(c.max_trace_gap <= 1e-12);

  const EigenCampaign threaded = run_campaign(64, 128, 8, 50, 34, 3);
  CHECK(threaded.samples == c.samples);
  CHECK(run_campaign(64, 128, 8, 50, 35).samples != c.samples);

  // |I| = 1: each eigenvalue is a squared column norm, mean 1.
  const EigenCampaign one = run_campaign(100, 200, 1, 4000, 36);
  const double mean = std::accumulate(one.samples.begin(), one.samples.end(), 0.0) / 4000.0;
  CHECK(std::abs(mean - 1.0) <= 4 * std::sqrt(2.0 / 100 / 4000));

  CHECK_THROWS_AS(run_campaign(64, 128, 8, 0, 1), Error);
  CHECK_THROWS_AS(run_campaign(64, 128, 65, 10, 1), Error);
  CHECK_THROWS_AS(run_campaign(64, 4, 5, 10, 1), Error);
}

TEST_CASE("pooled transformed statistic has variance near (|I|+1)/(2|I|), not 1") {
  const EigenCampaign c = run_campaign(128, 256, 16, 2000, 37);
  const double var = sample_variance(c.transformed);
  MESSAGE("pooled variance " << var << " against " << 17.0 / 32.0);
  CHECK(var > 0.45);
  CHECK(var < 0.62);
  CHECK_FALSE(test_campaign(c).ks.pass);

  // Single |I| = 1 eigenvalues do follow the normal approximation.
  const EigenCampaign one = run_campaign(128, 256, 1, 2000, 38);
  CHECK(std::abs(sample_variance(one.transformed) - 1.0) < 0.15);
}

TEST_CASE("test_campaign") {
  const EigenCampaign c = run_campaign(64, 128, 8, 20, 39);
  const CampaignTests t = test_campaign(c, 0.01, true);
  CHECK(t.ks.sample_size == 160);
  REQUIRE(t.jb.has_value());
  CHECK(t.per_trial_tests == 20);
  CHECK(t.per_trial_passes <= 20);

  const EigenCampaign small = run_campaign(64, 128, 4, 3, 40);
  CHECK_FALSE(test_campaign(small).jb.has_value());
  CHECK_THROWS_AS(test_campaign(small, 0.01, true), Error);
}

TEST_CASE("pass_rate_scan") {
  const std::vector<Index> Ns{64}, Ms{16, 32}, supps{1, 8, 32};
  ScanOptions opt;
  const std::vector<PassRateCell> cells = pass_rate_scan(Ns, Ms, supps, 4, 10, 41, opt);
  // (M=16, |I|=32) exceeds min(M, N) and is skipped.
  CHECK(cells.size() == 5);
  for (const PassRateCell& cell : cells) {
    CHECK(cell.tests == 4);
    CHECK(cell.rate() >= 0.0);
    CHECK(cell.rate() <= 1.0);
    CHECK(cell.supp_size <= cell.M);
  }
  opt.threads = 3;
  const std::vector<PassRateCell> again = pass_rate_scan(Ns, Ms, supps, 4, 10, 41, opt);
  REQUIRE(again.size() == cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) CHECK(again[i].passes == cells[i].passes);

  opt.mode = KsMode::per_trial;
  const std::vector<PassRateCell> per = pass_rate_scan(Ns, Ms, supps, 2, 5, 41, opt);
  for (const PassRateCell& cell : per) {
    CHECK(cell.supp_size >= 8);
    CHECK(cell.tests == 10);
  }
  CHECK_THROWS_AS(pass_rate_scan({}, Ms, supps, 1, 1, 1), Error);
}
