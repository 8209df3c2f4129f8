#include "rcpkit/selfcheck.hpp"

#include "rcpkit/ensembles.hpp"
#include "rcpkit/error.hpp"
#include "rcpkit/orthant.hpp"
#include "rcpkit/pushbroom.hpp"
#include "rcpkit/rcpcalc.hpp"
#include "rcpkit/ripcalc.hpp"
#include "rcpkit/rng.hpp"
#include "rcpkit/spectra.hpp"
#include "rcpkit/wishstat.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>

namespace rcpkit {

namespace {

struct Dims {
  Index M, N, K;
};
constexpr std::array<Dims, 4> kMix = {{{16, 32, 3}, {32, 64, 4}, {64, 128, 8}, {128, 256, 16}}};

enum class Shape { independent, same_support, disjoint };

struct Instance {
  Matrix phi;
  Vector xu, xv;
};

Vector normals_on(Index N, const Support& I, Rng& rng) {
  Vector x = Vector::Zero(N);
  for (Index i : I) {
    double v = 0.0;
    while (v == 0.0) v = rng.normal();
    x[i] = v;
  }
  return x;
}

// x_v = scale * (c x_u + sqrt(1 - c^2) w) on the support of x_u.
Vector correlated(const Vector& xu, const Support& I, double c, double scale, Rng& rng) {
  Vector w = normals_on(xu.size(), I, rng);
  Vector xv = Vector::Zero(xu.size());
  for (Index i : I) xv[i] = scale * (c * xu[i] + std::sqrt(1.0 - c * c) * w[i]);
  return xv;
}

Instance make_instance(std::uint64_t seed, const Dims& d, Shape shape) {
  Rng rng(seed);
  Instance in;
  in.phi = gen_gaussian_matrix(d.M, d.N, rng.next_u64()).entries;
  switch (shape) {
    case Shape::independent: {
      const Index ku = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d.K)));
      const Index kv = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d.K)));
      in.xu = normals_on(d.N, sample_subset(d.N, ku, rng), rng);
      in.xv = normals_on(d.N, sample_subset(d.N, kv, rng), rng);
      break;
    }
    case Shape::same_support: {
      const Index k = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d.K)));
      const Support I = sample_subset(d.N, k, rng);
      in.xu = normals_on(d.N, I, rng);
      const double c = 2.0 * rng.uniform() - 1.0;
      const double scale = std::exp(1.4 * rng.uniform() - 0.7);
      in.xv = correlated(in.xu, I, c, scale, rng);
      break;
    }
    case Shape::disjoint: {
      const Index ku = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d.K)));
      const Index kv = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d.K)));
      Support all = sample_subset(d.N, ku + kv, rng);
      for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[rng.below(i)]);
      Support su(all.begin(), all.begin() + ku), sv(all.begin() + ku, all.end());
      std::sort(su.begin(), su.end());
      std::sort(sv.begin(), sv.end());
      in.xu = normals_on(d.N, su, rng);
      in.xv = normals_on(d.N, sv, rng);
      break;
    }
  }
  return in;
}

// Same-support pair with cos(alpha) > 0 for the rotation-based checks.
// Half the instances are strongly correlated (c in [0.95, 1)).
struct RotatedInstance {
  Matrix phi;
  Vector xu, xv;
  Support I;
};

RotatedInstance make_positive_pair(std::uint64_t seed, std::int64_t i) {
  static constexpr std::array<Dims, 3> mix = {{{16, 32, 4}, {32, 64, 8}, {64, 128, 8}}};
  const Dims& d = mix[static_cast<std::size_t>(i % 3)];
  Rng rng(seed);
  RotatedInstance in;
  in.phi = gen_gaussian_matrix(d.M, d.N, rng.next_u64()).entries;
  const Index k = 2 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(d.K - 1)));
  in.I = sample_subset(d.N, k, rng);
  while (true) {
    in.xu = normals_on(d.N, in.I, rng);
    const double c = (i % 2 == 0) ? 0.95 + 0.05 * rng.uniform() : rng.uniform();
    in.xv = correlated(in.xu, in.I, c, std::exp(1.4 * rng.uniform() - 0.7), rng);
    if (in.xu.dot(in.xv) > 0.0) break;
  }
  return in;
}

double excursion(const BoundInterval& b, double v) { return std::max({b.lower - v, v - b.upper, 0.0}); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

void finish_rate(CheckResult& r) {
  r.pass = r.instances > 0 && r.passes == r.instances;
  r.detail = std::to_string(r.passes) + "/" + std::to_string(r.instances) + " within" +
             (r.skipped ? ", " + std::to_string(r.skipped) + " skipped" : std::string()) +
             ", worst excursion " + fmt("%.3g", r.worst);
}

}  // namespace

CheckResult check_jl_containment(std::int64_t count, std::uint64_t seed, bool rigorous) {
  CheckResult r;
  r.name = rigorous ? "jl interval (corrected)" : "jl interval";
  r.tolerance = 1e-9;
  for (std::int64_t i = 0; r.instances < count && i < 20 * count; ++i) {
    const Instance in = make_instance(derive_seed(seed, static_cast<std::uint64_t>(i)), kMix[static_cast<std::size_t>(i % 4)],
                                      i % 2 ? Shape::same_support : Shape::independent);
    const PairGeometry g = pair_geometry(in.phi, in.xu, in.xv);
    const Vector pts[2] = {in.xu, in.xv};
    const double eps = jl_epsilon(in.phi, pts);
    if (g.delta_max >= 1.0 || eps >= 1.0) {
      ++r.skipped;
      continue;
    }
    const BoundInterval b = rigorous ? rcp_jl_bounds_rigorous(g.xi, g.cos_alpha, g.delta_max, eps)
                                     : rcp_jl_bounds(g.xi, g.cos_alpha, g.delta_max, eps);
    const double e = excursion(b, g.cos_beta);
    ++r.instances;
    r.passes += e <= r.tolerance;
    r.worst = std::max(r.worst, e);
  }
  finish_rate(r);
  return r;
}

CheckResult check_ip_spectral(std::int64_t count, std::uint64_t seed) {
  CheckResult r;
  r.name = "spectral inner-product interval";
  r.tolerance = 1e-9;
  static constexpr std::array<Shape, 3> shapes = {Shape::independent, Shape::same_support, Shape::disjoint};
  for (std::int64_t i = 0; r.instances < count && i < 50 * count; ++i) {
    const Instance in = make_instance(derive_seed(seed, static_cast<std::uint64_t>(i)), kMix[static_cast<std::size_t>(i % 4)],
                                      shapes[static_cast<std::size_t>(i % 3)]);
    const PairGeometry g = pair_geometry(in.phi, in.xu, in.xv);
    const SandwichCheck s = sandwich_check(in.phi, in.xu, in.xv);
    if (!s.holds || !(g.cos_alpha > 0.0) || g.delta_u >= 1.0 || g.delta_v >= 1.0) {
      ++r.skipped;
      continue;
    }
    const BoundInterval b = rcp_ip_spectral_bounds(g.cos_alpha, s.lambda_min, s.lambda_max, g.delta_u, g.delta_v);
    const double e = excursion(b, g.cos_beta);
    ++r.instances;
    r.passes += e <= r.tolerance;
    r.worst = std::max(r.worst, e);
  }
  finish_rate(r);
  return r;
}

CheckResult check_orthogonal(std::int64_t count, std::uint64_t seed, bool rigorous) {
  CheckResult r;
  r.name = rigorous ? "orthogonal interval (corrected)" : "orthogonal interval";
  r.tolerance = 1e-9;
  for (std::int64_t i = 0; r.instances < count && i < 20 * count; ++i) {
    const Instance in =
        make_instance(derive_seed(seed, static_cast<std::uint64_t>(i)), kMix[static_cast<std::size_t>(i % 4)], Shape::disjoint);
    const PairGeometry g = pair_geometry(in.phi, in.xu, in.xv);
    const double dk = support_extremes(in.phi, support_union(g.support_u, g.support_v)).delta;
    if (dk >= 1.0) {
      ++r.skipped;
      continue;
    }
    const double dmax = std::min(g.delta_max, dk);
    const BoundInterval b = rigorous ? rcp_orthogonal_bounds_rigorous(dk, dmax) : rcp_orthogonal_bounds(dk, dmax);
    const double e = excursion(b, g.cos_beta);
    ++r.instances;
    r.passes += e <= r.tolerance;
    r.worst = std::max(r.worst, e);
  }
  finish_rate(r);
  return r;
}

CheckResult check_rotation(std::int64_t count, std::uint64_t seed) {
  CheckResult r;
  r.name = "eigenbasis rotation preserves norms and inner product";
  r.tolerance = 1e-10;
  for (std::int64_t i = 0; i < count; ++i) {
    const Instance in = make_instance(derive_seed(seed, static_cast<std::uint64_t>(i)), kMix[static_cast<std::size_t>(i % 4)],
                                      i % 2 ? Shape::same_support : Shape::independent);
    const Support I = support_union(support_of(in.xu), support_of(in.xv));
    const GramSpectrum s = eig_sym(gram(restrict_columns(in.phi, I)));
    const RotatedPair p = rotate_pair(s, in.xu, in.xv, I);
    const double nu = in.xu.norm(), nv = in.xv.norm();
    const double err = std::max({std::abs(p.z_u.norm() - nu) / nu, std::abs(p.z_v.norm() - nv) / nv,
                                 std::abs(p.z_u.dot(p.z_v) - in.xu.dot(in.xv)) / (nu * nv)});
    ++r.instances;
    r.passes += err <= r.tolerance;
    r.worst = std::max(r.worst, err);
  }
  finish_rate(r);
  return r;
}

CheckResult check_inner_expansion(std::int64_t count, std::uint64_t seed) {
  CheckResult r;
  r.name = "inner product equals eigenvalue-weighted expansion";
  r.tolerance = 1e-9;
  for (std::int64_t i = 0; i < count; ++i) {
    const Instance in = make_instance(derive_seed(seed, static_cast<std::uint64_t>(i)), kMix[static_cast<std::size_t>(i % 4)],
                                      i % 2 ? Shape::same_support : Shape::independent);
    const Support I = support_union(support_of(in.xu), support_of(in.xv));
    const GramSpectrum s = eig_sym(gram(restrict_columns(in.phi, I)));
    const RotatedPair p = rotate_pair(s, in.xu, in.xv, I);
    const double direct = (in.phi * in.xu).dot(in.phi * in.xv);
    const double err = std::abs(direct - expand_inner(s, p)) / std::max(1.0, std::abs(direct));
    ++r.instances;
    r.passes += err <= r.tolerance;
    r.worst = std::max(r.worst, err);
  }
  finish_rate(r);
  return r;
}

CheckResult check_orthant(std::int64_t count, std::uint64_t seed) {
  CheckResult r;
  r.name = "orthant ratio bound";
  r.tolerance = 1e-12;
  std::int64_t chain_ok = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const RotatedInstance in = make_positive_pair(derive_seed(seed, static_cast<std::uint64_t>(i)), i);
    const GramSpectrum s = eig_sym(gram(restrict_columns(in.phi, in.I)));
    const RotatedPair p = rotate_pair(s, in.xu, in.xv, in.I);
    if (!(p.z_u.dot(p.z_v) > 0.0)) {
      ++r.skipped;
      continue;
    }
    const OrthantRatio o = orthant_ratio(p);
    ++r.instances;
    r.passes += o.within;
    chain_ok += o.chain_holds;
    r.worst = std::max(r.worst, o.ratio - o.bound);
  }
  r.pass = r.instances > 0 && r.passes == r.instances && chain_ok == r.instances;
  r.detail = std::to_string(r.passes) + "/" + std::to_string(r.instances) + " within, chain " +
             std::to_string(chain_ok) + "/" + std::to_string(r.instances) + ", max(ratio - bound) " +
             fmt("%.3g", r.worst);
  return r;
}

CheckResult check_minus_term(std::int64_t count, std::uint64_t seed) {
  CheckResult r;
  r.name = "minus-term conditions imply the sandwich";
  std::int64_t antecedent = 0, counterexamples = 0, same_sign_ok = 0;
  for (std::int64_t i = 0; i < count; ++i) {
    const RotatedInstance in = make_positive_pair(derive_seed(seed, static_cast<std::uint64_t>(i)), i);
    const GramSpectrum s = eig_sym(gram(restrict_columns(in.phi, in.I)));
    const RotatedPair p = rotate_pair(s, in.xu, in.xv, in.I);
    const double ca = in.xu.dot(in.xv) / (in.xu.norm() * in.xv.norm());
    if (!(ca > 0.0) || p.same_sign.empty()) {
      ++r.skipped;
      continue;
    }
    const MinusTermReport m = minus_term_diag(s, p, ca);
    ++r.instances;
    antecedent += m.condition_A && m.condition_B;
    counterexamples += !m.implication_ok;
    same_sign_ok += m.sandwich_same_sign;
    r.passes += m.implication_ok;
  }
  r.worst = static_cast<double>(counterexamples);
  r.pass = r.instances > 0 && counterexamples == 0;
  r.detail = std::to_string(counterexamples) + " counterexamples in " + std::to_string(r.instances) +
             " instances, conditions met in " + std::to_string(antecedent) + ", same-sign sandwich " +
             std::to_string(same_sign_ok) + "/" + std::to_string(r.instances);
  return r;
}

CheckResult check_wishart_moments(Index M, std::int64_t n, std::uint64_t seed) {
  CheckResult r;
  r.name = "Gram diagonal moments";
  const std::vector<double> g = gram_diagonal_samples(M, n, seed);
  double mean = 0.0;
  for (double v : g) mean += v;
  mean /= static_cast<double>(n);
  std::vector<double> scaled(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) scaled[i] = static_cast<double>(M) * g[i];
  const MomentCheck mc = chi_sq_moment_check(M, scaled);
  const double mean_err = std::abs(mean - 1.0);
  const double var_err = std::abs(mc.variance / (2.0 * static_cast<double>(M)) - 1.0);
  r.instances = n;
  r.passes = (mean_err <= 0.01) + (var_err <= 0.1);
  r.worst = std::max(mean_err / 0.01, var_err / 0.1);
  r.tolerance = 1.0;
  r.pass = mean_err <= 0.01 && var_err <= 0.1;
  r.detail = "mean(G_ii) " + fmt("%.5f", mean) + " (|err| " + fmt("%.2e", mean_err) + " <= 0.01), var(M G_ii)/2M " +
             fmt("%.4f", mc.variance / (2.0 * static_cast<double>(M))) + " (|err| " + fmt("%.3f", var_err) + " <= 0.1)";
  return r;
}

CheckResult check_wishart_normality(Index M, Index N, Index supp_size, std::int64_t campaigns, std::int64_t trials,
                                   std::uint64_t seed, unsigned threads) {
  CheckResult r;
  r.name = "transformed eigenvalue statistic passes KS";
  r.tolerance = 0.9;
  double var_sum = 0.0;
  for (std::int64_t c = 0; c < campaigns; ++c) {
    const EigenCampaign camp = run_campaign(M, N, supp_size, trials, derive_seed(seed, static_cast<std::uint64_t>(c)), threads);
    std::vector<double> sorted = camp.transformed;
    std::sort(sorted.begin(), sorted.end());
    const TestOutcome ks = ks_test(sorted, 0.01);
    double mean = 0.0, var = 0.0;
    for (double v : sorted) mean += v;
    mean /= static_cast<double>(sorted.size());
    for (double v : sorted) var += (v - mean) * (v - mean);
    var_sum += var / static_cast<double>(sorted.size() - 1);
    ++r.instances;
    r.passes += ks.pass;
  }
  const double rate = r.instances ? static_cast<double>(r.passes) / static_cast<double>(r.instances) : 0.0;
  r.worst = rate;
  r.pass = rate >= r.tolerance;
  r.detail = "pass rate " + fmt("%.3f", rate) + " (" + std::to_string(r.passes) + "/" + std::to_string(r.instances) +
             "), need >= 0.9; mean transformed variance " + fmt("%.4f", var_sum / static_cast<double>(r.instances));
  return r;
}

CheckResult check_pass_rate_monotone(std::int64_t campaigns_per_cell, std::int64_t trials, std::uint64_t seed,
                                     unsigned threads) {
  CheckResult r;
  r.name = "KS pass rate falls as |I|/M grows";
  r.tolerance = 0.1;
  const std::vector<Index> Ms = {32, 64, 128}, supps = {1, 2, 4, 8};
  const std::vector<PassRateCell> cells = pass_rate_scan({256}, Ms, supps, campaigns_per_cell, trials, seed,
                                                         {.alpha = 0.01, .mode = KsMode::pooled, .threads = threads});
  auto rate_of = [&](Index M, Index k) {
    for (const PassRateCell& c : cells)
      if (c.M == M && c.supp_size == k) return c.rate();
    fail(ErrorKind::numeric_failure, "pass-rate cell missing");
  };
  std::string grid;
  bool ok = true;
  double worst_rise = 0.0;
  for (Index M : Ms) {
    grid += " M=" + std::to_string(M) + ":";
    for (std::size_t a = 0; a < supps.size(); ++a) {
      grid += fmt(" %.2f", rate_of(M, supps[a]));
      if (a > 0) {
        const double rise = rate_of(M, supps[a]) - rate_of(M, supps[a - 1]);
        worst_rise = std::max(worst_rise, rise);
        if (rise > r.tolerance) ok = false;
        ++r.instances;
        r.passes += rise <= r.tolerance;
      }
    }
  }
  const double low_ratio = rate_of(128, 1), high_ratio = rate_of(32, 8);
  ++r.instances;
  r.passes += low_ratio > high_ratio;
  ok = ok && low_ratio > high_ratio;
  r.worst = worst_rise;
  r.pass = ok;
  r.detail = "rates by |I| in {1,2,4,8}:" + grid + "; rate(|I|/M = 1/128) " + fmt("%.2f", low_ratio) +
             " vs rate(|I|/M = 1/4) " + fmt("%.2f", high_ratio);
  return r;
}

CheckResult check_dct(std::int64_t count, std::uint64_t seed) {
  CheckResult r;
  r.name = "DCT preserves energy, inner product and angle";
  r.tolerance = 1e-10;
  static constexpr std::array<Index, 4> sizes = {8, 16, 64, 128};
  std::array<SparsityBasis, 4> bases = {dct_basis(8), dct_basis(16), dct_basis(64), dct_basis(128)};
  for (std::int64_t i = 0; i < count; ++i) {
    const std::size_t b = static_cast<std::size_t>(i % 4);
    const Index N = sizes[b];
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    Vector xu(N), xv(N);
    for (Index k = 0; k < N; ++k) xu[k] = rng.normal();
    for (Index k = 0; k < N; ++k) xv[k] = rng.normal();
    const Vector au = bases[b].entries * xu, av = bases[b].entries * xv;
    const double nu = xu.norm(), nv = xv.norm();
    const double err = std::max({std::abs(au.norm() - nu) / nu, std::abs(av.norm() - nv) / nv,
                                 std::abs(au.dot(av) - xu.dot(xv)) / (nu * nv),
                                 std::abs(au.dot(av) / (au.norm() * av.norm()) - xu.dot(xv) / (nu * nv))});
    ++r.instances;
    r.passes += err <= r.tolerance;
    r.worst = std::max(r.worst, err);
  }
  // Curves on synthetic scenes, with and without a dark band.
  for (int k = 0; k < 8; ++k) {
    const Matrix X = gen_synthetic_image(128, 64, 0.2 + 0.1 * k, derive_seed(seed, 1'000'000 + static_cast<std::uint64_t>(k)),
                                         {.zero_band = k % 2 == 1});
    const DctPath path = dct_path(bases[3], X);
    const CurvePair cx = curves(X, 'X');
    double err = 0.0;
    for (std::size_t j = 0; j < cx.mu.values.size(); ++j)
      err = std::max(err, std::abs(*cx.mu.values[j] - *path.curves.mu.values[j]));
    for (std::size_t j = 0; j < cx.energy.values.size(); ++j)
      err = std::max(err, std::abs(*cx.energy.values[j] - *path.curves.energy.values[j]) /
                              std::max(1.0, *cx.energy.values[j]));
    ++r.instances;
    r.passes += err <= r.tolerance;
    r.worst = std::max(r.worst, err);
  }
  finish_rate(r);
  return r;
}

CheckResult check_curve_contrast(std::uint64_t seed) {
  CheckResult r;
  r.name = "smooth scene curves track, sparse ensemble curves do not";
  r.tolerance = 0.9;
  const Matrix X = gen_synthetic_image(128, 64, 0.95, derive_seed(seed, 0));
  const MeasurementMatrix phi = gen_gaussian_matrix(64, 128, derive_seed(seed, 1));
  const Matrix Y = measure_columns(phi.entries, X);
  const double smooth = pearson(curves(X, 'X').mu, curves(Y, 'Y').mu);
  const EnsembleResult e = ensemble_experiment(23, 256, 128, 4, 119, derive_seed(seed, 2));
  r.instances = 2;
  r.passes = (smooth >= 0.9) + (e.mu_correlation < smooth);
  r.worst = smooth;
  r.pass = r.passes == 2;
  r.detail = "pearson(mu_X, mu_Y) smooth scene " + fmt("%.4f", smooth) + " (need >= 0.9), sparse ensemble " +
             fmt("%.4f", e.mu_correlation) + " (need < smooth)";
  return r;
}

}  // namespace rcpkit
