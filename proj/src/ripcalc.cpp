#include "rcpkit/ripcalc.hpp"

#include "rcpkit/error.hpp"
#include "rcpkit/parallel.hpp"
#include "rcpkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace rcpkit {

const char* to_string(RicMode mode) noexcept { return mode == RicMode::exact ? "exact" : "monte_carlo"; }

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  __extension__ using u128 = unsigned __int128;
  u128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

Support unrank_combination(Index n, Index k, std::uint64_t rank) {
  require(k >= 0 && k <= n, "unrank_combination: need 0 <= k <= n");
  Support out;
  out.reserve(static_cast<std::size_t>(k));
  Index x = 0;
  for (Index pos = 0; pos < k; ++pos) {
    for (;; ++x) {
      const std::uint64_t c = binomial(static_cast<std::uint64_t>(n - 1 - x), static_cast<std::uint64_t>(k - 1 - pos));
      if (rank < c) break;
      rank -= c;
    }
    out.push_back(x++);
  }
  return out;
}

bool next_combination(Support& c, Index n) {
  const Index k = static_cast<Index>(c.size());
  Index i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (Index j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

namespace {

void check_support(const Matrix& phi, const Support& I) {
  require(!I.empty(), "support must be nonempty");
  require(std::is_sorted(I.begin(), I.end()) && std::adjacent_find(I.begin(), I.end()) == I.end(),
          "support must be sorted and duplicate-free");
  require(I.front() >= 0 && I.back() < phi.cols(), "support index out of range");
}

Matrix principal(const Matrix& g, const Support& I) {
  const Index k = static_cast<Index>(I.size());
  Matrix s(k, k);
  for (Index a = 0; a < k; ++a)
    for (Index b = 0; b < k; ++b) s(a, b) = g(I[static_cast<std::size_t>(a)], I[static_cast<std::size_t>(b)]);
  return s;
}

struct Extremes {
  double lmin, lmax, delta;
};

Extremes extremes_of(const Matrix& sub) {
  const GramSpectrum sp = eig_sym(sub, {.max_sweeps = 100, .vectors = false});
  const double lmax = sp.lambda_max();
  const double lmin = sp.lambda_min();
  return {lmin, lmax, std::max(lmax - 1.0, 1.0 - lmin)};
}

struct Best {
  double delta = -std::numeric_limits<double>::infinity();
  Support witness;
  double lmin = 0.0, lmax = 0.0;
};

// Larger delta wins; equal delta goes to the lexicographically smaller support.
void offer(Best& best, double delta, const Support& s, double lmin, double lmax) {
  if (delta > best.delta || (delta == best.delta && (best.witness.empty() || s < best.witness))) {
    best.delta = delta;
    best.witness = s;
    best.lmin = lmin;
    best.lmax = lmax;
  }
}

void require_K(const Matrix& phi, Index K) {
  require(K >= 1 && K <= phi.cols(),
          "sparsity K must satisfy 1 <= K <= N (N=" + std::to_string(phi.cols()) + ", K=" + std::to_string(K) + ")");
}

}  // namespace

SupportIsometry ric_support(const Matrix& phi, const Support& I) {
  check_support(phi, I);
  SupportIsometry out;
  out.spectrum = eig_sym(gram(restrict_columns(phi, I)));
  out.delta = std::max(out.spectrum.lambda_max() - 1.0, 1.0 - out.spectrum.lambda_min());
  return out;
}

SupportExtremes support_extremes(const Matrix& phi, const Support& I) {
  check_support(phi, I);
  const Matrix sub = restrict_columns(phi, I);
  SupportExtremes out;
  if (sub.cols() > sub.rows()) {
    Matrix dual = sub * sub.transpose();
    dual = 0.5 * (dual + dual.transpose()).eval();
    const GramSpectrum sp = eig_sym(dual, {.max_sweeps = 100, .vectors = false});
    out.lambda_max = sp.lambda_max();
    out.lambda_min = 0.0;
  } else {
    const Extremes e = extremes_of(gram(sub));
    out.lambda_max = e.lmax;
    out.lambda_min = e.lmin;
  }
  out.delta = std::max(out.lambda_max - 1.0, 1.0 - out.lambda_min);
  return out;
}

RicResult ric_exact(const Matrix& phi, Index K, const RipOptions& options) {
  require_K(phi, K);
  const Index N = phi.cols();
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(K));
  if (total > options.enumeration_cap)
    fail(ErrorKind::capacity, "ric_exact: C(" + std::to_string(N) + "," + std::to_string(K) + ") supports exceed the enumeration cap of " +
                                  std::to_string(options.enumeration_cap) + "; use monte_carlo mode");
  const Matrix g = gram(phi);
  const std::size_t chunks = chunk_count(total, options.threads);
  std::vector<Best> partial(chunks);
  parallel_chunks(total, options.threads, [&](std::size_t lo, std::size_t hi, std::size_t w) {
    if (lo >= hi) return;
    Support c = unrank_combination(N, K, lo);
    Best best;
    for (std::size_t r = lo; r < hi; ++r) {
      const Extremes e = extremes_of(principal(g, c));
      if (e.delta > best.delta) {
        best.delta = e.delta;
        best.witness = c;
        best.lmin = e.lmin;
        best.lmax = e.lmax;
      }
      next_combination(c, N);
    }
    partial[w] = std::move(best);
  });
  Best best;
  for (const Best& b : partial)
    if (!b.witness.empty()) offer(best, b.delta, b.witness, b.lmin, b.lmax);

  RicResult out;
  out.K = K;
  out.delta = best.delta;
  out.mode = RicMode::exact;
  out.witness = best.witness;
  out.lambda_min = best.lmin;
  out.lambda_max = best.lmax;
  out.supports_examined = total;
  return out;
}

RicResult ric_monte_carlo(const Matrix& phi, Index K, std::int64_t trials, std::uint64_t seed,
                          const RipOptions& options) {
  require_K(phi, K);
  require(trials >= 1, "ric_monte_carlo: trials must be at least 1");
  const Index N = phi.cols();
  const std::uint64_t total = binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(K));
  Rng rng(seed);

  std::vector<Support> supports;
  constexpr std::uint64_t without_replacement_limit = 100'000;
  if (total <= without_replacement_limit) {
    std::vector<std::uint64_t> ranks(total);
    std::iota(ranks.begin(), ranks.end(), std::uint64_t{0});
    const std::uint64_t take = std::min<std::uint64_t>(total, static_cast<std::uint64_t>(trials));
    for (std::uint64_t i = 0; i < take; ++i) std::swap(ranks[i], ranks[i + rng.below(total - i)]);
    supports.reserve(take);
    for (std::uint64_t i = 0; i < take; ++i) supports.push_back(unrank_combination(N, K, ranks[i]));
  } else {
    supports.reserve(static_cast<std::size_t>(trials));
    for (std::int64_t t = 0; t < trials; ++t) supports.push_back(sample_subset(N, K, rng));
  }

  const Matrix g = gram(phi);
  std::vector<Extremes> ext(supports.size());
  parallel_for(supports.size(), options.threads, [&](std::size_t i) { ext[i] = extremes_of(principal(g, supports[i])); });

  Best best;
  for (std::size_t i = 0; i < supports.size(); ++i) offer(best, ext[i].delta, supports[i], ext[i].lmin, ext[i].lmax);

  RicResult out;
  out.K = K;
  out.delta = best.delta;
  out.mode = RicMode::monte_carlo;
  out.witness = best.witness;
  out.lambda_min = best.lmin;
  out.lambda_max = best.lmax;
  out.trials = trials;
  out.supports_examined = supports.size();
  return out;
}

namespace {

double spectral_norm(const Matrix& b) {
  const Matrix p = b.rows() <= b.cols() ? Matrix(b * b.transpose()) : Matrix(b.transpose() * b);
  const Matrix sym = 0.5 * (p + p.transpose());
  const GramSpectrum sp = eig_sym(sym, {.max_sweeps = 100, .vectors = false});
  return std::sqrt(std::max(0.0, sp.lambda_max()));
}

Matrix cross_block(const Matrix& g, const Support& I, const Support& J) {
  Matrix b(static_cast<Index>(I.size()), static_cast<Index>(J.size()));
  for (std::size_t a = 0; a < I.size(); ++a)
    for (std::size_t c = 0; c < J.size(); ++c) b(static_cast<Index>(a), static_cast<Index>(c)) = g(I[a], J[c]);
  return b;
}

}  // namespace

double roc(const Matrix& phi, const Support& I, const Support& I_prime) {
  check_support(phi, I);
  check_support(phi, I_prime);
  require(supports_disjoint(I, I_prime), "roc: supports overlap");
  return spectral_norm(restrict_columns(phi, I).transpose() * restrict_columns(phi, I_prime));
}

RocResult roc_exact(const Matrix& phi, Index K, Index K_prime, const RipOptions& options) {
  require_K(phi, K);
  require_K(phi, K_prime);
  const Index N = phi.cols();
  require(K + K_prime <= N, "roc_exact: need K + K' <= N");
  const std::uint64_t outer = binomial(static_cast<std::uint64_t>(N), static_cast<std::uint64_t>(K));
  const std::uint64_t inner = binomial(static_cast<std::uint64_t>(N - K), static_cast<std::uint64_t>(K_prime));
  const long double pairs = static_cast<long double>(outer) * static_cast<long double>(inner);
  if (pairs > static_cast<long double>(options.enumeration_cap))
    fail(ErrorKind::capacity, "roc_exact: number of disjoint support pairs exceeds the enumeration cap");

  const Matrix g = gram(phi);
  struct Local {
    double theta = -1.0;
    Support I, J;
  };
  const std::size_t chunks = chunk_count(outer, options.threads);
  std::vector<Local> partial(chunks);
  parallel_chunks(outer, options.threads, [&](std::size_t lo, std::size_t hi, std::size_t w) {
    if (lo >= hi) return;
    Local best;
    Support I = unrank_combination(N, K, lo);
    for (std::size_t r = lo; r < hi; ++r) {
      Support rest;
      rest.reserve(static_cast<std::size_t>(N - K));
      for (Index x = 0, p = 0; x < N; ++x) {
        if (p < K && I[static_cast<std::size_t>(p)] == x)
          ++p;
        else
          rest.push_back(x);
      }
      Support pos = unrank_combination(N - K, K_prime, 0);
      do {
        Support J(pos.size());
        for (std::size_t t = 0; t < pos.size(); ++t) J[t] = rest[static_cast<std::size_t>(pos[t])];
        const double th = spectral_norm(cross_block(g, I, J));
        if (th > best.theta) best = {th, I, J};
      } while (next_combination(pos, N - K));
      next_combination(I, N);
    }
    partial[w] = std::move(best);
  });

  RocResult out;
  out.K = K;
  out.K_prime = K_prime;
  out.theta = -1.0;
  for (const Local& l : partial) {
    if (l.I.empty()) continue;
    // Chunks are in lexicographic order of I, so strict > keeps the earliest tie.
    if (l.theta > out.theta) {
      out.theta = l.theta;
      out.I = l.I;
      out.I_prime = l.J;
    }
  }
  out.pairs_examined = static_cast<std::uint64_t>(pairs);
  return out;
}

}  // namespace rcpkit
