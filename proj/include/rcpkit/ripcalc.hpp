#pragma once

// Restricted isometry and orthogonality constants.

#include "rcpkit/spectra.hpp"
#include "rcpkit/types.hpp"

#include <cstdint>
#include <optional>

namespace rcpkit {

struct SupportIsometry {
  double delta = 0.0;  // max(lambda_max - 1, 1 - lambda_min), unclamped
  GramSpectrum spectrum;
};

/// Isometry constant of a single support: the spectral range of
/// Phi_I^T Phi_I measured against 1.
SupportIsometry ric_support(const Matrix& phi, const Support& I);

/// Extreme eigenvalues of Phi_I^T Phi_I without eigenvectors. When |I|
/// exceeds the row count the smaller Phi_I Phi_I^T is decomposed and
/// lambda_min is 0.
struct SupportExtremes {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  double delta = 0.0;
};
SupportExtremes support_extremes(const Matrix& phi, const Support& I);

enum class RicMode { exact, monte_carlo };
const char* to_string(RicMode mode) noexcept;

struct RicResult {
  Index K = 0;
  double delta = 0.0;
  RicMode mode = RicMode::exact;
  Support witness;
  double lambda_min = 0.0;  // of the witness support
  double lambda_max = 0.0;
  std::int64_t trials = 0;  // monte_carlo only
  std::uint64_t supports_examined = 0;

  bool is_lower_bound() const noexcept { return mode == RicMode::monte_carlo; }
};

struct RocResult {
  Index K = 0;
  Index K_prime = 0;
  double theta = 0.0;
  Support I;
  Support I_prime;
  std::uint64_t pairs_examined = 0;
};

struct RipOptions {
  std::uint64_t enumeration_cap = 2'000'000;
  unsigned threads = 1;
};

/// Maximum of ric_support over every size-K support. Throws capacity when
/// C(N, K) exceeds the enumeration cap. Ties go to the lexicographically
/// smallest support.
RicResult ric_exact(const Matrix& phi, Index K, const RipOptions& options = {});

/// Maximum over `trials` sampled supports; a lower bound on ric_exact.
/// Below 1e5 candidate supports, supports are drawn without replacement
/// (so trials >= C(N, K) is exhaustive); above, with replacement.
RicResult ric_monte_carlo(const Matrix& phi, Index K, std::int64_t trials, std::uint64_t seed,
                          const RipOptions& options = {});

/// Spectral norm of Phi_I^T Phi_I' for disjoint I, I'.
double roc(const Matrix& phi, const Support& I, const Support& I_prime);

/// Maximum of roc over all disjoint (I, I') with |I| = K, |I'| = K'.
RocResult roc_exact(const Matrix& phi, Index K, Index K_prime, const RipOptions& options = {});

// Combinatorics used by the enumerators.

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// The rank-th K-subset of {0..n-1} in lexicographic order.
Support unrank_combination(Index n, Index k, std::uint64_t rank);

/// Advances to the lexicographic successor; false after the last one.
bool next_combination(Support& c, Index n);

}  // namespace rcpkit
