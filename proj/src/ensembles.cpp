#include "rcpkit/ensembles.hpp"

#include "rcpkit/error.hpp"
#include "rcpkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace rcpkit {

const char* to_string(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::gaussian: return "gaussian";
    case MatrixKind::bernoulli01: return "bernoulli01";
    case MatrixKind::custom: return "custom";
  }
  return "custom";
}

namespace {

void require_dims(Index M, Index N) {
  require(M >= 1 && N >= 1, "matrix dimensions must be positive, got " + std::to_string(M) + "x" +
                                std::to_string(N));
}

}  // namespace

MeasurementMatrix gen_gaussian_matrix(Index M, Index N, std::uint64_t seed) {
  require_dims(M, N);
  Rng rng(seed);
  const double sd = 1.0 / std::sqrt(static_cast<double>(M));
  MeasurementMatrix out;
  out.entries.resize(M, N);
  for (Index j = 0; j < N; ++j)
    for (Index i = 0; i < M; ++i) out.entries(i, j) = sd * rng.normal();
  out.kind = MatrixKind::gaussian;
  out.seed = seed;
  return out;
}

MeasurementMatrix gen_bernoulli01_matrix(Index M, Index N, std::uint64_t seed, bool normalize) {
  require_dims(M, N);
  Rng rng(seed);
  MeasurementMatrix out;
  out.entries.resize(M, N);
  for (Index j = 0; j < N; ++j) {
    for (;;) {
      Index ones = 0;
      for (Index i = 0; i < M; ++i) {
        const bool b = rng.bit();
        out.entries(i, j) = b ? 1.0 : 0.0;
        ones += b;
      }
      if (ones > 0 || !normalize) break;
    }
    if (normalize) out.entries.col(j) /= out.entries.col(j).norm();
  }
  out.kind = MatrixKind::bernoulli01;
  out.seed = seed;
  out.column_normalized = normalize;
  return out;
}

MeasurementMatrix custom_matrix(Matrix entries) {
  require(entries.rows() >= 1 && entries.cols() >= 1, "custom_matrix: empty matrix");
  require(entries.allFinite(), "custom_matrix: non-finite entries");
  MeasurementMatrix out;
  out.entries = std::move(entries);
  out.kind = MatrixKind::custom;
  return out;
}

MeasurementMatrix normalize_columns(const MeasurementMatrix& phi) {
  MeasurementMatrix out = phi;
  for (Index j = 0; j < out.cols(); ++j) {
    const double n = out.entries.col(j).norm();
    require(n > 0.0, "normalize_columns: column " + std::to_string(j) + " is zero");
    out.entries.col(j) /= n;
  }
  out.column_normalized = true;
  return out;
}

SparseSignal gen_sparse_signal(Index N, Index K, std::uint64_t seed) {
  require(N >= 1, "gen_sparse_signal: N must be positive");
  require(K >= 1 && K <= N, "gen_sparse_signal: need 1 <= K <= N, got K=" + std::to_string(K) +
                                ", N=" + std::to_string(N));
  Rng rng(seed);
  SparseSignal out;
  out.support = sample_subset(N, K, rng);
  out.values = Vector::Zero(N);
  for (Index i : out.support) {
    double v = 0.0;
    while (v == 0.0) v = rng.normal();
    out.values[i] = v;
  }
  return out;
}

SparseSignal make_sparse_signal(Vector values) {
  require(values.size() >= 1, "make_sparse_signal: empty vector");
  SparseSignal out;
  out.support = support_of(values);
  out.values = std::move(values);
  return out;
}

SparsityBasis dct_basis(Index N) {
  require(N >= 1, "dct_basis: N must be positive");
  SparsityBasis out;
  out.kind = BasisKind::dct;
  out.entries.resize(N, N);
  const double n = static_cast<double>(N);
  for (Index k = 0; k < N; ++k) {
    const double c = k == 0 ? std::sqrt(1.0 / n) : std::sqrt(2.0 / n);
    for (Index j = 0; j < N; ++j)
      out.entries(k, j) =
          c * std::cos(std::numbers::pi * (2.0 * static_cast<double>(j) + 1.0) * static_cast<double>(k) / (2.0 * n));
  }
  return out;
}

SparsityBasis identity_basis(Index N) {
  require(N >= 1, "identity_basis: N must be positive");
  return {Matrix::Identity(N, N), BasisKind::identity};
}

double orthonormality_error(const Matrix& psi) {
  if (psi.rows() != psi.cols()) return std::numeric_limits<double>::infinity();
  return (psi * psi.transpose() - Matrix::Identity(psi.rows(), psi.cols())).cwiseAbs().maxCoeff();
}

SparsityBasis custom_basis(Matrix entries) {
  require(entries.rows() >= 1 && entries.rows() == entries.cols(), "custom_basis: basis must be square");
  require(orthonormality_error(entries) <= 1e-10, "custom_basis: basis is not orthonormal within 1e-10");
  return {std::move(entries), BasisKind::custom_orthonormal};
}

Matrix gen_synthetic_image(Index N, Index L, double smoothness, std::uint64_t seed,
                           const SyntheticImageOptions& options) {
  require(N >= 2 && L >= 2, "gen_synthetic_image: need N >= 2 and L >= 2");
  require(smoothness >= 0.0 && smoothness <= 1.0, "gen_synthetic_image: smoothness must lie in [0, 1]");
  Rng rng(seed);
  Matrix X(N, L);
  for (Index i = 0; i < N; ++i) X(i, 0) = rng.normal();
  for (Index j = 1; j < L; ++j) {
    const double z = rng.normal();
    const double e = z * z;
    double s = 0.0;
    if (smoothness == 1.0)
      s = 1.0;
    else if (smoothness > 0.0)
      s = std::pow(smoothness, e);
    const double innov = std::sqrt(std::max(0.0, 1.0 - s * s));
    for (Index i = 0; i < N; ++i) {
      const double w = rng.normal();
      X(i, j) = s * X(i, j - 1) + innov * w;
    }
  }
  if (options.zero_band) X.middleRows(N / 4, N / 2 - N / 4).setZero();
  return X;
}

}  // namespace rcpkit
