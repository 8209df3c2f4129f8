#pragma once

// Seeded generators for measurement matrices, sparsity bases, sparse
// signals and synthetic push-broom scenes. Every generator is a pure
// function of its arguments.

#include "rcpkit/types.hpp"

#include <cstdint>

namespace rcpkit {

enum class MatrixKind { gaussian, bernoulli01, custom };

const char* to_string(MatrixKind kind) noexcept;

struct MeasurementMatrix {
  Matrix entries;
  MatrixKind kind = MatrixKind::custom;
  std::uint64_t seed = 0;
  bool column_normalized = false;

  Index rows() const noexcept { return entries.rows(); }
  Index cols() const noexcept { return entries.cols(); }
};

/// i.i.d. N(0, 1/M) entries, filled column by column.
MeasurementMatrix gen_gaussian_matrix(Index M, Index N, std::uint64_t seed);

/// Entries in {0,1} with P(1) = 1/2. With `normalize`, every column is
/// scaled to unit norm; an all-zero column is redrawn first.
MeasurementMatrix gen_bernoulli01_matrix(Index M, Index N, std::uint64_t seed, bool normalize);

/// Wraps an arbitrary matrix (kind = custom).
MeasurementMatrix custom_matrix(Matrix entries);

/// Copy with every column scaled to unit norm. Zero columns are rejected.
MeasurementMatrix normalize_columns(const MeasurementMatrix& phi);

struct SparseSignal {
  Vector values;
  Support support;

  Index length() const noexcept { return values.size(); }
  Index sparsity() const noexcept { return static_cast<Index>(support.size()); }
};

/// Support uniform over K-subsets, nonzeros i.i.d. standard normal.
SparseSignal gen_sparse_signal(Index N, Index K, std::uint64_t seed);

/// Wraps a vector, deriving the support from its nonzero entries.
SparseSignal make_sparse_signal(Vector values);

enum class BasisKind { dct, identity, custom_orthonormal };

struct SparsityBasis {
  Matrix entries;  // rows are basis functions; coefficients are Psi * x
  BasisKind kind = BasisKind::identity;

  Index size() const noexcept { return entries.rows(); }
};

/// Orthonormal DCT-II: Psi(k, n) = c_k cos(pi (2n+1) k / 2N),
/// c_0 = sqrt(1/N), c_k = sqrt(2/N).
SparsityBasis dct_basis(Index N);

SparsityBasis identity_basis(Index N);

/// Validates Psi Psi^T = I within 1e-10 entrywise.
SparsityBasis custom_basis(Matrix entries);

double orthonormality_error(const Matrix& psi);

struct SyntheticImageOptions {
  // Rows [N/4, N/2) forced to zero in every column (a dark zone).
  bool zero_band = false;
};

/// N x L scene whose columns form a first-order autoregression:
///   x_0 ~ N(0, I),  x_{j+1} = s_j x_j + sqrt(1 - s_j^2) w_j,
/// with per-column coupling s_j = smoothness^{e_j}, e_j ~ chi^2(1).
/// smoothness = 1 gives identical columns, smoothness = 0 independent
/// ones, and E[s_j] (hence the adjacent-column cosine) rises with it.
Matrix gen_synthetic_image(Index N, Index L, double smoothness, std::uint64_t seed,
                           const SyntheticImageOptions& options = {});

}  // namespace rcpkit
