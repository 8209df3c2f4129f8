#pragma once

// Support restriction, Gram matrices, the symmetric eigensolver and
// Gershgorin discs.

#include "rcpkit/types.hpp"

#include <vector>

namespace rcpkit {

/// Columns of phi listed in I, in ascending index order. I must be
/// nonempty, duplicate-free and in range.
Matrix restrict_columns(const Matrix& phi, const Support& I);

/// phi^T phi, symmetrized exactly.
Matrix gram(const Matrix& phi_restricted);

struct GramSpectrum {
  Vector eigenvalues;      // descending, tiny negatives clamped to 0
  Vector raw_eigenvalues;  // same order, before clamping
  Matrix eigenvectors;     // column i pairs with eigenvalues[i]
  int sweeps = 0;

  Index size() const noexcept { return eigenvalues.size(); }
  double lambda_max() const { return eigenvalues[0]; }
  double lambda_min() const { return eigenvalues[eigenvalues.size() - 1]; }
};

struct EigOptions {
  int max_sweeps = 100;
  bool vectors = true;
};

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Iterates until the off-diagonal Frobenius mass is at most
/// 1e-12 * ||G||_F. Eigenvalues in [-1e-12 * max(1, ||G||_F), 0) are
/// clamped to zero; the unclamped values stay in raw_eigenvalues. Equal
/// eigenvalues keep the order Jacobi produced them in (stable sort).
///
/// Throws invalid-argument if G is not square or not symmetric within
/// 1e-10 * max(1, max|G_ij|), numeric-failure after max_sweeps.
GramSpectrum eig_sym(const Matrix& G, const EigOptions& options = {});

/// max_i sum_{j != i} |G_ij|
double gershgorin_radius(const Matrix& G);

struct GershgorinDiscs {
  std::vector<double> centers;
  std::vector<double> radii;
  double radius = 0.0;  // largest row radius
  bool unit_diagonal = false;
  bool all_contained = false;  // every eigenvalue inside some disc
};

/// Per-row discs and the containment check against a computed spectrum.
GershgorinDiscs gershgorin_discs(const Matrix& G, const GramSpectrum& spectrum);

/// ||V diag(lambda) V^T - G||_F / max(||G||_F, tiny), using raw eigenvalues.
double reconstruction_error(const Matrix& G, const GramSpectrum& spectrum);

}  // namespace rcpkit
