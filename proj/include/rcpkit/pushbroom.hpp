#pragma once

// Column-by-column measurement of scenes, energy and adjacent-correlation
// curves, and the per-pair conformal table.

#include "rcpkit/ensembles.hpp"
#include "rcpkit/rcpcalc.hpp"
#include "rcpkit/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rcpkit {

/// y_j = Phi x_j for every column.
Matrix measure_columns(const Matrix& phi, const Matrix& X);

enum class CurveLabel { energy_X, energy_Y, energy_A, mu_X, mu_Y, mu_A };
const char* to_string(CurveLabel label) noexcept;

// A missing value marks an adjacent correlation involving a zero column.
struct CurveSeries {
  CurveLabel label = CurveLabel::energy_X;
  std::vector<std::optional<double>> values;
};

struct CurvePair {
  CurveSeries energy;  // length L
  CurveSeries mu;      // length L - 1
};

/// Energy |col_j|^2 and adjacent cosine mu_j = cos(col_j, col_{j+1}).
/// `matrix_name` is 'X', 'Y' or 'A'. Needs at least 2 columns.
CurvePair curves(const Matrix& m, char matrix_name);

/// Pearson correlation over the indices where both series have a value.
/// Throws degenerate-sample with fewer than 2 such indices or zero variance.
double pearson(const CurveSeries& a, const CurveSeries& b);

struct DctPath {
  Matrix A;  // Psi X
  CurvePair curves;
};

/// A = Psi X and its curves. Psi must be orthonormal within 1e-10.
DctPath dct_path(const SparsityBasis& psi, const Matrix& X);

// Which support the per-pair isometry constants were computed on.
enum class SupportMode {
  sparse,  // both signals have zeros; their own supports are used
  full,    // a dense signal; the support is every index
};
const char* to_string(SupportMode mode) noexcept;

struct RcpRow {
  Index index = 0;  // pair (index, index + 1)
  std::optional<PairGeometry> geometry;  // absent for a zero column
  SupportMode support_mode = SupportMode::full;
  std::optional<double> epsilon;      // JL constant of the pair {x_u, x_v}
  std::optional<BoundInterval> jl;    // needs dmax < 1 and eps < 1
  std::optional<BoundInterval> jl_rigorous;
  std::optional<BoundInterval> ip;    // on the joint support, needs dK < 1
  bool sandwich_holds = false;
  double delta_joint = 0.0;
};

/// One row per adjacent column pair of `signals`, measured by `op`.
std::vector<RcpRow> rcp_table(const Matrix& op, const Matrix& signals, unsigned threads = 1);

/// rcp_table of the coefficients A = Psi X under the reconstruction
/// matrix Phi Psi^T.
std::vector<RcpRow> compressible_rcp(const Matrix& phi, const SparsityBasis& psi, const Matrix& X,
                                     unsigned threads = 1);

struct PushbroomRun {
  Matrix X;
  MeasurementMatrix phi;
  std::optional<SparsityBasis> psi;
  Matrix Y;
  std::optional<Matrix> A;
  std::vector<CurveSeries> curves;  // energy_X, energy_Y, [energy_A], mu_X, mu_Y, [mu_A]
  std::vector<RcpRow> rcp_table;    // on A under Phi Psi^T when Psi is given, else on X under Phi

  const CurveSeries& curve(CurveLabel label) const;
};

PushbroomRun run_pushbroom(const Matrix& X, const MeasurementMatrix& phi, const std::optional<SparsityBasis>& psi,
                           unsigned threads = 1);

struct EnsembleResult {
  Matrix X;  // N x count, column j is the j-th sparse signal
  MeasurementMatrix phi;
  std::vector<Index> sparsities;
  Matrix Y;
  CurvePair curves_X, curves_Y;
  std::vector<RcpRow> rcp_table;
  double mu_correlation = 0.0;  // pearson(mu_X, mu_Y)
};

/// `count` Gaussian sparse signals with sparsities uniform on
/// [k_min, k_max], measured by one Gaussian M x N matrix.
EnsembleResult ensemble_experiment(Index count, Index N, Index M, Index k_min, Index k_max, std::uint64_t seed,
                                   unsigned threads = 1);

}  // namespace rcpkit
