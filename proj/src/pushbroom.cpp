#include "rcpkit/pushbroom.hpp"

#include "rcpkit/error.hpp"
#include "rcpkit/parallel.hpp"
#include "rcpkit/rng.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rcpkit {

Matrix measure_columns(const Matrix& phi, const Matrix& X) {
  require(phi.cols() == X.rows(), "measure_columns: Phi has " + std::to_string(phi.cols()) +
                                      " columns but X has " + std::to_string(X.rows()) + " rows");
  Matrix Y(phi.rows(), X.cols());
  for (Index j = 0; j < X.cols(); ++j) Y.col(j) = phi * X.col(j);
  return Y;
}

const char* to_string(CurveLabel label) noexcept {
  switch (label) {
    case CurveLabel::energy_X: return "energy_X";
    case CurveLabel::energy_Y: return "energy_Y";
    case CurveLabel::energy_A: return "energy_A";
    case CurveLabel::mu_X: return "mu_X";
    case CurveLabel::mu_Y: return "mu_Y";
    case CurveLabel::mu_A: return "mu_A";
  }
  return "?";
}

const char* to_string(SupportMode mode) noexcept { return mode == SupportMode::sparse ? "sparse" : "full"; }

CurvePair curves(const Matrix& m, char matrix_name) {
  CurvePair out;
  switch (matrix_name) {
    case 'X': out.energy.label = CurveLabel::energy_X; out.mu.label = CurveLabel::mu_X; break;
    case 'Y': out.energy.label = CurveLabel::energy_Y; out.mu.label = CurveLabel::mu_Y; break;
    case 'A': out.energy.label = CurveLabel::energy_A; out.mu.label = CurveLabel::mu_A; break;
    default: fail(ErrorKind::invalid_argument, std::string("curves: unknown matrix name '") + matrix_name + "'");
  }
  require(m.cols() >= 2, "curves: need at least 2 columns");
  const Index L = m.cols();
  std::vector<double> norms(static_cast<std::size_t>(L));
  for (Index j = 0; j < L; ++j) {
    const double e = m.col(j).squaredNorm();
    out.energy.values.emplace_back(e);
    norms[static_cast<std::size_t>(j)] = std::sqrt(e);
  }
  for (Index j = 0; j + 1 < L; ++j) {
    const double d = norms[static_cast<std::size_t>(j)] * norms[static_cast<std::size_t>(j + 1)];
    if (d == 0.0) {
      out.mu.values.emplace_back(std::nullopt);
      continue;
    }
    out.mu.values.emplace_back(std::clamp(m.col(j).dot(m.col(j + 1)) / d, -1.0, 1.0));
  }
  return out;
}

double pearson(const CurveSeries& a, const CurveSeries& b) {
  require(a.values.size() == b.values.size(), "pearson: series differ in length");
  std::vector<double> xs, ys;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    if (a.values[i] && b.values[i]) {
      xs.push_back(*a.values[i]);
      ys.push_back(*b.values[i]);
    }
  }
  if (xs.size() < 2) fail(ErrorKind::degenerate_sample, "pearson: fewer than 2 paired values");
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) fail(ErrorKind::degenerate_sample, "pearson: a series is constant");
  return sxy / std::sqrt(sxx * syy);
}

DctPath dct_path(const SparsityBasis& psi, const Matrix& X) {
  require(psi.entries.rows() == psi.entries.cols(), "dct_path: basis must be square");
  require(psi.size() == X.rows(), "dct_path: basis size does not match the column length");
  require(orthonormality_error(psi.entries) <= 1e-10, "dct_path: basis is not orthonormal");
  DctPath p;
  p.A = psi.entries * X;
  p.curves = curves(p.A, 'A');
  return p;
}

namespace {

RcpRow rcp_row(const Matrix& op, const Vector& xu, const Vector& xv, Index index) {
  RcpRow row;
  row.index = index;
  try {
    row.geometry = pair_geometry(op, xu, xv);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::undefined_angle || e.kind() == ErrorKind::degenerate_measurement) return row;
    throw;
  }
  const PairGeometry& g = *row.geometry;
  const Index n = xu.size();
  row.support_mode = static_cast<Index>(g.support_u.size()) < n && static_cast<Index>(g.support_v.size()) < n
                         ? SupportMode::sparse
                         : SupportMode::full;
  if (xu != xv) {
    const Vector pts[2] = {xu, xv};
    row.epsilon = jl_epsilon(op, pts);
  }
  if (row.epsilon && g.delta_max < 1.0 && *row.epsilon < 1.0) {
    row.jl = rcp_jl_bounds(g.xi, g.cos_alpha, g.delta_max, *row.epsilon);
    row.jl_rigorous = rcp_jl_bounds_rigorous(g.xi, g.cos_alpha, g.delta_max, *row.epsilon);
  }
  const SandwichCheck s = sandwich_check(op, xu, xv);
  row.sandwich_holds = s.holds;
  row.delta_joint = s.delta_joint;
  if (s.delta_joint < 1.0) row.ip = rcp_ip_bounds(g.cos_alpha, s.delta_joint);
  return row;
}

}  // namespace

std::vector<RcpRow> rcp_table(const Matrix& op, const Matrix& signals, unsigned threads) {
  require(op.cols() == signals.rows(), "rcp_table: operator columns must match the signal length");
  const Index pairs = std::max<Index>(signals.cols() - 1, 0);
  std::vector<RcpRow> rows(static_cast<std::size_t>(pairs));
  parallel_for(static_cast<std::size_t>(pairs), threads, [&](std::size_t j) {
    const Index jj = static_cast<Index>(j);
    rows[j] = rcp_row(op, signals.col(jj), signals.col(jj + 1), jj);
  });
  return rows;
}

std::vector<RcpRow> compressible_rcp(const Matrix& phi, const SparsityBasis& psi, const Matrix& X, unsigned threads) {
  require(psi.entries.rows() == psi.entries.cols() && psi.size() == phi.cols() && X.rows() == psi.size(),
          "compressible_rcp: dimensions of Phi, Psi and X disagree");
  const Matrix op = phi * psi.entries.transpose();
  return rcp_table(op, psi.entries * X, threads);
}

const CurveSeries& PushbroomRun::curve(CurveLabel label) const {
  for (const CurveSeries& c : curves)
    if (c.label == label) return c;
  fail(ErrorKind::invalid_argument, std::string("PushbroomRun: no curve ") + to_string(label));
}

PushbroomRun run_pushbroom(const Matrix& X, const MeasurementMatrix& phi, const std::optional<SparsityBasis>& psi,
                           unsigned threads) {
  PushbroomRun run;
  run.X = X;
  run.phi = phi;
  run.psi = psi;
  run.Y = measure_columns(phi.entries, X);
  const CurvePair cx = curves(X, 'X');
  const CurvePair cy = curves(run.Y, 'Y');
  std::optional<DctPath> path;
  if (psi) {
    path = dct_path(*psi, X);
    run.A = path->A;
  }
  run.curves = {cx.energy, cy.energy};
  if (path) run.curves.push_back(path->curves.energy);
  run.curves.push_back(cx.mu);
  run.curves.push_back(cy.mu);
  if (path) run.curves.push_back(path->curves.mu);
  run.rcp_table = psi ? compressible_rcp(phi.entries, *psi, X, threads) : rcp_table(phi.entries, X, threads);
  return run;
}

EnsembleResult ensemble_experiment(Index count, Index N, Index M, Index k_min, Index k_max, std::uint64_t seed,
                                   unsigned threads) {
  require(count >= 2, "ensemble_experiment: need at least 2 signals");
  require(M >= 1 && N >= 1, "ensemble_experiment: M and N must be positive");
  require(1 <= k_min && k_min <= k_max && k_max <= N, "ensemble_experiment: need 1 <= k_min <= k_max <= N");
  EnsembleResult r;
  Rng rng(derive_seed(seed, 0));
  r.phi = gen_gaussian_matrix(M, N, derive_seed(seed, 1));
  r.X = Matrix::Zero(N, count);
  for (Index j = 0; j < count; ++j) {
    const Index k = k_min + static_cast<Index>(rng.below(static_cast<std::uint64_t>(k_max - k_min + 1)));
    r.sparsities.push_back(k);
    r.X.col(j) = gen_sparse_signal(N, k, derive_seed(seed, 2 + static_cast<std::uint64_t>(j))).values;
  }
  r.Y = measure_columns(r.phi.entries, r.X);
  r.curves_X = curves(r.X, 'X');
  r.curves_Y = curves(r.Y, 'Y');
  r.rcp_table = rcp_table(r.phi.entries, r.X, threads);
  r.mu_correlation = pearson(r.curves_X.mu, r.curves_Y.mu);
  return r;
}

}  // namespace rcpkit
