#include "rcpkit/spectra.hpp"

#include "rcpkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace rcpkit {

Matrix restrict_columns(const Matrix& phi, const Support& I) {
  require(!I.empty(), "restrict: support must be nonempty");
  Support sorted = I;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "restrict: duplicate index in support");
  require(sorted.front() >= 0 && sorted.back() < phi.cols(),
          "restrict: index out of range for a matrix with " + std::to_string(phi.cols()) + " columns");
  Matrix out(phi.rows(), static_cast<Index>(sorted.size()));
  for (std::size_t k = 0; k < sorted.size(); ++k) out.col(static_cast<Index>(k)) = phi.col(sorted[k]);
  return out;
}

Matrix gram(const Matrix& phi_restricted) {
  Matrix g = phi_restricted.transpose() * phi_restricted;
  for (Index i = 0; i < g.rows(); ++i)
    for (Index j = i + 1; j < g.cols(); ++j) g(j, i) = g(i, j);
  return g;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

GramSpectrum eig_sym(const Matrix& G, const EigOptions& options) {
  require(G.rows() == G.cols() && G.rows() >= 1, "eig_sym: matrix must be square and nonempty");
  require(G.allFinite(), "eig_sym: non-finite entries");
  const Index n = G.rows();
  const double amax = G.cwiseAbs().maxCoeff();
  require((G - G.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, amax),
          "eig_sym: matrix is not symmetric within tolerance");

  Matrix a = 0.5 * (G + G.transpose());
  Matrix v = options.vectors ? Matrix::Identity(n, n) : Matrix();
  const double scale = a.norm();
  const double target = 1e-12 * scale;

  int sweep = 0;
  bool converged = off_diagonal_norm(a) <= target;
  while (!converged && sweep < options.max_sweeps) {
    ++sweep;
    for (Index p = 0; p < n - 1; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t;
        if (std::abs(theta) > 1e150)
          t = 0.5 / theta;
        else
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Index k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        if (options.vectors) {
          for (Index k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - s * vkq;
            v(k, q) = s * vkp + c * vkq;
          }
        }
      }
    }
    converged = off_diagonal_norm(a) <= target;
  }
  if (!converged)
    fail(ErrorKind::numeric_failure,
         "eig_sym: Jacobi did not converge in " + std::to_string(options.max_sweeps) + " sweeps");

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index i, Index j) { return a(i, i) > a(j, j); });

  GramSpectrum out;
  out.sweeps = sweep;
  out.raw_eigenvalues.resize(n);
  out.eigenvalues.resize(n);
  if (options.vectors) out.eigenvectors.resize(n, n);
  const double clamp_tol = 1e-12 * std::max(1.0, scale);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[static_cast<std::size_t>(k)];
    const double lam = a(src, src);
    out.raw_eigenvalues[k] = lam;
    out.eigenvalues[k] = (lam < 0.0 && lam >= -clamp_tol) ? 0.0 : lam;
    if (options.vectors) out.eigenvectors.col(k) = v.col(src);
  }
  return out;
}

double gershgorin_radius(const Matrix& G) {
  double r = 0.0;
  for (Index i = 0; i < G.rows(); ++i) {
    double row = 0.0;
    for (Index j = 0; j < G.cols(); ++j)
      if (j != i) row += std::abs(G(i, j));
    r = std::max(r, row);
  }
  return r;
}

GershgorinDiscs gershgorin_discs(const Matrix& G, const GramSpectrum& spectrum) {
  GershgorinDiscs out;
  const Index n = G.rows();
  out.unit_diagonal = true;
  for (Index i = 0; i < n; ++i) {
    double row = 0.0;
    for (Index j = 0; j < n; ++j)
      if (j != i) row += std::abs(G(i, j));
    out.centers.push_back(G(i, i));
    out.radii.push_back(row);
    out.radius = std::max(out.radius, row);
    if (std::abs(G(i, i) - 1.0) > 1e-12) out.unit_diagonal = false;
  }
  const double tol = 1e-12 * std::max(1.0, G.norm());
  out.all_contained = true;
  for (Index k = 0; k < spectrum.size(); ++k) {
    const double lam = spectrum.raw_eigenvalues[k];
    bool inside = false;
    for (Index i = 0; i < n && !inside; ++i)
      inside = std::abs(lam - out.centers[static_cast<std::size_t>(i)]) <= out.radii[static_cast<std::size_t>(i)] + tol;
    out.all_contained = out.all_contained && inside;
  }
  return out;
}

double reconstruction_error(const Matrix& G, const GramSpectrum& spectrum) {
  const Matrix& V = spectrum.eigenvectors;
  const Matrix rec = V * spectrum.raw_eigenvalues.asDiagonal() * V.transpose();
  return (rec - G).norm() / std::max(G.norm(), 1e-300);
}

}  // namespace rcpkit
