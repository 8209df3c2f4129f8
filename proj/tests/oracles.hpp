#pragma once

// Reference computations that share no code with the library. Slow and
// simple on purpose.

#include "rcpkit/types.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using rcpkit::Index;
using rcpkit::Matrix;
using rcpkit::Vector;

// Determinant by Gaussian elimination with partial pivoting in long double.
inline long double det(std::vector<std::vector<long double>> a) {
  const std::size_t n = a.size();
  long double d = 1.0L;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
    if (a[p][c] == 0.0L) return 0.0L;
    if (p != c) {
      std::swap(a[p], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      const long double f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

// Number of eigenvalues of symmetric G below x: sign changes in the
// sequence of leading principal minors of G - xI (characteristic
// polynomials of the leading blocks).
inline int count_below(const Matrix& G, long double x) {
  const std::size_t n = static_cast<std::size_t>(G.rows());
  int changes = 0;
  long double prev = 1.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<long double>> a(k, std::vector<long double>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        a[i][j] = static_cast<long double>(G(static_cast<Index>(i), static_cast<Index>(j))) - (i == j ? x : 0.0L);
    long double p = det(a);
    if (p == 0.0L) p = -prev * 1e-300L;  // treat an exact zero as a sign change
    if ((p < 0) != (prev < 0)) ++changes;
    prev = p;
  }
  return changes;
}

// Eigenvalues (descending) by bisection on count_below.
inline std::vector<double> bisection_eigenvalues(const Matrix& G) {
  const Index n = G.rows();
  long double r = 0.0L;
  for (Index i = 0; i < n; ++i) {
    long double s = 0.0L;
    for (Index j = 0; j < n; ++j) s += std::fabs(static_cast<long double>(G(i, j)));
    r = std::max(r, s);
  }
  std::vector<double> out;
  for (Index k = n; k >= 1; --k) {  // k-th smallest, from the top
    long double lo = -r - 1.0L, hi = r + 1.0L;
    for (int it = 0; it < 200; ++it) {
      const long double mid = 0.5L * (lo + hi);
      if (count_below(G, mid) >= k)
        hi = mid;
      else
        lo = mid;
    }
    out.push_back(static_cast<double>(0.5L * (lo + hi)));
  }
  return out;
}

// Largest eigenvalue of a PSD matrix by power iteration with a Rayleigh
// quotient stopping rule.
inline double power_max(const Matrix& G) {
  Vector v = Vector::Ones(G.rows()) / std::sqrt(static_cast<double>(G.rows()));
  for (Index i = 0; i < v.size(); ++i) v[i] += 1e-3 * static_cast<double>(i + 1);  // break symmetry
  v.normalize();
  double lambda = v.dot(G * v);
  for (int it = 0; it < 200000; ++it) {
    Vector w = G * v;
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    const double next = v.dot(G * v);
    if (std::abs(next - lambda) <= 1e-15 * std::max(1.0, std::abs(next)) && it > 20) return next;
    lambda = next;
  }
  return lambda;
}

// Smallest and largest eigenvalue of a PSD matrix by two power iterations.
inline std::pair<double, double> power_extremes(const Matrix& G) {
  const double top = power_max(G);
  const Matrix shifted = top * Matrix::Identity(G.rows(), G.cols()) - G;
  const double gap = power_max(shifted);
  return {top - gap, top};
}

// Standard normal CDF by the series 0.5 + phi(x) sum x^(2n+1)/(2n+1)!!,
// summed until the terms stop contributing.
inline long double normal_cdf(long double x) {
  const long double pi = 3.141592653589793238462643383279502884L;
  long double term = x, sum = x;
  for (int n = 1; n < 2000; ++n) {
    term *= x * x / (2.0L * n + 1.0L);
    sum += term;
    if (std::fabs(term) < 1e-30L * std::fabs(sum)) break;
  }
  return 0.5L + std::exp(-0.5L * x * x) / std::sqrt(2.0L * pi) * sum;
}

// sup_t |F_n(t) - Phi(t)| evaluated at every sample value from both sides
// plus a dense grid. Does not assume sorted input.
inline double ks_brute(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  auto ecdf = [&](double t, bool inclusive) {
    std::size_t c = 0;
    for (double x : xs) c += inclusive ? x <= t : x < t;
    return static_cast<double>(c) / n;
  };
  double d = 0.0;
  for (double t : xs) {
    const double f = static_cast<double>(normal_cdf(t));
    d = std::max({d, std::abs(ecdf(t, true) - f), std::abs(ecdf(t, false) - f)});
  }
  for (int g = -4000; g <= 4000; ++g) {
    const double t = g * 0.002;
    d = std::max(d, std::abs(ecdf(t, true) - static_cast<double>(normal_cdf(t))));
  }
  return d;
}

}  // namespace oracle
