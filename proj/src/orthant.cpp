#include "rcpkit/orthant.hpp"

#include "rcpkit/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rcpkit {

RotatedPair rotate_pair(const GramSpectrum& spectrum, const Vector& x_u, const Vector& x_v, const Support& I) {
  const Index k = static_cast<Index>(I.size());
  require(k >= 1, "rotate_pair: support is empty");
  require(spectrum.eigenvectors.rows() == k && spectrum.eigenvectors.cols() == k,
          "rotate_pair: spectrum size does not match the support");
  require(x_u.size() == x_v.size(), "rotate_pair: signals differ in length");
  require(std::is_sorted(I.begin(), I.end()) && I.front() >= 0 && I.back() < x_u.size(),
          "rotate_pair: support must be sorted and within the signal length");

  Vector xu_I(k), xv_I(k);
  for (Index a = 0; a < k; ++a) {
    xu_I[a] = x_u[I[static_cast<std::size_t>(a)]];
    xv_I[a] = x_v[I[static_cast<std::size_t>(a)]];
  }
  // Signals must live on I.
  const double tol = 1e-14;
  require(std::abs(x_u.squaredNorm() - xu_I.squaredNorm()) <= tol * std::max(1.0, x_u.squaredNorm()) &&
              std::abs(x_v.squaredNorm() - xv_I.squaredNorm()) <= tol * std::max(1.0, x_v.squaredNorm()),
          "rotate_pair: signal has nonzeros outside the support");

  RotatedPair p;
  p.z_u = spectrum.eigenvectors.transpose() * xu_I;
  p.z_v = spectrum.eigenvectors.transpose() * xv_I;
  for (Index i = 0; i < k; ++i) {
    const double prod = p.z_u[i] * p.z_v[i];
    if (prod > 0.0)
      p.same_sign.push_back(i);
    else if (prod < 0.0)
      p.opposite_sign.push_back(i);
    else
      p.zero.push_back(i);
  }
  return p;
}

double expand_inner(const GramSpectrum& spectrum, const RotatedPair& pair) {
  require(spectrum.size() == pair.z_u.size() && pair.z_u.size() == pair.z_v.size(),
          "expand_inner: dimension mismatch");
  return (spectrum.raw_eigenvalues.array() * pair.z_u.array() * pair.z_v.array()).sum();
}

namespace {

double subset_dot(const Vector& a, const Vector& b, const Support& s) {
  double d = 0.0;
  for (Index i : s) d += a[i] * b[i];
  return d;
}

double subset_norm(const Vector& a, const Support& s) {
  double d = 0.0;
  for (Index i : s) d += a[i] * a[i];
  return std::sqrt(d);
}

}  // namespace

OrthantRatio orthant_ratio(const RotatedPair& pair) {
  const double total = pair.z_u.dot(pair.z_v);
  if (!(total > 0.0)) fail(ErrorKind::domain, "orthant_ratio: needs <z_u, z_v> > 0 (cos alpha > 0)");
  const double nu = pair.z_u.norm(), nv = pair.z_v.norm();
  OrthantRatio r;
  r.cos_alpha = std::min(1.0, total / (nu * nv));
  const double same = subset_dot(pair.z_u, pair.z_v, pair.same_sign);
  const double opposite = subset_dot(pair.z_u, pair.z_v, pair.opposite_sign);
  r.ratio = std::abs(opposite) / total;
  r.bound = 1.0 / r.cos_alpha - 1.0;
  const double tol = 1e-12 * std::max(1.0, (std::abs(same) + std::abs(opposite)) / total);
  r.within = r.ratio <= r.bound + tol;

  r.cos_theta = same / (subset_norm(pair.z_u, pair.same_sign) * subset_norm(pair.z_v, pair.same_sign));
  if (!pair.opposite_sign.empty())
    r.cos_gamma = opposite / (subset_norm(pair.z_u, pair.opposite_sign) * subset_norm(pair.z_v, pair.opposite_sign));
  r.chain_holds = r.cos_theta >= r.cos_alpha - 1e-12 && (!r.cos_gamma || r.cos_alpha >= *r.cos_gamma - 1e-12);
  return r;
}

MinusTermReport minus_term_diag(const GramSpectrum& spectrum, const RotatedPair& pair, double cos_alpha) {
  if (!(cos_alpha > 0.0)) fail(ErrorKind::domain, "minus_term_diag: needs cos alpha > 0");
  if (pair.same_sign.empty()) fail(ErrorKind::domain, "minus_term_diag: same-sign set is empty");
  require(spectrum.size() == pair.z_u.size(), "minus_term_diag: dimension mismatch");

  const Vector& lam = spectrum.raw_eigenvalues;
  const double lmax = lam.maxCoeff();
  const double lmin = lam.minCoeff();
  const double majorant = (lmax - lmin) * (1.0 - cos_alpha) / (cos_alpha * cos_alpha);

  MinusTermReport rep;
  rep.k1 = pair.k1();
  rep.k2 = pair.k2();
  double s_plain = 0.0, s_weighted = 0.0, s_abs = 0.0;
  for (Index i : pair.same_sign) {
    const double p = pair.z_u[i] * pair.z_v[i];
    const double a = (lmax * cos_alpha - lam[i]) * p;
    const double b = (majorant - (lam[i] - lmin)) * p;
    rep.sum_A += a;
    rep.sum_B += b;
    rep.neg_count_A += a < 0.0;
    rep.neg_count_B += b < 0.0;
    s_plain += p;
    s_weighted += lam[i] * p;
  }
  double t_plain = 0.0, t_weighted = 0.0;
  for (Index i = 0; i < lam.size(); ++i) {
    const double p = pair.z_u[i] * pair.z_v[i];
    t_plain += p;
    t_weighted += lam[i] * p;
    s_abs += std::abs(lam[i] * p) + std::abs(lmax * p);
  }
  const double tol = 1e-12 * std::max(1.0, s_abs);
  rep.condition_A = rep.sum_A >= -tol;
  rep.condition_B = rep.sum_B <= tol;
  rep.sandwich_full = lmin * t_plain <= t_weighted + tol && t_weighted <= lmax * t_plain + tol;
  rep.sandwich_same_sign = lmin * s_plain <= s_weighted + tol && s_weighted <= lmax * s_plain + tol;
  // Conditions are accepted with slack tol, so the conclusion gets 2*tol.
  const bool full_loose = lmin * t_plain <= t_weighted + 2 * tol && t_weighted <= lmax * t_plain + 2 * tol;
  rep.implication_ok = !(rep.condition_A && rep.condition_B) || full_loose;
  return rep;
}

}  // namespace rcpkit
