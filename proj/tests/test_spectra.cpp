#include "oracles.hpp"
#include "rcpkit/ensembles.hpp"
#include "rcpkit/error.hpp"
#include "rcpkit/rng.hpp"
#include "rcpkit/spectra.hpp"

#include <doctest.h>

#include <cmath>

using namespace rcpkit;

namespace {

Matrix random_symmetric(Index n, Rng& rng) {
  Matrix a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) a(i, j) = rng.normal();
  return (a + a.transpose()) / 2.0;
}

}  // namespace

TEST_CASE("restrict_columns") {
  const Matrix phi = gen_gaussian_matrix(4, 8, 1).entries;
  Support all(8);
  for (Index i = 0; i < 8; ++i) all[static_cast<std::size_t>(i)] = i;
  CHECK(restrict_columns(phi, all) == phi);
  CHECK(restrict_columns(phi, {2}) == phi.col(2));
  const Matrix five = restrict_columns(phi, {7, 0, 3, 5, 1});
  CHECK(five.cols() == 5);
  CHECK(five.col(0) == phi.col(0));
  CHECK(five.col(4) == phi.col(7));
  CHECK_THROWS_AS(restrict_columns(phi, {}), Error);
  CHECK_THROWS_AS(restrict_columns(phi, {8}), Error);
  CHECK_THROWS_AS(restrict_columns(phi, {-1}), Error);
  CHECK_THROWS_AS(restrict_columns(phi, {1, 1}), Error);
}

TEST_CASE("gram") {
  CHECK(gram(Matrix::Identity(3, 3)) == Matrix::Identity(3, 3));
  Matrix c(3, 1);
  c << 1, 2, 2;
  CHECK(gram(c)(0, 0) == doctest::Approx(9.0));
  Matrix p(2, 2);
  p << 1, 1, 0, 1;
  Matrix g(2, 2);
  g << 1, 1, 1, 2;
  CHECK(gram(p) == g);
}

TEST_CASE("eig_sym hand cases") {
  Matrix d = Matrix::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = 3;
  GramSpectrum s = eig_sym(d);
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0));
  CHECK(std::abs(s.eigenvectors(1, 0)) == doctest::Approx(1.0));

  Matrix t(2, 2);
  t << 2, 1, 1, 2;
  s = eig_sym(t);
  CHECK(s.eigenvalues[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(s.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));

  s = eig_sym(Matrix::Identity(5, 5));
  for (Index i = 0; i < 5; ++i) CHECK(s.eigenvalues[i] == 1.0);
  CHECK(s.lambda_max() == 1.0);
  CHECK(s.lambda_min() == 1.0);
}

TEST_CASE("eig_sym errors and options") {
  Matrix ns(2, 2);
  ns << 1, 2, 0, 1;
  CHECK_THROWS_AS(eig_sym(ns), Error);
  CHECK_THROWS_AS(eig_sym(Matrix::Zero(2, 3)), Error);
  Rng rng(1);
  const Matrix g = random_symmetric(12, rng);
  try {
    eig_sym(g, {.max_sweeps = 1});
    FAIL("expected numeric failure");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::numeric_failure);
  }
  const GramSpectrum no_vec = eig_sym(g, {.max_sweeps = 100, .vectors = false});
  CHECK((no_vec.eigenvalues - eig_sym(g).eigenvalues).norm() < 1e-12);
}

TEST_CASE("eig_sym matches characteristic-polynomial bisection for n <= 4") {
  Rng rng(77);
  for (int t = 0; t < 400; ++t) {
    const Index n = 1 + t % 4;
    const Matrix g = random_symmetric(n, rng);
    const auto ref = oracle::bisection_eigenvalues(g);
    const GramSpectrum s = eig_sym(g);
    for (Index i = 0; i < n; ++i) CHECK(std::abs(s.raw_eigenvalues[i] - ref[static_cast<std::size_t>(i)]) <= 1e-8);
  }
}

TEST_CASE("reconstruction, orthogonality, ordering and trace on random symmetric matrices") {
  Rng rng(5);
  double worst_rec = 0, worst_orth = 0, worst_trace = 0;
  for (int t = 0; t < 10000; ++t) {
    const Index n = 1 + static_cast<Index>(rng.below(t < 9900 ? 12 : 64));
    const Matrix g = random_symmetric(n, rng);
    const GramSpectrum s = eig_sym(g);
    worst_rec = std::max(worst_rec, reconstruction_error(g, s));
    worst_orth = std::max(worst_orth, (s.eigenvectors * s.eigenvectors.transpose() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff());
    worst_trace = std::max(worst_trace, std::abs(s.raw_eigenvalues.sum() - g.trace()) / std::max(1.0, g.cwiseAbs().sum()));
    for (Index i = 0; i + 1 < n; ++i) REQUIRE(s.eigenvalues[i] >= s.eigenvalues[i + 1]);
  }
  CHECK(worst_rec <= 1e-9);
  CHECK(worst_orth <= 1e-10);
  CHECK(worst_trace <= 1e-9);
}

TEST_CASE("Gram spectra are clamped to nonnegative; trace equals Gram diagonal") {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    // Rank-deficient Gram: more columns than rows.
    const Matrix phi = gen_gaussian_matrix(4, 8, static_cast<std::uint64_t>(t)).entries;
    const Matrix g = gram(phi);
    const GramSpectrum s = eig_sym(g);
    CHECK(s.lambda_min() >= 0.0);
    CHECK(s.raw_eigenvalues.minCoeff() >= -1e-12 * std::max(1.0, g.norm()));
    CHECK(std::abs(s.raw_eigenvalues.sum() - g.trace()) <= 1e-9 * g.trace());
  }
}

TEST_CASE("gershgorin") {
  CHECK(gershgorin_radius(Matrix::Identity(3, 3)) == 0.0);
  Matrix g(2, 2);
  g << 1, 0.3, 0.3, 1;
  CHECK(gershgorin_radius(g) == doctest::Approx(0.3));
  const GramSpectrum s = eig_sym(g);
  CHECK(s.eigenvalues[0] == doctest::Approx(1.3));
  CHECK(s.eigenvalues[1] == doctest::Approx(0.7));
  const GershgorinDiscs d = gershgorin_discs(g, s);
  CHECK(d.unit_diagonal);
  CHECK(d.all_contained);

  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Matrix phi = normalize_columns(gen_gaussian_matrix(32, 12, seed)).entries;
    const Matrix G = gram(phi);
    const GramSpectrum sp = eig_sym(G);
    const double r = gershgorin_radius(G);
    CHECK(sp.lambda_max() <= 1.0 + r + 1e-12);
    CHECK(sp.lambda_min() >= 1.0 - r - 1e-12);
    CHECK(gershgorin_discs(G, sp).all_contained);
  }
}
