#include "doctest.h"
#include "oracles.hpp"

#include "solitonlab/catalog.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/lie_algebra.hpp"

#include <cmath>

using namespace solitonlab;

namespace {

LieAlgebra heis3() { return LieAlgebra(3, {{0, 1, 2, 1.0}}); }
LieAlgebra sol3() { return LieAlgebra(3, {{0, 2, 0, -1.0}, {1, 2, 1, 1.0}}); }
LieAlgebra hyp3() { return LieAlgebra(3, {{0, 2, 0, -1.0}, {1, 2, 1, -1.0}}); }

Vec e(int n, int i) { return Vec::Unit(n, i); }

Mat diag(std::initializer_list<double> v) {
  Vec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

}  // namespace

TEST_CASE("validate") {
  CHECK(validate(heis3()).passed);
  CHECK(validate(heis3()).jacobi_residual == 0.0);
  CHECK(validate(LieAlgebra(3, {})).passed);

  // [e1,e3] = e1 added to heis3: the (1,2,3) Jacobi sum leaves e3 with coefficient 1
  const auto bad = LieAlgebra(3, {{0, 1, 2, 1.0}, {0, 2, 0, 1.0}});
  const auto r = validate(bad);
  CHECK_FALSE(r.passed);
  CHECK(r.jacobi_residual == doctest::Approx(1.0));

  CHECK_THROWS_AS(LieAlgebra(2, {{0, 1, 0, std::nan("")}}), Error);
}

TEST_CASE("canonical storage") {
  const LieAlgebra flipped(3, {{1, 0, 2, -1.0}});
  CHECK(flipped.c(2, 0, 1) == 1.0);
  CHECK(flipped.c(2, 1, 0) == -1.0);
  const LieAlgebra dup(3, {{0, 1, 2, 0.5}, {0, 1, 2, 0.5}, {1, 1, 0, 3.0}});
  CHECK(dup.entries().size() == 1);
  CHECK(dup.c(2, 0, 1) == 1.0);
}

TEST_CASE("bracket examples") {
  CHECK(bracket(heis3(), e(3, 0), e(3, 1)).isApprox(e(3, 2)));
  CHECK(bracket(heis3(), e(3, 0), e(3, 0)).norm() == 0.0);
  CHECK(bracket(sol3(), e(3, 2), e(3, 0) + e(3, 1)).isApprox(e(3, 0) - e(3, 1)));
  CHECK_THROWS_AS(bracket(heis3(), Vec::Zero(2), e(3, 0)), Error);
}

TEST_CASE("bracket is bilinear and antisymmetric") {
  SplitMix64 rng(7);
  for (const auto& entry : catalog_list()) {
    const LieAlgebra& L = entry.algebra;
    const int n = L.dim();
    for (int s = 0; s < 100; ++s) {
      Vec x(n), y(n), z(n);
      for (int i = 0; i < n; ++i) {
        x(i) = rng.uniform(-1, 1);
        y(i) = rng.uniform(-1, 1);
        z(i) = rng.uniform(-1, 1);
      }
      const double a = rng.uniform(-2, 2);
      CHECK((bracket(L, x, y) + bracket(L, y, x)).norm() < 1e-12);
      CHECK((bracket(L, a * x + z, y) - a * bracket(L, x, y) - bracket(L, z, y)).norm() < 1e-12);
    }
  }
}

TEST_CASE("is_derivation examples") {
  CHECK(is_derivation(heis3(), diag({1, 1, 2})) == 0.0);
  CHECK(is_derivation(heis3(), diag({1, 1, 1})) == doctest::Approx(1.0));
  for (const auto& entry : catalog_list())
    CHECK(is_derivation(entry.algebra, Mat::Zero(entry.algebra.dim(), entry.algebra.dim())) == 0.0);
}

TEST_CASE("diagonal derivations follow eigenvalue additivity") {
  SplitMix64 rng(11);
  for (const auto& entry : catalog_list()) {
    const LieAlgebra& L = entry.algebra;
    const int n = L.dim();
    for (int s = 0; s < 20; ++s) {
      Vec d(n);
      for (int i = 0; i < n; ++i) d(i) = std::round(rng.uniform(-3, 3));
      bool additive = true;
      for (const auto& b : L.entries()) additive = additive && d(b.k) == d(b.i) + d(b.j);
      const double r = is_derivation(L, Mat(d.asDiagonal()));
      CHECK((r == 0.0) == additive);
    }
  }
}

TEST_CASE("derivation space dimension matches a Gaussian-elimination rank") {
  CHECK(derivation_space(LieAlgebra(3, {})).size() == 9);
  CHECK(derivation_space(LieAlgebra(5, {})).size() == 25);
  CHECK(derivation_space(heis3()).size() == 6);
  CHECK(derivation_space(sol3()).size() == 4);

  SplitMix64 rng(3);
  for (const auto& entry : catalog_list()) {
    for (bool transformed : {false, true}) {
      LieAlgebra L = entry.algebra;
      if (transformed) L = change_basis(L, oracle::random_invertible(rng, L.dim()));
      const int n = L.dim();
      const Mat C = derivation_constraints(L);
      CHECK(C.rows() == n * n * n);
      CHECK(C.cols() == n * n);
      const int rank = oracle::rank_gauss(C, 1e-9);
      const auto basis = derivation_space(L);
      CHECK(static_cast<int>(basis.size()) == n * n - rank);
      CAPTURE(entry.name);
      CAPTURE(transformed);
      for (const Mat& D : basis) CHECK(is_derivation(L, D) < 1e-10);
      // commutators of derivations are derivations
      if (basis.size() >= 2) {
        const Mat& A = basis.front();
        const Mat& B = basis.back();
        CHECK(is_derivation(L, A * B - B * A) < 1e-10);
      }
    }
  }
}

TEST_CASE("series flags") {
  auto f = series_flags(heis3());
  CHECK(f.nilpotent);
  CHECK(f.solvable);
  CHECK(f.unimodular);
  f = series_flags(sol3());
  CHECK_FALSE(f.nilpotent);
  CHECK(f.solvable);
  CHECK(f.unimodular);
  f = series_flags(hyp3());
  CHECK_FALSE(f.nilpotent);
  CHECK(f.solvable);
  CHECK_FALSE(f.unimodular);
  // so(3) is neither
  f = series_flags(LieAlgebra(3, {{0, 1, 2, 1.0}, {1, 2, 0, 1.0}, {0, 2, 1, -1.0}}));
  CHECK_FALSE(f.solvable);
  CHECK(f.unimodular);
}

TEST_CASE("change_basis") {
  const LieAlgebra same = change_basis(heis3(), Mat::Identity(3, 3));
  CHECK(same.c(2, 0, 1) == 1.0);

  const LieAlgebra scaled = change_basis(heis3(), diag({2, 1, 1}));
  CHECK(scaled.c(2, 0, 1) == doctest::Approx(0.5));
  CHECK(scaled.entries().size() == 1);

  CHECK_THROWS_AS(change_basis(heis3(), diag({1, 0, 1})), Error);

  SplitMix64 rng(5);
  for (const auto& entry : catalog_list()) {
    const LieAlgebra& L = entry.algebra;
    const int n = L.dim();
    const Mat A = oracle::random_invertible(rng, n);
    const LieAlgebra M = change_basis(L, A);
    // A is an isomorphism L -> M
    for (int s = 0; s < 10; ++s) {
      Vec x(n), y(n);
      for (int i = 0; i < n; ++i) {
        x(i) = rng.uniform(-1, 1);
        y(i) = rng.uniform(-1, 1);
      }
      CHECK((A * bracket(L, x, y) - bracket(M, A * x, A * y)).norm() < 1e-12);
    }
    CHECK(validate(M).passed == validate(L).passed);
    const LieAlgebra back = change_basis(M, A.inverse());
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) CHECK(std::abs(back.c(k, i, j) - L.c(k, i, j)) < 1e-12);
  }
  // pass/fail status survives a basis change
  const auto bad = LieAlgebra(3, {{0, 1, 2, 1.0}, {0, 2, 0, 1.0}});
  CHECK_FALSE(validate(change_basis(bad, oracle::random_invertible(rng, 3)), 1e-12).passed);
}

TEST_CASE("catalog algebras validate") {
  for (const auto& entry : catalog_list()) {
    const auto r = validate(entry.algebra);
    CHECK(r.passed);
    CHECK(r.jacobi_residual < 1e-12);
  }
}
