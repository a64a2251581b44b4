#pragma once

#include "solitonlab/types.hpp"

#include <vector>

namespace solitonlab {

/// One nonzero structure constant: [e_i, e_j] has component `value` along e_k.
/// Indices are 0-based with i < j.
struct BracketEntry {
  int i = 0;
  int j = 0;
  int k = 0;
  double value = 0.0;
};

/// Finite-dimensional real Lie algebra given by structure constants c^k_ij.
///
/// Storage is sparse and canonical: entries with i > j are flipped (with a sign
/// change), entries with i == j are dropped, duplicates are summed.  The dense
/// cube c(k, i, j) is built once at construction.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  LieAlgebra(int n, std::vector<BracketEntry> entries);

  int dim() const noexcept { return n_; }
  const std::vector<BracketEntry>& entries() const noexcept { return entries_; }

  /// c^k_ij; antisymmetric in (i, j).
  double c(int k, int i, int j) const noexcept {
    return dense_[static_cast<std::size_t>((k * n_ + i) * n_ + j)];
  }

  /// Matrix of ad_{e_i}: column j is [e_i, e_j].
  Mat ad(int i) const;

  /// New algebra with every structure constant multiplied by s.
  LieAlgebra scaled(double s) const;

 private:
  int n_ = 0;
  std::vector<BracketEntry> entries_;
  std::vector<double> dense_;
};

struct ValidationReport {
  double jacobi_residual = 0.0;
  double antisymmetry_residual = 0.0;
  bool passed = false;
};

ValidationReport validate(const LieAlgebra& L, double tol = kTolAlg);

/// [x, y]^k = sum_ij c^k_ij x^i y^j.
Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y);

/// Linear constraint matrix C with C * vec(D) = 0 iff D is a derivation;
/// vec is column-major (Eigen's native layout), rows indexed by (i, j, k).
Mat derivation_constraints(const LieAlgebra& L);

/// max over basis pairs of |D[e_i,e_j] - [De_i,e_j] - [e_i,De_j]| (Euclidean).
double is_derivation(const LieAlgebra& L, const Mat& D);

/// Basis of Der(g) from the null space of derivation_constraints, thresholding
/// singular values at `tol`.  Each element is an n x n matrix.
std::vector<Mat> derivation_space(const LieAlgebra& L, double tol = kTolRank);

struct SeriesFlags {
  bool nilpotent = false;
  bool solvable = false;
  bool unimodular = false;
};

SeriesFlags series_flags(const LieAlgebra& L);

/// Algebra transported along A: [x, y]' = A [A^{-1} x, A^{-1} y].  A is then a
/// Lie algebra isomorphism from L onto the result.  Throws InvalidInput when A
/// is singular.
LieAlgebra change_basis(const LieAlgebra& L, const Mat& A);

}  // namespace solitonlab
