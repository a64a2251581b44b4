#include "solitonlab/lie_algebra.hpp"

#include "solitonlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

namespace solitonlab {

namespace {

// Orthonormal basis of the column space of m (columns of the result).
Mat column_span(const Mat& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const Vec& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol) ++rank;
  return svd.matrixU().leftCols(rank);
}

}  // namespace

LieAlgebra::LieAlgebra(int n, std::vector<BracketEntry> entries) : n_(n) {
  if (n <= 0) throw Error(ErrorCode::InvalidInput, "dimension must be positive");
  std::map<std::pair<std::pair<int, int>, int>, double> acc;
  for (const auto& e : entries) {
    if (e.i < 0 || e.j < 0 || e.k < 0 || e.i >= n || e.j >= n || e.k >= n) {
      throw Error(ErrorCode::InvalidInput, "bracket index out of range");
    }
    if (!std::isfinite(e.value)) throw Error(ErrorCode::InvalidInput, "non-finite structure constant");
    if (e.i == e.j) continue;
    const bool flip = e.i > e.j;
    const int i = flip ? e.j : e.i;
    const int j = flip ? e.i : e.j;
    acc[{{i, j}, e.k}] += flip ? -e.value : e.value;
  }
  dense_.assign(static_cast<std::size_t>(n) * n * n, 0.0);
  for (const auto& [key, v] : acc) {
    if (v == 0.0) continue;
    const auto [ij, k] = key;
    entries_.push_back({ij.first, ij.second, k, v});
    dense_[static_cast<std::size_t>((k * n + ij.first) * n + ij.second)] = v;
    dense_[static_cast<std::size_t>((k * n + ij.second) * n + ij.first)] = -v;
  }
}

Mat LieAlgebra::ad(int i) const {
  Mat a(n_, n_);
  for (int k = 0; k < n_; ++k)
    for (int j = 0; j < n_; ++j) a(k, j) = c(k, i, j);
  return a;
}

LieAlgebra LieAlgebra::scaled(double s) const {
  std::vector<BracketEntry> out = entries_;
  for (auto& e : out) e.value *= s;
  return LieAlgebra(n_, std::move(out));
}

ValidationReport validate(const LieAlgebra& L, double tol) {
  const int n = L.dim();
  ValidationReport r;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        r.antisymmetry_residual = std::max(r.antisymmetry_residual, std::abs(L.c(k, i, j) + L.c(k, j, i)));
      }
  // sum_m c^m_ij c^l_mk + c^m_jk c^l_mi + c^m_ki c^l_mj
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0.0;
          for (int m = 0; m < n; ++m) {
            s += L.c(m, i, j) * L.c(l, m, k) + L.c(m, j, k) * L.c(l, m, i) + L.c(m, k, i) * L.c(l, m, j);
          }
          r.jacobi_residual = std::max(r.jacobi_residual, std::abs(s));
        }
  r.passed = r.jacobi_residual <= tol && r.antisymmetry_residual <= tol;
  return r;
}

Vec bracket(const LieAlgebra& L, const Vec& x, const Vec& y) {
  const int n = L.dim();
  if (x.size() != n || y.size() != n) throw Error(ErrorCode::InvalidInput, "bracket: dimension mismatch");
  Vec out = Vec::Zero(n);
  for (const auto& e : L.entries()) {
    out(e.k) += e.value * (x(e.i) * y(e.j) - x(e.j) * y(e.i));
  }
  return out;
}

Mat derivation_constraints(const LieAlgebra& L) {
  const int n = L.dim();
  Mat C = Mat::Zero(static_cast<Eigen::Index>(n) * n * n, static_cast<Eigen::Index>(n) * n);
  auto col = [n](int r, int c) { return static_cast<Eigen::Index>(r + c * n); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Eigen::Index row = (static_cast<Eigen::Index>(i) * n + j) * n + k;
        for (int l = 0; l < n; ++l) {
          C(row, col(k, l)) += L.c(l, i, j);   // (D [e_i, e_j])_k
          C(row, col(l, i)) -= L.c(k, l, j);   // ([D e_i, e_j])_k
          C(row, col(l, j)) -= L.c(k, i, l);   // ([e_i, D e_j])_k
        }
      }
  return C;
}

double is_derivation(const LieAlgebra& L, const Mat& D) {
  const int n = L.dim();
  if (D.rows() != n || D.cols() != n) throw Error(ErrorCode::InvalidInput, "is_derivation: shape mismatch");
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const Vec ei = Vec::Unit(n, i);
    for (int j = i + 1; j < n; ++j) {
      const Vec ej = Vec::Unit(n, j);
      const Vec r = D * bracket(L, ei, ej) - bracket(L, D * ei, ej) - bracket(L, ei, D * ej);
      worst = std::max(worst, r.norm());
    }
  }
  return worst;
}

std::vector<Mat> derivation_space(const LieAlgebra& L, double tol) {
  const int n = L.dim();
  const Mat C = derivation_constraints(L);
  Eigen::JacobiSVD<Mat> svd(C, Eigen::ComputeFullV);
  const Vec& s = svd.singularValues();
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > tol) ++rank;
  std::vector<Mat> basis;
  for (Eigen::Index c = rank; c < C.cols(); ++c) {
    const Vec v = svd.matrixV().col(c);
    basis.push_back(Eigen::Map<const Mat>(v.data(), n, n));
  }
  return basis;
}

SeriesFlags series_flags(const LieAlgebra& L) {
  const int n = L.dim();
  SeriesFlags f;

  auto brackets_of = [&](const Mat& left, const Mat& right) {
    Mat out(n, left.cols() * right.cols());
    Eigen::Index c = 0;
    for (Eigen::Index a = 0; a < left.cols(); ++a)
      for (Eigen::Index b = 0; b < right.cols(); ++b) out.col(c++) = bracket(L, left.col(a), right.col(b));
    return column_span(out, kTolRank);
  };

  const Mat full = Mat::Identity(n, n);
  Mat lower = full;
  while (lower.cols() > 0) {
    Mat next = brackets_of(full, lower);
    if (next.cols() == lower.cols()) break;
    lower = std::move(next);
  }
  f.nilpotent = lower.cols() == 0;

  Mat derived = full;
  while (derived.cols() > 0) {
    Mat next = brackets_of(derived, derived);
    if (next.cols() == derived.cols()) break;
    derived = std::move(next);
  }
  f.solvable = derived.cols() == 0;

  f.unimodular = true;
  for (int i = 0; i < n; ++i) {
    if (std::abs(L.ad(i).trace()) > kTolAlg) f.unimodular = false;
  }
  return f;
}

LieAlgebra change_basis(const LieAlgebra& L, const Mat& A) {
  const int n = L.dim();
  if (A.rows() != n || A.cols() != n) throw Error(ErrorCode::InvalidInput, "change_basis: shape mismatch");
  Eigen::FullPivLU<Mat> lu(A);
  if (!lu.isInvertible() || std::abs(A.determinant()) <= kTolAlg) {
    throw Error(ErrorCode::InvalidInput, "change_basis: singular matrix");
  }
  const Mat Ainv = lu.inverse();
  std::vector<BracketEntry> out;
  for (int p = 0; p < n; ++p)
    for (int q = p + 1; q < n; ++q) {
      const Vec v = A * bracket(L, Ainv.col(p), Ainv.col(q));
      for (int r = 0; r < n; ++r) {
        if (v(r) != 0.0) out.push_back({p, q, r, v(r)});
      }
    }
  return LieAlgebra(n, std::move(out));
}

}  // namespace solitonlab
