#include "solitonlab/left_invariant.hpp"

#include "solitonlab/error.hpp"

#include <algorithm>
#include <cmath>

namespace solitonlab {

OrthonormalFrame orthonormal_frame(const LieAlgebra& L, const Metric& g) {
  const Eigen::Index n = L.dim();
  if (g.dim() != n) throw Error(ErrorCode::InvalidMetric, "metric dimension does not match algebra");
  Eigen::LLT<Mat> llt(g.matrix());
  if (llt.info() != Eigen::Success) throw Error(ErrorCode::InvalidMetric, "metric is not positive definite");
  OrthonormalFrame f;
  f.inverse = llt.matrixU();
  f.frame = f.inverse.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
  f.algebra = change_basis(L, f.inverse);
  return f;
}

CurvaturePackage curvature(const LieAlgebra& L, const Metric& g) {
  CurvaturePackage pkg;
  pkg.frame = orthonormal_frame(L, g);
  const LieAlgebra& c = pkg.frame.algebra;
  const int n = c.dim();
  pkg.n = n;

  // Koszul: 2<nabla_i f_j, f_k> = c^k_ij - c^i_jk + c^j_ki
  pkg.connection.assign(static_cast<std::size_t>(n), Mat::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        pkg.connection[static_cast<std::size_t>(i)](k, j) = 0.5 * (c.c(k, i, j) - c.c(i, j, k) + c.c(j, k, i));
      }

  pkg.riemann.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i) {
    const Mat& gi = pkg.connection[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) {
      const Mat& gj = pkg.connection[static_cast<std::size_t>(j)];
      Mat op = gi * gj - gj * gi;
      for (int m = 0; m < n; ++m) {
        const double cm = c.c(m, i, j);
        if (cm != 0.0) op -= cm * pkg.connection[static_cast<std::size_t>(m)];
      }
      // op(k, l) = <R(f_i, f_j) f_l, f_k>
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) pkg.riemann[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)] = op(k, l);
    }
  }

  pkg.ric = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += pkg.R(i, j, i, k);
      pkg.ric(j, k) = s;
    }
  pkg.rc = pkg.ric;
  pkg.scal = pkg.ric.trace();
  return pkg;
}

CurvatureResiduals curvature_residuals(const CurvaturePackage& pkg) {
  const int n = pkg.n;
  CurvatureResiduals r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const auto& G = pkg.connection;
        r.metric_compatibility = std::max(
            r.metric_compatibility,
            std::abs(G[static_cast<std::size_t>(i)](k, j) + G[static_cast<std::size_t>(i)](j, k)));
        for (int l = 0; l < n; ++l) {
          const double v = pkg.R(i, j, k, l);
          r.antisymmetry = std::max({r.antisymmetry, std::abs(v + pkg.R(j, i, k, l)), std::abs(v + pkg.R(i, j, l, k))});
          r.pair_symmetry = std::max(r.pair_symmetry, std::abs(v - pkg.R(k, l, i, j)));
          r.bianchi = std::max(r.bianchi, std::abs(v + pkg.R(j, k, i, l) + pkg.R(k, i, j, l)));
        }
      }
  r.ricci_symmetry = (pkg.ric - pkg.ric.transpose()).cwiseAbs().maxCoeff();
  return r;
}

Mat curvature_action(const CurvaturePackage& pkg, const Mat& h) {
  const int n = pkg.n;
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += pkg.R(i, k, j, l) * h(k, l);
      out(i, j) = s;
    }
  return out;
}

Mat covariant_derivative(const CurvaturePackage& pkg, int i, const Mat& h) {
  const Mat& gi = pkg.connection[static_cast<std::size_t>(i)];
  return -(gi.transpose() * h + h * gi);
}

Mat rough_laplacian(const CurvaturePackage& pkg, const Mat& h) {
  const int n = pkg.n;
  std::vector<Mat> first;
  first.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) first.push_back(covariant_derivative(pkg, k, h));
  Mat out = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    out += covariant_derivative(pkg, i, first[static_cast<std::size_t>(i)]);
    // nabla_{f_i} f_i = sum_k Gamma^k_ii f_k
    for (int k = 0; k < n; ++k) {
      const double gkii = pkg.connection[static_cast<std::size_t>(i)](k, i);
      if (gkii != 0.0) out -= gkii * first[static_cast<std::size_t>(k)];
    }
  }
  return out;
}

Mat lichnerowicz(const CurvaturePackage& pkg, const Mat& h) {
  return rough_laplacian(pkg, h) + 2.0 * curvature_action(pkg, h) - pkg.rc * h - h * pkg.rc;
}

SymTensor2 lichnerowicz(const LieAlgebra& L, const Metric& g, const SymTensor2& h) {
  if (h.dim() != L.dim()) throw Error(ErrorCode::InvalidInput, "lichnerowicz: dimension mismatch");
  const CurvaturePackage pkg = curvature(L, g);
  const Mat out = lichnerowicz(pkg, pkg.frame.tensor_to_frame(h.matrix()));
  return SymTensor2(symmetrized(pkg.frame.tensor_from_frame(out)));
}

Mat lie_derivative_term(const Mat& h, const Mat& D) {
  if (h.rows() != D.rows() || h.cols() != D.cols()) {
    throw Error(ErrorCode::InvalidInput, "lie_derivative_term: shape mismatch");
  }
  return D.transpose() * h + h * D;
}

}  // namespace solitonlab
