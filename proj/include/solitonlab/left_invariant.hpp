#pragma once

#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/types.hpp"

#include <vector>

namespace solitonlab {

/// g-orthonormal frame obtained by Gram-Schmidt on e_1, ..., e_n in index order.
struct OrthonormalFrame {
  Mat frame;          // F: column j holds f_j in defining coordinates; F^T g F = I
  Mat inverse;        // F^{-1} (upper triangular Cholesky factor of g)
  LieAlgebra algebra; // structure constants in the frame

  /// Covariant 2-tensor: defining components -> frame components.
  Mat tensor_to_frame(const Mat& h) const { return frame.transpose() * h * frame; }
  Mat tensor_from_frame(const Mat& h) const { return inverse.transpose() * h * inverse; }
  /// Endomorphism: defining matrix -> frame matrix.
  Mat endo_to_frame(const Mat& a) const { return inverse * a * frame; }
  Mat endo_from_frame(const Mat& a) const { return frame * a * inverse; }
};

OrthonormalFrame orthonormal_frame(const LieAlgebra& L, const Metric& g);

/// Levi-Civita data of a left-invariant metric, all in the orthonormal frame.
///
/// Conventions: Gamma^k_ij = <nabla_{f_i} f_j, f_k>, R(X,Y) = [nabla_X, nabla_Y]
/// - nabla_[X,Y], R_ijkl = <R(f_i,f_j) f_l, f_k> so that R_ijij is the sectional
/// curvature of the (f_i, f_j) plane, and ric_jk = sum_i R_ijik.
struct CurvaturePackage {
  int n = 0;
  OrthonormalFrame frame;
  std::vector<Mat> connection;  // connection[i](k, j) = Gamma^k_ij, i.e. nabla_{f_i} as a matrix
  std::vector<double> riemann;  // dense n^4, see R()
  Mat ric;                      // Ricci bilinear form
  Mat rc;                       // Ricci endomorphism (equals ric in an orthonormal frame)
  double scal = 0.0;

  double R(int i, int j, int k, int l) const noexcept {
    return riemann[static_cast<std::size_t>(((i * n + j) * n + k) * n + l)];
  }

  Mat ric_defining() const { return frame.tensor_from_frame(ric); }
  Mat rc_defining() const { return frame.endo_from_frame(rc); }
};

CurvaturePackage curvature(const LieAlgebra& L, const Metric& g);

/// Worst violations of the structural identities of a curvature package.
struct CurvatureResiduals {
  double metric_compatibility = 0.0;  // Gamma^k_ij + Gamma^j_ik
  double antisymmetry = 0.0;          // R_ijkl + R_jikl and R_ijkl + R_ijlk
  double pair_symmetry = 0.0;         // R_ijkl - R_klij
  double bianchi = 0.0;               // R_ijkl + R_jkil + R_kijl
  double ricci_symmetry = 0.0;
};

CurvatureResiduals curvature_residuals(const CurvaturePackage& pkg);

// The operators below act on frame components of left-invariant symmetric
// 2-tensors.

/// (R h)_ij = sum_kl R_ikjl h_kl.
Mat curvature_action(const CurvaturePackage& pkg, const Mat& h);

/// nabla_{f_i} h = -(Gamma_i^T h + h Gamma_i) for constant-coefficient h.
Mat covariant_derivative(const CurvaturePackage& pkg, int i, const Mat& h);

/// sum_i (nabla_i nabla_i h - nabla_{nabla_{f_i} f_i} h).
Mat rough_laplacian(const CurvaturePackage& pkg, const Mat& h);

/// Delta h + 2 R h - Rc h - h Rc.
Mat lichnerowicz(const CurvaturePackage& pkg, const Mat& h);
/// Same operator with h and the result in the defining basis.
SymTensor2 lichnerowicz(const LieAlgebra& L, const Metric& g, const SymTensor2& h);

/// Lie derivative of a left-invariant tensor along the field generating
/// exp(tD): h(D., .) + h(., D.) = D^T h + h D.
Mat lie_derivative_term(const Mat& h, const Mat& D);

}  // namespace solitonlab
