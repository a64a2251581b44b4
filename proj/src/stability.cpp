#include "solitonlab/stability.hpp"

#include "solitonlab/error.hpp"
#include "solitonlab/flow.hpp"
#include "solitonlab/left_invariant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace solitonlab {

const char* to_string(StabilityClass c) {
  switch (c) {
    case StabilityClass::Strict: return "strict";
    case StabilityClass::Weak: return "weak";
    case StabilityClass::Unstable: return "unstable";
  }
  return "weak";
}

StabilityClass classify(double quad_bound, double tol) {
  if (quad_bound < -tol) return StabilityClass::Strict;
  if (quad_bound > tol) return StabilityClass::Unstable;
  return StabilityClass::Weak;
}

double spectral_abscissa(const std::vector<std::complex<double>>& spectrum) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& z : spectrum) m = std::max(m, z.real());
  return m;
}

namespace {

// Parlett-Reinsch balancing by powers of two; similarity, so the spectrum is exact.
Mat balanced(Mat a) {
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double f = 1.0;
      const double s = c + r;
      while (c < r / 2.0) {
        c *= 2.0;
        r /= 2.0;
        f *= 2.0;
      }
      while (c >= r * 2.0) {
        c /= 2.0;
        r *= 2.0;
        f /= 2.0;
      }
      if ((c + r) < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
  return a;
}

std::vector<std::complex<double>> eigenvalues(const Mat& a) {
  std::vector<std::complex<double>> out;
  if (a.rows() == 0) return out;
  Eigen::EigenSolver<Mat> es(balanced(a), false);
  for (Eigen::Index i = 0; i < a.rows(); ++i) out.push_back(es.eigenvalues()(i));
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

double max_sym_eigenvalue(const Mat& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetrized(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// Orthonormal basis of the orthogonal complement of the columns of `basis`.
Mat complement(const Mat& basis, Eigen::Index m) {
  if (basis.cols() == 0) return Mat::Identity(m, m);
  Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeFullU);
  return svd.matrixU().rightCols(m - basis.cols());
}

}  // namespace

Mat stability_matrix(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert) {
  const CurvaturePackage pkg = curvature(L, g0);
  const Mat Df = pkg.frame.endo_to_frame(cert.derivation);
  const Eigen::Index n = L.dim();
  const auto m = static_cast<Eigen::Index>(sym_dim(n));
  Mat out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Mat e = sym_basis_element(n, static_cast<std::size_t>(a));
    const Mat lh = lichnerowicz(pkg, e) + 2.0 * cert.lambda * e + lie_derivative_term(e, Df);
    out.col(a) = sym_coords(symmetrized(lh));
  }
  return out;
}

Mat ode_jacobian(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert, double rel_step) {
  const OrthonormalFrame frame = orthonormal_frame(L, g0);
  const Eigen::Index n = L.dim();
  const auto m = static_cast<Eigen::Index>(sym_dim(n));
  const double s = rel_step * g0.matrix().norm();
  Mat out(m, m);
  for (Eigen::Index a = 0; a < m; ++a) {
    const Mat h = frame.tensor_from_frame(sym_basis_element(n, static_cast<std::size_t>(a)));
    const Mat plus = rhs_normalized(L, Metric(symmetrized(g0.matrix() + s * h)), cert);
    const Mat minus = rhs_normalized(L, Metric(symmetrized(g0.matrix() - s * h)), cert);
    out.col(a) = sym_coords(frame.tensor_to_frame((plus - minus) / (2.0 * s)));
  }
  return out;
}

Mat neutral_subspace(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert) {
  const OrthonormalFrame frame = orthonormal_frame(L, g0);
  const Eigen::Index n = L.dim();
  const auto m = static_cast<Eigen::Index>(sym_dim(n));
  const Mat Df = frame.endo_to_frame(cert.derivation);
  const std::vector<Mat> der = derivation_space(frame.algebra);
  if (der.empty()) return Mat(m, 0);

  const auto k = static_cast<Eigen::Index>(der.size());
  Mat comm(n * n, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    const Mat c = der[static_cast<std::size_t>(a)] * Df - Df * der[static_cast<std::size_t>(a)];
    comm.col(a) = Eigen::Map<const Vec>(c.data(), c.size());
  }
  Eigen::JacobiSVD<Mat> svd(comm, Eigen::ComputeFullV);
  const double tol = kTolRank * std::max(1.0, Df.cwiseAbs().maxCoeff());
  Eigen::Index rank = 0;
  while (rank < svd.singularValues().size() && svd.singularValues()(rank) > tol) ++rank;

  Mat tangents(m, k - rank);
  for (Eigen::Index c = rank; c < k; ++c) {
    Mat x = Mat::Zero(n, n);
    for (Eigen::Index a = 0; a < k; ++a) x += svd.matrixV()(a, c) * der[static_cast<std::size_t>(a)];
    tangents.col(c - rank) = sym_coords(x.transpose() + x);
  }
  if (tangents.cols() == 0) return tangents;
  Eigen::JacobiSVD<Mat> span(tangents, Eigen::ComputeThinU);
  Eigen::Index r = 0;
  while (r < span.singularValues().size() && span.singularValues()(r) > kTolRank) ++r;
  return span.matrixU().leftCols(r);
}

StabilityReport stability_operator(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert) {
  const SolitonCheck check = verify_soliton(L, g0, cert.lambda, cert.derivation, 1e-9);
  if (!check.passed) throw Error(ErrorCode::InvalidInput, "certificate does not verify at the given metric");
  (void)soliton_vector_field(cert, g0);  // rejects complex or defective D

  StabilityReport r;
  r.lmat = stability_matrix(L, g0, cert);
  r.spectrum = eigenvalues(r.lmat);
  r.quad_bound = max_sym_eigenvalue(r.lmat);
  r.epsilon = r.quad_bound < 0.0 ? -r.quad_bound : 0.0;
  r.classification = classify(r.quad_bound);

  r.jac = ode_jacobian(L, g0, cert);
  r.jac_spectrum = eigenvalues(r.jac);
  r.jac_abscissa = spectral_abscissa(r.jac_spectrum);

  r.neutral_basis = neutral_subspace(L, g0, cert);
  const Mat q = complement(r.neutral_basis, r.lmat.rows());
  if (q.cols() > 0) {
    r.transverse_quad_bound = max_sym_eigenvalue(q.transpose() * r.lmat * q);
    r.transverse_classification = classify(r.transverse_quad_bound);
    // jac vanishes on the neutral subspace, so its spectrum splits into zeros
    // and the spectrum of the compression to the complement.
    r.jac_transverse_spectrum = eigenvalues(q.transpose() * r.jac * q);
    r.jac_transverse_abscissa = spectral_abscissa(r.jac_transverse_spectrum);
  } else {
    r.transverse_quad_bound = 0.0;
    r.transverse_classification = StabilityClass::Weak;
    r.jac_transverse_abscissa = 0.0;
  }
  return r;
}

}  // namespace solitonlab
