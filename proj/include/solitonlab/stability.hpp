#pragma once

#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/types.hpp"

#include <complex>
#include <string>
#include <vector>

namespace solitonlab {

enum class StabilityClass { Strict, Weak, Unstable };

const char* to_string(StabilityClass c);

/// Linear stability of a soliton on the block of left-invariant symmetric
/// 2-tensors.  Matrices act on coordinates in the orthonormal basis of
/// symmetric tensors (sym_basis_element) taken in the g0-orthonormal frame.
///
/// The block contains the tangent space of the orbit of g0 under automorphisms
/// commuting with D.  Every point of that orbit is again a fixed point of the
/// normalized flow, so the reduced Jacobian vanishes there.  L carries an extra
/// Lie-derivative term on those directions and can vanish on some of them (it
/// does for the nilsolitons).  The `transverse_*` fields repeat the analysis on
/// the orthogonal complement of that subspace.
struct StabilityReport {
  Mat lmat;
  std::vector<std::complex<double>> spectrum;
  double quad_bound = 0.0;  // max eigenvalue of (lmat + lmat^T) / 2
  double epsilon = 0.0;     // -quad_bound when negative, else 0
  StabilityClass classification = StabilityClass::Weak;

  Mat jac;
  std::vector<std::complex<double>> jac_spectrum;
  double jac_abscissa = 0.0;

  Mat neutral_basis;  // orthonormal columns spanning the automorphism-orbit tangent
  double transverse_quad_bound = 0.0;
  StabilityClass transverse_classification = StabilityClass::Weak;
  std::vector<std::complex<double>> jac_transverse_spectrum;
  double jac_transverse_abscissa = 0.0;
};

StabilityClass classify(double quad_bound, double tol = kTolSpec);

/// Matrix of L h = Delta_L h + 2 lambda h + (D^T h + h D) on the left-invariant block.
Mat stability_matrix(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert);

/// Central-difference Jacobian of rhs_normalized at g0 in the same coordinates,
/// step s = rel_step * ||g0||_F.
Mat ode_jacobian(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert, double rel_step = 1e-6);

/// Frame coordinates of {X^T g0 + g0 X : X in Der, [X, D] = 0}, orthonormalized.
Mat neutral_subspace(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert);

/// Throws InvalidInput when `cert` does not verify at (L, g0) and
/// UnsupportedDerivation when D has no real diagonalization.
StabilityReport stability_operator(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert);

/// Maximum real part.
double spectral_abscissa(const std::vector<std::complex<double>>& spectrum);

}  // namespace solitonlab
