#pragma once

#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/types.hpp"

#include <string>

namespace solitonlab {

enum class SolitonClass { Einstein, Nilsoliton, Solvsoliton, Flat, None };

const char* to_string(SolitonClass c);
SolitonClass soliton_class_from_string(const std::string& s);

/// Solution of Rc = lambda * id + D with D a derivation.  D is an endomorphism
/// in the defining basis of the algebra.
struct SolitonCertificate {
  double lambda = 0.0;
  Mat derivation;
  double soliton_residual = 0.0;     // max |Rc - lambda id - D|
  double derivation_residual = 0.0;  // is_derivation(L, D)
  double residual = 0.0;             // max of the two
  SolitonClass cls = SolitonClass::None;
};

/// Least-squares lambda over the derivation constraints of Rc - lambda id; the
/// certificate is classified with `tol` (flat, Einstein, nil/solvsoliton or none).
SolitonCertificate solve_soliton(const LieAlgebra& L, const Metric& g, double tol = kTolSol);

struct SolitonCheck {
  double soliton_residual = 0.0;
  double derivation_residual = 0.0;
  bool passed = false;
};

SolitonCheck verify_soliton(const LieAlgebra& L, const Metric& g, double lambda, const Mat& D,
                            double tol = kTolSol);

/// X0 = sum_i d_i x^i d/dx^i in eigencoordinates of the soliton derivation.
struct SolitonVectorField {
  Vec d;      // eigenvalues of D, ascending
  Mat frame;  // matching eigenvectors as columns (g0-orthonormal when D is g0-self-adjoint)

  /// X0 at coordinates x (in the eigenbasis).
  Vec at(const Vec& x) const { return d.cwiseProduct(x); }
};

/// Throws UnsupportedDerivation for complex or defective spectra, naming the
/// offending eigenvalues and their algebraic/geometric multiplicities.
SolitonVectorField soliton_vector_field(const SolitonCertificate& cert, const Metric& g0);

enum class SolutionBranch {
  Automorphism,  // g(t) = g0 P(t),  P(t) = (1 - 2 lambda t) exp(lambda^{-1} log(1 - 2 lambda t) D)
  PullbackDebug  // (1 - 2 lambda t) phi^T g0 phi, phi = exp((-2 lambda)^{-1} log(1 - 2 lambda t) D); comparison only
};

/// Closed-form solution of dg/dt = -2 ric(g) from a soliton.  Throws
/// DomainError unless 1 - 2 lambda t > 0.
Metric exact_unnormalized_solution(const Metric& g0, const SolitonCertificate& cert, double t,
                                   SolutionBranch branch = SolutionBranch::Automorphism);

}  // namespace solitonlab
