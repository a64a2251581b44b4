#include "solitonlab/soliton.hpp"

#include "solitonlab/error.hpp"
#include "solitonlab/left_invariant.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace solitonlab {

const char* to_string(SolitonClass c) {
  switch (c) {
    case SolitonClass::Einstein: return "Einstein";
    case SolitonClass::Nilsoliton: return "nilsoliton";
    case SolitonClass::Solvsoliton: return "solvsoliton";
    case SolitonClass::Flat: return "flat";
    case SolitonClass::None: return "none";
  }
  return "none";
}

SolitonClass soliton_class_from_string(const std::string& s) {
  for (auto c : {SolitonClass::Einstein, SolitonClass::Nilsoliton, SolitonClass::Solvsoliton, SolitonClass::Flat,
                 SolitonClass::None}) {
    if (s == to_string(c)) return c;
  }
  throw Error(ErrorCode::InvalidInput, "unknown soliton class '" + s + "'");
}

namespace {

double max_abs(const Mat& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

SolitonCertificate solve_soliton(const LieAlgebra& L, const Metric& g, double tol) {
  const int n = L.dim();
  const CurvaturePackage pkg = curvature(L, g);
  const Mat rc = pkg.rc_defining();
  const Mat id = Mat::Identity(n, n);

  SolitonCertificate cert;
  if (max_abs(pkg.riemann) <= tol) {
    cert.lambda = 0.0;
    cert.derivation = Mat::Zero(n, n);
    cert.soliton_residual = max_abs(rc);
    cert.derivation_residual = 0.0;
    cert.residual = cert.soliton_residual;
    cert.cls = SolitonClass::Flat;
    return cert;
  }

  // C vec(Rc - lambda I) = 0 is linear in lambda.
  const Mat C = derivation_constraints(L);
  const Vec a = C * Eigen::Map<const Vec>(id.data(), id.size());
  const Vec b = C * Eigen::Map<const Vec>(rc.data(), rc.size());
  const double aa = a.squaredNorm();
  cert.lambda = aa > 0.0 ? a.dot(b) / aa : rc.trace() / n;
  cert.derivation = rc - cert.lambda * id;
  cert.soliton_residual = max_abs(rc - cert.lambda * id - cert.derivation);
  cert.derivation_residual = is_derivation(L, cert.derivation);
  cert.residual = std::max(cert.soliton_residual, cert.derivation_residual);

  if (cert.residual > tol) {
    cert.cls = SolitonClass::None;
  } else if (max_abs(cert.derivation) <= tol) {
    cert.cls = SolitonClass::Einstein;
  } else {
    const SeriesFlags flags = series_flags(L);
    if (cert.lambda >= 0.0) {
      cert.cls = SolitonClass::None;  // non-Einstein homogeneous solitons are expanding
    } else if (flags.nilpotent) {
      cert.cls = SolitonClass::Nilsoliton;
    } else if (flags.solvable) {
      cert.cls = SolitonClass::Solvsoliton;
    } else {
      cert.cls = SolitonClass::None;
    }
  }
  return cert;
}

SolitonCheck verify_soliton(const LieAlgebra& L, const Metric& g, double lambda, const Mat& D, double tol) {
  const int n = L.dim();
  if (D.rows() != n || D.cols() != n) throw Error(ErrorCode::InvalidInput, "verify_soliton: shape mismatch");
  const Mat rc = curvature(L, g).rc_defining();
  SolitonCheck r;
  r.soliton_residual = max_abs(rc - lambda * Mat::Identity(n, n) - D);
  r.derivation_residual = is_derivation(L, D);
  r.passed = r.soliton_residual <= tol && r.derivation_residual <= tol;
  return r;
}

SolitonVectorField soliton_vector_field(const SolitonCertificate& cert, const Metric& g0) {
  const Mat& D = cert.derivation;
  const Eigen::Index n = D.rows();
  if (g0.dim() != n) throw Error(ErrorCode::InvalidInput, "soliton_vector_field: dimension mismatch");
  SolitonVectorField field;

  // D is g0-self-adjoint iff g0 D is symmetric; then diagonalize in the g0-orthonormal frame.
  const Mat gd = g0.matrix() * D;
  if (max_abs(gd - gd.transpose()) <= 1e-10 * std::max(1.0, max_abs(gd))) {
    Eigen::LLT<Mat> llt(g0.matrix());
    const Mat U = llt.matrixU();
    const Mat F = U.triangularView<Eigen::Upper>().solve(Mat::Identity(n, n));
    const Mat df = symmetrized(U * D * F);
    Eigen::SelfAdjointEigenSolver<Mat> es(df);
    field.d = es.eigenvalues();
    field.frame = F * es.eigenvectors();
    return field;
  }

  Eigen::EigenSolver<Mat> es(D);
  const auto& ev = es.eigenvalues();
  const double scale = std::max(1.0, max_abs(D));
  std::ostringstream report;
  bool bad = false;
  for (Eigen::Index i = 0; i < n; ++i) {
    if (std::abs(ev(i).imag()) > 1e-9 * scale) {
      report << " complex eigenvalue " << ev(i).real() << (ev(i).imag() >= 0 ? "+" : "") << ev(i).imag() << "i;";
      bad = true;
    }
  }
  if (bad) throw Error(ErrorCode::UnsupportedDerivation, "derivation has non-real spectrum:" + report.str());

  std::vector<double> values(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = ev(i).real();
  std::sort(values.begin(), values.end());
  // Cluster equal eigenvalues and compare algebraic with geometric multiplicity.
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && std::abs(values[j] - values[i]) <= 1e-8 * scale) ++j;
    const auto algebraic = static_cast<Eigen::Index>(j - i);
    Eigen::FullPivLU<Mat> lu(D - values[i] * Mat::Identity(n, n));
    lu.setThreshold(1e-8);
    const Eigen::Index geometric = n - lu.rank();
    if (geometric < algebraic) {
      report << " eigenvalue " << values[i] << " algebraic multiplicity " << algebraic << " geometric multiplicity "
             << geometric << ";";
      bad = true;
    }
    i = j;
  }
  if (bad) throw Error(ErrorCode::UnsupportedDerivation, "derivation is defective:" + report.str());

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return ev(a).real() < ev(b).real(); });
  field.d.resize(n);
  field.frame.resize(n, n);
  const Mat vecs = es.eigenvectors().real();
  for (Eigen::Index i = 0; i < n; ++i) {
    field.d(i) = ev(order[static_cast<std::size_t>(i)]).real();
    field.frame.col(i) = vecs.col(order[static_cast<std::size_t>(i)]);
  }
  return field;
}

Metric exact_unnormalized_solution(const Metric& g0, const SolitonCertificate& cert, double t,
                                   SolutionBranch branch) {
  const double lambda = cert.lambda;
  const Mat& D = cert.derivation;
  const double base = 1.0 - 2.0 * lambda * t;
  if (!(base > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "t = " << t << " outside the existence interval (need 1 - 2 lambda t > 0, lambda = " << lambda << ")";
    throw Error(ErrorCode::DomainError, os.str());
  }
  if (lambda == 0.0) {
    if (max_abs(D) > kTolSol) throw Error(ErrorCode::DomainError, "lambda = 0 with nonzero derivation");
    return g0;
  }
  const double log_base = std::log(base);
  if (branch == SolutionBranch::Automorphism) {
    const Mat P = base * Mat((log_base / lambda) * D).exp();
    return Metric(symmetrized(P.transpose() * g0.matrix()));
  }
  const Mat phi = Mat((log_base / (-2.0 * lambda)) * D).exp();
  return Metric(symmetrized(base * phi.transpose() * g0.matrix() * phi));
}

}  // namespace solitonlab
