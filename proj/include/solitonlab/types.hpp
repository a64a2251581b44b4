#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <string>

namespace solitonlab {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline constexpr double kTolAlg = 1e-12;   // algebraic identities
inline constexpr double kTolRank = 1e-10;  // null-space thresholding
inline constexpr double kTolSol = 1e-10;   // soliton residuals
inline constexpr double kTolSpec = 1e-9;   // stability verdicts

/// Left-invariant symmetric covariant 2-tensor, stored by its component
/// matrix in whatever basis the caller is working in.
class SymTensor2 {
 public:
  SymTensor2() = default;
  /// Throws InvalidInput unless `h` is square, finite and symmetric to 1e-14
  /// (relative to its largest entry).
  explicit SymTensor2(Mat h);

  const Mat& matrix() const noexcept { return h_; }
  Eigen::Index dim() const noexcept { return h_.rows(); }

 private:
  Mat h_;
};

/// Inner product on the Lie algebra in the defining basis.
class Metric {
 public:
  Metric() = default;
  /// Throws InvalidMetric unless `g` is symmetric and positive definite.
  explicit Metric(Mat g);

  static Metric identity(Eigen::Index n) { return Metric(Mat::Identity(n, n)); }

  const Mat& matrix() const noexcept { return g_; }
  Eigen::Index dim() const noexcept { return g_.rows(); }

 private:
  Mat g_;
};

enum class MapRole { Endomorphism, DerivationCandidate, BasisChange };

/// Linear map acting on column vectors: x -> a * x.
struct LinearMap {
  Mat a;
  MapRole role = MapRole::Endomorphism;

  LinearMap() = default;
  LinearMap(Mat m, MapRole r = MapRole::Endomorphism);
};

/// Symmetrize in place; integrators call this after every step.
inline Mat symmetrized(const Mat& m) { return 0.5 * (m + m.transpose()); }

/// True iff the symmetric matrix admits a Cholesky factorization.
bool is_positive_definite(const Mat& g);

/// Orthonormal basis {E_ii, (E_ij + E_ji)/sqrt 2} of symmetric n x n matrices
/// under <h, k> = sum h_ij k_ij.  Ordered (0,0), (0,1), ..., (0,n-1), (1,1), ...
std::size_t sym_dim(Eigen::Index n);
Mat sym_basis_element(Eigen::Index n, std::size_t index);
Vec sym_coords(const Mat& h);
Mat sym_from_coords(const Vec& coords, Eigen::Index n);

}  // namespace solitonlab
