#pragma once

#include "solitonlab/grid.hpp"
#include "solitonlab/types.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace solitonlab {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Closed-form left-invariant metric on a 3-dimensional group in a global chart.
/// The coframe rows are the left-invariant 1-forms dual to the catalog basis,
/// so g(x) = coframe(x)^T coframe(x).
struct ChartMetric {
  std::string name;
  std::string algebra;  // catalog entry
  Vec3 d = Vec3::Zero();  // soliton field X0 = d_k x^k d/dx^k
  double lambda = 0.0;

  Mat3 coframe(const Vec3& x) const;
  Mat3 metric(const Vec3& x) const {
    const Mat3 t = coframe(x);
    return t.transpose() * t;
  }
};

/// nil3, sol3 or hyp3.  Checks the chart Ricci tensor at the origin against
/// the algebraic one (1e-6) before returning.  Throws NotInCatalog.
ChartMetric chart_metric(const std::string& name);

/// Pointwise geometry from numerical differentiation of the closed-form metric
/// (4th-order centred differences, step `step` for g and again for Gamma).
struct ChartGeometry {
  Mat3 g, ginv;
  double sqrt_det = 0.0;
  std::array<Mat3, 3> gamma;                 // gamma[k](i, j) = Gamma^k_ij
  std::array<std::array<Mat3, 3>, 3> dgamma;  // dgamma[a][k](i, j) = d_a Gamma^k_ij

  /// R^l_ijk with R(d_i, d_j) d_k = R^l_ijk d_l.
  double riemann(int l, int i, int j, int k) const;
  Mat3 ricci() const;
  double scalar() const { return (ginv * ricci()).trace(); }
};

ChartGeometry chart_geometry(const ChartMetric& cm, const Vec3& x, double step = 1e-3);

/// Chart Ricci at 0 minus coframe(0)^T ric_alg coframe(0), max abs entry.
double origin_ricci_mismatch(const ChartMetric& cm);

struct DriftData {
  double lambda = 0.0;
  Vec3 d = Vec3::Zero();
};

inline DriftData drift_data(const ChartMetric& cm) { return {cm.lambda, cm.d}; }

/// L h = Delta_L h + 2 lambda h + L_{X0} h on the grid, second-order centred
/// differences, zero on and outside the sphere of radius R.  Throws
/// GridTooCoarse when dx > R / 8 and InvalidInput for non-3D fields.
TensorField apply_L_fd(const ChartMetric& cm, const DriftData& data, const TensorField& h, const Grid& grid);

/// Same operator at a single grid point.
Mat3 apply_L_fd_at(const ChartMetric& cm, const DriftData& data, const TensorField& h, const Grid& grid,
                   std::size_t p);
Mat3 apply_L_fd_at(const ChartGeometry& geo, const DriftData& data, const TensorField& h, const Grid& grid,
                   std::size_t p);

/// (L h, h) / (h, h) in the L2 pairing of the chart metric, dmu = sqrt(det g) dx^3.
/// Throws InvalidInput when h vanishes.
double rayleigh_quotient(const ChartMetric& cm, const DriftData& data, const TensorField& h, const Grid& grid);

/// Batched form: the geometry is computed once per grid point.
std::vector<double> rayleigh_quotients(const ChartMetric& cm, const DriftData& data,
                                       const std::vector<TensorField>& hs, const Grid& grid);

/// C-infinity radial cutoff: 1 for r <= r0, 0 for r >= r1.
double smooth_bump(double r, double r0, double r1);

/// bump(|x|) coframe(x)^T E coframe(x), the left-invariant tensor with frame
/// components E cut off radially.
TensorField left_invariant_field(const ChartMetric& cm, const Grid& grid, const Mat3& e, double r0, double r1);

/// Test tensors for Rayleigh probes: bump * g, bump * E for the symmetric
/// basis at two plateau radii, and seeded random left-invariant combinations.
std::vector<TensorField> rayleigh_test_tensors(const ChartMetric& cm, const Grid& grid, std::size_t count,
                                               std::uint64_t seed);

}  // namespace solitonlab
