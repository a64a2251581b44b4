#pragma once

#include "solitonlab/types.hpp"
#include "solitonlab/weights.hpp"

#include <cstddef>
#include <functional>
#include <vector>

namespace solitonlab {

struct GridSpec {
  double radius = 4.0;
  double dx = 0.125;
  int dim = 3;
};

/// Uniform lattice on the cube [-h dx, h dx]^dim with h = ceil(R / dx), so it
/// covers the closed ball B_R.  Points are stored with the first axis fastest.
class Grid {
 public:
  explicit Grid(const GridSpec& spec);

  const GridSpec& spec() const noexcept { return spec_; }
  int dim() const noexcept { return spec_.dim; }
  double dx() const noexcept { return spec_.dx; }
  double radius() const noexcept { return spec_.radius; }
  int half() const noexcept { return half_; }
  int side() const noexcept { return 2 * half_ + 1; }
  std::size_t size() const noexcept { return size_; }
  std::size_t origin() const noexcept;

  std::vector<int> index(std::size_t p) const;
  std::size_t flat(const std::vector<int>& idx) const;
  Vec point(std::size_t p) const;
  double euclidean_radius(std::size_t p) const { return point(p).norm(); }
  bool in_open_ball(std::size_t p) const { return euclidean_radius(p) < spec_.radius; }

  /// Neighbour at integer offset, or false when it leaves the lattice.
  bool shifted(std::size_t p, const std::vector<int>& offset, std::size_t& out) const;
  bool shifted(std::size_t p, int axis, int step, std::size_t& out) const;

 private:
  GridSpec spec_;
  int half_ = 0;
  std::size_t size_ = 0;
};

/// Sampled symmetric 2-tensor field: an n x n component matrix per grid point.
class TensorField {
 public:
  TensorField() = default;
  TensorField(std::size_t points, Eigen::Index n) : n_(n), points_(points), data_(points * n * n, 0.0) {}

  Eigen::Index n() const noexcept { return n_; }
  std::size_t points() const noexcept { return points_; }

  Eigen::Map<Mat> at(std::size_t p) { return Eigen::Map<Mat>(data_.data() + p * n_ * n_, n_, n_); }
  Eigen::Map<const Mat> at(std::size_t p) const {
    return Eigen::Map<const Mat>(data_.data() + p * n_ * n_, n_, n_);
  }
  double component(std::size_t p, Eigen::Index i, Eigen::Index j) const { return data_[p * n_ * n_ + j * n_ + i]; }

  void scale(double c) {
    for (double& v : data_) v *= c;
  }
  bool is_zero() const;

 private:
  Eigen::Index n_ = 0;
  std::size_t points_ = 0;
  std::vector<double> data_;
};

TensorField sample_field(const Grid& grid, Eigen::Index n, const std::function<Mat(const Vec&)>& h);

/// Distances used by the annulus cover and the Holder seminorm.
class DistanceModel {
 public:
  virtual ~DistanceModel() = default;
  virtual std::vector<double> origin_distances(const Grid& grid) const = 0;
  virtual double pair_distance(const Grid& grid, std::size_t p, std::size_t q) const = 0;
};

class EuclideanDistance : public DistanceModel {
 public:
  std::vector<double> origin_distances(const Grid& grid) const override;
  double pair_distance(const Grid& grid, std::size_t p, std::size_t q) const override;
};

/// Distances in a coordinate metric g(x).  Origin distances by Dijkstra on the
/// lattice graph with all 3^dim - 1 neighbours (edge length from the average of
/// g at the endpoints); pair distances by the g-length of the straight segment.
/// Both overestimate the geodesic distance slightly.
class MetricDistance : public DistanceModel {
 public:
  explicit MetricDistance(std::function<Mat(const Vec&)> metric) : metric_(std::move(metric)) {}
  std::vector<double> origin_distances(const Grid& grid) const override;
  double pair_distance(const Grid& grid, std::size_t p, std::size_t q) const override;

 private:
  std::function<Mat(const Vec&)> metric_;
};

/// A_1 = {d < 4}, A_N = {N-1 < d < N+3} for N >= 2.
class AnnulusCover {
 public:
  AnnulusCover(const Grid& grid, const DistanceModel& dist);

  int count() const noexcept { return static_cast<int>(members_.size()); }
  const std::vector<std::size_t>& members(int N) const { return members_.at(static_cast<std::size_t>(N - 1)); }
  double origin_distance(std::size_t p) const { return dist_[p]; }
  /// d(x, boundary of A_N), measured radially.
  double boundary_distance(int N, std::size_t p) const;
  static bool contains(int N, double d);

 private:
  std::vector<double> dist_;
  std::vector<std::vector<std::size_t>> members_;
};

struct HolderOptions {
  int k = 0;
  double alpha = 0.5;
  bool all_pairs = false;  // otherwise lattice offsets s v, s = 1, 2, 4, ... up to the annulus width
};

/// Discrete weighted little Holder norm over sampled pairs with d(x,y) >= dx;
/// a lower bound for the continuous norm.  Raw chart components, derivatives by
/// centred differences with zero extension.
double weighted_holder_norm(const Grid& grid, const TensorField& h, const AnnulusCover& cover,
                            const DistanceModel& dist, const WeightSpec& w, const HolderOptions& opts = {});

/// Multi-indices of order q in `dim` variables, as axis lists.
std::vector<std::vector<int>> multi_indices(int dim, int q);

/// d^l h_ij at p by centred differences (zero outside the lattice).
double partial(const Grid& grid, const TensorField& h, Eigen::Index i, Eigen::Index j, const std::vector<int>& axes,
               std::size_t p);

double pairwise_sum(const double* v, std::size_t count);

}  // namespace solitonlab
