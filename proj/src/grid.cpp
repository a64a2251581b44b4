#include "solitonlab/grid.hpp"

#include "solitonlab/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace solitonlab {

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  if (!(spec.radius > 0.0) || !(spec.dx > 0.0) || spec.dim < 1)
    throw Error(ErrorCode::InvalidInput, "grid needs radius > 0, dx > 0, dim >= 1");
  half_ = static_cast<int>(std::ceil(spec.radius / spec.dx - 1e-9));
  size_ = 1;
  for (int a = 0; a < spec.dim; ++a) size_ *= static_cast<std::size_t>(side());
}

std::size_t Grid::origin() const noexcept {
  std::size_t p = 0, stride = 1;
  for (int a = 0; a < dim(); ++a) {
    p += static_cast<std::size_t>(half_) * stride;
    stride *= static_cast<std::size_t>(side());
  }
  return p;
}

std::vector<int> Grid::index(std::size_t p) const {
  std::vector<int> idx(static_cast<std::size_t>(dim()));
  const auto s = static_cast<std::size_t>(side());
  for (auto& v : idx) {
    v = static_cast<int>(p % s) - half_;
    p /= s;
  }
  return idx;
}

std::size_t Grid::flat(const std::vector<int>& idx) const {
  std::size_t p = 0, stride = 1;
  for (int a = 0; a < dim(); ++a) {
    p += static_cast<std::size_t>(idx[static_cast<std::size_t>(a)] + half_) * stride;
    stride *= static_cast<std::size_t>(side());
  }
  return p;
}

Vec Grid::point(std::size_t p) const {
  const std::vector<int> idx = index(p);
  Vec x(dim());
  for (int a = 0; a < dim(); ++a) x(a) = idx[static_cast<std::size_t>(a)] * spec_.dx;
  return x;
}

bool Grid::shifted(std::size_t p, const std::vector<int>& offset, std::size_t& out) const {
  std::vector<int> idx = index(p);
  for (int a = 0; a < dim(); ++a) {
    int& v = idx[static_cast<std::size_t>(a)];
    v += offset[static_cast<std::size_t>(a)];
    if (v < -half_ || v > half_) return false;
  }
  out = flat(idx);
  return true;
}

bool Grid::shifted(std::size_t p, int axis, int step, std::size_t& out) const {
  std::size_t stride = 1;
  for (int a = 0; a < axis; ++a) stride *= static_cast<std::size_t>(side());
  const int v = static_cast<int>((p / stride) % static_cast<std::size_t>(side())) - half_ + step;
  if (v < -half_ || v > half_) return false;
  out = step >= 0 ? p + static_cast<std::size_t>(step) * stride : p - static_cast<std::size_t>(-step) * stride;
  return true;
}

bool TensorField::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](double v) { return v == 0.0; });
}

TensorField sample_field(const Grid& grid, Eigen::Index n, const std::function<Mat(const Vec&)>& h) {
  TensorField f(grid.size(), n);
  for (std::size_t p = 0; p < grid.size(); ++p) f.at(p) = h(grid.point(p));
  return f;
}

std::vector<double> EuclideanDistance::origin_distances(const Grid& grid) const {
  std::vector<double> d(grid.size());
  for (std::size_t p = 0; p < grid.size(); ++p) d[p] = grid.euclidean_radius(p);
  return d;
}

double EuclideanDistance::pair_distance(const Grid& grid, std::size_t p, std::size_t q) const {
  return (grid.point(p) - grid.point(q)).norm();
}

namespace {

// Offsets in {-1,0,1}^dim whose first nonzero entry is positive.
std::vector<std::vector<int>> half_neighbourhood(int dim) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(dim), -1);
  while (true) {
    auto first = std::find_if(v.begin(), v.end(), [](int c) { return c != 0; });
    if (first != v.end() && *first > 0) out.push_back(v);
    std::size_t a = 0;
    while (a < v.size() && v[a] == 1) v[a++] = -1;
    if (a == v.size()) break;
    ++v[a];
  }
  return out;
}

}  // namespace

std::vector<double> MetricDistance::origin_distances(const Grid& grid) const {
  const std::size_t n = grid.size();
  std::vector<Mat> g(n);
  for (std::size_t p = 0; p < n; ++p) g[p] = metric_(grid.point(p));

  std::vector<std::vector<int>> offsets;
  for (const auto& v : half_neighbourhood(grid.dim())) {
    offsets.push_back(v);
    std::vector<int> w(v);
    for (int& c : w) c = -c;
    offsets.push_back(w);
  }

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[grid.origin()] = 0.0;
  queue.emplace(0.0, grid.origin());
  while (!queue.empty()) {
    auto [d, p] = queue.top();
    queue.pop();
    if (d > dist[p]) continue;
    for (const auto& off : offsets) {
      std::size_t q;
      if (!grid.shifted(p, off, q)) continue;
      Vec v(grid.dim());
      for (int a = 0; a < grid.dim(); ++a) v(a) = off[static_cast<std::size_t>(a)] * grid.dx();
      const double len = std::sqrt(v.dot(0.5 * (g[p] + g[q]) * v));
      if (d + len < dist[q]) {
        dist[q] = d + len;
        queue.emplace(dist[q], q);
      }
    }
  }
  return dist;
}

double MetricDistance::pair_distance(const Grid& grid, std::size_t p, std::size_t q) const {
  const Vec x = grid.point(p);
  const Vec v = grid.point(q) - x;
  // Simpson's rule on four panels.
  constexpr int panels = 4;
  double sum = 0.0;
  for (int i = 0; i <= panels; ++i) {
    const double s = static_cast<double>(i) / panels;
    const double w = (i == 0 || i == panels) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    sum += w * std::sqrt(v.dot(metric_(x + s * v) * v));
  }
  return sum / (3.0 * panels);
}

bool AnnulusCover::contains(int N, double d) {
  if (N == 1) return d < 4.0;
  return d > N - 1.0 && d < N + 3.0;
}

AnnulusCover::AnnulusCover(const Grid& grid, const DistanceModel& dist) : dist_(dist.origin_distances(grid)) {
  double dmax = 0.0;
  for (std::size_t p = 0; p < grid.size(); ++p)
    if (grid.euclidean_radius(p) <= grid.radius()) dmax = std::max(dmax, dist_[p]);
  const int count = static_cast<int>(std::floor(dmax)) + 1;
  members_.resize(static_cast<std::size_t>(count));
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (grid.euclidean_radius(p) > grid.radius()) continue;
    for (int N = 1; N <= count; ++N)
      if (contains(N, dist_[p])) members_[static_cast<std::size_t>(N - 1)].push_back(p);
  }
}

double AnnulusCover::boundary_distance(int N, std::size_t p) const {
  const double d = dist_[p];
  if (N == 1) return 4.0 - d;
  return std::min(d - (N - 1.0), N + 3.0 - d);
}

std::vector<std::vector<int>> multi_indices(int dim, int q) {
  std::vector<std::vector<int>> out;
  if (q == 0) return {{}};
  for (const auto& tail : multi_indices(dim, q - 1)) {
    const int start = tail.empty() ? 0 : tail.back();
    for (int a = start; a < dim; ++a) {
      auto m = tail;
      m.push_back(a);
      out.push_back(m);
    }
  }
  return out;
}

double partial(const Grid& grid, const TensorField& h, Eigen::Index i, Eigen::Index j, const std::vector<int>& axes,
               std::size_t p) {
  auto value = [&](std::size_t q, bool ok) { return ok ? h.component(q, i, j) : 0.0; };
  const double dx = grid.dx();
  std::size_t a = 0, b = 0, c = 0, d = 0;
  if (axes.empty()) return h.component(p, i, j);
  if (axes.size() == 1) {
    const bool pa = grid.shifted(p, axes[0], 1, a), pb = grid.shifted(p, axes[0], -1, b);
    return (value(a, pa) - value(b, pb)) / (2.0 * dx);
  }
  if (axes.size() == 2 && axes[0] == axes[1]) {
    const bool pa = grid.shifted(p, axes[0], 1, a), pb = grid.shifted(p, axes[0], -1, b);
    return (value(a, pa) - 2.0 * h.component(p, i, j) + value(b, pb)) / (dx * dx);
  }
  if (axes.size() == 2) {
    std::vector<int> off(static_cast<std::size_t>(grid.dim()), 0);
    auto at = [&](int sa, int sb, std::size_t& q) {
      off[static_cast<std::size_t>(axes[0])] = sa;
      off[static_cast<std::size_t>(axes[1])] = sb;
      return grid.shifted(p, off, q);
    };
    const bool ok_a = at(1, 1, a), ok_b = at(1, -1, b), ok_c = at(-1, 1, c), ok_d = at(-1, -1, d);
    return (value(a, ok_a) - value(b, ok_b) - value(c, ok_c) + value(d, ok_d)) / (4.0 * dx * dx);
  }
  throw Error(ErrorCode::InvalidInput, "derivatives of order > 2 are not supported");
}

double pairwise_sum(const double* v, std::size_t count) {
  if (count <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += v[i];
    return s;
  }
  const std::size_t mid = count / 2;
  return pairwise_sum(v, mid) + pairwise_sum(v + mid, count - mid);
}

double weighted_holder_norm(const Grid& grid, const TensorField& h, const AnnulusCover& cover,
                            const DistanceModel& dist, const WeightSpec& w, const HolderOptions& opts) {
  if (opts.k < 0 || opts.k > 2) throw Error(ErrorCode::InvalidInput, "k must be 0, 1 or 2");
  if (!(opts.alpha > 0.0 && opts.alpha < 1.0)) throw Error(ErrorCode::InvalidInput, "alpha must lie in (0, 1)");
  const Eigen::Index n = h.n();
  const int dim = grid.dim();

  // Pair offsets for the sampled seminorm; annuli are at most 8 wide.
  std::vector<std::vector<int>> offsets;
  if (!opts.all_pairs) {
    for (const auto& v : half_neighbourhood(dim)) {
      double len = 0.0;
      for (int c : v) len += c * c;
      len = std::sqrt(len) * grid.dx();
      for (int s = 1; s * len <= 8.0; s *= 2) {
        auto o = v;
        for (int& c : o) c *= s;
        offsets.push_back(o);
      }
    }
  }

  double norm = 0.0;
  std::vector<double> deriv(grid.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      // sup-terms per annulus accumulate across q; seminorm only for |l| = k
      std::vector<double> annulus_total(static_cast<std::size_t>(cover.count()), 0.0);
      for (int q = 0; q <= opts.k; ++q) {
        const auto indices = multi_indices(dim, q);
        std::vector<double> sup_q(static_cast<std::size_t>(cover.count()), 0.0);
        std::vector<double> semi(static_cast<std::size_t>(cover.count()), 0.0);
        for (const auto& ell : indices) {
          for (std::size_t p = 0; p < grid.size(); ++p) deriv[p] = partial(grid, h, i, j, ell, p);
          for (int N = 1; N <= cover.count(); ++N) {
            const auto& pts = cover.members(N);
            double& s = sup_q[static_cast<std::size_t>(N - 1)];
            for (std::size_t p : pts) s = std::max(s, std::pow(cover.boundary_distance(N, p), q) * std::abs(deriv[p]));
            if (q != opts.k) continue;
            double& sn = semi[static_cast<std::size_t>(N - 1)];
            auto visit = [&](std::size_t x, std::size_t y) {
              const double diff = std::abs(deriv[x] - deriv[y]);
              if (diff == 0.0) return;
              const double dxy = dist.pair_distance(grid, x, y);
              if (dxy < grid.dx()) return;
              const double dmin = std::min(cover.boundary_distance(N, x), cover.boundary_distance(N, y));
              sn = std::max(sn, std::pow(dmin, opts.k + opts.alpha) * diff / std::pow(dxy, opts.alpha));
            };
            if (opts.all_pairs) {
              for (std::size_t a = 0; a < pts.size(); ++a)
                for (std::size_t b = a + 1; b < pts.size(); ++b) visit(pts[a], pts[b]);
            } else {
              for (std::size_t x : pts) {
                for (const auto& off : offsets) {
                  std::size_t y;
                  if (grid.shifted(x, off, y) && AnnulusCover::contains(N, cover.origin_distance(y))) visit(x, y);
                }
              }
            }
          }
        }
        for (int N = 1; N <= cover.count(); ++N) {
          annulus_total[static_cast<std::size_t>(N - 1)] +=
              sup_q[static_cast<std::size_t>(N - 1)] + semi[static_cast<std::size_t>(N - 1)];
        }
      }
      for (int N = 1; N <= cover.count(); ++N)
        norm = std::max(norm, std::exp(0.5 * w.log_f(N)) * annulus_total[static_cast<std::size_t>(N - 1)]);
    }
  }
  return norm;
}

}  // namespace solitonlab
