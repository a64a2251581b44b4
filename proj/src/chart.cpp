#include "solitonlab/chart.hpp"

#include "solitonlab/catalog.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/left_invariant.hpp"
#include "solitonlab/random.hpp"

#include <cmath>

namespace solitonlab {

Mat3 ChartMetric::coframe(const Vec3& x) const {
  Mat3 t = Mat3::Zero();
  if (name == "nil3") {
    t(0, 0) = 1.0;
    t(1, 1) = 1.0;
    t(2, 2) = 1.0;
    t(2, 1) = -x(0);
  } else if (name == "sol3") {
    t(0, 0) = std::exp(-x(2));
    t(1, 1) = std::exp(x(2));
    t(2, 2) = 1.0;
  } else {
    t(0, 0) = std::exp(x(2));
    t(1, 1) = std::exp(x(2));
    t(2, 2) = -1.0;
  }
  return t;
}

namespace {

template <class F>
Mat3 d4(const F& f, const Vec3& x, int axis, double h) {
  Vec3 e = Vec3::Zero();
  e(axis) = h;
  return ((f(x - 2.0 * e) - f(x + 2.0 * e)) + 8.0 * (f(x + e) - f(x - e))) / (12.0 * h);
}

std::array<Mat3, 3> christoffel(const ChartMetric& cm, const Vec3& x, double h) {
  const auto g = [&](const Vec3& y) -> Mat3 { return cm.metric(y); };
  std::array<Mat3, 3> dg;
  for (int a = 0; a < 3; ++a) dg[a] = d4(g, x, a, h);
  const Mat3 ginv = cm.metric(x).inverse();
  std::array<Mat3, 3> gamma;
  for (int k = 0; k < 3; ++k) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = 0.0;
        for (int l = 0; l < 3; ++l) s += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * s;
      }
    }
  }
  return gamma;
}

}  // namespace

ChartGeometry chart_geometry(const ChartMetric& cm, const Vec3& x, double step) {
  ChartGeometry geo;
  geo.g = cm.metric(x);
  geo.ginv = geo.g.inverse();
  geo.sqrt_det = std::sqrt(geo.g.determinant());
  geo.gamma = christoffel(cm, x, step);
  for (int a = 0; a < 3; ++a) {
    Vec3 e = Vec3::Zero();
    e(a) = step;
    const auto p1 = christoffel(cm, x + e, step), m1 = christoffel(cm, x - e, step);
    const auto p2 = christoffel(cm, x + 2.0 * e, step), m2 = christoffel(cm, x - 2.0 * e, step);
    for (int k = 0; k < 3; ++k) geo.dgamma[a][k] = ((m2[k] - p2[k]) + 8.0 * (p1[k] - m1[k])) / (12.0 * step);
  }
  return geo;
}

double ChartGeometry::riemann(int l, int i, int j, int k) const {
  double r = dgamma[i][l](j, k) - dgamma[j][l](i, k);
  for (int m = 0; m < 3; ++m) r += gamma[l](i, m) * gamma[m](j, k) - gamma[l](j, m) * gamma[m](i, k);
  return r;
}

Mat3 ChartGeometry::ricci() const {
  Mat3 ric = Mat3::Zero();
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i) ric(j, k) += riemann(i, i, j, k);
  return 0.5 * (ric + ric.transpose());
}

double origin_ricci_mismatch(const ChartMetric& cm) {
  const CatalogEntry& entry = catalog_get(cm.algebra);
  const Mat alg = curvature(entry.algebra, entry.metric).ric_defining();
  const Mat3 t = cm.coframe(Vec3::Zero());
  const Mat3 expected = t.transpose() * Mat3(alg) * t;
  return (chart_geometry(cm, Vec3::Zero()).ricci() - expected).cwiseAbs().maxCoeff();
}

ChartMetric chart_metric(const std::string& name) {
  ChartMetric cm;
  cm.name = name;
  if (name == "nil3") {
    cm.algebra = "nil3";
    cm.d = Vec3(1.0, 1.0, 2.0);
    cm.lambda = -1.5;
  } else if (name == "sol3") {
    cm.algebra = "sol3";
    cm.d = Vec3(2.0, 2.0, 0.0);
    cm.lambda = -2.0;
  } else if (name == "hyp3") {
    cm.algebra = "hyp_3";
    cm.d = Vec3::Zero();
    cm.lambda = -2.0;
  } else {
    throw Error(ErrorCode::NotInCatalog, "no chart model named '" + name + "'");
  }
  const double mismatch = origin_ricci_mismatch(cm);
  if (!(mismatch <= 1e-6))
    throw Error(ErrorCode::InvalidInput, "chart " + name + " disagrees with its algebra at the origin");
  return cm;
}

namespace {

void check_grid(const TensorField& h, const Grid& grid) {
  if (grid.dim() != 3 || h.n() != 3) throw Error(ErrorCode::InvalidInput, "chart operators are three-dimensional");
  if (h.points() != grid.size()) throw Error(ErrorCode::InvalidInput, "field does not match the grid");
  if (grid.dx() > grid.radius() / 8.0) throw Error(ErrorCode::GridTooCoarse, "dx must not exceed R/8");
}

Mat3 value(const TensorField& h, const Grid& grid, std::size_t p, int axis, int step) {
  std::size_t q;
  if (!grid.shifted(p, axis, step, q)) return Mat3::Zero();
  return h.at(q);
}

// True when the 3x3x3 stencil around p touches the support of h.
bool near_support(const TensorField& h, const Grid& grid, std::size_t p) {
  static const std::vector<std::vector<int>> offsets = [] {
    std::vector<std::vector<int>> out;
    for (int a = -1; a <= 1; ++a)
      for (int b = -1; b <= 1; ++b)
        for (int c = -1; c <= 1; ++c) out.push_back({a, b, c});
    return out;
  }();
  for (const auto& off : offsets) {
    std::size_t q;
    if (grid.shifted(p, off, q) && !h.at(q).isZero(0.0)) return true;
  }
  return false;
}

}  // namespace

Mat3 apply_L_fd_at(const ChartGeometry& geo, const DriftData& data, const TensorField& h, const Grid& grid,
                   std::size_t p) {
  const double dx = grid.dx();
  const Mat3 H = h.at(p);
  std::array<Mat3, 3> dH;
  std::array<std::array<Mat3, 3>, 3> ddH;
  for (int a = 0; a < 3; ++a) {
    const Mat3 plus = value(h, grid, p, a, 1), minus = value(h, grid, p, a, -1);
    dH[a] = (plus - minus) / (2.0 * dx);
    ddH[a][a] = (plus - 2.0 * H + minus) / (dx * dx);
  }
  for (int a = 0; a < 3; ++a) {
    for (int b = a + 1; b < 3; ++b) {
      std::vector<int> off(3, 0);
      auto at = [&](int sa, int sb) -> Mat3 {
        off[static_cast<std::size_t>(a)] = sa;
        off[static_cast<std::size_t>(b)] = sb;
        std::size_t q;
        return grid.shifted(p, off, q) ? Mat3(h.at(q)) : Mat3::Zero();
      };
      ddH[a][b] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * dx * dx);
      ddH[b][a] = ddH[a][b];
    }
  }

  const auto& G = geo.gamma;
  // (nabla h)_{c ij}
  std::array<Mat3, 3> nh;
  for (int c = 0; c < 3; ++c) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double s = dH[c](i, j);
        for (int m = 0; m < 3; ++m) s -= G[m](c, i) * H(m, j) + G[m](c, j) * H(i, m);
        nh[c](i, j) = s;
      }
    }
  }

  Mat3 lap = Mat3::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      if (geo.ginv(a, b) == 0.0) continue;
      Mat3 t;
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          // d_a (nabla h)_{b ij}
          double s = ddH[a][b](i, j);
          for (int m = 0; m < 3; ++m) {
            s -= geo.dgamma[a][m](b, i) * H(m, j) + G[m](b, i) * dH[a](m, j);
            s -= geo.dgamma[a][m](b, j) * H(i, m) + G[m](b, j) * dH[a](i, m);
          }
          for (int m = 0; m < 3; ++m) s -= G[m](a, b) * nh[m](i, j) + G[m](a, i) * nh[b](m, j) + G[m](a, j) * nh[b](i, m);
          t(i, j) = s;
        }
      }
      lap += geo.ginv(a, b) * t;
    }
  }

  const Mat3 hup = geo.ginv * H * geo.ginv;
  Mat3 ring = Mat3::Zero();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int l = 0; l < 3; ++l) s += geo.g(j, l) * geo.riemann(l, i, a, b) * hup(a, b);
      ring(i, j) = s;
    }
  }
  const Mat3 ric = geo.ricci();
  const Mat3 rc_h = ric * geo.ginv * H;

  const Vec3 x = grid.point(p);
  Mat3 drift = Mat3::Zero();
  for (int k = 0; k < 3; ++k) drift += data.d(k) * x(k) * dH[k];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) drift(i, j) += (data.d(i) + data.d(j)) * H(i, j);

  const Mat3 out = lap + 2.0 * ring - rc_h - rc_h.transpose() + 2.0 * data.lambda * H + drift;
  return 0.5 * (out + out.transpose());
}

Mat3 apply_L_fd_at(const ChartMetric& cm, const DriftData& data, const TensorField& h, const Grid& grid,
                   std::size_t p) {
  check_grid(h, grid);
  if (!grid.in_open_ball(p)) return Mat3::Zero();
  return apply_L_fd_at(chart_geometry(cm, grid.point(p)), data, h, grid, p);
}

TensorField apply_L_fd(const ChartMetric& cm, const DriftData& data, const TensorField& h, const Grid& grid) {
  check_grid(h, grid);
  TensorField out(grid.size(), 3);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (!grid.in_open_ball(p) || !near_support(h, grid, p)) continue;
    out.at(p) = apply_L_fd_at(chart_geometry(cm, grid.point(p)), data, h, grid, p);
  }
  return out;
}

std::vector<double> rayleigh_quotients(const ChartMetric& cm, const DriftData& data,
                                       const std::vector<TensorField>& hs, const Grid& grid) {
  for (const auto& h : hs) check_grid(h, grid);
  const double cell = grid.dx() * grid.dx() * grid.dx();
  std::vector<std::vector<double>> num(hs.size()), den(hs.size());
  for (std::size_t p = 0; p < grid.size(); ++p) {
    if (!grid.in_open_ball(p)) continue;
    bool any = false;
    for (const auto& h : hs) any = any || near_support(h, grid, p);
    if (!any) continue;
    const ChartGeometry geo = chart_geometry(cm, grid.point(p));
    for (std::size_t k = 0; k < hs.size(); ++k) {
      const Mat3 H = hs[k].at(p);
      if (H.isZero(0.0)) continue;
      const Mat3 lh = apply_L_fd_at(geo, data, hs[k], grid, p);
      const double w = geo.sqrt_det * cell;
      num[k].push_back(w * (geo.ginv * lh * geo.ginv * H).trace());
      den[k].push_back(w * (geo.ginv * H * geo.ginv * H).trace());
    }
  }
  std::vector<double> out(hs.size());
  for (std::size_t k = 0; k < hs.size(); ++k) {
    const double d = pairwise_sum(den[k].data(), den[k].size());
    if (!(d > 0.0)) throw Error(ErrorCode::InvalidInput, "test tensor vanishes on the open ball");
    out[k] = pairwise_sum(num[k].data(), num[k].size()) / d;
  }
  return out;
}

double rayleigh_quotient(const ChartMetric& cm, const DriftData& data, const TensorField& h, const Grid& grid) {
  return rayleigh_quotients(cm, data, {h}, grid).front();
}

double smooth_bump(double r, double r0, double r1) {
  if (r <= r0) return 1.0;
  if (r >= r1) return 0.0;
  const double t = (r - r0) / (r1 - r0);
  const double a = std::exp(-1.0 / (1.0 - t)), b = std::exp(-1.0 / t);
  return a / (a + b);
}

TensorField left_invariant_field(const ChartMetric& cm, const Grid& grid, const Mat3& e, double r0, double r1) {
  TensorField f(grid.size(), 3);
  for (std::size_t p = 0; p < grid.size(); ++p) {
    const Vec3 x = grid.point(p);
    const double chi = smooth_bump(x.norm(), r0, r1);
    if (chi == 0.0) continue;
    const Mat3 t = cm.coframe(x);
    f.at(p) = chi * (t.transpose() * e * t);
  }
  return f;
}

std::vector<TensorField> rayleigh_test_tensors(const ChartMetric& cm, const Grid& grid, std::size_t count,
                                               std::uint64_t seed) {
  const double R = grid.radius();
  const double outer = 7.0 * R / 8.0;
  std::vector<TensorField> out;
  if (count == 0) return out;
  out.push_back(left_invariant_field(cm, grid, Mat3::Identity(), R / 2.0, outer));
  for (double r0 : {R / 2.0, R / 4.0}) {
    for (std::size_t a = 0; a < 6 && out.size() < count; ++a)
      out.push_back(left_invariant_field(cm, grid, Mat3(sym_basis_element(3, a)), r0, outer));
  }
  SplitMix64 rng(seed);
  while (out.size() < count) {
    Mat3 e;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) e(i, j) = e(j, i) = rng.uniform(-1.0, 1.0);
    out.push_back(left_invariant_field(cm, grid, e, R / 2.0, outer));
  }
  return out;
}

}  // namespace solitonlab
