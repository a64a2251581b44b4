#include "doctest.h"
#include "oracles.hpp"

#include "solitonlab/catalog.hpp"
#include "solitonlab/chart.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/grid.hpp"
#include "solitonlab/left_invariant.hpp"
#include "solitonlab/weights.hpp"

#include <cmath>

using namespace solitonlab;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no exception");
  return ErrorCode::InvalidInput;
}

// Frame-component value of L on the left-invariant block, mapped to chart components at x.
Mat3 algebraic_L(const ChartMetric& cm, const Mat3& e, const Vec3& x) {
  const auto& entry = catalog_get(cm.algebra);
  const auto cert = solve_soliton(entry.algebra, entry.metric);
  const auto pkg = curvature(entry.algebra, entry.metric);
  const Mat E = e;
  const Mat Df = pkg.frame.endo_to_frame(cert.derivation);
  const Mat m = lichnerowicz(pkg, E) + 2 * cert.lambda * E + lie_derivative_term(E, Df);
  const Mat3 th = cm.coframe(x);
  return th.transpose() * Mat3(m) * th;
}

std::size_t grid_index(const Grid& grid, const Vec3& x) {
  std::vector<int> idx(3);
  for (int a = 0; a < 3; ++a) idx[static_cast<std::size_t>(a)] = static_cast<int>(std::lround(x(a) / grid.dx()));
  return grid.flat(idx);
}

double plateau_error(const std::string& model, const Mat3& e, const Vec3& x, double dx) {
  const auto cm = chart_metric(model);
  const Grid grid({2.0, dx, 3});
  const auto h = left_invariant_field(cm, grid, e, 1.2, 1.9);
  const std::size_t p = grid_index(grid, x);
  const Mat3 fd = apply_L_fd_at(cm, drift_data(cm), h, grid, p);
  return (fd - algebraic_L(cm, e, x)).cwiseAbs().maxCoeff();
}

TensorField bump_field(const Grid& grid, int n) {
  return sample_field(grid, n, [n](const Vec& x) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) m(i, j) = (i == j ? 1.0 : 0.3) * std::cos(0.4 * (i + 1) * x(0));
    return Mat(smooth_bump(x.norm(), 0.5, 2.0) * m);
  });
}

}  // namespace

TEST_CASE("weight function") {
  const WeightSpec w0(0, 3, 2);
  CHECK(w0.f(0) == 0.0);
  CHECK(w0.f(2.0) == doctest::Approx(std::pow(2.0, 5)).epsilon(1e-14));
  const WeightSpec w1(-1, 3, 1);
  CHECK(w1.f(1.5) == doctest::Approx(std::exp(4 * 1.5)).epsilon(1e-14));
  for (const auto& w : {w0, w1, WeightSpec(-0.3, 5, 0.5), WeightSpec(0, 2, 1.01)}) {
    double prev = w.f(0);
    for (int i = 1; i <= 100; ++i) {
      const double v = w.f(0.1 * i);
      CHECK(v > prev);
      prev = v;
    }
  }
  for (auto bad : {std::tuple{0.0, 3, 0.0}, std::tuple{0.0, 3, 1.0}, std::tuple{-1.0, 3, 0.0},
                   std::tuple{0.5, 3, 2.0}, std::tuple{0.0, 0, 2.0}})
    CHECK(code_of([&] { WeightSpec(std::get<0>(bad), std::get<1>(bad), std::get<2>(bad)); }) ==
          ErrorCode::InvalidWeight);
}

TEST_CASE("comparison volumes") {
  // Euclidean ball in R^3 and hyperbolic 3-space.
  CHECK(std::exp(log_comparison_volume(0, 3, 2.0)) == doctest::Approx(4.0 / 3 * M_PI * 8).epsilon(1e-12));
  const double r = 1.7;
  const double hyp = M_PI * (std::sinh(2 * r) - 2 * r);
  CHECK(std::exp(log_comparison_volume(-1, 3, r)) == doctest::Approx(hyp).epsilon(1e-10));
  // curvature -4 halves lengths: V_{-4}(r) = V_{-1}(2r) / 2^n
  const double hyp2 = M_PI * (std::sinh(4 * r) - 4 * r);
  CHECK(std::exp(log_comparison_volume(-4, 3, r)) == doctest::Approx(hyp2 / 8).epsilon(1e-10));
  CHECK(log_comparison_volume(-1, 3, 40.0) == doctest::Approx(std::log(M_PI / 2) + 80).epsilon(1e-8));
}

TEST_CASE("summability examples") {
  const auto a = summability_check(WeightSpec(0, 3, 2));
  CHECK(a.converged);
  CHECK(a.tail_bound < 1e-6 * a.sum);
  CHECK(a.sum >= a.partial_sums.back());
  const auto b = summability_check(WeightSpec(-1, 3, 1));
  CHECK(b.converged);
  CHECK(b.terms < 100);
  // terms of the hyperbolic case decay like e^{2N(n-1)} / e^{2N(n+tau)}, ratio e^{-4}
  REQUIRE(b.partial_sums.size() >= 3);
  const double t1 = b.partial_sums[1] - b.partial_sums[0], t2 = b.partial_sums[2] - b.partial_sums[1];
  CHECK(t2 / t1 == doctest::Approx(std::exp(-4.0)).epsilon(1e-3));
  CHECK(code_of([] { summability_check(WeightSpec(0, 3, 2), 5); }) == ErrorCode::InvalidInput);
  for (std::size_t i = 1; i < a.partial_sums.size(); ++i) CHECK(a.partial_sums[i] > a.partial_sums[i - 1]);
}

TEST_CASE("summability converges across legal parameters") {
  SplitMix64 rng(101);
  for (int s = 0; s < 12; ++s) {
    const double a = -rng.uniform();
    const int n = 2 + static_cast<int>(rng.next() % 7);
    const double tau = a == 0.0 ? 2 + 2 * rng.uniform() : 0.2 + 2 * rng.uniform();
    CAPTURE(a);
    CAPTURE(n);
    CAPTURE(tau);
    const auto r = summability_check(WeightSpec(a, n, tau));
    CHECK(r.converged);
    CHECK(r.bound >= r.sum);
  }
  for (int n = 2; n <= 8; ++n) {
    CHECK(summability_check(WeightSpec(0, n, 2)).converged);
    CHECK(summability_check(WeightSpec(-1, n, 1)).converged);
  }
}

TEST_CASE("weighted Holder norm against the brute-force oracle") {
  const Grid grid({3.0, 0.5, 2});
  const EuclideanDistance dist;
  const AnnulusCover cover(grid, dist);
  const auto h = bump_field(grid, 2);
  for (int k = 0; k <= 2; ++k) {
    for (double tau : {2.0, 3.5}) {
      const WeightSpec w(0, 2, tau);
      const double lib = weighted_holder_norm(grid, h, cover, dist, w, {k, 0.5, true});
      const double ref = oracle::holder_bruteforce(grid, h, w, k, 0.5);
      CAPTURE(k);
      CHECK(lib == doctest::Approx(ref).epsilon(1e-12));
      const double sampled = weighted_holder_norm(grid, h, cover, dist, w, {k, 0.5, false});
      CHECK(sampled <= lib * (1 + 1e-12));
      CHECK(sampled > 0.0);
    }
  }
}

TEST_CASE("weighted Holder norm: zero field, monotone in tau") {
  const Grid grid({3.0, 0.25, 2});
  const EuclideanDistance dist;
  const AnnulusCover cover(grid, dist);
  CHECK(weighted_holder_norm(grid, TensorField(grid.size(), 2), cover, dist, WeightSpec(0, 2, 2)) == 0.0);
  const auto h = bump_field(grid, 2);
  double prev = 0.0;
  for (double tau : {1.5, 2.0, 3.0, 5.0}) {
    const double v = weighted_holder_norm(grid, h, cover, dist, WeightSpec(0, 2, tau), {1, 0.3});
    CHECK(std::isfinite(v));
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(code_of([&] { weighted_holder_norm(grid, h, cover, dist, WeightSpec(0, 2, 2), {3, 0.5}); }) ==
        ErrorCode::InvalidInput);
  CHECK(code_of([&] { weighted_holder_norm(grid, h, cover, dist, WeightSpec(0, 2, 2), {0, 1.0}); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("annulus cover invariants") {
  const Grid grid({9.0, 0.5, 2});
  const EuclideanDistance euclid;
  const MetricDistance scaled([](const Vec& x) { return Mat(Mat::Identity(x.size(), x.size()) * 1.44); });
  for (const DistanceModel* dm : {static_cast<const DistanceModel*>(&euclid), static_cast<const DistanceModel*>(&scaled)}) {
    const AnnulusCover cover(grid, *dm);
    std::vector<int> hits(grid.size(), 0);
    for (int N = 1; N <= cover.count(); ++N) {
      for (std::size_t p : cover.members(N)) {
        ++hits[p];
        CHECK(cover.boundary_distance(N, p) > 0.0);
        if (N >= 2) CHECK(cover.boundary_distance(N, p) <= 2.0);
      }
    }
    for (std::size_t p = 0; p < grid.size(); ++p)
      if (grid.in_open_ball(p)) CHECK(hits[p] >= 1);
  }
}

TEST_CASE("metric distance on a constant metric") {
  const Grid grid({2.0, 0.25, 3});
  const MetricDistance md([](const Vec& x) { return Mat(4.0 * Mat::Identity(x.size(), x.size())); });
  const auto d = md.origin_distances(grid);
  for (std::size_t p = 0; p < grid.size(); p += 7) {
    const double e = 2 * grid.euclidean_radius(p);
    CHECK(d[p] >= e - 1e-12);
    CHECK(d[p] <= 1.15 * e + 1e-12);
    CHECK(md.pair_distance(grid, p, grid.origin()) == doctest::Approx(e).epsilon(1e-12));
  }
}

TEST_CASE("chart models") {
  const auto nil = chart_metric("nil3");
  CHECK((nil.metric(Vec3::Zero()) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
  for (const char* name : {"nil3", "sol3", "hyp3"}) CHECK(origin_ricci_mismatch(chart_metric(name)) < 1e-6);

  const auto geo = chart_geometry(nil, Vec3::Zero());
  const Mat3 rc = geo.ginv * geo.ricci();
  CHECK((rc - Vec3(-0.5, -0.5, 0.5).asDiagonal().toDenseMatrix()).cwiseAbs().maxCoeff() < 1e-6);

  const auto sol = chart_metric("sol3");
  SplitMix64 rng(17);
  for (int s = 0; s < 100; ++s) {
    const Vec3 x(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-1.5, 1.5));
    CHECK(chart_geometry(sol, x).scalar() == doctest::Approx(-2).epsilon(1e-6));
  }
  // homogeneity of nil3: same Ricci eigenvalues away from the origin
  const auto g2 = chart_geometry(nil, Vec3(1.3, -0.7, 2.0));
  Eigen::SelfAdjointEigenSolver<Mat3> es(g2.g);
  const Mat3 s = es.operatorInverseSqrt();
  Eigen::SelfAdjointEigenSolver<Mat3> er(s * g2.ricci() * s);
  CHECK((er.eigenvalues() - Vec3(-0.5, -0.5, 0.5)).cwiseAbs().maxCoeff() < 1e-6);

  CHECK(code_of([] { chart_metric("nil5"); }) == ErrorCode::NotInCatalog);
}

TEST_CASE("apply_L_fd: errors and zero field") {
  const auto cm = chart_metric("sol3");
  const Grid coarse({2.0, 0.3, 3});
  CHECK(code_of([&] { apply_L_fd(cm, drift_data(cm), TensorField(coarse.size(), 3), coarse); }) ==
        ErrorCode::GridTooCoarse);
  const Grid grid({2.0, 0.25, 3});
  CHECK(apply_L_fd(cm, drift_data(cm), TensorField(grid.size(), 3), grid).is_zero());
  const Grid flat({2.0, 0.25, 2});
  CHECK(code_of([&] { apply_L_fd(cm, drift_data(cm), TensorField(flat.size(), 3), flat); }) ==
        ErrorCode::InvalidInput);
}

TEST_CASE("apply_L_fd on bump plateaus") {
  // hyp3: L g = 2 lambda g wherever the bump is constant
  {
    const auto cm = chart_metric("hyp3");
    const Grid grid({2.0, 2.0 / 32, 3});
    const auto h = left_invariant_field(cm, grid, Mat3::Identity(), 1.2, 1.9);
    for (const Vec3 x : {Vec3(0, 0, 0), Vec3(0.25, -0.5, 0.375), Vec3(-0.5, 0.5, -0.5)}) {
      const Mat3 lh = apply_L_fd_at(cm, drift_data(cm), h, grid, grid_index(grid, x));
      const Mat3 g = cm.metric(x);
      CHECK((lh - 2 * cm.lambda * g).cwiseAbs().maxCoeff() < 2e-2 * g.cwiseAbs().maxCoeff());
    }
  }
  // nil3: left-invariant E11 is polynomial in the chart, the stencils are exact
  {
    Mat3 e = Mat3::Zero();
    e(0, 0) = 1;
    for (const Vec3 x : {Vec3(0, 0, 0), Vec3(0.5, 0.25, -0.25), Vec3(-0.75, 0.5, 0.25)})
      CHECK(plateau_error("nil3", e, x, 0.125) < 1e-7);
  }
}

TEST_CASE("apply_L_fd converges at second order") {
  Mat3 e;
  e << 1.0, 0.3, 0.0, 0.3, 2.0, 0.5, 0.0, 0.5, 1.0;
  const Vec3 x(0.5, 0.25, -0.25);
  for (const char* model : {"sol3", "hyp3"}) {
    CAPTURE(model);
    const double coarse = plateau_error(model, e, x, 0.25);
    const double fine = plateau_error(model, e, x, 0.125);
    CHECK(coarse > 1e-8);
    const double ratio = coarse / fine;
    CHECK(ratio >= 3.0);
    CHECK(ratio <= 5.0);
  }
}

TEST_CASE("Rayleigh quotient") {
  const auto cm = chart_metric("sol3");
  const Grid grid({2.0, 0.125, 3});
  const auto tensors = rayleigh_test_tensors(cm, grid, 3, 5);
  REQUIRE(tensors.size() == 3);
  TensorField scaled = tensors[1];
  scaled.scale(5.0);
  const auto q = rayleigh_quotients(cm, drift_data(cm), {tensors[1], scaled}, grid);
  CHECK(std::abs(q[0] - q[1]) <= 1e-12 * std::abs(q[0]));
  CHECK(code_of([&] { rayleigh_quotient(cm, drift_data(cm), TensorField(grid.size(), 3), grid); }) ==
        ErrorCode::InvalidInput);
  // quotients from the same seed are reproducible
  CHECK(rayleigh_quotient(cm, drift_data(cm), rayleigh_test_tensors(cm, grid, 3, 5)[2], grid) ==
        rayleigh_quotient(cm, drift_data(cm), tensors[2], grid));
}

TEST_CASE("soliton field grows linearly") {
  const Grid grid({3.0, 0.25, 3});
  for (const char* name : {"nil3", "sol3", "hyp3"}) {
    const auto cm = chart_metric(name);
    const double dmax = cm.d.cwiseAbs().maxCoeff();
    double worst = -1.0;
    for (std::size_t p = 0; p < grid.size(); ++p) {
      const Vec3 x = grid.point(p);
      worst = std::max(worst, cm.d.cwiseProduct(x).norm() - dmax * x.norm());
    }
    CHECK(worst <= 1e-15);
  }
}

TEST_CASE("smooth bump") {
  CHECK(smooth_bump(0.3, 1, 2) == 1.0);
  CHECK(smooth_bump(2.0, 1, 2) == 0.0);
  CHECK(smooth_bump(3.0, 1, 2) == 0.0);
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = smooth_bump(1 + 0.01 * i, 1, 2);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
}
