#include "solitonlab/flow.hpp"

#include "solitonlab/error.hpp"
#include "solitonlab/left_invariant.hpp"
#include "solitonlab/random.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace solitonlab {

Mat rhs_unnormalized(const LieAlgebra& L, const Metric& g) {
  return symmetrized(-2.0 * curvature(L, g).ric_defining());
}

Mat rhs_normalized(const LieAlgebra& L, const Metric& g, const SolitonCertificate& cert) {
  const Mat& gm = g.matrix();
  const Mat& D = cert.derivation;
  return symmetrized(-2.0 * curvature(L, g).ric_defining() + 2.0 * cert.lambda * gm + D.transpose() * gm + gm * D);
}

const char* to_string(Method m) { return m == Method::RK4 ? "rk4" : "rkf45"; }

Method method_from_string(const std::string& s) {
  if (s == "rk4") return Method::RK4;
  if (s == "rkf45") return Method::RKF45;
  throw Error(ErrorCode::InvalidInput, "unknown integration method '" + s + "'");
}

namespace {

// Evaluates the right-hand side at a stage value; a stage outside the SPD cone
// means the solution is leaving it.
Mat stage(const FlowRhs& rhs, const Mat& g, double t) {
  if (!is_positive_definite(g)) throw SingularityReached(t, "metric lost positive definiteness");
  return symmetrized(rhs(Metric(symmetrized(g))));
}

// Kahan-compensated state update.
void accumulate(Mat& state, Mat& carry, const Mat& increment) {
  const Mat y = increment - carry;
  const Mat t = state + y;
  carry = (t - state) - y;
  state = t;
}

struct Recorder {
  FlowTrajectory& traj;
  const Mat& reference;
  std::size_t every;
  std::size_t count = 0;

  void push(double t, const Mat& g, bool force) {
    if (!force && (count++ % every) != 0) return;
    if (!traj.times.empty() && traj.times.back() == t) return;
    traj.times.push_back(t);
    traj.metrics.push_back(g);
    traj.deviations.push_back((g - reference).norm());
  }
};

void check_spd(const Mat& g, double t) {
  if (!g.allFinite() || !is_positive_definite(g)) {
    std::ostringstream os;
    os << "metric lost positive definiteness at t = " << t;
    throw SingularityReached(t, os.str());
  }
}

}  // namespace

FlowTrajectory integrate(const FlowRhs& rhs, const Metric& g_init, double t_max, double dt, Method method,
                         const IntegrateOptions& opts) {
  if (!(dt > 0.0) || !(t_max >= 0.0)) throw Error(ErrorCode::InvalidInput, "integrate: need dt > 0 and t_max >= 0");
  FlowTrajectory traj;
  traj.method = method;
  traj.step = dt;
  const Mat reference = opts.reference.value_or(g_init.matrix());
  Recorder rec{traj, reference, std::max<std::size_t>(1, opts.record_every)};

  Mat g = g_init.matrix();
  Mat carry = Mat::Zero(g.rows(), g.cols());
  rec.push(0.0, g, true);

  if (method == Method::RK4) {
    const double ratio = t_max / dt;
    auto steps = static_cast<std::size_t>(std::llround(ratio));
    if (std::abs(ratio - static_cast<double>(steps)) > 1e-9 * std::max(1.0, ratio)) {
      steps = static_cast<std::size_t>(std::ceil(ratio));
    }
    for (std::size_t s = 0; s < steps; ++s) {
      const double t = static_cast<double>(s) * dt;
      const double t_next = (s + 1 == steps) ? t_max : static_cast<double>(s + 1) * dt;
      const double h = t_next - t;
      const Mat k1 = stage(rhs, g, t);
      const Mat k2 = stage(rhs, g + 0.5 * h * k1, t + 0.5 * h);
      const Mat k3 = stage(rhs, g + 0.5 * h * k2, t + 0.5 * h);
      const Mat k4 = stage(rhs, g + h * k3, t + h);
      accumulate(g, carry, (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
      check_spd(g, t_next);
      rec.push(t_next, g, s + 1 == steps);
    }
    return traj;
  }

  // Fehlberg 4(5); the fourth-order solution is propagated.
  static constexpr std::array<double, 6> c{0.0, 0.25, 0.375, 12.0 / 13.0, 1.0, 0.5};
  static constexpr double a[6][5] = {
      {0, 0, 0, 0, 0},
      {0.25, 0, 0, 0, 0},
      {3.0 / 32.0, 9.0 / 32.0, 0, 0, 0},
      {1932.0 / 2197.0, -7200.0 / 2197.0, 7296.0 / 2197.0, 0, 0},
      {439.0 / 216.0, -8.0, 3680.0 / 513.0, -845.0 / 4104.0, 0},
      {-8.0 / 27.0, 2.0, -3544.0 / 2565.0, 1859.0 / 4104.0, -11.0 / 40.0}};
  static constexpr std::array<double, 6> b4{25.0 / 216.0, 0.0, 1408.0 / 2565.0, 2197.0 / 4104.0, -0.2, 0.0};
  static constexpr std::array<double, 6> b5{16.0 / 135.0, 0.0, 6656.0 / 12825.0, 28561.0 / 56430.0, -9.0 / 50.0,
                                            2.0 / 55.0};
  double t = 0.0;
  double h = std::min(dt, t_max);
  std::array<Mat, 6> k;
  while (t < t_max) {
    if (h < opts.min_step * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "step size underflow (h = " << h << ") at t = " << t;
      throw Error(ErrorCode::StiffnessError, os.str());
    }
    const bool last = t + h >= t_max;
    if (last) h = t_max - t;
    for (std::size_t s = 0; s < 6; ++s) {
      Mat y = g;
      for (std::size_t r = 0; r < s; ++r) y += h * a[s][r] * k[r];
      k[s] = stage(rhs, y, t + c[s] * h);
    }
    Mat inc4 = Mat::Zero(g.rows(), g.cols());
    Mat diff = Mat::Zero(g.rows(), g.cols());
    for (std::size_t s = 0; s < 6; ++s) {
      inc4 += (h * b4[s]) * k[s];
      diff += (h * (b5[s] - b4[s])) * k[s];
    }
    const Mat next = g + inc4;
    double err = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      const double scale = opts.atol + opts.rtol * std::max(std::abs(g(i)), std::abs(next(i)));
      err = std::max(err, std::abs(diff(i)) / scale);
    }
    if (err <= 1.0) {
      accumulate(g, carry, inc4);
      t = last ? t_max : t + h;
      check_spd(g, t);
      rec.push(t, g, last);
    }
    const double factor = err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
  }
  return traj;
}

Metric perturb(const Metric& g0, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0 && eps < 0.5)) throw Error(ErrorCode::InvalidPerturbation, "eps must lie in [0, 0.5)");
  if (eps == 0.0) return g0;
  const Eigen::Index n = g0.dim();
  const double scale = eps * g0.matrix().norm();
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Mat S(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = i; j < n; ++j) S(i, j) = S(j, i) = rng.uniform(-1.0, 1.0);
    const double norm = S.norm();
    if (norm == 0.0) continue;
    const Mat g = g0.matrix() + (scale / norm) * S;
    if (is_positive_definite(g)) return Metric(g);
  }
  throw Error(ErrorCode::InvalidPerturbation, "no positive definite perturbation found in 100 draws");
}

DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& deviations,
                        std::optional<std::pair<double, double>> window, double floor, double min_r2,
                        std::size_t min_points) {
  DecayFit fit;
  if (times.size() != deviations.size() || times.empty()) {
    fit.note = "empty trajectory";
    return fit;
  }
  const double t_last = times.back();
  auto [t0, t1] = window.value_or(std::make_pair(0.5 * t_last, t_last));

  auto select = [&](double lo, double hi) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < times.size(); ++i) {
      if (times[i] >= lo && times[i] <= hi && deviations[i] >= floor) idx.push_back(i);
    }
    return idx;
  };
  std::vector<std::size_t> idx = select(t0, t1);
  if (idx.size() < min_points) {
    // Deviations reached the floor: slide the window back to where they are still resolved.
    std::size_t cut = 0;
    while (cut < deviations.size() && deviations[cut] >= floor) ++cut;
    if (cut >= 2) {
      t1 = times[cut - 1];
      t0 = 0.5 * t1;
      idx = select(t0, t1);
      fit.note = "window truncated at deviation floor";
    }
  }
  fit.t_begin = t0;
  fit.t_end = t1;
  fit.points = idx.size();
  if (idx.size() < 3) {
    fit.note = "too few points above the deviation floor";
    return fit;
  }

  double st = 0, sy = 0, stt = 0, sty = 0;
  const auto m = static_cast<double>(idx.size());
  for (auto i : idx) {
    const double y = std::log(deviations[i]);
    st += times[i];
    sy += y;
    stt += times[i] * times[i];
    sty += times[i] * y;
  }
  const double denom = m * stt - st * st;
  if (denom <= 0.0) {
    fit.note = "degenerate window";
    return fit;
  }
  const double slope = (m * sty - st * sy) / denom;
  const double intercept = (sy - slope * st) / m;
  double ss_res = 0, ss_tot = 0, worst = 0;
  const double mean = sy / m;
  for (auto i : idx) {
    const double y = std::log(deviations[i]);
    const double r = y - (intercept + slope * times[i]);
    ss_res += r * r;
    ss_tot += (y - mean) * (y - mean);
    worst = std::max(worst, r);
  }
  fit.omega = -slope;
  fit.C = std::exp(intercept);
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : (ss_res == 0.0 && slope != 0.0 ? 1.0 : 0.0);
  if (fit.r2 < min_r2) {
    fit.note = "R^2 below threshold";
  } else if (!(fit.omega > 0.0)) {
    fit.note = "deviations are not decaying";
  } else if (worst > std::log(1.1)) {
    fit.note = "deviations exceed 1.1 C exp(-omega t) in the window";
  } else {
    fit.valid = true;
  }
  return fit;
}

DecayFit fit_decay_rate(const FlowTrajectory& traj, std::optional<std::pair<double, double>> window) {
  return fit_decay_rate(traj.times, traj.deviations, window);
}

ConvergenceResult run_convergence(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert, double eps,
                                  std::uint64_t seed, const ConvergenceOptions& opts) {
  const FlowRhs rhs = [&](const Metric& g) { return rhs_normalized(L, g, cert); };
  const Metric start = perturb(g0, eps, seed);
  IntegrateOptions io;
  io.reference = g0.matrix();

  ConvergenceResult out;
  out.trajectory = integrate(rhs, start, opts.t_max, opts.dt, opts.method, io);
  out.trajectory.seed = seed;

  const Metric tail_start(out.trajectory.metrics.back());
  const double tail = (opts.limit_factor - 1.0) * opts.t_max;
  const FlowTrajectory cont = tail > 0.0 ? integrate(rhs, tail_start, tail, opts.dt, opts.method, io)
                                         : FlowTrajectory{{0.0}, {tail_start.matrix()}, {0.0}, {}, opts.method, 0, 0};
  out.limit = cont.metrics.back();
  out.limit_offset = (out.limit - g0.matrix()).norm();
  out.limit_residual = rhs(Metric(out.limit)).norm();

  out.limit_deviations.reserve(out.trajectory.metrics.size());
  for (const Mat& g : out.trajectory.metrics) out.limit_deviations.push_back((g - out.limit).norm());

  out.fit_to_g0 = fit_decay_rate(out.trajectory.times, out.trajectory.deviations);
  out.fit_to_limit = fit_decay_rate(out.trajectory.times, out.limit_deviations, std::nullopt, opts.limit_floor);
  out.trajectory.fitted = out.fit_to_g0;
  return out;
}

}  // namespace solitonlab
