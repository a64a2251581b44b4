#pragma once

#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/types.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace solitonlab {

/// -2 ric(g) in the defining basis.
Mat rhs_unnormalized(const LieAlgebra& L, const Metric& g);

/// -2 ric(g) + 2 lambda g + D^T g + g D with lambda, D frozen from `cert`.
Mat rhs_normalized(const LieAlgebra& L, const Metric& g, const SolitonCertificate& cert);

enum class Method { RK4, RKF45 };

const char* to_string(Method m);
Method method_from_string(const std::string& s);

using FlowRhs = std::function<Mat(const Metric&)>;

struct DecayFit {
  double C = 0.0;
  double omega = 0.0;
  double r2 = 0.0;
  double t_begin = 0.0;
  double t_end = 0.0;
  std::size_t points = 0;
  bool valid = false;
  std::string note;
};

struct FlowTrajectory {
  std::vector<double> times;
  std::vector<Mat> metrics;
  std::vector<double> deviations;  // ||g(t) - reference||_F
  std::optional<DecayFit> fitted;
  Method method = Method::RKF45;
  double step = 0.0;
  std::uint64_t seed = 0;
};

struct IntegrateOptions {
  double atol = 1e-9;
  double rtol = 1e-9;
  std::size_t record_every = 1;  // keep every k-th accepted step (the last one is always kept)
  double min_step = 1e-12;       // relative to max(1, |t|); rkf45 only
  std::optional<Mat> reference;  // deviation reference, defaults to the initial metric
};

/// Classic RK4 with fixed dt or Fehlberg 4(5) with error control.  Increments
/// are symmetrized and the metric is checked for positive definiteness after
/// every accepted step.  Throws SingularityReached or StiffnessError.
FlowTrajectory integrate(const FlowRhs& rhs, const Metric& g_init, double t_max, double dt, Method method,
                         const IntegrateOptions& opts = {});

/// g0 + eps ||g0||_F S with S a seeded random symmetric matrix of unit Frobenius
/// norm.  eps = 0 returns g0.  Throws InvalidPerturbation.
Metric perturb(const Metric& g0, double eps, std::uint64_t seed);

/// Log-linear least squares on the window (default: second half of the run).
/// Points below `floor` are dropped; if fewer than `min_points` remain the
/// window slides back to [t_c / 2, t_c] with t_c the last time still above it.
DecayFit fit_decay_rate(const std::vector<double>& times, const std::vector<double>& deviations,
                        std::optional<std::pair<double, double>> window = std::nullopt, double floor = 1e-14,
                        double min_r2 = 0.98, std::size_t min_points = 8);

DecayFit fit_decay_rate(const FlowTrajectory& traj, std::optional<std::pair<double, double>> window = std::nullopt);

/// Perturb a soliton and run the normalized flow.  Because every metric on the
/// automorphism orbit of g0 is stationary, the run converges to a nearby point
/// g_inf of that orbit; decay is fitted both against g0 and against g_inf
/// (taken from a continuation to `limit_factor * t_max`).
struct ConvergenceResult {
  FlowTrajectory trajectory;  // deviations against g0
  Mat limit;
  double limit_offset = 0.0;    // ||g_inf - g0||_F
  double limit_residual = 0.0;  // ||rhs_normalized(g_inf)||_F
  std::vector<double> limit_deviations;
  DecayFit fit_to_g0;
  DecayFit fit_to_limit;
};

struct ConvergenceOptions {
  double t_max = 10.0;
  double dt = 1e-2;
  Method method = Method::RK4;
  double limit_factor = 3.0;
  double limit_floor = 1e-10;
};

ConvergenceResult run_convergence(const LieAlgebra& L, const Metric& g0, const SolitonCertificate& cert, double eps,
                                  std::uint64_t seed, const ConvergenceOptions& opts = {});

}  // namespace solitonlab
