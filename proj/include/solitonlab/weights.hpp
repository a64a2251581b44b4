#pragma once

#include <cstddef>
#include <vector>

namespace solitonlab {

/// Weight f_tau for a manifold with sectional curvature bounded below by a <= 0:
/// R^(n+tau) when a = 0 (tau > 1), exp((n+tau) R) when a < 0 (tau > 0).
struct WeightSpec {
  double a = 0.0;
  int n = 3;
  double tau = 2.0;

  /// Throws InvalidWeight outside the legal ranges.
  WeightSpec(double a, int n, double tau);

  double log_f(double r) const;
  double f(double r) const;
};

/// log of the volume of a geodesic ball of radius r in the n-dimensional space
/// form of curvature a (Euclidean or scaled hyperbolic).  Quadrature for a < 0.
double log_comparison_volume(double a, int n, double r);

struct SummabilityResult {
  std::vector<double> partial_sums;  // S_M = sum_{N=2}^{M} V(2N) / f(2N-2), first 1e5 values
  double sum = 0.0;                  // last partial sum
  bool converged = false;
  double bound = 0.0;       // last partial sum plus tail bound
  double tail_bound = 0.0;  // rigorous bound on the remaining terms
  std::size_t terms = 0;
};

/// Sums V(2N)/f_tau(2N-2) from N = 2 (f_tau(0) vanishes or is 1, and the
/// N = 1 term plays no role in convergence).  Stops once the tail bound is
/// below 1e-6 of the partial sum, or at n_max.
SummabilityResult summability_check(const WeightSpec& w, std::size_t n_max = 1000000);

}  // namespace solitonlab
