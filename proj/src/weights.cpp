#include "solitonlab/weights.hpp"

#include "solitonlab/error.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <string>

namespace solitonlab {

WeightSpec::WeightSpec(double a_, int n_, double tau_) : a(a_), n(n_), tau(tau_) {
  if (!std::isfinite(a) || a > 0.0) throw Error(ErrorCode::InvalidWeight, "curvature bound a must be <= 0");
  if (n < 1) throw Error(ErrorCode::InvalidWeight, "dimension must be positive");
  if (!std::isfinite(tau)) throw Error(ErrorCode::InvalidWeight, "tau must be finite");
  if (a == 0.0 && !(tau > 1.0)) throw Error(ErrorCode::InvalidWeight, "a = 0 needs tau > 1");
  if (a < 0.0 && !(tau > 0.0)) throw Error(ErrorCode::InvalidWeight, "a < 0 needs tau > 0");
}

double WeightSpec::log_f(double r) const {
  if (a == 0.0) return r > 0.0 ? (n + tau) * std::log(r) : -std::numeric_limits<double>::infinity();
  return (n + tau) * r;
}

double WeightSpec::f(double r) const { return std::exp(log_f(r)); }

namespace {

double log_sphere_area(int n) {
  // |S^(n-1)| = 2 pi^(n/2) / Gamma(n/2)
  return std::log(2.0) + 0.5 * n * std::log(M_PI) - std::lgamma(0.5 * n);
}

}  // namespace

double log_comparison_volume(double a, int n, double r) {
  if (r <= 0.0) return -std::numeric_limits<double>::infinity();
  if (a == 0.0) return log_sphere_area(n) + n * std::log(r) - std::log(static_cast<double>(n));
  const double k = std::sqrt(-a);
  if (n == 1) return std::log(2.0 * r);
  // V = |S| int_0^r (sinh(k s)/k)^(n-1) ds.  Factor out exp((n-1) k r) / (2k)^(n-1)
  // and integrate in u = r - s, where the integrand decays like exp(-(n-1) k u).
  const double m = n - 1.0;
  auto integrand = [&](double u) {
    const double s = r - u;
    return std::pow(-std::expm1(-2.0 * k * s), m) * std::exp(-m * k * u);
  };
  const double upper = std::min(r, 60.0 / (m * k));
  const double integral = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, 0.0, upper, 15, 1e-13);
  return log_sphere_area(n) + m * k * r - m * std::log(2.0 * k) + std::log(integral);
}

SummabilityResult summability_check(const WeightSpec& w, std::size_t n_max) {
  if (n_max < 10) throw Error(ErrorCode::InvalidInput, "n_max must be at least 10");
  SummabilityResult out;
  double sum = 0.0;
  double prev_term = std::numeric_limits<double>::infinity();
  bool ratio_below_one = false;

  // Log-scale prefactor of the tail bounds.
  const int n = w.n;
  const double log_area = log_sphere_area(n);
  const double k = w.a < 0.0 ? std::sqrt(-w.a) : 0.0;

  for (std::size_t N = 2; N <= n_max; ++N) {
    const double nd = static_cast<double>(N);
    const double term = std::exp(log_comparison_volume(w.a, n, 2.0 * nd) - w.log_f(2.0 * nd - 2.0));
    ratio_below_one = term < prev_term;
    prev_term = term;
    sum += term;
    if (out.partial_sums.size() < 100000) out.partial_sums.push_back(sum);
    out.sum = sum;
    out.terms = N - 1;

    double tail = std::numeric_limits<double>::infinity();
    if (w.a == 0.0) {
      // term(x) = c 2^-tau (x/(x-1))^n (x-1)^-tau is decreasing, so the sum
      // over M > N is below the integral from N.
      const double log_c = log_area - std::log(static_cast<double>(n));
      tail = std::exp(log_c - w.tau * std::log(2.0) + n * std::log(nd / (nd - 1.0)) +
                      (1.0 - w.tau) * std::log(nd - 1.0)) / (w.tau - 1.0);
    } else if (n > 1) {
      // V(R) <= |S| exp((n-1) k R) / ((2k)^(n-1) (n-1) k), so terms are
      // bounded by B r^M with r = exp(2((n-1) k - (n + tau))).
      const double m = n - 1.0;
      const double log_r = 2.0 * (m * k - (n + w.tau));
      if (log_r < 0.0) {
        const double log_b = log_area - m * std::log(2.0 * k) - std::log(m * k) + 2.0 * (n + w.tau);
        tail = std::exp(log_b + (nd + 1.0) * log_r) / -std::expm1(log_r);
      }
    } else {
      // n = 1: terms are 4M q^(M-1) with q = exp(-2(1 + tau)); ratios beyond N
      // stay below rho = q (N+2)/(N+1).
      const double q = std::exp(-2.0 * (1.0 + w.tau));
      const double rho = q * (nd + 2.0) / (nd + 1.0);
      if (rho < 1.0) tail = 4.0 * (nd + 1.0) * std::pow(q, nd) / (1.0 - rho);
    }
    out.tail_bound = tail;
    out.bound = sum + tail;
    if (ratio_below_one && tail < 1e-6 * sum) {
      out.converged = true;
      return out;
    }
  }
  return out;
}

}  // namespace solitonlab
