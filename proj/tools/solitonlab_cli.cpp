// solitonlab command-line front end.  Exit codes: 0 pass, 1 checked failure,
// 2 usage or parse error.

#include "solitonlab/catalog.hpp"
#include "solitonlab/chart.hpp"
#include "solitonlab/error.hpp"
#include "solitonlab/flow.hpp"
#include "solitonlab/io.hpp"
#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/stability.hpp"
#include "solitonlab/weights.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>

using namespace solitonlab;

namespace {

struct Config {
  std::string file;
  std::string example;
  std::string out;
  std::string mode = "normalized";
  std::string method = "rkf45";
  double tol = 1e-10;
  double atol = 1e-9;
  double rtol = 1e-9;
  double dt = 1e-3;
  double t_max = 10.0;
  double eps = 0.01;
  std::uint64_t seed = 42;
  double radius = 4.0;
  std::optional<double> dx;
  std::optional<double> tau;
  double a = 0.0;
  int n = 3;
  std::size_t n_max = 1000000;
  std::size_t count = 20;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CheckFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty())
    std::cout << text;
  else
    write_atomic(path, text);
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_validate(const Config& cfg) {
  const AlgebraFile f = read_algebra_file(cfg.file);
  const ValidationReport r = validate(f.algebra);
  const SeriesFlags s = series_flags(f.algebra);
  json j = to_json(r);
  j["dim"] = f.algebra.dim();
  j["nilpotent"] = s.nilpotent;
  j["solvable"] = s.solvable;
  j["unimodular"] = s.unimodular;
  emit(cfg.out, dump(j));
  return r.passed ? 0 : 1;
}

AlgebraFile load_valid(const Config& cfg) {
  AlgebraFile f = read_algebra_file(cfg.file);
  const ValidationReport r = validate(f.algebra);
  if (!r.passed) throw CheckFailed("not a Lie algebra (Jacobi residual " + format_double(r.jacobi_residual) + ")");
  return f;
}

int cmd_soliton(const Config& cfg) {
  const AlgebraFile f = load_valid(cfg);
  const SolitonCertificate c = solve_soliton(f.algebra, f.metric, cfg.tol);
  emit(cfg.out, dump(to_json(c)));
  return c.cls == SolitonClass::None ? 1 : 0;
}

int cmd_spectrum(const Config& cfg) {
  const AlgebraFile f = load_valid(cfg);
  const SolitonCertificate c = solve_soliton(f.algebra, f.metric, cfg.tol);
  if (c.cls == SolitonClass::None) {
    std::cerr << "error: metric is not an algebraic soliton (residual " << format_double(c.residual) << ")\n";
    return 1;
  }
  json j = to_json(stability_operator(f.algebra, f.metric, c));
  j["soliton"] = to_json(c);
  emit(cfg.out, dump(j));
  return 0;
}

int cmd_flow(const Config& cfg) {
  const AlgebraFile f = load_valid(cfg);
  if (cfg.mode != "normalized" && cfg.mode != "unnormalized") throw UsageError("--mode must be normalized or unnormalized");
  if (!(cfg.dt > 0.0) || !(cfg.t_max > 0.0)) throw UsageError("--dt and --t-max must be positive");
  const Method method = method_from_string(cfg.method);
  const SolitonCertificate cert = solve_soliton(f.algebra, f.metric, cfg.tol);

  json fit;
  fit["mode"] = cfg.mode;
  fit["method"] = to_string(method);
  fit["dt"] = cfg.dt;
  fit["t_max"] = cfg.t_max;
  fit["perturb"] = cfg.eps;
  fit["seed"] = cfg.seed;

  std::string csv;
  if (cfg.mode == "normalized") {
    if (cert.cls == SolitonClass::None) {
      std::cerr << "error: the normalized flow needs a soliton background\n";
      return 1;
    }
    ConvergenceOptions opts;
    opts.t_max = cfg.t_max;
    opts.dt = cfg.dt;
    opts.method = method;
    const ConvergenceResult r = run_convergence(f.algebra, f.metric, cert, cfg.eps, cfg.seed, opts);
    csv = trajectory_csv(r.trajectory);
    fit["fit_g0"] = to_json(r.fit_to_g0);
    fit["fit_limit"] = to_json(r.fit_to_limit);
    fit["limit_offset"] = r.limit_offset;
    fit["limit_residual"] = r.limit_residual;
  } else {
    const FlowRhs rhs = [&](const Metric& g) { return rhs_unnormalized(f.algebra, g); };
    IntegrateOptions io;
    io.atol = cfg.atol;
    io.rtol = cfg.rtol;
    FlowTrajectory traj = integrate(rhs, perturb(f.metric, cfg.eps, cfg.seed), cfg.t_max, cfg.dt, method, io);
    traj.seed = cfg.seed;
    if (cert.cls != SolitonClass::None && 1.0 - 2.0 * cert.lambda * cfg.t_max > 0.0) {
      std::vector<double> exact;
      for (std::size_t s = 0; s < traj.times.size(); ++s)
        exact.push_back((traj.metrics[s] - exact_unnormalized_solution(f.metric, cert, traj.times[s]).matrix()).norm());
      csv = trajectory_csv(traj, &exact);
      fit["exact_dev_final"] = exact.back();
    } else {
      csv = trajectory_csv(traj);
    }
  }

  if (cfg.out.empty()) {
    std::cout << csv;
    std::cerr << dump(fit);
  } else {
    write_atomic(cfg.out, csv);
    write_atomic(cfg.out + ".fit.json", dump(fit));
  }
  return 0;
}

int cmd_rayleigh(const Config& cfg) {
  if (cfg.count == 0) throw UsageError("empty test set (--count 0)");
  const ChartMetric cm = chart_metric(cfg.example);
  GridSpec spec;
  spec.radius = cfg.radius;
  spec.dx = cfg.dx.value_or(cfg.radius / 32.0);
  const Grid grid(spec);
  const auto tensors = rayleigh_test_tensors(cm, grid, cfg.count, cfg.seed);
  const std::vector<double> q = rayleigh_quotients(cm, drift_data(cm), tensors, grid);
  const double mx = *std::max_element(q.begin(), q.end());
  json j;
  j["example"] = cm.name;
  j["quotients"] = q;
  j["max"] = mx;
  j["grid"] = {{"radius", spec.radius}, {"dx", spec.dx}};
  j["seed"] = cfg.seed;
  emit(cfg.out, dump(j));
  return mx < 0.0 ? 0 : 1;
}

int cmd_weights(const Config& cfg) {
  const double tau = cfg.tau.value_or(cfg.a == 0.0 ? 2.0 : 1.0);
  const WeightSpec w(cfg.a, cfg.n, tau);
  const SummabilityResult r = summability_check(w, cfg.n_max);
  // At most ~200 evenly spaced partial sums, always including the last.
  json sums = json::array();
  const std::size_t m = r.partial_sums.size();
  const std::size_t stride = std::max<std::size_t>(1, m / 200);
  for (std::size_t i = 0; i < m; i += stride) sums.push_back({{"N", i + 2}, {"sum", r.partial_sums[i]}});
  if (m > 0 && (m - 1) % stride != 0) sums.push_back({{"N", m + 1}, {"sum", r.partial_sums[m - 1]}});
  if (r.terms > m) sums.push_back({{"N", r.terms + 1}, {"sum", r.sum}});
  json j;
  j["a"] = w.a;
  j["n"] = w.n;
  j["tau"] = w.tau;
  j["converged"] = r.converged;
  j["terms"] = r.terms;
  j["sum"] = r.sum;
  j["bound"] = r.bound;
  j["tail_bound"] = r.tail_bound;
  j["partial_sums"] = sums;
  emit(cfg.out, dump(j));
  return r.converged ? 0 : 1;
}

int cmd_catalog(const Config& cfg) {
  if (!cfg.example.empty()) {
    const CatalogEntry& e = catalog_get(cfg.example);
    emit(cfg.out, dump(to_json(AlgebraFile{e.algebra, e.metric})));
    return 0;
  }
  json list = json::array();
  for (const auto& e : catalog_list()) {
    json item;
    item["name"] = e.name;
    item["aliases"] = e.aliases;
    item["dim"] = e.algebra.dim();
    item["expected"] = {{"lambda", e.expected.lambda},
                        {"derivation", matrix_json(e.expected.derivation)},
                        {"class", to_string(e.expected.cls)}};
    if (e.chart) item["chart"] = *e.chart;
    item["note"] = e.note;
    list.push_back(item);
  }
  emit(cfg.out, dump(list));
  return 0;
}

int exit_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput:
    case ErrorCode::InvalidMetric:
    case ErrorCode::InvalidWeight:
    case ErrorCode::NotInCatalog:
    case ErrorCode::GridTooCoarse:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic Ricci solitons: certificates, stability, flows and weighted norms"};
  app.require_subcommand(1);
  Config cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "Output path (default stdout)");
    sub->add_option("--tol", cfg.tol, "Soliton tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "PRNG seed");
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check antisymmetry and the Jacobi identity");
  validate_cmd->add_option("file", cfg.file)->required();
  common(validate_cmd);

  auto* soliton_cmd = app.add_subcommand("soliton", "Solve Rc = lambda id + D");
  soliton_cmd->add_option("file", cfg.file)->required();
  common(soliton_cmd);

  auto* spectrum_cmd = app.add_subcommand("spectrum", "Stability operator on the left-invariant block");
  spectrum_cmd->add_option("file", cfg.file)->required();
  common(spectrum_cmd);

  auto* flow_cmd = app.add_subcommand("flow", "Integrate the Ricci flow from a perturbed metric");
  flow_cmd->add_option("file", cfg.file)->required();
  common(flow_cmd);
  flow_cmd->add_option("--mode", cfg.mode, "normalized or unnormalized");
  flow_cmd->add_option("--method", cfg.method, "rk4 or rkf45");
  flow_cmd->add_option("--dt", cfg.dt, "Step (initial step for rkf45)");
  flow_cmd->add_option("--t-max", cfg.t_max, "Final time");
  flow_cmd->add_option("--perturb", cfg.eps, "Relative perturbation size in [0, 0.5)");
  flow_cmd->add_option("--atol", cfg.atol)->check(CLI::PositiveNumber);
  flow_cmd->add_option("--rtol", cfg.rtol)->check(CLI::PositiveNumber);

  auto* rayleigh_cmd = app.add_subcommand("rayleigh", "Rayleigh quotients of L on a chart grid");
  rayleigh_cmd->add_option("example", cfg.example, "nil3, sol3 or hyp3")->required();
  common(rayleigh_cmd);
  rayleigh_cmd->add_option("--radius", cfg.radius)->check(CLI::PositiveNumber);
  rayleigh_cmd->add_option("--dx", cfg.dx, "Grid spacing (default radius/32)");
  rayleigh_cmd->add_option("--count", cfg.count, "Number of test tensors");

  auto* weights_cmd = app.add_subcommand("weights", "Summability of V(2N)/f_tau(2N-2)");
  common(weights_cmd);
  weights_cmd->add_option("--a", cfg.a, "Curvature lower bound (<= 0)");
  weights_cmd->add_option("--n", cfg.n, "Dimension");
  weights_cmd->add_option("--tau", cfg.tau, "Weight parameter");
  weights_cmd->add_option("--n-max", cfg.n_max, "Largest N summed");

  auto* catalog_cmd = app.add_subcommand("catalog", "List entries or export one as an algebra file");
  catalog_cmd->add_option("name", cfg.example);
  catalog_cmd->add_option("--out", cfg.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(cfg);
    if (*soliton_cmd) return cmd_soliton(cfg);
    if (*spectrum_cmd) return cmd_spectrum(cfg);
    if (*flow_cmd) return cmd_flow(cfg);
    if (*rayleigh_cmd) return cmd_rayleigh(cfg);
    if (*weights_cmd) return cmd_weights(cfg);
    if (*catalog_cmd) return cmd_catalog(cfg);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error [" << to_string(e.code()) << "]: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
