#include "solitonlab/io.hpp"

#include "solitonlab/error.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace solitonlab {

namespace {

double number(const json& v, const char* what) {
  if (!v.is_number()) throw ParseError(std::string(what) + " must be a number");
  return v.get<double>();
}

int index_field(const json& b, const char* key, int n) {
  if (!b.contains(key) || !b[key].is_number_integer()) throw ParseError(std::string("bracket field '") + key + "' must be an integer");
  const int v = b[key].get<int>();
  if (v < 1 || v > n) throw ParseError(std::string("bracket field '") + key + "' out of range 1.." + std::to_string(n));
  return v - 1;
}

}  // namespace

AlgebraFile parse_algebra(const json& j) {
  if (!j.is_object()) throw ParseError("algebra file must be a JSON object");
  if (!j.contains("dim") || !j["dim"].is_number_integer()) throw ParseError("'dim' must be an integer");
  const int n = j["dim"].get<int>();
  if (n < 1 || n > 16) throw ParseError("'dim' must lie in 1..16");

  std::vector<BracketEntry> entries;
  if (j.contains("brackets")) {
    if (!j["brackets"].is_array()) throw ParseError("'brackets' must be an array");
    for (const auto& b : j["brackets"]) {
      if (!b.is_object()) throw ParseError("each bracket must be an object {i, j, k, c}");
      BracketEntry e;
      e.i = index_field(b, "i", n);
      e.j = index_field(b, "j", n);
      e.k = index_field(b, "k", n);
      if (!b.contains("c")) throw ParseError("bracket field 'c' missing");
      e.value = number(b["c"], "bracket field 'c'");
      if (e.i >= e.j) throw ParseError("brackets need i < j");
      entries.push_back(e);
    }
  }

  Mat g = Mat::Identity(n, n);
  if (j.contains("metric")) {
    const json& m = j["metric"];
    if (!m.is_array()) throw ParseError("'metric' must be an array");
    if (m.size() == static_cast<std::size_t>(n) * n && (m.empty() || m[0].is_number())) {
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) g(r, c) = number(m[static_cast<std::size_t>(r * n + c)], "metric entry");
    } else if (m.size() == static_cast<std::size_t>(n)) {
      for (int r = 0; r < n; ++r) {
        const json& row = m[static_cast<std::size_t>(r)];
        if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) throw ParseError("metric rows must have length dim");
        for (int c = 0; c < n; ++c) g(r, c) = number(row[static_cast<std::size_t>(c)], "metric entry");
      }
    } else {
      throw ParseError("'metric' must be n x n nested or n*n flat");
    }
  }
  return {LieAlgebra(n, std::move(entries)), Metric(g)};
}

AlgebraFile read_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
  return parse_algebra(j);
}

json matrix_json(const Mat& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(row);
  }
  return rows;
}

json to_json(const AlgebraFile& f) {
  json j;
  j["dim"] = f.algebra.dim();
  json b = json::array();
  for (const auto& e : f.algebra.entries()) b.push_back({{"i", e.i + 1}, {"j", e.j + 1}, {"k", e.k + 1}, {"c", e.value}});
  j["brackets"] = b;
  j["metric"] = matrix_json(f.metric.matrix());
  return j;
}

json to_json(const ValidationReport& r) {
  return {{"passed", r.passed}, {"jacobi_residual", r.jacobi_residual}, {"antisymmetry_residual", r.antisymmetry_residual}};
}

json to_json(const SolitonCertificate& c) {
  return {{"lambda", c.lambda},
          {"derivation", matrix_json(c.derivation)},
          {"class", to_string(c.cls)},
          {"soliton_residual", c.soliton_residual},
          {"derivation_residual", c.derivation_residual},
          {"residual", c.residual}};
}

namespace {

json spectrum_json(const std::vector<std::complex<double>>& s) {
  json out = json::array();
  for (const auto& z : s) out.push_back({{"re", z.real()}, {"im", z.imag()}});
  return out;
}

}  // namespace

json to_json(const StabilityReport& r) {
  return {{"block", "left-invariant"},
          {"classification", to_string(r.classification)},
          {"quad_bound", r.quad_bound},
          {"epsilon", r.epsilon},
          {"Lmat", matrix_json(r.lmat)},
          {"spectrum", spectrum_json(r.spectrum)},
          {"jac", matrix_json(r.jac)},
          {"jac_spectrum", spectrum_json(r.jac_spectrum)},
          {"jac_abscissa", r.jac_abscissa},
          {"neutral_dim", r.neutral_basis.cols()},
          {"transverse_classification", to_string(r.transverse_classification)},
          {"transverse_quad_bound", r.transverse_quad_bound},
          {"jac_transverse_spectrum", spectrum_json(r.jac_transverse_spectrum)},
          {"jac_transverse_abscissa", r.jac_transverse_abscissa}};
}

json to_json(const DecayFit& f) {
  return {{"valid", f.valid}, {"C", f.C},           {"omega", f.omega},   {"r2", f.r2},
          {"t_begin", f.t_begin}, {"t_end", f.t_end}, {"points", f.points}, {"note", f.note}};
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string trajectory_csv(const FlowTrajectory& traj, const std::vector<double>* exact_dev) {
  std::ostringstream out;
  const Eigen::Index n = traj.metrics.empty() ? 0 : traj.metrics.front().rows();
  out << "t";
  for (Eigen::Index i = 1; i <= n; ++i)
    for (Eigen::Index j = 1; j <= n; ++j) out << ",g" << i << j;
  out << ",dev";
  if (exact_dev) out << ",exact_dev";
  out << "\n";
  for (std::size_t s = 0; s < traj.times.size(); ++s) {
    out << format_double(traj.times[s]);
    const Mat& g = traj.metrics[s];
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) out << ',' << format_double(g(i, j));
    out << ',' << format_double(traj.deviations[s]);
    if (exact_dev) out << ',' << format_double((*exact_dev)[s]);
    out << "\n";
  }
  return out.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + tmp);
    out << content;
    if (!out) throw Error(ErrorCode::InvalidInput, "write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw Error(ErrorCode::InvalidInput, "cannot rename " + tmp + " to " + path);
  }
}

}  // namespace solitonlab
