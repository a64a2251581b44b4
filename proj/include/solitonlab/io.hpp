#pragma once

#include "solitonlab/flow.hpp"
#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/stability.hpp"
#include "solitonlab/types.hpp"

#include "json.hpp"

#include <string>

namespace solitonlab {

using json = nlohmann::ordered_json;

/// {"dim": n, "brackets": [{"i":1,"j":2,"k":3,"c":1.0}, ...], "metric": [[...]]}
/// with 1-based indices, i < j.  The metric is optional (identity) and may be
/// nested rows or a flat row-major list of n*n numbers.
struct AlgebraFile {
  LieAlgebra algebra;
  Metric metric;
};

/// Throws ParseError for malformed JSON or schema violations and Error with
/// InvalidMetric for a metric that is not SPD.  The Jacobi identity is not
/// checked here.
AlgebraFile parse_algebra(const json& j);
AlgebraFile read_algebra_file(const std::string& path);
json to_json(const AlgebraFile& f);

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json matrix_json(const Mat& m);
json to_json(const ValidationReport& r);
json to_json(const SolitonCertificate& c);
json to_json(const StabilityReport& r);
json to_json(const DecayFit& f);

/// `t,g11,g12,...,gnn,dev[,exact_dev]`, 17 significant digits.
std::string trajectory_csv(const FlowTrajectory& traj, const std::vector<double>* exact_dev = nullptr);

/// Writes to `path.tmp` and renames over `path`.
void write_atomic(const std::string& path, const std::string& content);

/// Shortest round-trip decimal text with 17 significant digits.
std::string format_double(double v);

}  // namespace solitonlab
