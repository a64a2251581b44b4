#pragma once

#include "solitonlab/lie_algebra.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace solitonlab {

struct CatalogEntry {
  std::string name;
  std::vector<std::string> aliases;
  LieAlgebra algebra;
  Metric metric;
  SolitonCertificate expected;  // lambda, D and class; residual fields are zero
  std::optional<std::string> chart;
  std::string note;
};

/// abelian_2..8, nil3, nil4, heis5, sol3, hyp_2..8, heis3_ext.
const std::vector<CatalogEntry>& catalog_list();

/// Lookup by name or alias (heis3, hyp3).  Throws NotInCatalog.
const CatalogEntry& catalog_get(const std::string& name);

}  // namespace solitonlab
