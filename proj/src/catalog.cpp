#include "solitonlab/catalog.hpp"

#include "solitonlab/error.hpp"

#include <algorithm>

namespace solitonlab {

namespace {

SolitonCertificate expect(double lambda, Mat d, SolitonClass cls) {
  SolitonCertificate c;
  c.lambda = lambda;
  c.derivation = std::move(d);
  c.cls = cls;
  return c;
}

Mat diag(std::initializer_list<double> v) {
  Vec d(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) d(i++) = x;
  return d.asDiagonal();
}

CatalogEntry entry(std::string name, int n, std::vector<BracketEntry> brackets, SolitonCertificate expected,
                   std::string note) {
  CatalogEntry e;
  e.name = std::move(name);
  e.algebra = LieAlgebra(n, std::move(brackets));
  e.metric = Metric::identity(n);
  e.expected = std::move(expected);
  e.note = std::move(note);
  return e;
}

std::vector<CatalogEntry> build() {
  std::vector<CatalogEntry> out;
  for (int n = 2; n <= 8; ++n) {
    out.push_back(entry("abelian_" + std::to_string(n), n, {}, expect(0.0, Mat::Zero(n, n), SolitonClass::Flat),
                        "flat; every symmetric tensor is a derivation-orbit direction"));
  }

  auto nil3 = entry("nil3", 3, {{0, 1, 2, 1.0}}, expect(-1.5, diag({1.0, 1.0, 2.0}), SolitonClass::Nilsoliton),
                    "Heisenberg; ric = diag(-1/2, -1/2, 1/2) by hand");
  nil3.aliases = {"heis3"};
  nil3.chart = "nil3";
  out.push_back(nil3);

  out.push_back(entry("nil4", 4, {{0, 1, 2, 1.0}, {0, 2, 3, 1.0}},
                      expect(-1.5, diag({0.5, 1.0, 1.5, 2.0}), SolitonClass::Nilsoliton),
                      "filiform; ric = diag(-1, -1/2, 0, 1/2) by hand"));

  out.push_back(entry("heis5", 5, {{0, 1, 4, 1.0}, {2, 3, 4, 1.0}},
                      expect(-2.0, diag({1.5, 1.5, 1.5, 1.5, 3.0}), SolitonClass::Nilsoliton),
                      "regression value; solve_soliton agrees with the two-step formula "
                      "ric = -1/2 sum J_z^2 + 1/4 <J_. , J_.>"));

  auto sol3 = entry("sol3", 3, {{0, 2, 0, -1.0}, {1, 2, 1, 1.0}},
                    expect(-2.0, diag({2.0, 2.0, 0.0}), SolitonClass::Solvsoliton),
                    "[e3,e1] = e1, [e3,e2] = -e2; ric = diag(0, 0, -2) by hand");
  sol3.chart = "sol3";
  out.push_back(sol3);

  for (int n = 2; n <= 8; ++n) {
    std::vector<BracketEntry> b;
    for (int i = 0; i < n - 1; ++i) b.push_back({i, n - 1, i, -1.0});
    auto e = entry("hyp_" + std::to_string(n), n, b, expect(-(n - 1.0), Mat::Zero(n, n), SolitonClass::Einstein),
                   "[e_n, e_i] = e_i; real hyperbolic space");
    if (n == 3) {
      e.aliases = {"hyp3"};
      e.chart = "hyp3";
    }
    out.push_back(e);
  }

  out.push_back(entry("heis3_ext", 4,
                      {{0, 1, 2, 1.0}, {0, 3, 0, -0.5}, {1, 3, 1, -0.5}, {2, 3, 2, -1.0}},
                      expect(-1.5, Mat::Zero(4, 4), SolitonClass::Einstein),
                      "nil3 extended by its soliton derivation; regression value, the metric is Einstein"));
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog_list() {
  static const std::vector<CatalogEntry> entries = build();
  return entries;
}

const CatalogEntry& catalog_get(const std::string& name) {
  for (const auto& e : catalog_list()) {
    if (e.name == name || std::find(e.aliases.begin(), e.aliases.end(), name) != e.aliases.end()) return e;
  }
  throw Error(ErrorCode::NotInCatalog, "no catalog entry named '" + name + "'");
}

}  // namespace solitonlab
