#ifndef CAFF_CATALOG_HPP
#define CAFF_CATALOG_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "caff/geometry.hpp"

namespace caff {

// Machine-checkable expectations attached to catalog surfaces.
enum class Tag {
  KZero,
  KtildeZero,
  NablaKZero,
  FlatMetric,
  Equality,
  Strict,
  TZero,
};

const char* tag_name(Tag t);

struct CatalogEntry {
  std::string name;
  int n = 0;
  Surface surface;  // built-in jet evaluator
  std::string dsl;  // same immersion in the surface file format
  std::vector<std::pair<double, double>> box;  // default sample box
  std::vector<Tag> tags;
  int expected_epsilon = 0;  // 0 = unchecked
};

// Built-in examples: quadrics in several signatures, the canonical flat
// parallel-cubic-form hypersurface, the SL(3,R)/SO(3) embedding and a
// seeded non-equality control.
const std::vector<CatalogEntry>& catalog_entries();
const CatalogEntry* find_entry(const std::string& name);

CatalogEntry unit_sphere(int n);
CatalogEntry ellipsoid(const std::vector<double>& axes);
CatalogEntry hyperboloid(int n);
CatalogEntry shifted_paraboloid(int n);
CatalogEntry canonical_viii(int n);
CatalogEntry sl3_so3();
CatalogEntry perturbed_graph(std::uint64_t seed, double amplitude);

// Chart of the unimodular SPD 3x3 matrices via unit lower-triangular
// L and diag(d1, d2, 1/(d1 d2)): params = (l21, l31, l32, d1, d2),
// result = (A11, A22, A33, A12, A13, A23). det A = 1 by construction.
std::array<double, 6> sl3_so3_chart(const std::array<double, 5>& params);

}  // namespace caff

#endif  // CAFF_CATALOG_HPP
