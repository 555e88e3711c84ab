#ifndef CAFF_REPORT_HPP
#define CAFF_REPORT_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "caff/analysis.hpp"
#include "caff/catalog.hpp"

namespace caff {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Text, Jsonfmt, Csv };

enum class CheckKind {
  Invariants,
  Inequality,
  Ejiri,
  Identities,
  Classify,
  Residuals,
};

CheckKind check_kind_from_name(const std::string& name);
const char* check_kind_name(CheckKind k);

struct RunConfig {
  std::string surface;  // catalog name or surface file path
  std::string command = "check";
  std::vector<std::vector<double>> points;
  std::vector<int> grid;  // counts per axis; empty = no grid
  std::vector<std::pair<double, double>> box;  // override of the default box
  int sample = 0;  // # seeded random points (in addition to grid/points)
  std::map<std::string, double> tolerances;  // overrides over defaults
  std::uint64_t seed = 0;
  OutputFormat format = OutputFormat::Text;
  std::vector<CheckKind> checks;
  int jobs = 1;
};

struct RunResult {
  int exit_code = 0;   // 0 pass, 2 check failure (1 = errors, via throw)
  Json doc;
  std::string rendered;
};

// Resolves the surface, evaluates the sample, runs the requested checks
// and renders the report. Throws caff::Error subtypes for usage/domain
// problems (unknown surface, unreadable file, empty sample).
RunResult run(const RunConfig& config);

// Grid/sample helpers (deterministic; seeded sampling rejects points
// outside the guard).
std::vector<std::vector<double>> grid_points(
    const std::vector<std::pair<double, double>>& box,
    const std::vector<int>& counts);
std::vector<std::vector<double>> sample_points(
    const std::vector<std::pair<double, double>>& box, int count,
    std::uint64_t seed, const Surface& surface);

// JSON serialization with 17 significant digits on every float, so
// values round-trip exactly.
std::string dump_json(const Json& j, int indent = 2);

// Catalog listing document (for `catalog list`).
Json catalog_document();
std::string render_catalog_text();

}  // namespace caff

#endif  // CAFF_REPORT_HPP
