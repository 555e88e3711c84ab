#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "caff/report.hpp"

namespace {

std::vector<double> parse_point(const std::string& text) {
  std::vector<double> p;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    try {
      p.push_back(std::stod(text.substr(pos, comma - pos)));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--point", "expected comma-separated reals");
    }
    pos = comma + 1;
  }
  return p;
}

std::vector<int> parse_grid(const std::string& text) {
  std::vector<int> counts;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t x = text.find('x', pos);
    if (x == std::string::npos) x = text.size();
    try {
      counts.push_back(std::stoi(text.substr(pos, x - pos)));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--grid", "expected counts like 10x10");
    }
    pos = x + 1;
  }
  return counts;
}

std::vector<std::pair<double, double>> parse_box(const std::string& text) {
  std::vector<std::pair<double, double>> box;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string range = text.substr(pos, comma - pos);
    const std::size_t colon = range.find(':');
    if (colon == std::string::npos) {
      throw CLI::ValidationError("--box", "expected lo:hi,lo:hi,...");
    }
    try {
      box.emplace_back(std::stod(range.substr(0, colon)),
                       std::stod(range.substr(colon + 1)));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--box", "expected lo:hi,lo:hi,...");
    }
    pos = comma + 1;
  }
  return box;
}

struct CommonOpts {
  std::vector<std::string> points;
  std::string grid;
  std::string box;
  int sample = 0;
  std::uint64_t seed = 0;
  bool json = false;
  bool csv = false;
  int jobs = 0;
};

void add_common(CLI::App* sub, caff::RunConfig& cfg, CommonOpts& opts) {
  sub->add_option("surface", cfg.surface,
                  "catalog entry name or surface file path")
      ->required();
  sub->add_option("--point", opts.points,
                  "explicit chart point 'u1,u2,...' (repeatable)");
  sub->add_option("--grid", opts.grid, "grid counts per axis, e.g. 10x10");
  sub->add_option("--box", opts.box,
                  "sample box lo:hi per axis (default: catalog box)");
  sub->add_option("--sample", opts.sample, "number of seeded random points");
  sub->add_option("--seed", opts.seed, "RNG seed for sampling");
  sub->add_flag("--json", opts.json, "emit a JSON report");
  sub->add_flag("--csv", opts.csv, "emit CSV rows");
  sub->add_option("--jobs", opts.jobs,
                  "parallel point evaluations (default CAFF_JOBS or 1)");
  for (const auto& [key, value] : caff::default_tolerances()) {
    const std::string name = "--tol-" + key;
    const std::string help = "override tolerance (default " +
                             std::to_string(value) + ")";
    const std::string k = key;
    sub->add_option_function<double>(
        name, [k, &cfg](const double& v) { cfg.tolerances[k] = v; }, help);
  }
}

caff::RunConfig finalize(caff::RunConfig cfg, const CommonOpts& opts) {
  for (const std::string& p : opts.points) cfg.points.push_back(parse_point(p));
  if (!opts.grid.empty()) cfg.grid = parse_grid(opts.grid);
  if (!opts.box.empty()) cfg.box = parse_box(opts.box);
  cfg.sample = opts.sample;
  cfg.seed = opts.seed;
  if (opts.json) cfg.format = caff::OutputFormat::Jsonfmt;
  if (opts.csv) cfg.format = caff::OutputFormat::Csv;
  cfg.jobs = opts.jobs;
  if (cfg.jobs <= 0) {
    if (const char* env = std::getenv("CAFF_JOBS")) {
      cfg.jobs = std::max(1, std::atoi(env));
    } else {
      cfg.jobs = 1;
    }
  }
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "caff: centroaffine differential invariants of parametrized "
      "hypersurfaces"};
  app.require_subcommand(1);

  // catalog list
  CLI::App* catalog = app.add_subcommand("catalog", "built-in surfaces");
  bool catalog_json = false;
  CLI::App* catalog_list =
      catalog->add_subcommand("list", "list names, dimensions, tags");
  catalog_list->add_flag("--json", catalog_json, "emit JSON");
  catalog->require_subcommand(1);

  struct SubSpec {
    const char* name;
    const char* help;
    std::vector<caff::CheckKind> checks;
  };
  const std::vector<SubSpec> subs = {
      {"invariants",
       "per-point invariant bundle plus inequality and identity checks",
       {caff::CheckKind::Invariants, caff::CheckKind::Inequality}},
      {"check", "configurable check battery (see --checks)", {}},
      {"ejiri", "maximal h-orthonormal basis and eigenvalues of K_{e1}",
       {caff::CheckKind::Ejiri}},
      {"classify", "classify sample points against the equality catalog",
       {caff::CheckKind::Classify}},
      {"identities", "pointwise identity residuals on mu-form points",
       {caff::CheckKind::Identities}},
  };

  std::vector<caff::RunConfig> configs(subs.size());
  std::vector<CommonOpts> opts(subs.size());
  std::vector<CLI::App*> apps(subs.size());
  std::vector<std::string> checks_arg(subs.size());
  for (std::size_t i = 0; i < subs.size(); ++i) {
    apps[i] = app.add_subcommand(subs[i].name, subs[i].help);
    configs[i].command = subs[i].name;
    configs[i].checks = subs[i].checks;
    add_common(apps[i], configs[i], opts[i]);
    if (std::string(subs[i].name) == "check") {
      apps[i]->add_option(
          "--checks", checks_arg[i],
          "comma list from invariants,inequality,ejiri,identities,classify,"
          "residuals (default invariants,inequality,residuals)");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (catalog_list->parsed()) {
      if (catalog_json) {
        std::cout << caff::dump_json(caff::catalog_document());
      } else {
        std::cout << caff::render_catalog_text();
      }
      return 0;
    }
    for (std::size_t i = 0; i < subs.size(); ++i) {
      if (!apps[i]->parsed()) continue;
      caff::RunConfig cfg = finalize(configs[i], opts[i]);
      if (std::string(subs[i].name) == "check") {
        if (checks_arg[i].empty()) {
          cfg.checks = {caff::CheckKind::Invariants,
                        caff::CheckKind::Inequality,
                        caff::CheckKind::Residuals};
        } else {
          std::size_t pos = 0;
          while (pos <= checks_arg[i].size()) {
            std::size_t comma = checks_arg[i].find(',', pos);
            if (comma == std::string::npos) comma = checks_arg[i].size();
            cfg.checks.push_back(caff::check_kind_from_name(
                checks_arg[i].substr(pos, comma - pos)));
            pos = comma + 1;
          }
        }
      }
      const caff::RunResult result = caff::run(cfg);
      std::cout << result.rendered;
      return result.exit_code;
    }
  } catch (const caff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
