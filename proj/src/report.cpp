#include "caff/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <optional>
#include <sstream>
#include <thread>

#include "caff/rng.hpp"

namespace caff {

CheckKind check_kind_from_name(const std::string& name) {
  if (name == "invariants") return CheckKind::Invariants;
  if (name == "inequality") return CheckKind::Inequality;
  if (name == "ejiri") return CheckKind::Ejiri;
  if (name == "identities") return CheckKind::Identities;
  if (name == "classify") return CheckKind::Classify;
  if (name == "residuals") return CheckKind::Residuals;
  throw Error("unknown check '" + name + "'");
}

const char* check_kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::Invariants: return "invariants";
    case CheckKind::Inequality: return "inequality";
    case CheckKind::Ejiri: return "ejiri";
    case CheckKind::Identities: return "identities";
    case CheckKind::Classify: return "classify";
    case CheckKind::Residuals: return "residuals";
  }
  return "?";
}

std::vector<std::vector<double>> grid_points(
    const std::vector<std::pair<double, double>>& box,
    const std::vector<int>& counts) {
  const int n = static_cast<int>(box.size());
  if (static_cast<int>(counts.size()) != n) {
    throw Error("grid counts must match the chart dimension");
  }
  for (int c : counts) {
    if (c < 1) throw Error("grid counts must be >= 1");
  }
  std::vector<std::vector<double>> pts;
  std::vector<int> idx(n, 0);
  while (true) {
    std::vector<double> p(n);
    for (int a = 0; a < n; ++a) {
      const auto [lo, hi] = box[a];
      p[a] = counts[a] == 1
                 ? 0.5 * (lo + hi)
                 : lo + (hi - lo) * idx[a] / (counts[a] - 1);
    }
    pts.push_back(std::move(p));
    int a = n - 1;
    while (a >= 0 && ++idx[a] == counts[a]) idx[a--] = 0;
    if (a < 0) break;
  }
  return pts;
}

std::vector<std::vector<double>> sample_points(
    const std::vector<std::pair<double, double>>& box, int count,
    std::uint64_t seed, const Surface& surface) {
  const int n = static_cast<int>(box.size());
  Rng rng(seed);
  std::vector<std::vector<double>> pts;
  int attempts = 0;
  const int max_attempts = 1000 * std::max(count, 1);
  while (static_cast<int>(pts.size()) < count && attempts < max_attempts) {
    ++attempts;
    std::vector<double> p(n);
    for (int a = 0; a < n; ++a) p[a] = rng.uniform(box[a].first, box[a].second);
    if (surface.contains(p)) pts.push_back(std::move(p));
  }
  if (static_cast<int>(pts.size()) < count) {
    throw EmptySampleError(
        "sampling box appears to lie outside the domain guard");
  }
  return pts;
}

namespace {

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void dump_rec(const Json& j, std::string& out, int indent, int depth) {
  const std::string pad(static_cast<std::size_t>(indent) * depth, ' ');
  const std::string pad_in(static_cast<std::size_t>(indent) * (depth + 1), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t i = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++i) {
        out += pad_in + Json(it.key()).dump() + ": ";
        dump_rec(it.value(), out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        dump_rec(j[i], out, indent, depth + 1);
        if (i + 1 < j.size()) out += ",";
        out += "\n";
      }
      out += pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format17(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string timestamp_utc() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct ResolvedSurface {
  Surface surface;
  std::vector<std::pair<double, double>> box;
  const CatalogEntry* entry = nullptr;  // null for file surfaces
};

ResolvedSurface resolve_surface(const RunConfig& config) {
  ResolvedSurface r;
  if (const CatalogEntry* e = find_entry(config.surface)) {
    r.surface = e->surface;
    r.box = config.box.empty() ? e->box : config.box;
    r.entry = e;
    if (static_cast<int>(r.box.size()) != e->n) {
      throw Error("--box dimension does not match the surface");
    }
    return r;
  }
  std::ifstream in(config.surface);
  if (!in) {
    throw UnknownSurfaceError("unknown surface '" + config.surface +
                              "': not a catalog name or readable file");
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  const SurfaceSpec spec = parse_surface(buffer.str());
  r.surface = make_surface(spec);
  if (r.surface.name.empty()) r.surface.name = config.surface;
  r.box = config.box;
  if (r.box.empty() && config.points.empty()) {
    throw Error("file surfaces need --box or explicit --point samples");
  }
  if (!r.box.empty() && static_cast<int>(r.box.size()) != r.surface.n) {
    throw Error("--box dimension does not match the surface");
  }
  return r;
}

bool wants(const RunConfig& c, CheckKind k) {
  return std::find(c.checks.begin(), c.checks.end(), k) != c.checks.end();
}

struct PointEval {
  Json record;
  bool ok = false;
  bool checks_pass = true;
  std::vector<std::string> failures;
  double slack = 0;
  double slack_diff = 0;
  double nnk2 = 0;
  double gauss = 0;
  double codazzi = 0;
  bool has_residuals = false;
  std::optional<PointClassification> cls;
};

Json point_to_json(const std::vector<double>& p) {
  Json a = Json::array();
  for (double v : p) a.push_back(v);
  return a;
}

PointEval evaluate_point(const RunConfig& config, const Surface& surface,
                         const std::vector<double>& point,
                         const std::map<std::string, double>& tol) {
  PointEval pe;
  pe.record["point"] = point_to_json(point);

  CentroaffineData d;
  try {
    d = centroaffine_data(surface, point);
  } catch (const Error& err) {
    pe.record["status"] = std::string("skipped: ") + err.what();
    return pe;
  }
  pe.ok = true;
  pe.record["status"] = "ok";
  pe.record["epsilon"] = d.epsilon;
  pe.record["norm_K2"] = d.normK2;
  pe.record["norm_Ktilde2"] = d.normKtilde2;
  pe.record["norm_nabla_K2"] = d.normNablaK2;
  pe.record["norm_nabla_T2"] = d.normNablaT2;
  pe.record["slack"] = d.slack_direct;
  pe.record["slack_diff_route"] = d.slack_diff;
  pe.record["mu"] = d.mu;
  pe.slack = d.slack_direct;
  pe.slack_diff = d.slack_diff;
  pe.nnk2 = d.normNablaK2;

  auto get = [&](const char* key) { return tol.at(key); };
  auto fail = [&](const std::string& what) {
    pe.checks_pass = false;
    pe.failures.push_back(what);
  };

  if (wants(config, CheckKind::Inequality) ||
      wants(config, CheckKind::Invariants)) {
    const double scale = 1.0 + d.normNablaK2;
    const bool ineq_ok = d.slack_direct >= -get("inequality") * scale;
    const bool routes_ok =
        std::abs(d.slack_direct - d.slack_diff) <= get("inequality") * scale;
    pe.record["inequality_ok"] = ineq_ok;
    pe.record["slack_routes_agree"] = routes_ok;
    if (!ineq_ok) fail("inequality violated (slack < -tol)");
    if (!routes_ok) fail("slack routes disagree");
  }

  if (wants(config, CheckKind::Invariants)) {
    // Cubic form totally symmetric.
    double csym = 0;
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j)
        for (int k = 0; k < d.n; ++k) {
          csym = std::max(csym, std::abs(d.C(i, j, k) - d.C(j, i, k)));
          csym = std::max(csym, std::abs(d.C(i, j, k) - d.C(i, k, j)));
          csym = std::max(csym, std::abs(d.C(i, j, k) - d.C(k, j, i)));
        }
    // Traceless part has vanishing traces.
    double kt_trace = 0;
    for (int i = 0; i < d.n; ++i) {
      double t1 = 0, t2 = 0;
      for (int m = 0; m < d.n; ++m) t1 += d.Ktilde(m, i, m);
      for (int j = 0; j < d.n; ++j)
        for (int k = 0; k < d.n; ++k) t2 += d.h_inv(j, k) * d.Ktilde(i, j, k);
      kt_trace = std::max(kt_trace, std::max(std::abs(t1), std::abs(t2)));
    }
    // n T^flat(X) = trace K_X.
    double t_ident = 0;
    const Vec t_low = d.h * d.T;
    for (int i = 0; i < d.n; ++i) {
      double tr = 0;
      for (int m = 0; m < d.n; ++m) tr += d.K(m, i, m);
      t_ident = std::max(t_ident, std::abs(d.n * t_low(i) - tr));
    }
    const double sym = nablaK_symmetry_residual(d);
    const double sym_tol =
        get("symmetry") * (1.0 + std::sqrt(std::max(0.0, d.normNablaK2)));

    pe.record["cubic_symmetry_residual"] = csym;
    pe.record["ktilde_trace_residual"] = kt_trace;
    pe.record["tchebychev_trace_residual"] = t_ident;
    pe.record["nablaK_symmetry_residual"] = sym;
    if (csym > 1e-10) fail("cubic form not totally symmetric");
    if (kt_trace > 1e-10) fail("traceless part has nonzero trace");
    if (t_ident > 1e-10) fail("Tchebychev trace identity violated");
    if (sym > sym_tol) fail("lowered nablaK not fully symmetric");
  }

  if (wants(config, CheckKind::Residuals)) {
    const Residuals res = gauss_codazzi_residuals(d);
    const double sym = nablaK_symmetry_residual(d);
    const double scale = 1.0 + d.normK2;
    pe.record["gauss_residual"] = res.gauss;
    pe.record["codazzi_residual"] = res.codazzi;
    pe.record["nablaK_symmetry_residual"] = sym;
    pe.gauss = res.gauss;
    pe.codazzi = res.codazzi;
    pe.has_residuals = true;
    if (res.gauss > get("gauss") * scale) fail("Gauss equation residual");
    if (res.codazzi > get("codazzi") * scale) fail("Codazzi equation residual");
    if (sym > get("symmetry") * scale) fail("nablaK symmetry residual");
  }

  if (wants(config, CheckKind::Ejiri)) {
    const EjiriBasis basis = ejiri_basis(d, config.seed + 1);
    Json ej;
    ej["fmax"] = basis.fmax;
    ej["degenerate"] = basis.degenerate;
    Json lam = Json::array();
    for (int i = 0; i < basis.lambda.size(); ++i) lam.push_back(basis.lambda(i));
    ej["lambda"] = lam;
    Json e1 = Json::array();
    for (int i = 0; i < basis.e.rows(); ++i) e1.push_back(basis.e(i, 0));
    ej["e1"] = e1;
    pe.record["ejiri"] = ej;
    if (!basis.degenerate) {
      const double tol_l =
          get("lambda-order") * (1.0 + std::sqrt(std::max(0.0, d.normK2)));
      for (int i = 1; i < basis.lambda.size(); ++i) {
        if (basis.lambda(0) < 2.0 * basis.lambda(i) - tol_l) {
          fail("lambda1 >= 2 lambda_i violated");
          break;
        }
      }
    }
  }

  if (wants(config, CheckKind::Identities)) {
    Json id;
    try {
      const EjiriBasis basis = ejiri_basis(d, config.seed + 1);
      const Vec dmu = mu_gradient(surface, point, basis);
      const ProofIdentityReport rep = proof_identity_check(d, basis, dmu);
      switch (rep.status) {
        case IdentityStatus::Ok: {
          id["status"] = "ok";
          id["mu_form_residual"] = rep.mu_form_residual;
          id["e1_mu"] = rep.e1_mu;
          id["res_el_mu"] = rep.res_el_mu;
          id["res_e1_identity"] = rep.res_e1_identity;
          id["res_offdiag"] = rep.res_offdiag;
          id["res_diagonal"] = rep.res_diagonal;
          if (rep.res_el_mu > get("eq312")) fail("e_l(mu) = 0 residual");
          if (rep.res_e1_identity > get("eq313")) {
            fail("e1(mu) eigenvalue identity residual");
          }
          break;
        }
        case IdentityStatus::NotApplicable:
          id["status"] = "not applicable";
          id["mu_form_residual"] = rep.mu_form_residual;
          break;
        case IdentityStatus::DegenerateBasis:
          id["status"] = "degenerate basis";
          break;
      }
    } catch (const Error& err) {
      id["status"] = std::string("skipped: ") + err.what();
    }
    pe.record["identities"] = id;
  }

  if (wants(config, CheckKind::Classify)) {
    const PointClassification cls = classify_point(d, tol);
    Json c;
    c["K_zero"] = cls.K_zero;
    c["Ktilde_zero"] = cls.Ktilde_zero;
    c["nablaK_zero"] = cls.nablaK_zero;
    c["equality"] = cls.equality;
    c["tchebychev"] = cls.tchebychev;
    c["tchebychev_lambda"] = cls.tchebychev_lambda;
    c["mu"] = cls.mu;
    pe.record["predicates"] = c;
    pe.record["verdict"] = verdict_name(cls.verdict);
    pe.cls = cls;
  }

  if (!pe.failures.empty()) {
    Json f = Json::array();
    for (const std::string& s : pe.failures) f.push_back(s);
    pe.record["failures"] = f;
  }
  return pe;
}

std::string render_text(const RunConfig& config, const Json& doc) {
  std::ostringstream out;
  out << "surface " << doc["surface"].get<std::string>() << "  n="
      << doc["n"].get<int>() << "  command=" << config.command
      << "  seed=" << doc["seed"].get<std::uint64_t>() << "\n";
  const auto& pts = doc["points"];
  out << "points: " << doc["aggregate"]["evaluated"].get<int>()
      << " evaluated, " << doc["aggregate"]["skipped"].get<int>()
      << " skipped\n";
  for (const auto& p : pts) {
    out << "  (";
    const auto& coords = p["point"];
    for (std::size_t i = 0; i < coords.size(); ++i) {
      if (i) out << ", ";
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6g", coords[i].get<double>());
      out << buf;
    }
    out << ") ";
    if (p["status"].get<std::string>() != "ok") {
      out << p["status"].get<std::string>() << "\n";
      continue;
    }
    auto num = [&](const char* key) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6g", p[key].get<double>());
      return std::string(buf);
    };
    out << "eps=" << p["epsilon"].get<int>() << " |K|2=" << num("norm_K2")
        << " |K~|2=" << num("norm_Ktilde2")
        << " |dK|2=" << num("norm_nabla_K2")
        << " |dT|2=" << num("norm_nabla_T2") << " slack=" << num("slack")
        << " mu=" << num("mu");
    if (p.contains("verdict")) {
      out << "  verdict: " << p["verdict"].get<std::string>();
    }
    out << "\n";
    if (p.contains("ejiri")) {
      out << "      ejiri: fmax=" << p["ejiri"]["fmax"].get<double>()
          << " lambda=[";
      for (std::size_t i = 0; i < p["ejiri"]["lambda"].size(); ++i) {
        if (i) out << ", ";
        out << p["ejiri"]["lambda"][i].get<double>();
      }
      out << "]" << (p["ejiri"]["degenerate"].get<bool>() ? " degenerate" : "")
          << "\n";
    }
    if (p.contains("identities")) {
      out << "      identities: " << p["identities"]["status"].get<std::string>();
      if (p["identities"].contains("res_e1_identity")) {
        out << " |e_l(mu)|<=" << p["identities"]["res_el_mu"].get<double>()
            << " e1-identity<=" << p["identities"]["res_e1_identity"].get<double>();
      }
      out << "\n";
    }
    if (p.contains("failures")) {
      for (const auto& f : p["failures"]) {
        out << "      FAIL " << f.get<std::string>() << "\n";
      }
    }
  }
  out << "aggregate:";
  for (auto it = doc["aggregate"].begin(); it != doc["aggregate"].end(); ++it) {
    out << " " << it.key() << "=";
    if (it->is_number_float()) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6g", it->get<double>());
      out << buf;
    } else {
      out << it->dump();
    }
  }
  out << "\n";
  out << "result: "
      << (doc["checks_passed"].get<bool>() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string render_csv(const Json& doc) {
  // Flatten each point record one level; nested objects get dotted keys.
  std::vector<std::vector<std::pair<std::string, std::string>>> rows;
  for (const auto& p : doc["points"]) {
    std::vector<std::pair<std::string, std::string>> row;
    for (auto it = p.begin(); it != p.end(); ++it) {
      if (it.key() == "point") {
        const auto& coords = *it;
        for (std::size_t i = 0; i < coords.size(); ++i) {
          row.emplace_back("u" + std::to_string(i + 1),
                           format17(coords[i].get<double>()));
        }
      } else if (it->is_object()) {
        for (auto jt = it->begin(); jt != it->end(); ++jt) {
          if (jt->is_array()) continue;
          std::string v = jt->is_number_float()
                              ? format17(jt->get<double>())
                              : jt->dump();
          row.emplace_back(it.key() + "." + jt.key(), v);
        }
      } else if (it->is_array()) {
        continue;
      } else {
        std::string v = it->is_number_float() ? format17(it->get<double>())
                                              : it->dump();
        row.emplace_back(it.key(), v);
      }
    }
    rows.push_back(std::move(row));
  }
  // Header = union of keys in first-appearance order.
  std::vector<std::string> header;
  for (const auto& row : rows) {
    for (const auto& [k, v] : row) {
      if (std::find(header.begin(), header.end(), k) == header.end()) {
        header.push_back(k);
      }
    }
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out << ",";
    out << header[i];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i) out << ",";
      for (const auto& [k, v] : row) {
        if (k == header[i]) {
          std::string field = v;
          if (!field.empty() && field.front() == '"' && field.back() == '"') {
            field = field.substr(1, field.size() - 2);
          }
          out << field;
          break;
        }
      }
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string dump_json(const Json& j, int indent) {
  std::string out;
  dump_rec(j, out, indent, 0);
  out += "\n";
  return out;
}

Json catalog_document() {
  Json doc;
  doc["schema_version"] = 1;
  doc["tool"] = "caff";
  Json list = Json::array();
  for (const CatalogEntry& e : catalog_entries()) {
    Json item;
    item["name"] = e.name;
    item["n"] = e.n;
    Json tags = Json::array();
    for (Tag t : e.tags) tags.push_back(tag_name(t));
    item["tags"] = tags;
    Json box = Json::array();
    for (const auto& [lo, hi] : e.box) {
      box.push_back(Json::array({lo, hi}));
    }
    item["box"] = box;
    list.push_back(item);
  }
  doc["catalog"] = list;
  return doc;
}

std::string render_catalog_text() {
  std::ostringstream out;
  for (const CatalogEntry& e : catalog_entries()) {
    out << e.name << "  n=" << e.n << "  tags:";
    for (Tag t : e.tags) out << " " << tag_name(t);
    out << "\n";
  }
  return out.str();
}

RunResult run(const RunConfig& config) {
  const ResolvedSurface rs = resolve_surface(config);
  const Surface& surface = rs.surface;
  const int n = surface.n;

  std::map<std::string, double> tol = default_tolerances();
  for (const auto& [k, v] : config.tolerances) {
    if (tol.find(k) == tol.end()) throw Error("unknown tolerance '" + k + "'");
    if (!(v > 0)) throw Error("tolerances must be positive");
    tol[k] = v;
  }

  // Assemble the sample: explicit points, then grid, then seeded.
  std::vector<std::vector<double>> points = config.points;
  for (const auto& p : points) {
    if (static_cast<int>(p.size()) != n) {
      throw Error("--point dimension does not match the surface");
    }
  }
  if (!config.grid.empty()) {
    if (rs.box.empty()) throw Error("grid sampling needs a box");
    const auto gp = grid_points(rs.box, config.grid);
    points.insert(points.end(), gp.begin(), gp.end());
  }
  if (config.sample > 0) {
    if (rs.box.empty()) throw Error("random sampling needs a box");
    const auto sp = sample_points(rs.box, config.sample, config.seed, surface);
    points.insert(points.end(), sp.begin(), sp.end());
  }
  if (points.empty()) {
    if (rs.box.empty()) throw Error("no sample points requested");
    points = sample_points(rs.box, 20, config.seed, surface);
  }

  // Evaluate points concurrently; records land in point order.
  std::vector<PointEval> evals(points.size());
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < points.size(); ++i) {
      evals[i] = evaluate_point(config, surface, points[i], tol);
    }
  } else {
    std::vector<std::thread> workers;
    std::size_t chunk = (points.size() + jobs - 1) / jobs;
    for (int w = 0; w < jobs; ++w) {
      const std::size_t lo = w * chunk;
      const std::size_t hi = std::min(points.size(), lo + chunk);
      if (lo >= hi) break;
      workers.emplace_back([&, lo, hi] {
        for (std::size_t i = lo; i < hi; ++i) {
          evals[i] = evaluate_point(config, surface, points[i], tol);
        }
      });
    }
    for (auto& t : workers) t.join();
  }

  int evaluated = 0;
  for (const PointEval& pe : evals) evaluated += pe.ok ? 1 : 0;
  if (evaluated == 0) {
    throw EmptySampleError("no point of the sample could be evaluated");
  }

  Json doc;
  doc["schema_version"] = 1;
  doc["tool"] = "caff";
  doc["timestamp"] = timestamp_utc();
  doc["command"] = config.command;
  doc["surface"] = surface.name.empty() ? config.surface : surface.name;
  doc["n"] = n;
  doc["seed"] = config.seed;
  Json checks = Json::array();
  for (CheckKind k : config.checks) checks.push_back(check_kind_name(k));
  doc["checks"] = checks;
  Json jtol;
  for (const auto& [k, v] : tol) jtol[k] = v;
  doc["tolerances"] = jtol;

  Json jpoints = Json::array();
  for (const PointEval& pe : evals) jpoints.push_back(pe.record);
  doc["points"] = jpoints;

  Json agg;
  agg["evaluated"] = evaluated;
  agg["skipped"] = static_cast<int>(evals.size()) - evaluated;
  double min_slack = 1e300, max_gauss = 0, max_codazzi = 0;
  double max_route_gap = 0;
  bool any_res = false;
  bool pass = true;
  for (const PointEval& pe : evals) {
    if (!pe.ok) continue;
    min_slack = std::min(min_slack, pe.slack);
    max_route_gap =
        std::max(max_route_gap, std::abs(pe.slack - pe.slack_diff));
    if (pe.has_residuals) {
      any_res = true;
      max_gauss = std::max(max_gauss, pe.gauss);
      max_codazzi = std::max(max_codazzi, pe.codazzi);
    }
    pass = pass && pe.checks_pass;
  }
  agg["min_slack"] = min_slack;
  agg["max_slack_route_gap"] = max_route_gap;
  if (any_res) {
    agg["max_gauss_residual"] = max_gauss;
    agg["max_codazzi_residual"] = max_codazzi;
  }
  if (wants(config, CheckKind::Classify)) {
    std::vector<PointClassification> cls;
    for (const PointEval& pe : evals) {
      if (pe.cls) cls.push_back(*pe.cls);
    }
    const SurfaceClassification sc =
        classify_surface(cls, static_cast<int>(evals.size()) - evaluated);
    agg["equality_everywhere"] = sc.equality_everywhere;
    agg["verdict"] = verdict_name(sc.aggregate);
  }
  doc["aggregate"] = agg;
  doc["checks_passed"] = pass;

  RunResult result;
  result.exit_code = pass ? 0 : 2;
  result.doc = doc;
  switch (config.format) {
    case OutputFormat::Jsonfmt:
      result.rendered = dump_json(doc);
      break;
    case OutputFormat::Csv:
      result.rendered = render_csv(doc);
      break;
    case OutputFormat::Text:
      result.rendered = render_text(config, doc);
      break;
  }
  return result;
}

}  // namespace caff
