#include "caff/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "caff/rng.hpp"

namespace caff {

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::KZero: return "K_zero";
    case Tag::KtildeZero: return "Ktilde_zero";
    case Tag::NablaKZero: return "nablaK_zero";
    case Tag::FlatMetric: return "flat_metric";
    case Tag::Equality: return "equality";
    case Tag::Strict: return "strict";
    case Tag::TZero: return "T_zero";
  }
  return "?";
}

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

Jet sum_of_squares(const std::vector<Jet>& vars) {
  Jet s(vars[0].nvars());
  for (const Jet& v : vars) s += v * v;
  return s;
}

std::vector<std::pair<double, double>> cube(int n, double lo, double hi) {
  return std::vector<std::pair<double, double>>(n, {lo, hi});
}

}  // namespace

CatalogEntry unit_sphere(int n) {
  CatalogEntry e;
  e.name = "unit_sphere_" + std::to_string(n);
  e.n = n;
  e.surface.name = e.name;
  e.surface.n = n;
  e.surface.eval_jets = [](const std::vector<Jet>& vars) {
    std::vector<Jet> x(vars.begin(), vars.end());
    x.push_back(sqrt(1.0 - sum_of_squares(vars)));
    return x;
  };
  e.surface.in_domain = [](const std::vector<double>& u) {
    double s = 0;
    for (double v : u) s += v * v;
    return s < 1.0;
  };
  std::ostringstream dsl;
  dsl << "name=" << e.name << "\nn=" << n << "\n";
  std::string sq;
  for (int i = 1; i <= n; ++i) {
    dsl << "x" << i << "=u" << i << "\n";
    sq += (i > 1 ? "+" : "") + ("u" + std::to_string(i) + "^2");
  }
  dsl << "x" << (n + 1) << "=sqrt(1-(" << sq << "))\n";
  dsl << "guard=1-(" << sq << ")\n";
  e.dsl = dsl.str();
  e.box = cube(n, -0.4, 0.4);
  e.tags = {Tag::KZero};
  e.expected_epsilon = +1;
  return e;
}

CatalogEntry ellipsoid(const std::vector<double>& axes) {
  const int n = static_cast<int>(axes.size()) - 1;
  CatalogEntry e;
  e.name = "ellipsoid_" + std::to_string(n);
  e.n = n;
  e.surface.name = e.name;
  e.surface.n = n;
  e.surface.eval_jets = [axes, n](const std::vector<Jet>& vars) {
    std::vector<Jet> x;
    x.reserve(n + 1);
    for (int i = 0; i < n; ++i) x.push_back(vars[i] * axes[i]);
    x.push_back(sqrt(1.0 - sum_of_squares(vars)) * axes[n]);
    return x;
  };
  e.surface.in_domain = [](const std::vector<double>& u) {
    double s = 0;
    for (double v : u) s += v * v;
    return s < 1.0;
  };
  std::ostringstream dsl;
  dsl << "name=" << e.name << "\nn=" << n << "\n";
  std::string sq;
  for (int i = 1; i <= n; ++i) {
    dsl << "x" << i << "=" << fmt(axes[i - 1]) << "*u" << i << "\n";
    sq += (i > 1 ? "+" : "") + ("u" + std::to_string(i) + "^2");
  }
  dsl << "x" << (n + 1) << "=" << fmt(axes[n]) << "*sqrt(1-(" << sq << "))\n";
  dsl << "guard=1-(" << sq << ")\n";
  e.dsl = dsl.str();
  e.box = cube(n, -0.4, 0.4);
  e.tags = {Tag::KZero};
  e.expected_epsilon = +1;
  return e;
}

CatalogEntry hyperboloid(int n) {
  CatalogEntry e;
  e.name = "hyperboloid_" + std::to_string(n);
  e.n = n;
  e.surface.name = e.name;
  e.surface.n = n;
  e.surface.eval_jets = [](const std::vector<Jet>& vars) {
    std::vector<Jet> x(vars.begin(), vars.end());
    x.push_back(sqrt(1.0 + sum_of_squares(vars)));
    return x;
  };
  std::ostringstream dsl;
  dsl << "name=" << e.name << "\nn=" << n << "\n";
  std::string sq;
  for (int i = 1; i <= n; ++i) {
    dsl << "x" << i << "=u" << i << "\n";
    sq += (i > 1 ? "+" : "") + ("u" + std::to_string(i) + "^2");
  }
  dsl << "x" << (n + 1) << "=sqrt(1+" << sq << ")\n";
  e.dsl = dsl.str();
  e.box = cube(n, -0.8, 0.8);
  e.tags = {Tag::KZero};
  e.expected_epsilon = -1;
  return e;
}

CatalogEntry shifted_paraboloid(int n) {
  CatalogEntry e;
  e.name = "shifted_paraboloid_" + std::to_string(n);
  e.n = n;
  e.surface.name = e.name;
  e.surface.n = n;
  e.surface.eval_jets = [](const std::vector<Jet>& vars) {
    std::vector<Jet> x(vars.begin(), vars.end());
    x.push_back(1.0 + sum_of_squares(vars) * 0.5);
    return x;
  };
  std::ostringstream dsl;
  dsl << "name=" << e.name << "\nn=" << n << "\n";
  std::string sq;
  for (int i = 1; i <= n; ++i) {
    dsl << "x" << i << "=u" << i << "\n";
    sq += (i > 1 ? "+" : "") + ("u" + std::to_string(i) + "^2");
  }
  dsl << "x" << (n + 1) << "=1+(" << sq << ")/2\n";
  e.dsl = dsl.str();
  e.box = cube(n, -0.6, 0.6);
  e.tags = {Tag::KtildeZero, Tag::Equality};
  e.expected_epsilon = -1;
  return e;
}

CatalogEntry canonical_viii(int n) {
  CatalogEntry e;
  e.name = "canonical_viii_" + std::to_string(n);
  e.n = n;
  e.surface.name = e.name;
  e.surface.n = n;
  e.surface.eval_jets = [n](const std::vector<Jet>& vars) {
    std::vector<Jet> x(vars.begin(), vars.end());
    Jet s(vars[0].nvars());
    for (int k = 1; k < n; ++k) s += vars[k] * vars[k];
    x.push_back(s / (2.0 * vars[0]) + vars[0] * log(vars[0]));
    return x;
  };
  e.surface.in_domain = [](const std::vector<double>& u) {
    return u[0] > 0.0;
  };
  std::ostringstream dsl;
  dsl << "name=" << e.name << "\nn=" << n << "\n";
  for (int i = 1; i <= n; ++i) dsl << "x" << i << "=u" << i << "\n";
  dsl << "x" << (n + 1) << "=";
  if (n > 1) {
    std::string sq;
    for (int k = 2; k <= n; ++k) {
      sq += (k > 2 ? "+" : "") + ("u" + std::to_string(k) + "^2");
    }
    dsl << "(" << sq << ")/(2*u1)+";
  }
  dsl << "u1*ln(u1)\n";
  dsl << "guard=u1\n";
  e.dsl = dsl.str();
  e.box = cube(n, -0.5, 0.5);
  e.box[0] = {0.5, 2.0};
  e.tags = {Tag::NablaKZero, Tag::FlatMetric, Tag::Equality};
  return e;
}

std::array<double, 6> sl3_so3_chart(const std::array<double, 5>& params) {
  const double l21 = params[0], l31 = params[1], l32 = params[2];
  const double d1 = params[3], d2 = params[4];
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw DomainGuardError("sl3_so3 chart requires d1 > 0 and d2 > 0");
  }
  const double d3 = 1.0 / (d1 * d2);
  return {
      d1,                            // A11
      l21 * l21 * d1 + d2,           // A22
      l31 * l31 * d1 + l32 * l32 * d2 + d3,  // A33
      l21 * d1,                      // A12
      l31 * d1,                      // A13
      l31 * l21 * d1 + l32 * d2,     // A23
  };
}

CatalogEntry sl3_so3() {
  CatalogEntry e;
  e.name = "sl3_so3";
  e.n = 5;
  e.surface.name = e.name;
  e.surface.n = 5;
  e.surface.eval_jets = [](const std::vector<Jet>& vars) {
    const Jet& l21 = vars[0];
    const Jet& l31 = vars[1];
    const Jet& l32 = vars[2];
    const Jet& d1 = vars[3];
    const Jet& d2 = vars[4];
    const Jet d3 = 1.0 / (d1 * d2);
    std::vector<Jet> x;
    x.reserve(6);
    x.push_back(d1);
    x.push_back(l21 * l21 * d1 + d2);
    x.push_back(l31 * l31 * d1 + l32 * l32 * d2 + d3);
    x.push_back(l21 * d1);
    x.push_back(l31 * d1);
    x.push_back(l31 * l21 * d1 + l32 * d2);
    return x;
  };
  e.surface.in_domain = [](const std::vector<double>& u) {
    return u[3] > 0.0 && u[4] > 0.0;
  };
  e.dsl =
      "name=sl3_so3\n"
      "n=5\n"
      "x1=u4\n"
      "x2=u1^2*u4+u5\n"
      "x3=u2^2*u4+u3^2*u5+1/(u4*u5)\n"
      "x4=u1*u4\n"
      "x5=u2*u4\n"
      "x6=u2*u1*u4+u3*u5\n"
      "guard=u4*u5\n";
  e.box = {{-0.5, 0.5}, {-0.5, 0.5}, {-0.5, 0.5}, {0.6, 1.8}, {0.6, 1.8}};
  e.tags = {Tag::NablaKZero, Tag::TZero, Tag::Equality};
  return e;
}

CatalogEntry perturbed_graph(std::uint64_t seed, double amplitude) {
  // Shifted paraboloid plus a seeded cubic/quartic polynomial; the
  // higher-degree terms break the quadric structure, so the inequality
  // is strict.
  Rng rng(seed);
  std::vector<std::array<int, 2>> monomials;
  for (int d = 3; d <= 4; ++d) {
    for (int a = d; a >= 0; --a) monomials.push_back({a, d - a});
  }
  std::vector<double> coeff;
  coeff.reserve(monomials.size());
  for (std::size_t i = 0; i < monomials.size(); ++i) {
    coeff.push_back(rng.uniform(-1.0, 1.0));
  }

  CatalogEntry e;
  e.name = "perturbed_graph_2";
  e.n = 2;
  e.surface.name = e.name;
  e.surface.n = 2;
  e.surface.eval_jets = [monomials, coeff,
                         amplitude](const std::vector<Jet>& vars) {
    Jet p(vars[0].nvars());
    for (std::size_t m = 0; m < monomials.size(); ++m) {
      Jet term(vars[0].nvars(), coeff[m]);
      for (int rep = 0; rep < monomials[m][0]; ++rep) term = term * vars[0];
      for (int rep = 0; rep < monomials[m][1]; ++rep) term = term * vars[1];
      p += term;
    }
    std::vector<Jet> x(vars.begin(), vars.end());
    x.push_back(1.0 + sum_of_squares(vars) * 0.5 + p * amplitude);
    return x;
  };
  std::ostringstream dsl;
  dsl << "name=" << e.name << "\nn=2\nx1=u1\nx2=u2\n";
  dsl << "x3=1+(u1^2+u2^2)/2";
  for (std::size_t m = 0; m < monomials.size(); ++m) {
    dsl << "+" << fmt(amplitude * coeff[m]);
    for (int rep = 0; rep < monomials[m][0]; ++rep) dsl << "*u1";
    for (int rep = 0; rep < monomials[m][1]; ++rep) dsl << "*u2";
  }
  dsl << "\n";
  e.dsl = dsl.str();
  e.box = cube(2, -0.35, 0.35);
  e.tags = {Tag::Strict};
  return e;
}

const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    v.push_back(unit_sphere(2));
    v.push_back(unit_sphere(3));
    v.push_back(ellipsoid({1.0, 1.3, 0.8}));
    v.push_back(ellipsoid({1.0, 1.3, 0.8, 1.1}));
    v.push_back(hyperboloid(2));
    v.push_back(hyperboloid(3));
    v.push_back(shifted_paraboloid(2));
    v.push_back(shifted_paraboloid(3));
    v.push_back(canonical_viii(2));
    v.push_back(canonical_viii(3));
    v.push_back(sl3_so3());
    v.push_back(perturbed_graph(7, 0.05));
    return v;
  }();
  return entries;
}

const CatalogEntry* find_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog_entries()) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

}  // namespace caff
