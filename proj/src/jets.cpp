#include "caff/jets.hpp"

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace caff {
namespace {

std::uint64_t pack_exponents(const std::array<std::uint8_t, kMaxVars>& a) {
  std::uint64_t key = 0;
  for (int i = 0; i < kMaxVars; ++i) {
    key |= static_cast<std::uint64_t>(a[i]) << (4 * i);
  }
  return key;
}

// Registry of layouts, one per nvars.
std::unordered_map<std::uint64_t, int>& lookup_table(int nvars);

}  // namespace

int multi_index_degree(const MultiIndex& alpha) {
  int d = 0;
  for (int a : alpha) d += a;
  return d;
}

double multi_index_factorial(const MultiIndex& alpha) {
  static const double fact[5] = {1, 1, 2, 6, 24};
  double f = 1.0;
  for (int a : alpha) f *= fact[a];
  return f;
}

JetLayout::JetLayout(int nvars) : nvars_(nvars) {
  // Graded-lex enumeration: by total degree, then earlier variables
  // carrying higher exponents first.
  std::array<std::uint8_t, kMaxVars> cur{};
  auto emit = [&](auto&& self, int pos, int remaining, int deg) -> void {
    if (pos == nvars_ - 1) {
      cur[pos] = static_cast<std::uint8_t>(remaining);
      alpha_.push_back(cur);
      degree_.push_back(deg);
      cur[pos] = 0;
      return;
    }
    for (int a = remaining; a >= 0; --a) {
      cur[pos] = static_cast<std::uint8_t>(a);
      self(self, pos + 1, remaining - a, deg);
    }
    cur[pos] = 0;
  };
  for (int deg = 0; deg <= kJetOrder; ++deg) emit(emit, 0, deg, deg);

  const int n = size();
  factorial_.resize(n);
  for (int s = 0; s < n; ++s) {
    MultiIndex mi(alpha_[s].begin(), alpha_[s].begin() + nvars_);
    factorial_[s] = multi_index_factorial(mi);
  }

  auto& table = lookup_table(nvars_);
  table.clear();
  for (int s = 0; s < n; ++s) table[pack_exponents(alpha_[s])] = s;

  prod_.assign(static_cast<std::size_t>(n) * n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (degree_[i] + degree_[j] > kJetOrder) continue;
      std::array<std::uint8_t, kMaxVars> sum{};
      for (int v = 0; v < nvars_; ++v) {
        sum[v] = static_cast<std::uint8_t>(alpha_[i][v] + alpha_[j][v]);
      }
      prod_[static_cast<std::size_t>(i) * n + j] = table.at(pack_exponents(sum));
    }
  }

  for (int v = 0; v < nvars_; ++v) {
    down_[v].assign(n, -1);
    for (int s = 0; s < n; ++s) {
      if (alpha_[s][v] == 0) continue;
      auto lower = alpha_[s];
      --lower[v];
      down_[v][s] = table.at(pack_exponents(lower));
    }
  }
}

namespace {

struct LayoutRegistry {
  std::array<const JetLayout*, kMaxVars + 1> layouts{};
  std::array<std::unordered_map<std::uint64_t, int>, kMaxVars + 1> tables;
  std::mutex mutex;
};

LayoutRegistry& registry() {
  static LayoutRegistry reg;
  return reg;
}

std::unordered_map<std::uint64_t, int>& lookup_table(int nvars) {
  return registry().tables[nvars];
}

}  // namespace

const JetLayout& JetLayout::get(int nvars) {
  if (nvars < 1 || nvars > kMaxVars) {
    throw Error("jet nvars must be in [1, " + std::to_string(kMaxVars) +
                "], got " + std::to_string(nvars));
  }
  auto& reg = registry();
  std::lock_guard<std::mutex> lock(reg.mutex);
  if (reg.layouts[nvars] == nullptr) {
    reg.layouts[nvars] = new JetLayout(nvars);  // lives for the process
  }
  return *reg.layouts[nvars];
}

int JetLayout::slot(const MultiIndex& alpha) const {
  if (static_cast<int>(alpha.size()) != nvars_) {
    throw Error("multi-index length does not match jet nvars");
  }
  std::array<std::uint8_t, kMaxVars> a{};
  int deg = 0;
  for (int v = 0; v < nvars_; ++v) {
    if (alpha[v] < 0) throw Error("multi-index exponent must be >= 0");
    deg += alpha[v];
    if (deg > kJetOrder) return -1;
    a[v] = static_cast<std::uint8_t>(alpha[v]);
  }
  return lookup_table(nvars_).at(pack_exponents(a));
}

Jet::Jet(int nvars, double constant) : nvars_(nvars) {
  coeffs_.assign(JetLayout::get(nvars).size(), 0.0);
  coeffs_[0] = constant;
}

Jet Jet::variable(int index, double value, int nvars) {
  if (index < 0 || index >= nvars) {
    throw Error("variable index " + std::to_string(index) +
                " out of range for " + std::to_string(nvars) + " variables");
  }
  Jet j(nvars, value);
  MultiIndex alpha(nvars, 0);
  alpha[index] = 1;
  j.coeffs_[j.layout().slot(alpha)] = 1.0;
  return j;
}

double Jet::coeff(const MultiIndex& alpha) const {
  const int s = layout().slot(alpha);
  if (s < 0) throw Error("multi-index degree exceeds jet order 4");
  return coeffs_[s];
}

void Jet::set_coeff(const MultiIndex& alpha, double value) {
  const int s = layout().slot(alpha);
  if (s < 0) throw Error("multi-index degree exceeds jet order 4");
  coeffs_[s] = value;
}

double Jet::partial(const MultiIndex& alpha) const {
  return coeff(alpha) * multi_index_factorial(alpha);
}

bool Jet::all_finite() const {
  for (double c : coeffs_) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

namespace {

void check_same_vars(const Jet& a, const Jet& b) {
  if (a.nvars() != b.nvars()) {
    throw Error("jet arithmetic requires matching nvars");
  }
}

}  // namespace

Jet Jet::operator-() const {
  Jet r = *this;
  for (double& c : r.coeffs_) c = -c;
  return r;
}

Jet& Jet::operator+=(const Jet& rhs) {
  check_same_vars(*this, rhs);
  for (int i = 0; i < size(); ++i) coeffs_[i] += rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& rhs) {
  check_same_vars(*this, rhs);
  for (int i = 0; i < size(); ++i) coeffs_[i] -= rhs.coeffs_[i];
  return *this;
}

Jet& Jet::operator+=(double rhs) {
  coeffs_[0] += rhs;
  return *this;
}

Jet& Jet::operator-=(double rhs) {
  coeffs_[0] -= rhs;
  return *this;
}

Jet& Jet::operator*=(double rhs) {
  for (double& c : coeffs_) c *= rhs;
  return *this;
}

Jet& Jet::operator/=(double rhs) {
  for (double& c : coeffs_) c /= rhs;
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  check_same_vars(a, b);
  const JetLayout& lay = a.layout();
  Jet r(a.nvars());
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    const double ai = a.coeffs_[i];
    if (ai == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const int target = lay.product_slot(i, j);
      if (target < 0) continue;
      r.coeffs_[target] += ai * b.coeffs_[j];
    }
  }
  return r;
}

Jet reciprocal(const Jet& a) {
  const double a0 = a.value();
  if (a0 == 0.0) {
    throw SingularJetError("division by jet with zero constant term");
  }
  // 1/a = (1/a0) * sum (-q)^k with q = a/a0 - 1 (no constant term).
  Jet q = a / a0;
  q -= 1.0;
  Jet acc(a.nvars(), 1.0);
  for (int k = 0; k < kJetOrder; ++k) {
    acc = acc * q;           // truncated automatically
    acc *= -1.0;
    acc += 1.0;              // Horner: 1 - q(1 - q(...))
  }
  return acc / a0;
}

Jet operator/(const Jet& a, const Jet& b) {
  check_same_vars(a, b);
  return a * reciprocal(b);
}

Jet operator/(double a, const Jet& b) { return reciprocal(b) * a; }

namespace {

// Composes the univariate series c0 + c1 t + ... + c4 t^4 with
// t = a - value(a).
Jet compose(const Jet& a, const std::array<double, kJetOrder + 1>& c) {
  Jet t = a;
  t -= a.value();
  Jet acc(a.nvars(), c[kJetOrder]);
  for (int k = kJetOrder - 1; k >= 0; --k) {
    acc = acc * t;
    acc += c[k];
  }
  return acc;
}

}  // namespace

Jet sqrt(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) {
    throw JetDomainError("sqrt of jet with non-positive constant term");
  }
  const double s = std::sqrt(a0);
  return compose(a, {s, 0.5 / s, -1.0 / (8.0 * a0 * s),
                     1.0 / (16.0 * a0 * a0 * s),
                     -5.0 / (128.0 * a0 * a0 * a0 * s)});
}

Jet log(const Jet& a) {
  const double a0 = a.value();
  if (!(a0 > 0.0)) {
    throw JetDomainError("ln of jet with non-positive constant term");
  }
  return compose(a, {std::log(a0), 1.0 / a0, -0.5 / (a0 * a0),
                     1.0 / (3.0 * a0 * a0 * a0),
                     -0.25 / (a0 * a0 * a0 * a0)});
}

Jet exp(const Jet& a) {
  const double e = std::exp(a.value());
  return compose(a, {e, e, e / 2.0, e / 6.0, e / 24.0});
}

Jet sin(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {s, c, -s / 2.0, -c / 6.0, s / 24.0});
}

Jet cos(const Jet& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return compose(a, {c, -s, -c / 2.0, s / 6.0, c / 24.0});
}

Jet pow(const Jet& a, double r) {
  if (r == std::rint(r) && std::abs(r) <= 64.0) {
    const long k = std::lrint(r);
    if (k == 0) return Jet(a.nvars(), 1.0);
    Jet acc(a.nvars(), 1.0);
    for (long i = 0; i < std::labs(k); ++i) acc = acc * a;
    return k > 0 ? acc : reciprocal(acc);
  }
  const double a0 = a.value();
  if (!(a0 > 0.0)) {
    throw JetDomainError(
        "fractional power of jet with non-positive constant term");
  }
  // Binomial series: c_k = binom(r, k) a0^(r-k).
  std::array<double, kJetOrder + 1> c{};
  double binom = 1.0;
  for (int k = 0; k <= kJetOrder; ++k) {
    c[k] = binom * std::pow(a0, r - k);
    binom *= (r - k) / (k + 1.0);
  }
  return compose(a, c);
}

Jet derivative(const Jet& a, int var) {
  if (var < 0 || var >= a.nvars()) {
    throw Error("derivative variable index out of range");
  }
  const JetLayout& lay = a.layout();
  Jet r(a.nvars());
  for (int s = 0; s < a.size(); ++s) {
    const int d = lay.lower_slot(s, var);
    if (d < 0) continue;
    r[d] = lay.exponents(s)[var] * a[s];
  }
  return r;
}

std::vector<Jet> jet_solve(std::vector<Jet> A, std::vector<Jet> B, int m,
                           int nrhs) {
  if (static_cast<int>(A.size()) != m * m ||
      static_cast<int>(B.size()) != m * nrhs) {
    throw Error("jet_solve: dimension mismatch");
  }
  auto a = [&](int r, int c) -> Jet& { return A[r * m + c]; };
  auto b = [&](int r, int c) -> Jet& { return B[r * nrhs + c]; };

  for (int k = 0; k < m; ++k) {
    // Partial pivoting on constant terms.
    int piv = k;
    for (int r = k + 1; r < m; ++r) {
      if (std::abs(a(r, k).value()) > std::abs(a(piv, k).value())) piv = r;
    }
    double row_mag = 0.0;
    for (int c = k; c < m; ++c) {
      row_mag = std::max(row_mag, std::abs(a(piv, c).value()));
    }
    if (std::abs(a(piv, k).value()) <= 1e-12 * row_mag || row_mag == 0.0) {
      throw SingularSystemError(
          "jet_solve: constant-term matrix is singular");
    }
    if (piv != k) {
      for (int c = k; c < m; ++c) std::swap(a(piv, c), a(k, c));
      for (int c = 0; c < nrhs; ++c) std::swap(b(piv, c), b(k, c));
    }
    const Jet inv_pivot = reciprocal(a(k, k));
    for (int r = k + 1; r < m; ++r) {
      Jet factor = a(r, k) * inv_pivot;
      for (int c = k + 1; c < m; ++c) a(r, c) -= factor * a(k, c);
      for (int c = 0; c < nrhs; ++c) b(r, c) -= factor * b(k, c);
      a(r, k) = Jet(a(r, k).nvars());
    }
  }

  // Back substitution.
  std::vector<Jet> X(B.size());
  for (int r = m - 1; r >= 0; --r) {
    const Jet inv_pivot = reciprocal(a(r, r));
    for (int c = 0; c < nrhs; ++c) {
      Jet acc = b(r, c);
      for (int j = r + 1; j < m; ++j) acc -= a(r, j) * X[j * nrhs + c];
      X[r * nrhs + c] = acc * inv_pivot;
    }
  }
  return X;
}

std::vector<Jet> jet_solve(const std::vector<Jet>& A,
                           const std::vector<Jet>& b) {
  const int m = static_cast<int>(b.size());
  return jet_solve(A, b, m, 1);
}

}  // namespace caff
