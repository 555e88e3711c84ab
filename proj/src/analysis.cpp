#include "caff/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "caff/rng.hpp"

namespace caff {

namespace {

// Frame components of K with all indices lowered (equal to the mixed
// components in an orthonormal frame).
Tensor3 frame_K(const CentroaffineData& d, const Mat& B) {
  const int n = d.n;
  Tensor3 K_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int m = 0; m < n; ++m) s += d.h(k, m) * d.K(m, i, j);
        K_low(i, j, k) = s;
      }
  return to_frame(K_low, B);
}

Vec apply_cubic(const Tensor3& Kf, const Vec& v) {
  const int n = Kf.n;
  Vec w = Vec::Zero(n);
  for (int a = 0; a < n; ++a) {
    double s = 0;
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) s += Kf(a, b, c) * v(b) * v(c);
    w(a) = s;
  }
  return w;
}

double cubic_value(const Tensor3& Kf, const Vec& v) {
  return apply_cubic(Kf, v).dot(v);
}

// Deterministic presentation: first coordinate entry above the noise
// floor is made positive.
Vec canonical_sign(const Vec& v) {
  for (int i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 1e-10) return v(i) > 0 ? v : Vec(-v);
  }
  return v;
}

bool lex_less(const Vec& a, const Vec& b) {
  for (int i = 0; i < a.size(); ++i) {
    if (a(i) < b(i) - 1e-12) return true;
    if (a(i) > b(i) + 1e-12) return false;
  }
  return false;
}

}  // namespace

EjiriBasis ejiri_basis(const CentroaffineData& d, std::uint64_t seed) {
  const int n = d.n;
  const Mat B = frame_from_metric(d.h);
  const Tensor3 Kf = frame_K(d, B);

  const double normK = std::sqrt(std::max(0.0, d.normK2));
  const double shift = 1.0 + normK;
  const double scale3 = 1.0 + std::pow(std::max(0.0, d.normK2), 0.75);
  const double degenerate_tol = 1e-9 * scale3;
  const double tie_tol = 1e-9 * scale3;

  // Starts: both signs of every axis, then 8n seeded random directions.
  std::vector<Vec> starts;
  for (int a = 0; a < n; ++a) {
    Vec v = Vec::Zero(n);
    v(a) = 1.0;
    starts.push_back(v);
    starts.push_back(-v);
  }
  Rng rng(seed);
  for (int s = 0; s < 8 * n; ++s) {
    Vec v(n);
    for (int a = 0; a < n; ++a) v(a) = rng.gaussian();
    const double nv = v.norm();
    starts.push_back(nv > 0 ? Vec(v / nv) : starts[0]);
  }

  std::vector<Vec> maximizers;
  bool any_converged = false;
  for (const Vec& start : starts) {
    Vec v = start;
    bool converged = false;
    for (int it = 0; it < 500; ++it) {
      Vec w = apply_cubic(Kf, v) + shift * v;
      const double wn = w.norm();
      if (wn == 0.0) break;
      w /= wn;
      if ((w - v).norm() <= 1e-12) {
        v = w;
        converged = true;
        break;
      }
      v = w;
    }
    if (converged) {
      any_converged = true;
      maximizers.push_back(v);
    }
  }
  if (!any_converged) {
    throw OptimizerError("cubic-form maximization did not converge");
  }

  double fmax = -1e300;
  for (const Vec& v : maximizers) fmax = std::max(fmax, cubic_value(Kf, v));

  const bool degenerate = fmax <= degenerate_tol;

  // Tie-break among near-equal maximizers on their chart-coordinate
  // representations. When f is essentially zero both signs maximize, so
  // the sign gets canonicalized too.
  Vec e1_frame;
  Vec best_coord;
  bool have_best = false;
  for (const Vec& v : maximizers) {
    if (cubic_value(Kf, v) < fmax - tie_tol) continue;
    Vec frame = v;
    Vec coord = B * v;
    if (degenerate) {
      // Both signs maximize; flip so the first significant coordinate
      // entry is positive.
      for (int i = 0; i < coord.size(); ++i) {
        if (std::abs(coord(i)) > 1e-10) {
          if (coord(i) < 0) {
            frame = -frame;
            coord = -coord;
          }
          break;
        }
      }
    }
    if (!have_best || lex_less(coord, best_coord)) {
      best_coord = coord;
      e1_frame = frame;
      have_best = true;
    }
  }
  fmax = cubic_value(Kf, e1_frame);

  // Spectral split of K_{e1} on the orthogonal complement of e1: exact
  // orthonormality regardless of eigenvalue clustering.
  Mat M1(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0;
      for (int c = 0; c < n; ++c) s += Kf(a, b, c) * e1_frame(c);
      M1(a, b) = s;
    }

  Mat basis_frame(n, n);
  Vec lambda(n);
  basis_frame.col(0) = e1_frame;
  lambda(0) = fmax;
  if (n > 1) {
    // Householder complement of e1.
    Mat ext(n, n);
    ext.col(0) = e1_frame;
    ext.block(0, 1, n, n - 1) = Mat::Identity(n, n).leftCols(n - 1);
    Eigen::HouseholderQR<Mat> qr(ext);
    Mat Q = qr.householderQ();
    if (Q.col(0).dot(e1_frame) < 0) Q = -Q;
    const Mat Qc = Q.rightCols(n - 1);

    Eigen::SelfAdjointEigenSolver<Mat> es(Qc.transpose() * M1 * Qc);
    std::vector<int> order(n - 1);
    for (int i = 0; i < n - 1; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return es.eigenvalues()(a) > es.eigenvalues()(b);
    });
    for (int i = 0; i < n - 1; ++i) {
      basis_frame.col(i + 1) = Qc * es.eigenvectors().col(order[i]);
      lambda(i + 1) = es.eigenvalues()(order[i]);
    }
  }

  EjiriBasis out;
  out.e = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    Vec coord = B * basis_frame.col(i);
    out.e.col(i) = i == 0 ? coord : canonical_sign(coord);
  }
  out.lambda = lambda;
  out.fmax = fmax;
  out.degenerate = degenerate;
  return out;
}

double cubic_form_max_bruteforce(const CentroaffineData& d, int samples) {
  if (d.n != 2) throw Error("brute-force scan is for n = 2 charts");
  const Mat B = frame_from_metric(d.h);
  const Tensor3 Kf = frame_K(d, B);
  double best = -1e300;
  for (int s = 0; s < samples; ++s) {
    const double theta = 2.0 * M_PI * s / samples;
    Vec v(2);
    v << std::cos(theta), std::sin(theta);
    best = std::max(best, cubic_value(Kf, v));
  }
  return best;
}

TchebychevCheck tchebychev_check(const CentroaffineData& d, double tol) {
  const int n = d.n;
  const Mat B = frame_from_metric(d.h);
  const Mat Binv = B.inverse();
  const Mat nt_frame = Binv * d.nablaT * B;

  TchebychevCheck out;
  out.lambda = d.nablaT.trace() / n;
  out.residual =
      (nt_frame - out.lambda * Mat::Identity(n, n)).cwiseAbs().maxCoeff();
  out.is_tchebychev =
      out.residual <= tol * (1.0 + std::sqrt(std::max(0.0, d.normNablaT2)));
  return out;
}

Vec mu_gradient(const Surface& s, const std::vector<double>& point,
                const EjiriBasis& basis, double step) {
  const int n = static_cast<int>(point.size());
  Vec grad(n);
  for (int a = 0; a < n; ++a) {
    std::vector<double> plus = point, minus = point;
    for (int i = 0; i < n; ++i) {
      plus[i] += step * basis.e(i, a);
      minus[i] -= step * basis.e(i, a);
    }
    const double mu_plus = centroaffine_data(s, plus).mu;
    const double mu_minus = centroaffine_data(s, minus).mu;
    grad(a) = (mu_plus - mu_minus) / (2.0 * step);
  }
  return grad;
}

ProofIdentityReport proof_identity_check(const CentroaffineData& d,
                                         const EjiriBasis& basis,
                                         const Vec& directional_mu,
                                         double mu_form_tol) {
  const int n = d.n;
  ProofIdentityReport rep;

  // Precondition: nablaK has the isotropic mu-form in an h-orthonormal
  // frame. Otherwise the identities are not claimed.
  const Mat B = frame_from_metric(d.h);
  Tensor4 nk_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += d.h(k, m) * d.nablaK(m, i, j, l);
          nk_low(i, j, k, l) = s;
        }
  const Tensor4 Sf = to_frame(nk_low, B);
  auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  double worst = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double model =
              d.mu * (kron(k, l) * kron(i, j) + kron(i, l) * kron(j, k) +
                      kron(j, l) * kron(i, k));
          worst = std::max(worst, std::abs(Sf(i, j, k, l) - model));
        }
  rep.mu_form_residual = worst;
  const double scale = 1.0 + std::sqrt(std::max(0.0, d.normNablaK2));
  if (worst > mu_form_tol * scale) {
    rep.status = IdentityStatus::NotApplicable;
    return rep;
  }
  if (basis.degenerate) {
    rep.status = IdentityStatus::DegenerateBasis;
    return rep;
  }

  rep.status = IdentityStatus::Ok;
  rep.e1_mu = directional_mu(0);

  const Vec& lam = basis.lambda;
  const double l1 = lam(0);
  for (int l = 1; l < n; ++l) {
    rep.res_el_mu = std::max(rep.res_el_mu, std::abs(directional_mu(l)));
    const double rhs =
        (2.0 * lam(l) - l1) * (lam(l) * lam(l) - l1 * lam(l) + d.epsilon);
    rep.res_e1_identity =
        std::max(rep.res_e1_identity, std::abs(rep.e1_mu - rhs));
  }

  // K components in the Ejiri basis (all indices lowered).
  Tensor3 K_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int m = 0; m < n; ++m) s += d.h(k, m) * d.K(m, i, j);
        K_low(i, j, k) = s;
      }
  const Tensor3 Ke = to_frame(K_low, basis.e);

  for (int j = 1; j < n; ++j) {
    for (int l = 1; l < n; ++l) {
      if (j == l) continue;
      for (int k = 0; k < n; ++k) {
        const double value =
            (2.0 * lam(k) - l1) * (lam(l) - lam(j)) * Ke(j, k, l);
        rep.res_offdiag = std::max(rep.res_offdiag, std::abs(value));
      }
    }
  }
  for (int l = 1; l < n; ++l) {
    const double value =
        (lam(l) * lam(l) - l1 * lam(l) + d.epsilon) * Ke(l, l, l);
    rep.res_diagonal = std::max(rep.res_diagonal, std::abs(value));
  }
  return rep;
}

std::map<std::string, double> default_tolerances() {
  return {
      {"k-zero", 1e-8},        // |K| <= tol
      {"ktilde-zero", 1e-9},   // |Ktilde| <= tol (1 + |K|)
      {"nablak-zero", 1e-7},   // |dK| <= tol (1 + |K|)
      {"equality", 1e-8},      // slack <= tol (1 + |dK|^2)
      {"inequality", 1e-8},    // slack >= -tol (1 + |dK|^2); route agreement
      {"tchebychev", 1e-7},    // |dT - lambda id| <= tol (1 + |dT|)
      {"gauss", 1e-8},         // residual <= tol (1 + |K|^2)
      {"codazzi", 1e-8},       // residual <= tol (1 + |K|^2)
      {"symmetry", 1e-8},      // lowered dK permutations, same scaling
      {"eq312", 1e-6},         // |e_l(mu)|
      {"eq313", 1e-5},         // two-sided agreement of e1(mu)
      {"t-zero", 1e-7},        // |T| <= tol
      {"flat", 1e-8},          // |Rhat| <= tol
      {"strict-slack", 1e-6},  // minimum slack on strict surfaces
      {"lambda-order", 1e-7},  // lambda1 >= 2 lambda_i - tol (1 + |K|)
  };
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::QuadricCenteredAtOrigin:
      return "quadric centered at origin";
    case Verdict::HyperquadricNoCenterAtOrigin:
      return "hyperquadric without center at origin";
    case Verdict::ParallelCubicForm:
      return "parallel cubic form";
    case Verdict::EqualityUndetermined:
      return "equality point, mixed/undetermined";
    case Verdict::StrictInequality:
      return "strict inequality";
  }
  return "?";
}

PointClassification classify_point(const CentroaffineData& d,
                                   const std::map<std::string, double>& tol) {
  auto get = [&](const char* key) {
    const auto it = tol.find(key);
    if (it == tol.end()) throw Error(std::string("missing tolerance ") + key);
    return it->second;
  };

  const double normK = std::sqrt(std::max(0.0, d.normK2));
  const double normKt = std::sqrt(std::max(0.0, d.normKtilde2));
  const double normNK = std::sqrt(std::max(0.0, d.normNablaK2));

  PointClassification c;
  c.point = d.point;
  c.K_zero = normK <= get("k-zero");
  c.Ktilde_zero = normKt <= get("ktilde-zero") * (1.0 + normK);
  c.nablaK_zero = normNK <= get("nablak-zero") * (1.0 + normK);
  c.equality = d.slack() <= get("equality") * (1.0 + d.normNablaK2);
  const TchebychevCheck tc = tchebychev_check(d, get("tchebychev"));
  c.tchebychev = tc.is_tchebychev;
  c.tchebychev_lambda = tc.lambda;
  c.mu = d.mu;

  if (c.K_zero) {
    c.verdict = Verdict::QuadricCenteredAtOrigin;
  } else if (c.Ktilde_zero) {
    c.verdict = Verdict::HyperquadricNoCenterAtOrigin;
  } else if (c.nablaK_zero) {
    c.verdict = Verdict::ParallelCubicForm;
  } else if (c.equality) {
    c.verdict = Verdict::EqualityUndetermined;
  } else {
    c.verdict = Verdict::StrictInequality;
  }
  return c;
}

SurfaceClassification classify_surface(
    const std::vector<PointClassification>& reports, int skipped) {
  if (reports.empty()) {
    throw EmptySampleError("no point of the sample could be evaluated");
  }
  SurfaceClassification sc;
  sc.points = reports;
  sc.skipped = skipped;
  sc.equality_everywhere = true;
  for (const PointClassification& p : reports) {
    sc.equality_everywhere = sc.equality_everywhere && p.equality;
  }
  // Aggregate verdict: unanimous verdict if there is one, otherwise
  // equality/strict summary.
  bool unanimous = true;
  for (const PointClassification& p : reports) {
    unanimous = unanimous && p.verdict == reports[0].verdict;
  }
  if (unanimous) {
    sc.aggregate = reports[0].verdict;
  } else if (sc.equality_everywhere) {
    sc.aggregate = Verdict::EqualityUndetermined;
  } else {
    sc.aggregate = Verdict::StrictInequality;
  }
  return sc;
}

}  // namespace caff
