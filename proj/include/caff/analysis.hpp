#ifndef CAFF_ANALYSIS_HPP
#define CAFF_ANALYSIS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "caff/geometry.hpp"

namespace caff {

// h-orthonormal basis whose first vector maximizes f(u) = h(K_u u, u)
// on the unit sphere; the rest diagonalize K_{e1}.
struct EjiriBasis {
  Mat e;       // columns = basis vectors in chart coordinates
  Vec lambda;  // lambda(0) = f(e1); lambda(i>=1) sorted descending
  double fmax = 0;
  bool degenerate = false;
};

// Multi-start shifted power iteration for the cubic form, followed by a
// spectral split of K_{e1}. Deterministic for a fixed seed.
EjiriBasis ejiri_basis(const CentroaffineData& d, std::uint64_t seed = 2024);

// Brute-force reference for n = 2: scans `samples` directions on the
// h-unit circle. Used to cross-check the optimizer.
double cubic_form_max_bruteforce(const CentroaffineData& d, int samples);

struct TchebychevCheck {
  bool is_tchebychev = false;
  double lambda = 0;    // trace(nablaT)/n
  double residual = 0;  // max |nablaT - lambda id| in an h-orthonormal frame
};

TchebychevCheck tchebychev_check(const CentroaffineData& d,
                                 double tol = 1e-7);

enum class IdentityStatus { Ok, NotApplicable, DegenerateBasis };

// Residuals of the pointwise identities that hold when nablaK has the
// isotropic mu-form: directional derivatives of mu against the
// eigenvalue polynomial, plus the two component identities.
struct ProofIdentityReport {
  IdentityStatus status = IdentityStatus::NotApplicable;
  double mu_form_residual = 0;  // distance of nablaK from the mu-form
  double e1_mu = 0;             // directional derivative of mu along e1
  double res_el_mu = 0;         // max |e_l(mu)|, l >= 2
  double res_e1_identity = 0;   // max |e1(mu) - (2*l_l - l_1)(l_l^2 - l_1 l_l + eps)|
  double res_offdiag = 0;       // (2 l_k - l_1)(l_l - l_j) K^l_{jk} residual
  double res_diagonal = 0;      // (l_l^2 - l_1 l_l + eps) K^l_{ll} residual
};

// Directional derivatives of the mu scalar field along the basis
// columns, by central differences across neighboring chart points.
Vec mu_gradient(const Surface& s, const std::vector<double>& point,
                const EjiriBasis& basis, double step = 1e-4);

ProofIdentityReport proof_identity_check(const CentroaffineData& d,
                                         const EjiriBasis& basis,
                                         const Vec& directional_mu,
                                         double mu_form_tol = 1e-7);

// Named tolerances shared by the classification and the CLI checks.
std::map<std::string, double> default_tolerances();

enum class Verdict {
  QuadricCenteredAtOrigin,
  HyperquadricNoCenterAtOrigin,
  ParallelCubicForm,
  EqualityUndetermined,
  StrictInequality,
};

const char* verdict_name(Verdict v);

struct PointClassification {
  std::vector<double> point;
  bool K_zero = false;
  bool Ktilde_zero = false;
  bool nablaK_zero = false;
  bool equality = false;
  bool tchebychev = false;
  double tchebychev_lambda = 0;
  double mu = 0;
  Verdict verdict = Verdict::StrictInequality;
};

PointClassification classify_point(const CentroaffineData& d,
                                   const std::map<std::string, double>& tol);

struct SurfaceClassification {
  std::vector<PointClassification> points;
  int skipped = 0;
  bool equality_everywhere = false;
  Verdict aggregate = Verdict::StrictInequality;
};

// Aggregates per-point verdicts over a finite sample; throws
// EmptySampleError when no point evaluated.
SurfaceClassification classify_surface(
    const std::vector<PointClassification>& reports, int skipped);

}  // namespace caff

#endif  // CAFF_ANALYSIS_HPP
