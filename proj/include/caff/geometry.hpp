#ifndef CAFF_GEOMETRY_HPP
#define CAFF_GEOMETRY_HPP

#include <functional>
#include <string>
#include <vector>

#include "caff/expr.hpp"
#include "caff/jets.hpp"
#include "caff/tensors.hpp"

namespace caff {

// A parametrized immersion u -> x(u) in R^{n+1}, evaluable over jets.
// `eval_jets` maps the n chart-variable jets to the n+1 ambient
// coordinate jets; `in_domain` is the (advisory) chart guard.
struct Surface {
  std::string name;
  int n = 0;
  std::function<std::vector<Jet>(const std::vector<Jet>&)> eval_jets;
  std::function<bool(const std::vector<double>&)> in_domain;

  bool contains(const std::vector<double>& point) const {
    return !in_domain || in_domain(point);
  }
};

Surface make_surface(const SurfaceSpec& spec);

// Composes with an ambient linear map: u -> A x(u).
Surface ambient_transform(const Surface& s, const Mat& A);

// Affine chart change u = B w + c: w -> x(B w + c).
Surface reparametrize(const Surface& s, const Mat& B, const Vec& c);

// Position vector with all partial derivatives to order 4 at a point.
struct ImmersionJet {
  int n = 0;
  std::vector<double> base_point;
  std::vector<Jet> position;  // n+1 jets, each in n variables
};

ImmersionJet immersion_jet(const Surface& s, const std::vector<double>& point);

// Result of splitting d_i d_j x over the moving basis
// {d_1 x, ..., d_n x, x}: induced connection plus metric, with the sign
// fixed so h is positive definite.
struct GaussSplit {
  int n = 0;
  int epsilon = 0;
  std::vector<Jet> h;      // n*n, slot i*n+j, coefficients valid to degree 2
  std::vector<Jet> gamma;  // n*n*n, slot (k*n+i)*n+j, valid to degree 2
};

GaussSplit gauss_split(const ImmersionJet& ij);

// Inverse metric as jets (valid to the metric's retained degree).
std::vector<Jet> metric_inverse_jets(const std::vector<Jet>& h_jet, int n);

// Levi-Civita coefficients of the jet-valued metric, valid to degree 1.
std::vector<Jet> levi_civita(const std::vector<Jet>& h_jet,
                             const std::vector<Jet>& h_inv_jet, int n);

// Difference tensor K = Gamma - GammaHat plus the derived cubic form,
// Tchebychev field and traceless part.
struct DifferenceTensors {
  std::vector<Jet> K_jet;  // (k*n+i)*n+j, valid to degree 1
  std::vector<Jet> T_jet;  // n jets, valid to degree 1
  Tensor3 K;               // K^k_ij values
  Tensor3 C;               // C_ijk values
  Vec T;                   // T^i values
  Tensor3 Ktilde;          // traceless part, K~^k_ij values
};

DifferenceTensors difference_tensor(const GaussSplit& gs,
                                    const std::vector<Jet>& gammahat,
                                    const std::vector<Jet>& h_inv_jet,
                                    const Mat& h, const Mat& h_inv);

// Covariant derivatives of K and T with respect to the Levi-Civita
// connection, as values at the point.
struct CovariantDerivatives {
  Tensor4 nablaK;  // (k,i,j,l) -> K^k_{ij,l}
  Mat nablaT;      // (j,i)     -> T^j_{,i}
};

CovariantDerivatives covariant_derivatives(const std::vector<Jet>& K_jet,
                                           const std::vector<Jet>& T_jet,
                                           const std::vector<Jet>& gammahat,
                                           int n);

// Riemann tensor of the metric, fully lowered, with the index order
// fixed so a unit sphere gives R_{ijij} = +1 in an orthonormal frame.
Tensor4 curvature(const std::vector<Jet>& gammahat, const Mat& h, int n);

struct NormsAndSlack {
  double normK2 = 0;
  double normKtilde2 = 0;
  double normNablaK2 = 0;
  double normNablaT2 = 0;
  double slack_direct = 0;  // contracted square of the traceless derivative
  double slack_diff = 0;    // |dK|^2 - 3n^2/(n+2) |dT|^2
  double mu = 0;            // trace of dT / (n+2)
};

NormsAndSlack norms_and_slack(const Mat& h, const Mat& h_inv, const Tensor3& K,
                              const Tensor3& Ktilde, const Tensor4& nablaK,
                              const Mat& nablaT);

// Everything the analyses need at one chart point.
struct CentroaffineData {
  int n = 0;
  std::vector<double> point;
  int epsilon = 0;
  Mat h;
  Mat h_inv;
  std::vector<Jet> h_jet;
  std::vector<Jet> h_inv_jet;
  std::vector<Jet> gamma_jet;
  std::vector<Jet> gammahat_jet;
  std::vector<Jet> K_jet;
  std::vector<Jet> T_jet;
  Tensor3 K;
  Tensor3 C;
  Tensor3 Ktilde;
  Vec T;
  Mat nablaT;
  Tensor4 nablaK;
  Tensor4 Rhat;
  double normK2 = 0;
  double normKtilde2 = 0;
  double normNablaK2 = 0;
  double normNablaT2 = 0;
  double slack_direct = 0;
  double slack_diff = 0;
  double mu = 0;

  double slack() const { return slack_direct; }
};

// Full pipeline at one point. Pure; safe to call concurrently.
CentroaffineData centroaffine_data(const Surface& s,
                                   const std::vector<double>& point);

struct Residuals {
  double gauss = 0;
  double codazzi = 0;
};

// Max-abs residuals of the Gauss and Codazzi equations, evaluated in an
// h-orthonormal frame obtained from the triangular factor of h.
Residuals gauss_codazzi_residuals(const Mat& h, int epsilon, const Tensor3& K,
                                  const Tensor4& nablaK, const Tensor4& Rhat);
Residuals gauss_codazzi_residuals(const CentroaffineData& d);

// Max deviation of the fully lowered nablaK from total symmetry,
// measured in an h-orthonormal frame.
double nablaK_symmetry_residual(const CentroaffineData& d);

// Scalar curvature invariants used by the invariance checks.
double scalar_curvature(const CentroaffineData& d);
double normRhat2(const CentroaffineData& d);

}  // namespace caff

#endif  // CAFF_GEOMETRY_HPP
