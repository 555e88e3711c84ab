#include "caff/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace caff {

Surface make_surface(const SurfaceSpec& spec) {
  Surface s;
  s.name = spec.name;
  s.n = spec.nvars;
  const auto components = spec.components;
  s.eval_jets = [components](const std::vector<Jet>& vars) {
    std::vector<Jet> out;
    out.reserve(components.size());
    for (const ExprPtr& c : components) out.push_back(eval_jet(c, vars));
    return out;
  };
  if (spec.guard) {
    const ExprPtr guard = spec.guard;
    s.in_domain = [guard](const std::vector<double>& point) {
      try {
        const double g = eval_value(guard, point);
        return std::isfinite(g) && g > 0.0;
      } catch (const Error&) {
        return false;
      }
    };
  }
  return s;
}

Surface ambient_transform(const Surface& s, const Mat& A) {
  const int m = s.n + 1;
  if (A.rows() != m || A.cols() != m) {
    throw Error("ambient transform must be (n+1) x (n+1)");
  }
  Surface t = s;
  t.name = s.name + "+gl";
  const auto base = s.eval_jets;
  t.eval_jets = [base, A, m](const std::vector<Jet>& vars) {
    const std::vector<Jet> x = base(vars);
    std::vector<Jet> y;
    y.reserve(m);
    for (int r = 0; r < m; ++r) {
      Jet acc = x[0] * A(r, 0);
      for (int c = 1; c < m; ++c) acc += x[c] * A(r, c);
      y.push_back(std::move(acc));
    }
    return y;
  };
  return t;
}

Surface reparametrize(const Surface& s, const Mat& B, const Vec& c) {
  const int n = s.n;
  if (B.rows() != n || B.cols() != n || c.size() != n) {
    throw Error("reparametrization must be an affine map of the chart");
  }
  Surface t = s;
  t.name = s.name + "+repar";
  const auto base = s.eval_jets;
  t.eval_jets = [base, B, c, n](const std::vector<Jet>& vars) {
    std::vector<Jet> u;
    u.reserve(n);
    for (int i = 0; i < n; ++i) {
      Jet acc(vars[0].nvars(), c(i));
      for (int j = 0; j < n; ++j) acc += vars[j] * B(i, j);
      u.push_back(std::move(acc));
    }
    return base(u);
  };
  const auto guard = s.in_domain;
  if (guard) {
    t.in_domain = [guard, B, c, n](const std::vector<double>& w) {
      std::vector<double> u(n);
      for (int i = 0; i < n; ++i) {
        u[i] = c(i);
        for (int j = 0; j < n; ++j) u[i] += B(i, j) * w[j];
      }
      return guard(u);
    };
  }
  return t;
}

ImmersionJet immersion_jet(const Surface& s, const std::vector<double>& point) {
  if (static_cast<int>(point.size()) != s.n) {
    throw Error("point dimension does not match the chart");
  }
  if (!s.contains(point)) {
    throw DomainGuardError("point outside the chart's domain guard");
  }
  std::vector<Jet> vars;
  vars.reserve(s.n);
  for (int i = 0; i < s.n; ++i) {
    vars.push_back(Jet::variable(i, point[i], s.n));
  }
  ImmersionJet ij;
  ij.n = s.n;
  ij.base_point = point;
  ij.position = s.eval_jets(vars);
  if (static_cast<int>(ij.position.size()) != s.n + 1) {
    throw Error("immersion must produce n+1 ambient coordinates");
  }
  for (const Jet& j : ij.position) {
    if (!j.all_finite()) {
      throw DomainGuardError("immersion produced non-finite derivatives");
    }
  }
  return ij;
}

GaussSplit gauss_split(const ImmersionJet& ij) {
  const int n = ij.n;
  const int m = n + 1;

  // Moving basis {d_1 x, ..., d_n x, x} as the columns of a jet matrix.
  std::vector<Jet> M(static_cast<std::size_t>(m) * m);
  for (int r = 0; r < m; ++r) {
    for (int col = 0; col < n; ++col) {
      M[r * m + col] = derivative(ij.position[r], col);
    }
    M[r * m + n] = ij.position[r];
  }

  // Transversality: the constant-term matrix must be invertible.
  Mat M0(m, m);
  for (int r = 0; r < m; ++r)
    for (int col = 0; col < m; ++col) M0(r, col) = M[r * m + col].value();
  Eigen::FullPivLU<Mat> lu(M0);
  if (!lu.isInvertible()) {
    throw NotCentroaffineError(
        "position vector is tangent to the hypersurface (no centroaffine "
        "structure)");
  }

  // One right-hand side per unordered index pair (i,j).
  const int npairs = n * (n + 1) / 2;
  std::vector<Jet> rhs(static_cast<std::size_t>(m) * npairs);
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(npairs);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  for (int r = 0; r < m; ++r) {
    for (int p = 0; p < npairs; ++p) {
      rhs[r * npairs + p] =
          derivative(derivative(ij.position[r], pairs[p].first),
                     pairs[p].second);
    }
  }

  std::vector<Jet> sol;
  try {
    sol = jet_solve(M, rhs, m, npairs);
  } catch (const SingularSystemError&) {
    throw NotCentroaffineError(
        "position vector is tangent to the hypersurface (no centroaffine "
        "structure)");
  }

  // The x-coefficient is c_ij = -epsilon h_ij; pick the sign that makes
  // h positive definite.
  Mat c0(n, n);
  for (int p = 0; p < npairs; ++p) {
    const auto [i, j] = pairs[p];
    const double v = sol[n * npairs + p].value();
    c0(i, j) = v;
    c0(j, i) = v;
  }
  int epsilon;
  if (Eigen::LLT<Mat>(-c0).info() == Eigen::Success) {
    epsilon = +1;
  } else if (Eigen::LLT<Mat>(c0).info() == Eigen::Success) {
    epsilon = -1;
  } else {
    throw NotConvexError(
        "centroaffine metric is indefinite: hypersurface is not locally "
        "strongly convex here");
  }

  GaussSplit gs;
  gs.n = n;
  gs.epsilon = epsilon;
  gs.h.resize(static_cast<std::size_t>(n) * n);
  gs.gamma.resize(static_cast<std::size_t>(n) * n * n);
  for (int p = 0; p < npairs; ++p) {
    const auto [i, j] = pairs[p];
    Jet hij = sol[n * npairs + p] * static_cast<double>(-epsilon);
    gs.h[i * n + j] = hij;
    gs.h[j * n + i] = hij;
    for (int k = 0; k < n; ++k) {
      gs.gamma[(k * n + i) * n + j] = sol[k * npairs + p];
      gs.gamma[(k * n + j) * n + i] = sol[k * npairs + p];
    }
  }
  return gs;
}

std::vector<Jet> metric_inverse_jets(const std::vector<Jet>& h_jet, int n) {
  const int nv = h_jet.at(0).nvars();
  std::vector<Jet> eye(static_cast<std::size_t>(n) * n, Jet(nv));
  for (int i = 0; i < n; ++i) eye[i * n + i] = Jet(nv, 1.0);
  return jet_solve(h_jet, eye, n, n);
}

std::vector<Jet> levi_civita(const std::vector<Jet>& h_jet,
                             const std::vector<Jet>& h_inv_jet, int n) {
  // dh[l][i*n+j] = d_l h_ij
  std::vector<std::vector<Jet>> dh(n);
  for (int l = 0; l < n; ++l) {
    dh[l].resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dh[l][i * n + j] = derivative(h_jet[i * n + j], l);
  }
  std::vector<Jet> gammahat(static_cast<std::size_t>(n) * n * n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        Jet acc(h_jet[0].nvars());
        for (int l = 0; l < n; ++l) {
          acc += h_inv_jet[k * n + l] *
                 (dh[i][j * n + l] + dh[j][i * n + l] - dh[l][i * n + j]);
        }
        acc *= 0.5;
        gammahat[(k * n + i) * n + j] = acc;
        gammahat[(k * n + j) * n + i] = acc;
      }
    }
  }
  return gammahat;
}

DifferenceTensors difference_tensor(const GaussSplit& gs,
                                    const std::vector<Jet>& gammahat,
                                    const std::vector<Jet>& h_inv_jet,
                                    const Mat& h, const Mat& h_inv) {
  const int n = gs.n;
  DifferenceTensors dt;
  dt.K_jet.resize(static_cast<std::size_t>(n) * n * n);
  for (std::size_t p = 0; p < dt.K_jet.size(); ++p) {
    dt.K_jet[p] = gs.gamma[p] - gammahat[p];
  }

  dt.K = Tensor3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        dt.K(k, i, j) = dt.K_jet[(k * n + i) * n + j].value();

  // C_ijk = -2 K^m_ij h_mk
  dt.C = Tensor3(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int m = 0; m < n; ++m) s += dt.K(m, i, j) * h(m, k);
        dt.C(i, j, k) = -2.0 * s;
      }

  // T^i = (1/n) h^{ia} K^m_{am}, kept as jets for the covariant derivative.
  const int nv = gs.h[0].nvars();
  dt.T_jet.assign(n, Jet(nv));
  for (int i = 0; i < n; ++i) {
    Jet acc(nv);
    for (int a = 0; a < n; ++a)
      for (int m = 0; m < n; ++m)
        acc += h_inv_jet[i * n + a] * dt.K_jet[(m * n + a) * n + m];
    dt.T_jet[i] = acc / static_cast<double>(n);
  }
  dt.T = Vec(n);
  for (int i = 0; i < n; ++i) dt.T(i) = dt.T_jet[i].value();

  // Traceless part, computed on lowered indices and raised back.
  Vec T_low = h * dt.T;
  Tensor3 K_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int m = 0; m < n; ++m) s += h(k, m) * dt.K(m, i, j);
        K_low(i, j, k) = s;
      }
  const double f = static_cast<double>(n) / (n + 2);
  dt.Ktilde = Tensor3(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0;
        for (int m = 0; m < n; ++m) {
          const double low = K_low(i, j, m) -
                             f * (T_low(m) * h(i, j) + T_low(i) * h(j, m) +
                                  T_low(j) * h(i, m));
          s += h_inv(k, m) * low;
        }
        dt.Ktilde(k, i, j) = s;
      }
  return dt;
}

CovariantDerivatives covariant_derivatives(const std::vector<Jet>& K_jet,
                                           const std::vector<Jet>& T_jet,
                                           const std::vector<Jet>& gammahat,
                                           int n) {
  Tensor3 gh(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        gh(k, i, j) = gammahat[(k * n + i) * n + j].value();

  Tensor3 K(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        K(k, i, j) = K_jet[(k * n + i) * n + j].value();

  // First-order coefficients are the raw first partials.
  auto d1 = [&](const Jet& jet, int l) {
    MultiIndex alpha(n, 0);
    alpha[l] = 1;
    return jet.coeff(alpha);
  };

  CovariantDerivatives cd;
  cd.nablaK = Tensor4(n);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) {
          double s = d1(K_jet[(k * n + i) * n + j], l);
          for (int m = 0; m < n; ++m) {
            s += gh(k, l, m) * K(m, i, j);
            s -= gh(m, l, i) * K(k, m, j);
            s -= gh(m, l, j) * K(k, i, m);
          }
          cd.nablaK(k, i, j, l) = s;
        }

  cd.nablaT = Mat(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      double s = d1(T_jet[j], i);
      for (int m = 0; m < n; ++m) s += gh(j, i, m) * T_jet[m].value();
      cd.nablaT(j, i) = s;
    }
  return cd;
}

Tensor4 curvature(const std::vector<Jet>& gammahat, const Mat& h, int n) {
  Tensor3 gh(n);
  Tensor4 dgh(n);  // dgh(l,k,i,j) = d_l GammaHat^k_ij
  MultiIndex alpha(n, 0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Jet& g = gammahat[(k * n + i) * n + j];
        gh(k, i, j) = g.value();
        for (int l = 0; l < n; ++l) {
          alpha.assign(n, 0);
          alpha[l] = 1;
          dgh(l, k, i, j) = g.coeff(alpha);
        }
      }

  // R(d_i, d_j) d_l = Rmixed(m,l,i,j) d_m, then lower the first slot
  // onto index k: Rhat_{ijkl} = h_{km} Rmixed(m,l,i,j).
  Tensor4 rhat(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l)
        for (int k = 0; k < n; ++k) {
          double s = 0;
          for (int m = 0; m < n; ++m) {
            double rm = dgh(i, m, j, l) - dgh(j, m, i, l);
            for (int q = 0; q < n; ++q) {
              rm += gh(m, i, q) * gh(q, j, l) - gh(m, j, q) * gh(q, i, l);
            }
            s += h(k, m) * rm;
          }
          rhat(i, j, k, l) = s;
        }
  return rhat;
}

NormsAndSlack norms_and_slack(const Mat& h, const Mat& h_inv, const Tensor3& K,
                              const Tensor3& Ktilde, const Tensor4& nablaK,
                              const Mat& nablaT) {
  const int n = K.n;
  NormsAndSlack ns;

  auto lower3 = [&](const Tensor3& t) {
    Tensor3 low(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += h(k, m) * t(m, i, j);
          low(i, j, k) = s;
        }
    return low;
  };

  ns.normK2 = norm2_lowered(lower3(K), h_inv);
  ns.normKtilde2 = norm2_lowered(lower3(Ktilde), h_inv);

  // Lower the contravariant slot of nablaK into position 3.
  Tensor4 nk_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += h(k, m) * nablaK(m, i, j, l);
          nk_low(i, j, k, l) = s;
        }
  ns.normNablaK2 = norm2_lowered(nk_low, h_inv);

  Mat nt_low(n, n);  // (i,j) = h_{jm} T^m_{,i}
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0;
      for (int m = 0; m < n; ++m) s += h(j, m) * nablaT(m, i);
      nt_low(i, j) = s;
    }
  ns.normNablaT2 = norm2_lowered(nt_low, h_inv);

  ns.mu = nablaT.trace() / (n + 2);

  const double factor = 3.0 * n * n / (n + 2);
  ns.slack_diff = ns.normNablaK2 - factor * ns.normNablaT2;

  // Direct route: subtract the covariant derivative of the trace part
  // (nabla h = 0) and contract the resulting 4-tensor.
  const double f = static_cast<double>(n) / (n + 2);
  Tensor4 kt_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          kt_low(i, j, k, l) =
              nk_low(i, j, k, l) -
              f * (nt_low(l, k) * h(i, j) + nt_low(l, i) * h(j, k) +
                   nt_low(l, j) * h(i, k));
        }
  ns.slack_direct = norm2_lowered(kt_low, h_inv);
  return ns;
}

CentroaffineData centroaffine_data(const Surface& s,
                                   const std::vector<double>& point) {
  const ImmersionJet ij = immersion_jet(s, point);
  GaussSplit gs = gauss_split(ij);
  const int n = gs.n;

  CentroaffineData d;
  d.n = n;
  d.point = point;
  d.epsilon = gs.epsilon;
  d.h_jet = gs.h;
  d.gamma_jet = gs.gamma;

  d.h = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.h(i, j) = d.h_jet[i * n + j].value();
  d.h_inv_jet = metric_inverse_jets(d.h_jet, n);
  d.h_inv = Mat(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d.h_inv(i, j) = d.h_inv_jet[i * n + j].value();

  d.gammahat_jet = levi_civita(d.h_jet, d.h_inv_jet, n);

  DifferenceTensors dt =
      difference_tensor(gs, d.gammahat_jet, d.h_inv_jet, d.h, d.h_inv);
  d.K_jet = std::move(dt.K_jet);
  d.T_jet = std::move(dt.T_jet);
  d.K = std::move(dt.K);
  d.C = std::move(dt.C);
  d.T = std::move(dt.T);
  d.Ktilde = std::move(dt.Ktilde);

  CovariantDerivatives cd =
      covariant_derivatives(d.K_jet, d.T_jet, d.gammahat_jet, n);
  d.nablaK = std::move(cd.nablaK);
  d.nablaT = std::move(cd.nablaT);

  d.Rhat = curvature(d.gammahat_jet, d.h, n);

  const NormsAndSlack ns =
      norms_and_slack(d.h, d.h_inv, d.K, d.Ktilde, d.nablaK, d.nablaT);
  d.normK2 = ns.normK2;
  d.normKtilde2 = ns.normKtilde2;
  d.normNablaK2 = ns.normNablaK2;
  d.normNablaT2 = ns.normNablaT2;
  d.slack_direct = ns.slack_direct;
  d.slack_diff = ns.slack_diff;
  d.mu = ns.mu;
  return d;
}

Residuals gauss_codazzi_residuals(const Mat& h, int epsilon, const Tensor3& K,
                                  const Tensor4& nablaK, const Tensor4& Rhat) {
  const int n = K.n;
  const Mat B = frame_from_metric(h);

  Tensor3 K_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        double s = 0;
        for (int m = 0; m < n; ++m) s += h(k, m) * K(m, i, j);
        K_low(i, j, k) = s;
      }
  const Tensor3 Kf = to_frame(K_low, B);

  Tensor4 nk_low(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double s = 0;
          for (int m = 0; m < n; ++m) s += h(k, m) * nablaK(m, i, j, l);
          nk_low(i, j, k, l) = s;
        }
  const Tensor4 Sf = to_frame(nk_low, B);
  const Tensor4 Rf = to_frame(Rhat, B);

  auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  Residuals res;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double g = Rf(i, j, k, l) -
                     epsilon * (kron(i, k) * kron(j, l) -
                                kron(i, l) * kron(j, k));
          for (int m = 0; m < n; ++m) {
            g -= Kf(i, l, m) * Kf(j, k, m) - Kf(i, k, m) * Kf(j, l, m);
          }
          res.gauss = std::max(res.gauss, std::abs(g));
          res.codazzi =
              std::max(res.codazzi, std::abs(Sf(i, j, k, l) - Sf(i, j, l, k)));
        }
  return res;
}

Residuals gauss_codazzi_residuals(const CentroaffineData& d) {
  return gauss_codazzi_residuals(d.h, d.epsilon, d.K, d.nablaK, d.Rhat);
}

double nablaK_symmetry_residual(const CentroaffineData& d) {
  const int n = d.n;
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

  double worst = 0;
  int idx[4];
  // All 24 permutations against the identity arrangement.
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p = {0, 1, 2, 3};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  for (idx[0] = 0; idx[0] < n; ++idx[0])
    for (idx[1] = 0; idx[1] < n; ++idx[1])
      for (idx[2] = 0; idx[2] < n; ++idx[2])
        for (idx[3] = 0; idx[3] < n; ++idx[3]) {
          const double base = Sf(idx[0], idx[1], idx[2], idx[3]);
          for (const auto& q : perms) {
            const double other = Sf(idx[q[0]], idx[q[1]], idx[q[2]], idx[q[3]]);
            worst = std::max(worst, std::abs(base - other));
          }
        }
  return worst;
}

double scalar_curvature(const CentroaffineData& d) {
  const int n = d.n;
  double s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          s += d.h_inv(i, k) * d.h_inv(j, l) * d.Rhat(i, j, k, l);
        }
  return s;
}

double normRhat2(const CentroaffineData& d) {
  return norm2_lowered(d.Rhat, d.h_inv);
}

}  // namespace caff
