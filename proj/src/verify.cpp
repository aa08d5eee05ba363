#include "bcnd/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "bcnd/blocks_global.hpp"
#include "bcnd/blocks_local.hpp"
#include "bcnd/dynamics.hpp"
#include "bcnd/hamiltonians.hpp"
#include "bcnd/linalg.hpp"
#include "bcnd/momentum.hpp"
#include "bcnd/sampling.hpp"

namespace bcnd {

double omega_local_form(const RVector& v1, const RVector& v2) {
  const int n = static_cast<int>(v1.size()) / 2;
  double w = 0.0;
  for (int j = 0; j < n; ++j)
    w += v1[n + j] * v2[j] - v2[n + j] * v1[j];  // sum dq_j ^ dp_j
  return w;
}

double omega_c_form(const GlobalPoint& z, const RVector& v1,
                    const RVector& v2) {
  const int n = z.n();
  double w = 0.0;
  for (int j = 0; j < n; ++j) {
    const double c =
        j == n - 1 ? 1.0 / (1.0 - std::norm(z.z[n - 1])) : 1.0;
    w += 2.0 * c * (v1[j] * v2[n + j] - v2[j] * v1[n + j]);
  }
  return w;
}

double am_form(const std::function<CMatrix(const RVector&)>& family,
               const RVector& base, const RVector& v1, const RVector& v2,
               double h) {
  struct Factors {
    CMatrix gL, bR, gR, bL;
  };
  auto factors = [&](const RVector& y) {
    const CMatrix K = family(y);
    const IwasawaFactors r = iwasawa_right(K);
    const IwasawaFactors l = iwasawa_left(K);
    return Factors{r.g, r.b, l.g, l.b};
  };
  const Factors f0 = factors(base);
  auto dirder = [&](const RVector& v) {
    const Factors fp = factors(base + h * v);
    const Factors fm = factors(base - h * v);
    Factors d;
    d.gL = (fp.gL - fm.gL) / (2 * h);
    d.bR = (fp.bR - fm.bR) / (2 * h);
    d.gR = (fp.gR - fm.gR) / (2 * h);
    d.bL = (fp.bL - fm.bL) / (2 * h);
    if (!is_finite(d.gL) || !is_finite(d.bL))
      throw FdBreakdown("factor curve is not differentiable at the sample");
    return d;
  };
  const Factors d1 = dirder(v1);
  const Factors d2 = dirder(v2);
  const CMatrix bLi = f0.bL.inverse(), gLi = f0.gL.inverse();
  const CMatrix bRi = f0.bR.inverse(), gRi = f0.gR.inverse();
  const CMatrix A1 = d1.bL * bLi, B1 = d1.gL * gLi;
  const CMatrix A2 = d2.bL * bLi, B2 = d2.gL * gLi;
  const CMatrix At1 = d1.bR * bRi, Bt1 = d1.gR * gRi;
  const CMatrix At2 = d2.bR * bRi, Bt2 = d2.gR * gRi;
  return 0.5 * ((A1 * B2 - A2 * B1).trace().imag() +
                (At1 * Bt2 - At2 * Bt1).trace().imag());
}

double poisson_bracket(const std::function<double(const RVector&)>& f,
                       const std::function<double(const RVector&)>& g,
                       const RVector& pt, double h) {
  const int n = static_cast<int>(pt.size()) / 2;
  const RVector gf = gradient4(f, pt, h);
  const RVector gg = gradient4(g, pt, h);
  double b = 0.0;
  for (int m = 0; m < n; ++m)
    b += gf[n + m] * gg[m] - gf[m] * gg[n + m];  // dq-part x dp-part
  return b;
}

namespace {

std::function<double(const RVector&)> h_k_fun(const CouplingParams& cp, int k) {
  return [cp, k](const RVector& y) {
    const int n = cp.n;
    LocalPoint pt;
    pt.p_hat = y.head(n);
    pt.q_hat = y.tail(n);
    return h_k_local(cp, pt, k);
  };
}

RVector flatten(const LocalPoint& pt) {
  RVector y(2 * pt.n());
  y.head(pt.n()) = pt.p_hat;
  y.tail(pt.n()) = pt.q_hat;
  return y;
}

}  // namespace

double poisson_commutativity(const CouplingParams& cp, const LocalPoint& pt,
                             const std::vector<std::pair<int, int>>& pairs,
                             double h) {
  const RVector y = flatten(pt);
  double worst = 0.0;
  for (const auto& [j, k] : pairs)
    worst = std::max(
        worst, std::abs(poisson_bracket(h_k_fun(cp, j), h_k_fun(cp, k), y, h)));
  return worst;
}

int independence_rank(const CouplingParams& cp, const LocalPoint& pt,
                      double h) {
  const int n = cp.n;
  const RVector y0 = flatten(pt);
  RMatrix jac(n, n);  // jac(k-1, j) = dh_k/dq_j
  for (int k = 1; k <= n; ++k) {
    auto f = h_k_fun(cp, k);
    RVector y = y0;
    for (int j = 0; j < n; ++j) {
      y[n + j] = y0[n + j] + h;
      const double fp = f(y);
      y[n + j] = y0[n + j] - h;
      const double fm = f(y);
      y[n + j] = y0[n + j];
      jac(k - 1, j) = (fp - fm) / (2 * h);
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(jac);
  const RVector s = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s[i] > 1e-8 * s[0]) ++rank;
  return rank;
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

namespace {

int scaled(double scale, int base) {
  return std::max(1, static_cast<int>(std::lround(scale * base)));
}

SuiteResult make_result(const std::string& name, int samples, double residual,
                        double tol, const std::string& note = "") {
  return SuiteResult{name, samples, residual, tol, residual <= tol, note};
}

CouplingParams with(const CouplingParams& base, int n, double x) {
  CouplingParams cp = base;
  cp.n = n;
  cp.x = x;
  return cp;
}

SuiteResult suite_constraint(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 1);
  double worst = 0.0;
  int count = 0;
  const int per = scaled(cfg.sample_scale, 13);
  for (int n = 1; n <= 4; ++n) {
    for (double x : {cfg.params.x, -cfg.params.x}) {
      const CouplingParams cp = with(cfg.params, n, x);
      for (int i = 0; i < per; ++i) {
        const LocalPoint pt = s.interior_point(cp);
        worst = std::max(worst, constraint_residual(K_local(cp, pt), cp));
        const GlobalPoint gp = s.global_point(cp, i % 10 == 9 ? 1 : 0);
        worst = std::max(worst, constraint_residual(K_global(cp, gp), cp));
        count += 2;
      }
      GlobalPoint origin;
      origin.z = CVector::Zero(n);
      worst = std::max(worst, constraint_residual(K_global(cp, origin), cp));
      ++count;
    }
  }
  return make_result("constraint-surface", count, worst, cfg.tol.property);
}

SuiteResult suite_identities(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 2);
  double worst = 0.0;
  int count = 0;
  const int per = scaled(cfg.sample_scale, 13);
  for (int n = 1; n <= 4; ++n) {
    for (double x : {cfg.params.x, -cfg.params.x, 2 * std::log(2.0),
                     -2 * std::log(2.0)}) {
      const CouplingParams cp = with(cfg.params, n, x);
      // deformed completeness relation nu nu^T = e^{-x} + sgn(x) vhat vhat^T
      const RMatrix nu = nu_matrix(x, n);
      const RVector vh = v_hat_vector(x, n);
      const double sgn = x > 0 ? 1.0 : -1.0;
      RMatrix rhs = std::exp(-x) * RMatrix::Identity(n, n) +
                    sgn * vh * vh.transpose();
      worst = std::max(worst,
                       (nu * nu.transpose() - rhs).cwiseAbs().maxCoeff());
      const RMatrix kap = kappa_matrix(x, n);
      worst = std::max(
          worst, (kap * kap.transpose() - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
      worst = std::max(worst, std::abs(kap.determinant() - 1.0));
      for (int i = 0; i < per; ++i) {
        const LocalPoint pt = s.interior_point(cp);
        const RVector r = r_vector(x, pt.p_hat);
        worst = std::max(worst, std::abs(r.norm() - 1.0));
        const RMatrix th = theta_matrix(x, pt.p_hat);
        const RMatrix thm = theta_matrix(-x, pt.p_hat);
        worst = std::max(
            worst,
            (th * th.transpose() - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
        worst = std::max(
            worst, (th * thm - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(th.determinant() - 1.0));
        const RMatrix ze = zeta_matrix(x, pt.p_hat);
        worst = std::max(
            worst,
            (ze * ze.transpose() - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
        worst = std::max(worst, std::abs(ze.determinant() - 1.0));
        ++count;
      }
    }
  }
  return make_result("local-identities", count, worst, cfg.tol.property);
}

SuiteResult suite_lemma_gauge(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 3);
  double worst = 0.0;
  int count = 0;
  const int per = scaled(cfg.sample_scale, 17);
  for (int n : {2, 3, 4}) {
    for (double x : {cfg.params.x, -cfg.params.x}) {
      const CouplingParams cp = with(cfg.params, n, x);
      for (int i = 0; i < per; ++i) {
        const LocalPoint pt = s.interior_point(cp);
        const GlobalPoint gp = z_of_local(cp, pt);
        auto [tau, taut] = tau_factors(x, pt.q_hat);
        const CMatrix T = tau.asDiagonal();
        const CMatrix Tt = taut.asDiagonal();

        const CMatrix zl = zeta_matrix(x, pt.p_hat).cast<Complex>();
        worst = std::max(worst, (zeta_hat(x, gp) - T * zl * T.adjoint())
                                    .cwiseAbs()
                                    .maxCoeff());
        const CMatrix tl = theta_matrix(x, pt.p_hat).cast<Complex>();
        const CMatrix want_th = x > 0
                                    ? CMatrix(T * tl * Tt.adjoint())
                                    : CMatrix(T.conjugate() * tl *
                                              Tt.transpose());
        worst = std::max(worst,
                         (theta_hat(x, gp) - want_th).cwiseAbs().maxCoeff());
        const CVector gh = gamma_hat_diag(x, gp);
        for (int j = 0; j < n; ++j) {
          const Complex want = std::exp(Complex(0.0, pt.q_hat[j])) * tau[j] /
                               taut[j] *
                               std::sqrt(1.0 - std::exp(2 * pt.p_hat[j]));
          worst = std::max(worst, std::abs(gh[j] - want));
        }
        const CMatrix al = alpha_matrix(cp, pt);
        CVector em(n);
        for (int j = 0; j < n; ++j)
          em[j] = std::exp(Complex(0.0, -pt.q_hat[j]));
        const CMatrix want_a =
            CMatrix(em.asDiagonal()) * Tt * al * T.adjoint();
        worst = std::max(worst,
                         (alpha_hat(cp, gp) - want_a).cwiseAbs().maxCoeff());

        auto [eL, eR] = section_gauge_factors(cp, pt);
        const CMatrix lhs = K_global(cp, gp);
        const CMatrix rhs = eL * K_local(cp, pt) * eR.adjoint();
        worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());

        // isotropy: kappa tau kappa^{-1} fixes v_hat
        const RMatrix kap = kappa_matrix(x, n);
        const CVector vh = v_hat_vector(x, n).cast<Complex>();
        const CVector moved = kap.cast<Complex>() * T *
                              kap.transpose().cast<Complex>() * vh;
        worst = std::max(worst, (moved - vh).cwiseAbs().maxCoeff());
        ++count;
      }
    }
  }
  return make_result("global-section-gauge", count, worst, cfg.tol.property);
}

SuiteResult suite_appendix_oracle(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 4);
  double worst = 0.0;
  int count = 0;
  const int per = scaled(cfg.sample_scale, 10);
  for (int n : {2, 3, 4}) {
    for (double x : {cfg.params.x, -cfg.params.x}) {
      const CouplingParams cp = with(cfg.params, n, x);
      for (int i = 0; i < per; ++i) {
        const LocalPoint pt = s.interior_point(cp);
        const RMatrix rho = rho_matrix(cp, pt.p_hat);
        const CVector w = w_vector(x, rho);
        const RVector w2 = w_squared_oracle(x, pt.p_hat);
        for (int m = 0; m < n; ++m)
          worst = std::max(worst, std::abs(std::norm(w[m]) - w2[m]));
        const double sgn = x > 0 ? 1.0 : -1.0;
        worst = std::max(worst, std::abs(w2.sum() - sgn * std::exp(-x) *
                                                        (std::exp(n * x) - 1.0)));
        for (int l = 0; l < 20; ++l) {
          const Complex lam = std::exp(Complex(0.0, s.uniform(-M_PI, M_PI)));
          worst = std::max(worst,
                           std::abs(charpoly_residual(x, pt.p_hat, w2, lam)));
        }
        ++count;
      }
    }
  }
  // admissibility equivalence on an n=2 grid
  const CouplingParams cp2 = with(cfg.params, 2, std::abs(cfg.params.x));
  int disagreements = 0;
  const int grid = 50;
  for (int a = 0; a < grid; ++a) {
    for (int b = 0; b < grid; ++b) {
      RVector p(2);
      p[0] = -1.4 + 1.7 * (a + 0.437) / grid;          // crosses the p1 = 0 wall
      const double gap = 0.03 + 1.1 * (b + 0.291) / grid;  // crosses |x|/2
      p[1] = p[0] - gap;
      const bool walls = in_closed_chamber(cp2.x, p, 1e-12);
      if (admissible(cp2.x, p) != walls) ++disagreements;
      ++count;
    }
  }
  std::ostringstream note;
  note << disagreements << " grid disagreements";
  if (disagreements > 0) worst = std::max(worst, 1.0);
  return make_result("admissibility-oracle", count, worst, cfg.tol.property,
                     note.str());
}

SuiteResult suite_symplectic(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 5);
  double worst_local = 0.0, worst_global = 0.0;
  int count = 0;
  const int pts = scaled(cfg.sample_scale, 10);
  const double h = 1e-5;
  for (int n : {2, 3}) {
    for (double x : {cfg.params.x, -cfg.params.x}) {
      const CouplingParams cp = with(cfg.params, n, x);
      auto family_local = [&](const RVector& y) {
        LocalPoint pt;
        pt.p_hat = y.head(n);
        pt.q_hat = y.tail(n);
        return K_local(cp, pt);
      };
      auto family_global = [&](const RVector& y) {
        GlobalPoint gp;
        gp.z = CVector(n);
        for (int j = 0; j < n; ++j) gp.z[j] = Complex(y[j], y[n + j]);
        return K_global(cp, gp);
      };
      auto zmap = [&](const RVector& y) {
        LocalPoint pt;
        pt.p_hat = y.head(n);
        pt.q_hat = y.tail(n);
        return z_of_local(cp, pt);
      };
      for (int i = 0; i < pts / 2 + 1; ++i) {
        const LocalPoint pt = s.interior_point(cp, 0.25, 0.55);
        const RVector base = flatten(pt);
        const GlobalPoint gp = s.global_point(cp);
        RVector gbase(2 * n);
        for (int j = 0; j < n; ++j) {
          gbase[j] = gp.z[j].real();
          gbase[n + j] = gp.z[j].imag();
        }
        for (int pair = 0; pair < 5; ++pair) {
          RVector v1(2 * n), v2(2 * n);
          for (int j = 0; j < 2 * n; ++j) {
            v1[j] = s.uniform(-1.0, 1.0);
            v2[j] = s.uniform(-1.0, 1.0);
          }
          // local chart pullback = Darboux form
          const double wl = am_form(family_local, base, v1, v2, h);
          worst_local =
              std::max(worst_local, std::abs(wl - omega_local_form(v1, v2)));
          // pushforward through the embedding = complex model form
          const GlobalPoint z0 = zmap(base);
          RVector dz1(2 * n), dz2(2 * n);
          {
            const GlobalPoint zp = zmap(base + h * v1);
            const GlobalPoint zm = zmap(base - h * v1);
            for (int j = 0; j < n; ++j) {
              dz1[j] = (zp.z[j].real() - zm.z[j].real()) / (2 * h);
              dz1[n + j] = (zp.z[j].imag() - zm.z[j].imag()) / (2 * h);
            }
            const GlobalPoint zp2 = zmap(base + h * v2);
            const GlobalPoint zm2 = zmap(base - h * v2);
            for (int j = 0; j < n; ++j) {
              dz2[j] = (zp2.z[j].real() - zm2.z[j].real()) / (2 * h);
              dz2[n + j] = (zp2.z[j].imag() - zm2.z[j].imag()) / (2 * h);
            }
          }
          worst_local = std::max(
              worst_local, std::abs(omega_c_form(z0, dz1, dz2) -
                                    omega_local_form(v1, v2)));
          // global section pullback = complex model form
          const double wg = am_form(family_global, gbase, v1, v2, h);
          worst_global =
              std::max(worst_global, std::abs(wg - omega_c_form(gp, v1, v2)));
          // antisymmetry
          const double wq = am_form(family_local, base, v1, v1, h);
          worst_global = std::max(worst_global, std::abs(wq));
          ++count;
        }
      }
    }
  }
  std::ostringstream note;
  note << "local max " << worst_local << " (tol " << cfg.tol.symplectic_local
       << "), global max " << worst_global;
  const bool pass = worst_local <= cfg.tol.symplectic_local &&
                    worst_global <= cfg.tol.symplectic_global;
  SuiteResult r = make_result("symplectic-pullbacks", count,
                              std::max(worst_local, worst_global),
                              cfg.tol.symplectic_global, note.str());
  r.pass = pass;
  return r;
}

SuiteResult suite_integrability(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 6);
  double worst = 0.0;
  int count = 0;
  int rank_ok = 0, rank_total = 0;
  const int pts = scaled(cfg.sample_scale, 10);
  const int rank_pts = scaled(cfg.sample_scale, 50);
  // FD brackets resolve the commutators only while the Hamiltonian
  // magnitudes stay moderate; sample near the chamber vertex at a small
  // deformation, where h_n = O(1e3). The stencil step balances subtraction
  // noise (scale e-16 h_n / h) against O(h^2) truncation per family size.
  for (int n : {2, 3}) {
    const double h_fd = n == 2 ? 1e-6 : 3e-5;
    for (double x : {0.15, -0.15}) {
      const CouplingParams cp = with(cfg.params, n, x);
      std::vector<std::pair<int, int>> pairs;
      for (int j = 1; j <= n; ++j)
        for (int k = j + 1; k <= n; ++k) pairs.emplace_back(j, k);
      for (int i = 0; i < pts; ++i) {
        const LocalPoint pt = s.shallow_interior_point(cp);
        worst = std::max(worst, poisson_commutativity(cp, pt, pairs, h_fd));
        ++count;
      }
      for (int i = 0; i < rank_pts / 2 + 1; ++i) {
        const LocalPoint pt = s.shallow_interior_point(cp);
        if (independence_rank(cp, pt) == n) ++rank_ok;
        ++rank_total;
      }
    }
  }
  std::ostringstream note;
  note << "rank full at " << rank_ok << "/" << rank_total;
  SuiteResult r = make_result("integrability", count + rank_total, worst,
                              cfg.tol.commutativity, note.str());
  r.pass = r.pass && rank_ok * 100 >= rank_total * 95;
  return r;
}

SuiteResult suite_dynamics(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 7);
  double worst_cross = 0.0, worst_drift = 0.0, worst_crossing = 0.0;
  int count = 0;
  const int samples = 34;
  // Slow-field regime: near-vertex starts at a small deformation keep the
  // Hamiltonian magnitudes at O(10..1e3), so a unit of time covers a few
  // bounces and the FD vector field stays far below the cross tolerance.
  // The local chart is compared while it remains comfortably interior
  // (margin > 5e-3); the wall layer belongs to the complete global flow.
  for (int n : {2, 3}) {
    const CouplingParams cp = with(cfg.params, n, 0.3);
    for (int k : {1, 2}) {
      // the deep commuting flow is the costly combination; it scales away
      // entirely in smoke-sized runs
      const int starts =
          (n == 3 && k == 2)
              ? static_cast<int>(std::lround(cfg.sample_scale))
              : scaled(cfg.sample_scale, 3);
      for (int i = 0; i < starts; ++i) {
        LocalPoint pt0;
        pt0.p_hat = RVector(n);
        pt0.q_hat = RVector(n);
        pt0.p_hat[0] = -s.uniform(0.04, 0.12);
        for (int j = 1; j < n; ++j)
          pt0.p_hat[j] =
              pt0.p_hat[j - 1] - std::abs(cp.x) / 2 - s.uniform(0.10, 0.22);
        for (int j = 0; j < n; ++j) pt0.q_hat[j] = s.uniform(-M_PI, M_PI);
        const GlobalPoint z0 = z_of_local(cp, pt0);
        const Trajectory tl =
            local_ode(cp, pt0, k, {0.0, 1.0}, 5e-12, samples, 5e-3);
        worst_drift = std::max(worst_drift, tl.conserved_drift());
        const auto pp = projected_p_trajectory(cp, z0, k, tl.times);
        for (int m = 0; m < samples; ++m) {
          if (tl.stop != StopReason::Completed && tl.times[m] > tl.t_reached)
            break;
          const LocalPoint st = local_state(tl, m);
          worst_cross = std::max(
              worst_cross, (st.p_hat - pp[m]).cwiseAbs().maxCoeff());
        }
        const Trajectory tg =
            global_ode(cp, z0, k, {0.0, 1.0}, 5e-12, samples);
        worst_drift = std::max(worst_drift, tg.conserved_drift());
        for (int m = 0; m < samples; ++m) {
          const GlobalPoint gz = global_state(tg, m);
          worst_cross = std::max(
              worst_cross,
              (p_hat_of_z(cp, gz) - pp[m]).cwiseAbs().maxCoeff());
        }
        ++count;
      }
    }
    // completeness across a vanishing component: start on the locus, with
    // small moduli so the absolute drift bound measures the crossing rather
    // than the overall energy scale
    GlobalPoint zc;
    zc.z = CVector(n);
    for (int j = 0; j < n; ++j)
      zc.z[j] = s.uniform(0.1, 0.4) *
                std::exp(Complex(0.0, s.uniform(-M_PI, M_PI)));
    zc.z[0] = 0.0;
    const Trajectory tc = global_ode(cp, zc, 1, {0.0, 1.0}, 1e-10, samples);
    double h1_0 = tc.conserved(0, 0);
    for (int m = 0; m < samples; ++m)
      worst_crossing =
          std::max(worst_crossing, std::abs(tc.conserved(m, 0) - h1_0));
    ++count;
  }
  std::ostringstream note;
  note << "cross " << worst_cross << ", drift " << worst_drift << ", crossing "
       << worst_crossing;
  SuiteResult r = make_result("dynamics-cross-validation", count, worst_cross,
                              cfg.tol.cross_method, note.str());
  r.pass = worst_cross <= cfg.tol.cross_method &&
           worst_drift <= cfg.tol.conserved_drift &&
           worst_crossing <= cfg.tol.crossing_drift;
  return r;
}

SuiteResult suite_sutherland(const VerifyConfig& cfg) {
  double worst_dev = 0.0;  // deviation of the halving ratio from 2
  int count = 0;
  const struct {
    int n;
    double q[3], p[3];
  } pts[] = {
      {1, {0.9, 0, 0}, {0.6, 0, 0}},
      {2, {1.2, 0.7, 0}, {0.4, -0.8, 0}},
      {3, {1.3, 0.9, 0.5}, {0.4, -0.7, 0.2}},
  };
  bool ok = true;
  std::ostringstream note;
  for (const auto& tc : pts) {
    CouplingParams cp = cfg.params;
    cp.n = tc.n;
    RVector q(tc.n), p(tc.n);
    for (int j = 0; j < tc.n; ++j) {
      q[j] = tc.q[j];
      p[j] = tc.p[j];
    }
    const double r1 = sutherland_residual(cp, q, p, 1e-2);
    const double r2 = sutherland_residual(cp, q, p, 5e-3);
    const double ratio = r1 / r2;
    ok = ok && ratio >= 1.6 && ratio <= 2.4;
    worst_dev = std::max(worst_dev, std::abs(ratio - 2.0));
    note << "n=" << tc.n << " ratio " << ratio << "; ";
    ++count;
  }
  SuiteResult r =
      make_result("sutherland-limit", count, worst_dev, 0.4, note.str());
  r.pass = ok;
  return r;
}

SuiteResult suite_vdiejen(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 8);
  int count = 0;
  bool ok = true;
  double worst_ratio_floor = 1e300;
  double n1_floor = 0.0;
  for (int n : {1, 2}) {
    CouplingParams cp = cfg.params;
    cp.n = n;
    for (int i = 0; i < 5; ++i) {
      const LocalPoint pt = s.interior_point(cp, 0.3, 0.6);
      const double r10 = vdiejen_residual(cp, pt, 10.0);
      const double r15 = vdiejen_residual(cp, pt, 15.0);
      const double ratio = std::abs(r10) / std::max(std::abs(r15), 1e-300);
      worst_ratio_floor = std::min(worst_ratio_floor, ratio);
      ok = ok && ratio >= 50.0;
      if (n == 1) n1_floor = std::max(n1_floor, std::abs(r15));
      ++count;
    }
  }
  ok = ok && n1_floor < 1e-8;  // the one-particle shift matches to the floor
  std::ostringstream note;
  note << "min decay ratio " << worst_ratio_floor << ", n=1 floor " << n1_floor;
  SuiteResult r = make_result("vandiejen-limit", count,
                              1.0 / worst_ratio_floor, 1.0 / 50.0, note.str());
  r.pass = ok;
  return r;
}

SuiteResult suite_schneider(const VerifyConfig& cfg) {
  Sampler s(cfg.seed + 9);
  int count = 0;
  bool ok = true;
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    const int n = 2 + (i % 2);
    CouplingParams cp = cfg.params;
    cp.n = n;
    RVector Q(n), P(n);
    Q[0] = s.uniform(0.8, 1.3);
    for (int j = 1; j < n; ++j)
      Q[j] = Q[j - 1] - std::abs(cp.x) / 2 - s.uniform(0.2, 0.6);
    for (int j = 0; j < n; ++j) P[j] = s.uniform(-M_PI, M_PI);
    const double r3 = std::abs(schneider_residual(cp, Q, P, 3.0));
    const double r6 = std::abs(schneider_residual(cp, Q, P, 6.0));
    const double r9 = std::abs(schneider_residual(cp, Q, P, 9.0));
    ok = ok && r3 > r6 && r6 > r9;
    worst = std::max(worst, r9);
    ++count;
  }
  std::ostringstream note;
  note << (ok ? "strictly decreasing" : "NOT strictly decreasing")
       << ", final residual " << worst;
  SuiteResult r = make_result("schneider-limit", count, ok ? 0.0 : 1.0, 0.5,
                              note.str());
  r.pass = ok;
  return r;
}

}  // namespace

std::vector<SuiteResult> run_verification(const VerifyConfig& cfg) {
  cfg.params.validate();
  using SuiteFn = SuiteResult (*)(const VerifyConfig&);
  const SuiteFn suites[] = {
      suite_constraint, suite_identities,    suite_lemma_gauge,
      suite_appendix_oracle, suite_symplectic, suite_integrability,
      suite_dynamics,   suite_sutherland,    suite_vdiejen,
      suite_schneider,
  };
  const int count = static_cast<int>(std::size(suites));
  std::vector<SuiteResult> out(count);
  const int workers = std::clamp(cfg.workers, 1, count);
  if (workers == 1) {
    for (int i = 0; i < count; ++i) out[i] = suites[i](cfg);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        out[i] = suites[i](cfg);
    });
  for (auto& t : pool) t.join();
  return out;
}

bool all_pass(const std::vector<SuiteResult>& results) {
  return std::all_of(results.begin(), results.end(),
                     [](const SuiteResult& r) { return r.pass; });
}

std::string report_json(const std::vector<SuiteResult>& results,
                        const VerifyConfig& cfg) {
  nlohmann::ordered_json j;
  j["params"] = {{"n", cfg.params.n},
                 {"x", cfg.params.x},
                 {"u", cfg.params.u},
                 {"v", cfg.params.v}};
  j["seed"] = cfg.seed;
  j["sample_scale"] = cfg.sample_scale;
  j["suites"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    nlohmann::ordered_json s;
    s["name"] = r.name;
    s["samples"] = r.samples;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", r.max_residual);
    s["max_residual"] = std::string(buf);
    std::snprintf(buf, sizeof buf, "%.17g", r.tolerance);
    s["tolerance"] = std::string(buf);
    s["pass"] = r.pass;
    if (!r.note.empty()) s["note"] = r.note;
    j["suites"].push_back(s);
  }
  j["pass"] = all_pass(results);
  return j.dump(2) + "\n";
}

}  // namespace bcnd
