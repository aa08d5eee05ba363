#include "bcnd/blocks_global.hpp"

#include <cmath>

#include "bcnd/blocks_local.hpp"

namespace bcnd {

double j_factor(double y) {
  if (std::abs(y) < 1e-4) {
    const double y2 = y * y;
    return 1.0 + y2 / 12.0 + y2 * y2 / 1440.0 + y2 * y2 * y2 / 24192.0;
  }
  return std::sqrt(std::sinh(y) / y);
}

namespace {

double norm_sum(const CVector& z, int lo, int hi) {  // sum |z_l|^2, l in [lo, hi)
  double s = 0.0;
  for (int l = lo; l < hi; ++l) s += std::norm(z[l]);
  return s;
}

}  // namespace

double q_factor(double x, const GlobalPoint& gp, int j, int k) {
  if (j == k) throw DomainViolation("q factor needs distinct indices");
  if (j > k) return q_factor(-x, gp, k, j);
  const double S = norm_sum(gp.z, j, k) + (k - j) * std::abs(x) / 2;
  const double rad = std::sinh(S - x / 2) / std::sinh(S);
  return std::sqrt(std::max(rad, 0.0));  // >= 0 up to roundoff at the walls
}

RVector r_hat_vector(double x, const GlobalPoint& gp) {
  check_global_point(gp);
  const int n = gp.n();
  const double pref = std::sqrt(std::sinh(x / 2) / std::sinh(n * x / 2));
  RVector r(n);
  for (int j = 0; j < n; ++j) {
    double prod = pref;
    for (int k = 0; k < n; ++k)
      if (k != j) prod *= q_factor(x, gp, j, k);
    r[j] = prod;
  }
  return r;
}

CMatrix zeta_hat(double x, const GlobalPoint& gp) {
  check_global_point(gp);
  const int n = gp.n();
  const CVector& z = gp.z;
  const int a = pivot_index(x, n);
  const double pref = std::sqrt(std::sinh(x / 2) / std::sinh(n * x / 2));
  const RVector rh = r_hat_vector(x, gp);

  CMatrix m = CMatrix::Zero(n, n);
  m(a, a) = rh[a];
  if (x > 0) {
    for (int j = 0; j < n - 1; ++j) {
      Complex val = pref * z[j] * j_factor(std::norm(z[j])) /
                    std::sqrt(std::sinh(std::norm(z[j]) + x / 2));
      for (int l = 0; l < n; ++l)
        if (l != j && l != j + 1) val *= q_factor(x, gp, j, l);
      m(j, a) = val;
    }
  } else {
    for (int j = 1; j < n; ++j) {
      Complex val = pref * std::conj(z[j - 1]) * j_factor(std::norm(z[j - 1])) /
                    std::sqrt(std::sinh(std::norm(z[j - 1]) - x / 2));
      for (int l = 0; l < n; ++l)
        if (l != j - 1 && l != j) val *= q_factor(x, gp, j, l);
      m(j, a) = val;
    }
  }
  for (int j = 0; j < n; ++j)
    if (j != a) m(a, j) = -std::conj(m(j, a));
  for (int j = 0; j < n; ++j) {
    if (j == a) continue;
    for (int k = 0; k < n; ++k) {
      if (k == a) continue;
      m(j, k) = (j == k ? 1.0 : 0.0) -
                m(j, a) * std::conj(m(k, a)) / (1.0 + rh[a]);
    }
  }
  return m;
}

namespace {

// The positive-deformation branch; entries carry the phases of z_j zbar_{k-1}.
CMatrix theta_hat_pos(double x, const GlobalPoint& gp) {
  const int n = gp.n();
  const CVector& z = gp.z;
  const CMatrix zx = zeta_hat(x, gp);
  const CMatrix zm = zeta_hat(-x, gp);
  CMatrix m(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (k == j + 1) {
        double val = -std::sinh(x / 2) / std::sinh(std::norm(z[j]) + x / 2);
        for (int l = 0; l < n; ++l)
          if (l != j && l != j + 1)
            val *= q_factor(x, gp, j, l) * q_factor(-x, gp, j + 1, l);
        m(j, k) = val;
      } else {
        const int lo = std::min(j, k), hi = std::max(j, k);
        const double D = norm_sum(z, lo, hi) + std::abs(k - j - 1) * x / 2;
        const double sgn = k > j + 1 ? 1.0 : -1.0;
        m(j, k) = -sgn * std::sinh(n * x / 2) * zx(j, n - 1) * zm(k, 0) /
                  std::sinh(D);
      }
    }
  }
  return m;
}

}  // namespace

CMatrix theta_hat(double x, const GlobalPoint& gp) {
  check_global_point(gp);
  if (x > 0) return theta_hat_pos(x, gp);
  return theta_hat_pos(-x, gp).adjoint();
}

CVector gamma_hat_diag(double x, const GlobalPoint& gp) {
  check_global_point(gp);
  const int n = gp.n();
  CVector g(n);
  const double zn2 = std::norm(gp.z[n - 1]);
  g[0] = gp.z[n - 1] * std::sqrt(2.0 - zn2);
  for (int j = 1; j < n; ++j) {
    const double S = norm_sum(gp.z, 0, j) + j * std::abs(x) / 2;
    const double e = (1.0 - zn2) * std::exp(-S);  // = e^{p_hat_j}
    g[j] = std::sqrt(std::max(1.0 - e * e, 0.0));
  }
  return g;
}

CMatrix gamma_hat(double x, const GlobalPoint& gp) {
  return CMatrix(gamma_hat_diag(x, gp).asDiagonal());
}

CMatrix alpha_hat(const CouplingParams& cp, const GlobalPoint& gp) {
  cp.validate();
  check_global_point(gp);
  const int n = cp.n;
  const RVector p = p_hat_of_z(cp, gp);
  // Matrix multiplying the square-root factor: theta_hat(-x, z) for x > 0,
  // its entrywise conjugate for x < 0 (the branch that keeps the section
  // gauge-equivalent to the local one).
  CMatrix th = theta_hat_pos(std::abs(cp.x), gp);
  CMatrix m = cp.x > 0 ? CMatrix(th.adjoint()) : CMatrix(th.conjugate());
  const CVector g = gamma_hat_diag(cp.x, gp);
  CMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    const double mj2 =
        std::exp(-2 * cp.u) * std::exp(-2 * p[j]) - std::exp(-2 * cp.v);
    if (mj2 < -1e-12) throw CouplingViolation("alpha_hat radicand negative");
    const double mj = std::sqrt(std::max(mj2, 0.0));
    for (int k = 0; k < n; ++k) {
      Complex val = mj * m(j, k);
      if (j == k) val -= std::exp(cp.v) * std::exp(-p[j]) * std::conj(g[j]);
      a(j, k) = -kImag * val;
    }
  }
  return a;
}

std::pair<CVector, CVector> tau_factors(double x, const RVector& q_hat) {
  const int n = static_cast<int>(q_hat.size());
  // suffix(i) = prod_{m=i}^{n-1} e^{i q_m}, suffix(n) = 1
  CVector suffix(n + 1);
  suffix[n] = 1.0;
  for (int i = n - 1; i >= 0; --i)
    suffix[i] = suffix[i + 1] * std::exp(Complex(0.0, q_hat[i]));
  CVector tau(n), taut(n);
  for (int i = 0; i < n; ++i) {
    tau[i] = suffix[i + 1];
    taut[i] = (i == 0) ? Complex(1.0) : suffix[i];
  }
  if (x < 0) {
    CVector t = tau, tt = taut;
    for (int i = 0; i < n; ++i) {
      tau[i] = std::conj(tt[i]);
      taut[i] = std::conj(t[i]);
    }
  }
  return {tau, taut};
}

CMatrix K_global(const CouplingParams& cp, const GlobalPoint& gp) {
  cp.validate();
  check_global_point(gp);
  const int n = cp.n;
  if (gp.n() != n) throw DomainViolation("point size does not match n");

  const CMatrix zh = zeta_hat(cp.x, gp);
  const RVector p = p_hat_of_z(cp, gp);
  const CVector g = gamma_hat_diag(cp.x, gp);
  const CMatrix a = alpha_hat(cp, gp);

  CMatrix B1 = CMatrix::Zero(2 * n, 2 * n);
  B1.topLeftCorner(n, n) = kappa_matrix(cp.x, n).cast<Complex>() * zh.adjoint();
  B1.bottomRightCorner(n, n) = CMatrix::Identity(n, n);

  CMatrix B2 = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    const double s = std::exp(p[j]);
    B2(j, j) = g[j];
    B2(j, j + n) = kImag * s;
    B2(j + n, j) = kImag * s;
    B2(j + n, j + n) = std::conj(g[j]);
  }

  CMatrix B3 = CMatrix::Zero(2 * n, 2 * n);
  B3.topLeftCorner(n, n) = std::exp(-cp.v) * CMatrix::Identity(n, n);
  B3.topRightCorner(n, n) = a;
  B3.bottomRightCorner(n, n) = std::exp(cp.v) * CMatrix::Identity(n, n);

  return B1 * B2 * B3;
}

std::pair<CMatrix, CMatrix> section_gauge_factors(const CouplingParams& cp,
                                                  const LocalPoint& pt) {
  const int n = cp.n;
  auto [tau, taut] = tau_factors(cp.x, pt.q_hat);
  const RMatrix kap = kappa_matrix(cp.x, n);
  const CMatrix little =
      kap.cast<Complex>() * tau.asDiagonal() * kap.transpose().cast<Complex>();
  CVector phase(n);
  for (int j = 0; j < n; ++j)
    phase[j] = taut[j] * std::exp(Complex(0.0, -pt.q_hat[j]));

  CMatrix eL = CMatrix::Zero(2 * n, 2 * n);
  eL.topLeftCorner(n, n) = little;
  eL.bottomRightCorner(n, n) = CMatrix(phase.asDiagonal());
  CMatrix eR = CMatrix::Zero(2 * n, 2 * n);
  eR.topLeftCorner(n, n) = CMatrix(phase.asDiagonal());
  eR.bottomRightCorner(n, n) = CMatrix(tau.asDiagonal());
  return {eL, eR};
}

}  // namespace bcnd
