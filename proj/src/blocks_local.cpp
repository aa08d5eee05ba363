#include "bcnd/blocks_local.hpp"

#include <cmath>
#include <sstream>

namespace bcnd {

namespace {

// Non-negative square root with a small roundoff allowance at the chamber
// walls; anything more negative is a genuine domain violation.
double guarded_sqrt(double radicand, const char* what) {
  if (radicand < -1e-12) {
    std::ostringstream os;
    os << "negative radicand in " << what << ": " << radicand;
    throw DomainViolation(os.str());
  }
  return std::sqrt(std::max(radicand, 0.0));
}

void check_chamber(double x, const RVector& p_hat, const char* what) {
  if (!in_closed_chamber(x, p_hat, 1e-10)) {
    std::ostringstream os;
    os << what << ": position is outside the closed chamber";
    throw DomainViolation(os.str());
  }
}

}  // namespace

int pivot_index(double x, int n) { return x > 0 ? n - 1 : 0; }

RMatrix nu_matrix(double x, int n) {
  RMatrix m = RMatrix::Identity(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      m(j, k) = (1.0 - std::exp(-x)) * std::exp((k - j) * x / 2);
  return m;
}

RVector v_vector(double x, int n) {
  if (x == 0.0) throw ZeroDeformation("v(x) undefined at x = 0");
  const double c = std::sqrt(n * (std::exp(x) - 1.0) / (1.0 - std::exp(-n * x)));
  RVector v(n);
  for (int j = 0; j < n; ++j) v[j] = c * std::exp(-(j + 1) * x / 2);
  return v;
}

RVector v_hat_vector(double x, int n) {
  if (x == 0.0) throw ZeroDeformation("v_hat(x) undefined at x = 0");
  const double sgn = x > 0 ? 1.0 : -1.0;
  const double c = std::sqrt(sgn * std::exp(-x) * (std::exp(n * x) - 1.0) / n);
  return c * v_vector(x, n);
}

RVector r_vector(double x, const RVector& p_hat) {
  const int n = static_cast<int>(p_hat.size());
  check_chamber(x, p_hat, "r vector");
  const double pref = (1.0 - std::exp(-x)) / (1.0 - std::exp(-n * x));
  RVector r(n);
  for (int j = 0; j < n; ++j) {
    double prod = pref;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double d = 2.0 * (p_hat[j] - p_hat[k]);
      prod *= (1.0 - std::exp(d - x)) / (1.0 - std::exp(d));
    }
    r[j] = guarded_sqrt(prod, "r vector");
  }
  return r;
}

RMatrix theta_matrix(double x, const RVector& p_hat) {
  const int n = static_cast<int>(p_hat.size());
  check_chamber(x, p_hat, "theta matrix");
  RMatrix th(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) {
        double prod = 1.0;
        for (int m = 0; m < n; ++m) {
          if (m == j) continue;
          const double d = p_hat[j] - p_hat[m];
          prod *= std::sinh(d - x / 2) * std::sinh(d + x / 2) /
                  (std::sinh(d) * std::sinh(d));
        }
        th(j, j) = guarded_sqrt(prod, "theta diagonal");
      } else {
        double prod = 1.0;
        for (int m = 0; m < n; ++m) {
          if (m == j || m == k) continue;
          const double dj = p_hat[j] - p_hat[m];
          const double dk = p_hat[k] - p_hat[m];
          prod *= (std::sinh(dj - x / 2) * std::sinh(dk + x / 2)) /
                  (std::sinh(dj) * std::sinh(dk));
        }
        th(j, k) = std::sinh(x / 2) / std::sinh(p_hat[k] - p_hat[j]) *
                   guarded_sqrt(prod, "theta off-diagonal");
      }
    }
  }
  return th;
}

namespace {

// Rotation carrying the pivot axis e_a to the unit vector w (w_a >= 0):
// block form [[I - ww^T/(1+w_a), w], [-w^T, w_a]] in pivot-last ordering.
RMatrix axis_rotation(const RVector& w, int a) {
  const int n = static_cast<int>(w.size());
  RMatrix m(n, n);
  m(a, a) = w[a];
  for (int i = 0; i < n; ++i) {
    if (i == a) continue;
    m(i, a) = w[i];
    m(a, i) = -w[i];
    for (int j = 0; j < n; ++j) {
      if (j == a) continue;
      m(i, j) = (i == j ? 1.0 : 0.0) - w[i] * w[j] / (1.0 + w[a]);
    }
  }
  return m;
}

}  // namespace

RMatrix zeta_matrix(double x, const RVector& p_hat) {
  return axis_rotation(r_vector(x, p_hat),
                       pivot_index(x, static_cast<int>(p_hat.size())));
}

RMatrix kappa_matrix(double x, int n) {
  const RVector w = v_vector(x, n) / std::sqrt(double(n));
  return axis_rotation(w, pivot_index(x, n));
}

RMatrix rho_matrix(const CouplingParams& cp, const RVector& p_hat) {
  return kappa_matrix(cp.x, cp.n) * zeta_matrix(cp.x, p_hat).transpose();
}

CMatrix alpha_matrix(const CouplingParams& cp, const LocalPoint& pt) {
  cp.validate();
  const int n = cp.n;
  check_chamber(cp.x, pt.p_hat, "alpha matrix");
  const RMatrix th = theta_matrix(-cp.x, pt.p_hat);
  CMatrix a(n, n);
  for (int j = 0; j < n; ++j) {
    const double mj2 = std::exp(-2 * cp.u) * std::exp(-2 * pt.p_hat[j]) -
                       std::exp(-2 * cp.v);
    if (mj2 < -1e-12)
      throw CouplingViolation("alpha radicand negative: needs u < v, p1 <= 0");
    const double mj = std::sqrt(std::max(mj2, 0.0));
    const double nj =
        guarded_sqrt(std::exp(-2 * pt.p_hat[j]) - 1.0, "alpha second term");
    const Complex phase = std::exp(Complex(0.0, pt.q_hat[j]));
    for (int k = 0; k < n; ++k) {
      Complex val = phase * mj * th(j, k);
      if (j == k) val -= std::exp(cp.v) * nj;
      a(j, k) = -kImag * val;
    }
  }
  return a;
}

CMatrix K_local(const CouplingParams& cp, const LocalPoint& pt) {
  cp.validate();
  const int n = cp.n;
  if (pt.n() != n) throw DomainViolation("point size does not match n");
  const RMatrix rho = rho_matrix(cp, pt.p_hat);
  const CMatrix a = alpha_matrix(cp, pt);

  RVector c(n), s(n);
  for (int j = 0; j < n; ++j) {
    s[j] = std::exp(pt.p_hat[j]);
    c[j] = guarded_sqrt(1.0 - s[j] * s[j], "Cartan cosine");
  }
  // blockdiag(rho, 1) * [[c, i s], [i s, c]] * [[e^-v, alpha], [0, e^v]]
  CMatrix B1 = CMatrix::Zero(2 * n, 2 * n);
  B1.topLeftCorner(n, n) = rho.cast<Complex>();
  B1.bottomRightCorner(n, n) = CMatrix::Identity(n, n);
  CMatrix B2 = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    B2(j, j) = c[j];
    B2(j, j + n) = kImag * s[j];
    B2(j + n, j) = kImag * s[j];
    B2(j + n, j + n) = c[j];
  }
  CMatrix B3 = CMatrix::Zero(2 * n, 2 * n);
  B3.topLeftCorner(n, n) = std::exp(-cp.v) * CMatrix::Identity(n, n);
  B3.topRightCorner(n, n) = a;
  B3.bottomRightCorner(n, n) = std::exp(cp.v) * CMatrix::Identity(n, n);
  return B1 * B2 * B3;
}

GlobalPoint z_of_local(const CouplingParams& cp, const LocalPoint& pt) {
  const int n = cp.n;
  check_chamber(cp.x, pt.p_hat, "local-to-global map");
  GlobalPoint gp;
  gp.z = CVector(n);
  double phase_acc = 0.0;  // sum of q_hat[j+1..n-1]
  for (int j = n - 2; j >= 0; --j) {
    phase_acc += pt.q_hat[j + 1];
    const double gap = pt.p_hat[j] - pt.p_hat[j + 1] - std::abs(cp.x) / 2;
    gp.z[j] = guarded_sqrt(gap, "gap coordinate") *
              std::exp(Complex(0.0, phase_acc));
  }
  double total = 0.0;
  for (int j = 0; j < n; ++j) total += pt.q_hat[j];
  gp.z[n - 1] = guarded_sqrt(1.0 - std::exp(pt.p_hat[0]), "disk coordinate") *
                std::exp(Complex(0.0, total));
  return gp;
}

RVector p_hat_of_z(const CouplingParams& cp, const GlobalPoint& gp) {
  check_global_point(gp);
  const int n = cp.n;
  RVector p(n);
  p[0] = std::log1p(-std::norm(gp.z[n - 1]));
  for (int j = 1; j < n; ++j)
    p[j] = p[j - 1] - std::norm(gp.z[j - 1]) - std::abs(cp.x) / 2;
  return p;
}

LocalPoint local_of_z(const CouplingParams& cp, const GlobalPoint& gp) {
  check_global_point(gp);
  const int n = cp.n;
  for (int j = 0; j < n; ++j)
    if (gp.z[j] == Complex(0.0, 0.0))
      throw OffDenseLocus("angles are undefined where a component vanishes");
  LocalPoint pt;
  pt.p_hat = p_hat_of_z(cp, gp);
  pt.q_hat = RVector(n);
  if (n == 1) {
    pt.q_hat[0] = std::arg(gp.z[0]);
    return pt;
  }
  pt.q_hat[n - 1] = std::arg(gp.z[n - 2]);
  for (int m = n - 2; m >= 1; --m)
    pt.q_hat[m] = std::arg(gp.z[m - 1] * std::conj(gp.z[m]));
  pt.q_hat[0] = std::arg(gp.z[n - 1] * std::conj(gp.z[0]));
  return pt;
}

}  // namespace bcnd
