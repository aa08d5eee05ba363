#include "bcnd/hamiltonians.hpp"

#include <cmath>
#include <sstream>

#include "bcnd/blocks_global.hpp"
#include "bcnd/blocks_local.hpp"

namespace bcnd {

namespace {

double domain_sqrt(double radicand, const char* what) {
  if (radicand < -1e-12) {
    std::ostringstream os;
    os << "negative radicand in " << what << " (" << radicand << ")";
    throw DomainViolation(os.str());
  }
  return std::sqrt(std::max(radicand, 0.0));
}

}  // namespace

double h_main(const CouplingParams& cp, const LocalPoint& pt) {
  const int n = cp.n;
  const RVector& p = pt.p_hat;
  const double evu = std::exp(2 * (cp.v - cp.u));
  double total = 0.0;
  for (int j = 0; j < n; ++j)
    total += 0.5 * (std::exp(-2 * cp.u) + std::exp(2 * cp.v)) *
             std::exp(-2 * p[j]);
  for (int j = 0; j < n; ++j) {
    const double e2 = std::exp(-2 * p[j]);
    const double rad = 1.0 - (1.0 + evu) * e2 + evu * e2 * e2;
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double sh = std::sinh(p[j] - p[k]);
      prod *= 1.0 - std::pow(std::sinh(cp.x / 2) / sh, 2);
    }
    total -= std::cos(pt.q_hat[j]) * domain_sqrt(rad, "external factor") *
             domain_sqrt(prod, "pair factor");
  }
  return total;
}

LocalPoint darboux_change(const RVector& q, const RVector& p) {
  const int n = static_cast<int>(q.size());
  LocalPoint pt;
  pt.p_hat = RVector(n);
  pt.q_hat = RVector(n);
  for (int j = 0; j < n; ++j) {
    if (!(q[j] > 0.0 && q[j] < M_PI / 2))
      throw DomainViolation("Darboux chart requires q in (0, pi/2)");
    pt.p_hat[j] = std::log(std::sin(q[j]));
    pt.q_hat[j] = p[j] * std::tan(q[j]);
  }
  return pt;
}

double h_cal1(const CouplingParams& cp, const RVector& q, const RVector& p) {
  const int n = cp.n;
  const double evu = std::exp(2 * (cp.v - cp.u));
  double total = 0.0;
  for (int j = 0; j < n; ++j) {
    const double s2 = std::pow(std::sin(q[j]), 2);
    if (s2 == 0.0) throw DomainViolation("sin q vanishes");
    total += 0.5 * (std::exp(-2 * cp.u) + std::exp(2 * cp.v)) / s2;
  }
  for (int j = 0; j < n; ++j) {
    const double s2 = std::pow(std::sin(q[j]), 2);
    const double rad =
        1.0 - (1.0 + evu) / s2 + 4.0 * evu / (4.0 * s2 - std::pow(std::sin(2 * q[j]), 2));
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const double num = 2.0 * std::sinh(cp.x / 2) * std::sin(q[j]) * std::sin(q[k]);
      const double den = std::sin(q[j] - q[k]) * std::sin(q[j] + q[k]);
      prod *= 1.0 - (num / den) * (num / den);
    }
    total -= std::cos(p[j] * std::tan(q[j])) *
             domain_sqrt(rad, "external factor") * domain_sqrt(prod, "pair factor");
  }
  return total;
}

double h_beta(const CouplingParams& cp, const RVector& q, const RVector& p,
              double beta) {
  CouplingParams scaled = cp;
  scaled.x = beta * cp.x;
  scaled.u = beta * cp.u;
  scaled.v = beta * cp.v;
  try {
    return h_cal1(scaled, q, RVector(beta * p));
  } catch (const DomainViolation&) {
    std::ostringstream os;
    os << "scaled domain violated at beta = " << beta;
    throw DomainViolation(os.str());
  }
}

SutherlandCouplings sutherland_couplings(const CouplingParams& cp) {
  cp.validate();
  return {cp.x * cp.x / 4.0, 2.0 * cp.u * cp.v,
          2.0 * (cp.v - cp.u) * (cp.v - cp.u)};
}

double sutherland_h(const SutherlandCouplings& sc, const RVector& q,
                    const RVector& p) {
  const int n = static_cast<int>(q.size());
  double total = 0.5 * p.squaredNorm();
  for (int j = 0; j < n; ++j) {
    total += sc.gamma1 / std::pow(std::sin(q[j]), 2);
    total += sc.gamma2 / std::pow(std::sin(2 * q[j]), 2);
  }
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      total += sc.gamma / std::pow(std::sin(q[j] - q[k]), 2) +
               sc.gamma / std::pow(std::sin(q[j] + q[k]), 2);
  return total;
}

double sutherland_residual(const CouplingParams& cp, const RVector& q,
                           const RVector& p, double beta) {
  const double hb = h_beta(cp, q, p, beta);
  return (hb - cp.n) / (beta * beta) -
         sutherland_h(sutherland_couplings(cp), q, p);
}

namespace {

CMatrix lax_from_alpha(double v, const CMatrix& a) {
  const int n = static_cast<int>(a.rows());
  CMatrix L(2 * n, 2 * n);
  L.topLeftCorner(n, n) = std::exp(2 * v) * CMatrix::Identity(n, n);
  L.topRightCorner(n, n) = -std::exp(v) * a;
  L.bottomLeftCorner(n, n) = -std::exp(v) * a.adjoint();
  L.bottomRightCorner(n, n) =
      std::exp(-2 * v) * CMatrix::Identity(n, n) + a.adjoint() * a;
  return L;
}

double trace_power_over_2k(const CMatrix& L, int k) {
  CMatrix P = L;
  for (int i = 1; i < k; ++i) P = P * L;
  return P.trace().real() / (2.0 * k);
}

}  // namespace

CMatrix lax_matrix(const CouplingParams& cp, const GlobalPoint& gp) {
  return lax_from_alpha(cp.v, alpha_hat(cp, gp));
}

CMatrix lax_matrix_local(const CouplingParams& cp, const LocalPoint& pt) {
  return lax_from_alpha(cp.v, alpha_matrix(cp, pt));
}

double h_k(const CouplingParams& cp, const GlobalPoint& gp, int k) {
  if (k < 1 || k > cp.n) throw DomainViolation("k must be in [1, n]");
  return trace_power_over_2k(lax_matrix(cp, gp), k);
}

double h_k_local(const CouplingParams& cp, const LocalPoint& pt, int k) {
  if (k < 1 || k > cp.n) throw DomainViolation("k must be in [1, n]");
  return trace_power_over_2k(lax_matrix_local(cp, pt), k);
}

RVector conserved_values(const CouplingParams& cp, const GlobalPoint& gp) {
  const CMatrix L = lax_matrix(cp, gp);
  RVector h(cp.n);
  CMatrix P = CMatrix::Identity(2 * cp.n, 2 * cp.n);
  for (int k = 1; k <= cp.n; ++k) {
    P = P * L;
    h[k - 1] = P.trace().real() / (2.0 * k);
  }
  return h;
}

RVector conserved_values_local(const CouplingParams& cp,
                               const LocalPoint& pt) {
  const CMatrix L = lax_matrix_local(cp, pt);
  RVector h(cp.n);
  CMatrix P = CMatrix::Identity(2 * cp.n, 2 * cp.n);
  for (int k = 1; k <= cp.n; ++k) {
    P = P * L;
    h[k - 1] = P.trace().real() / (2.0 * k);
  }
  return h;
}

// --- van Diejen ---

namespace {

Complex pot_v(Complex mu, Complex zz, double pole_tol) {
  const Complex s = std::sin(zz);
  if (std::abs(s) < pole_tol) throw PoleProximity("sin denominator near zero");
  return std::sin(mu + zz) / s;
}

Complex pot_w(const std::array<Complex, 5>& mu, Complex zz, double pole_tol) {
  const Complex s = std::sin(zz);
  const Complex c = std::cos(zz);
  if (std::abs(s) < pole_tol || std::abs(c) < pole_tol)
    throw PoleProximity("potential denominator near zero");
  return (std::sin(mu[1] + zz) / s) * (std::cos(mu[2] + zz) / c) *
         (std::sin(mu[3] + zz) / s) * (std::cos(mu[4] + zz) / c);
}

}  // namespace

Complex vdiejen_h_complex(const std::array<Complex, 5>& mu, const CVector& lam,
                          const CVector& th, double pole_tol) {
  const int n = static_cast<int>(lam.size());
  Complex total = 0.0;
  for (int j = 0; j < n; ++j) {
    Complex vp = pot_w(mu, lam[j], pole_tol);
    Complex vm = pot_w(mu, -lam[j], pole_tol);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      vp *= pot_v(mu[0], lam[j] + lam[k], pole_tol) *
            pot_v(mu[0], lam[j] - lam[k], pole_tol);
      vm *= pot_v(mu[0], -lam[j] + lam[k], pole_tol) *
            pot_v(mu[0], -lam[j] - lam[k], pole_tol);
    }
    // Half powers via the principal root of the product; the branch matches
    // the large-radius asymptotics where the product is positive.
    total += std::cosh(th[j]) * std::sqrt(vp * vm) - (vp + vm) / 2.0;
  }
  return total;
}

double vdiejen_h(const std::array<double, 5>& mu, const RVector& lam,
                 const RVector& th) {
  std::array<Complex, 5> muc;
  for (int i = 0; i < 5; ++i) muc[i] = mu[i];
  const Complex val =
      vdiejen_h_complex(muc, lam.cast<Complex>(), th.cast<Complex>());
  if (std::abs(val.imag()) > 1e-9)
    throw DomainViolation("van Diejen value has a non-real branch");
  return val.real();
}

double vdiejen_residual(const CouplingParams& cp, const LocalPoint& pt,
                        double R) {
  cp.validate();
  const int n = cp.n;
  CVector lam(n), th(n);
  for (int j = 0; j < n; ++j) {
    lam[j] = kImag * (pt.p_hat[j] + R);
    th[j] = kImag * pt.q_hat[j];
  }
  // Coupling branch reproducing the limit with shift sum_j cosh((j-1)x + 2u).
  const std::array<Complex, 5> mu = {
      -kImag * cp.x / 2.0,
      kImag * (cp.v - cp.u + R),
      -kImag * (cp.u + cp.v) + M_PI / 2.0,
      -kImag * R,
      Complex(M_PI / 2.0),
  };
  const Complex hvd = vdiejen_h_complex(mu, lam, th);
  if (std::abs(hvd.imag()) > 1e-9)
    throw DomainViolation("van Diejen limit combination is not real");
  double shift = 0.0;
  for (int j = 0; j < n; ++j) shift += std::cosh(j * cp.x + 2 * cp.u);
  return hvd.real() + h_main(cp, pt) - shift;
}

// --- Schneider ---

double schneider_h(const RVector& Q, const RVector& P, double x, double u) {
  const int n = static_cast<int>(Q.size());
  double total = 0.0;
  for (int j = 0; j < n; ++j)
    total += 0.5 * std::exp(-2 * u) * std::exp(2 * Q[j]);
  for (int j = 0; j < n; ++j) {
    double prod = 1.0;
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      prod *= 1.0 - std::pow(std::sinh(x / 2) / std::sinh(Q[j] - Q[k]), 2);
    }
    total -= std::cos(P[j]) * domain_sqrt(prod, "pair factor");
  }
  return total;
}

double schneider_residual(const CouplingParams& cp, const RVector& Q,
                          const RVector& P, double sigma) {
  CouplingParams shifted = cp;
  shifted.u = cp.u - sigma;
  shifted.v = cp.v - sigma;
  LocalPoint pt;
  pt.p_hat = RVector(-Q.array() + sigma);
  pt.q_hat = RVector(-P);
  return h_main(shifted, pt) - schneider_h(Q, P, cp.x, cp.u);
}

}  // namespace bcnd
