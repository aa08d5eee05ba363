#include "bcnd/sampling.hpp"

#include <cmath>

#include "bcnd/blocks_local.hpp"
#include "bcnd/linalg.hpp"

namespace bcnd {

double Sampler::uniform(double a, double b) {
  std::uniform_real_distribution<double> d(a, b);
  return d(rng_);
}

int Sampler::uniform_int(int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  return d(rng_);
}

LocalPoint Sampler::interior_point(const CouplingParams& cp, double lo,
                                   double hi) {
  const int n = cp.n;
  LocalPoint pt;
  pt.p_hat = RVector(n);
  pt.q_hat = RVector(n);
  pt.p_hat[0] = -uniform(0.1, 0.6);
  for (int k = 1; k < n; ++k)
    pt.p_hat[k] = pt.p_hat[k - 1] - std::abs(cp.x) / 2 - uniform(lo, hi);
  for (int k = 0; k < n; ++k) pt.q_hat[k] = uniform(-M_PI, M_PI);
  return pt;
}

LocalPoint Sampler::shallow_interior_point(const CouplingParams& cp) {
  const int n = cp.n;
  LocalPoint pt;
  pt.p_hat = RVector(n);
  pt.q_hat = RVector(n);
  pt.p_hat[0] = -uniform(0.03, 0.12);
  for (int k = 1; k < n; ++k)
    pt.p_hat[k] = pt.p_hat[k - 1] - std::abs(cp.x) / 2 - uniform(0.02, 0.10);
  for (int k = 0; k < n; ++k) pt.q_hat[k] = uniform(-M_PI, M_PI);
  return pt;
}

GlobalPoint Sampler::global_point(const CouplingParams& cp, int zeros) {
  const int n = cp.n;
  GlobalPoint gp;
  gp.z = CVector(n);
  for (int j = 0; j < n - 1; ++j) {
    const double rho = uniform(0.15, 0.75);
    const double phi = uniform(-M_PI, M_PI);
    gp.z[j] = rho * std::exp(Complex(0.0, phi));
  }
  {
    const double rho = uniform(0.1, 0.85);
    const double phi = uniform(-M_PI, M_PI);
    gp.z[n - 1] = rho * std::exp(Complex(0.0, phi));
  }
  for (int i = 0; i < std::min(zeros, n); ++i) gp.z[uniform_int(0, n - 1)] = 0.0;
  return gp;
}

CMatrix Sampler::unitary(int m) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = Complex(g(rng_), g(rng_));
  Eigen::HouseholderQR<CMatrix> qr(A);
  CMatrix Q = qr.householderQ();
  const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < m; ++j) {
    const Complex d = R(j, j);
    Q.col(j) *= d / std::abs(d);  // fix the phase ambiguity
  }
  return Q;
}

CMatrix Sampler::unimodular(int m) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (int attempt = 0; attempt < 64; ++attempt) {
    CMatrix A(m, m);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        A(i, j) = Complex(g(rng_), g(rng_)) + (i == j ? 2.0 : 0.0);
    const Complex det = Eigen::PartialPivLU<CMatrix>(A).determinant();
    if (std::abs(det) < 1e-6) continue;
    A /= std::pow(det, 1.0 / m);
    Eigen::JacobiSVD<CMatrix> svd(A);
    if (svd.singularValues()(0) / svd.singularValues()(m - 1) > 1e4) continue;
    return A;
  }
  throw Error("failed to draw a well-conditioned unimodular matrix");
}

CMatrix Sampler::hermitian(int m) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = Complex(g(rng_), g(rng_));
  return 0.5 * (A + CMatrix(A.adjoint()));
}

std::pair<CMatrix, CMatrix> Sampler::gauge_pair(const CouplingParams& cp) {
  const int n = cp.n;
  // eta_L(1) = kappa D kappa^{-1} fixes the v_hat line for any diagonal
  // unitary D; eta_L(2) arbitrary. Both normalized to det 1.
  CVector d(n);
  for (int j = 0; j < n; ++j)
    d[j] = std::exp(Complex(0.0, uniform(-M_PI, M_PI)));
  const RMatrix kap = kappa_matrix(cp.x, n);
  const CMatrix little =
      kap.cast<Complex>() * d.asDiagonal() * kap.transpose().cast<Complex>();
  CMatrix v2 = unitary(n);
  Complex det = d.prod() * Eigen::PartialPivLU<CMatrix>(v2).determinant();
  v2 *= std::pow(1.0 / det, 1.0 / n);

  CMatrix eL = CMatrix::Zero(2 * n, 2 * n);
  eL.topLeftCorner(n, n) = little;
  eL.bottomRightCorner(n, n) = v2;

  CMatrix r1 = unitary(n), r2 = unitary(n);
  det = Eigen::PartialPivLU<CMatrix>(r1).determinant() *
        Eigen::PartialPivLU<CMatrix>(r2).determinant();
  r2 *= std::pow(1.0 / det, 1.0 / n);
  CMatrix eR = CMatrix::Zero(2 * n, 2 * n);
  eR.topLeftCorner(n, n) = r1;
  eR.bottomRightCorner(n, n) = r2;
  return {eL, eR};
}

}  // namespace bcnd
