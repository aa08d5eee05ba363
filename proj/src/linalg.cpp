#include "bcnd/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace bcnd {

bool is_finite(const CMatrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
        return false;
  return true;
}

bool is_unitary(const CMatrix& g, double tol) {
  const CMatrix d = g.adjoint() * g - CMatrix::Identity(g.rows(), g.cols());
  return d.cwiseAbs().maxCoeff() <= tol;
}

CMatrix reverse_cholesky(const CMatrix& M) {
  const Eigen::Index m = M.rows();
  CMatrix F(m, m);  // flip-permuted M
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) F(i, j) = M(m - 1 - i, m - 1 - j);
  Eigen::LLT<CMatrix> llt(F);
  if (llt.info() != Eigen::Success)
    throw Singular("matrix is not positive definite");
  const CMatrix L = llt.matrixL();
  CMatrix U(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) U(i, j) = L(m - 1 - i, m - 1 - j);
  return U;  // upper triangular, positive diagonal, U U^dag = M
}

namespace {

void check_input(const CMatrix& K) {
  const Eigen::Index m = K.rows();
  if (m != K.cols() || m % 2 != 0)
    throw DomainViolation("expected a square matrix of even size");
  if (!is_finite(K)) throw DomainViolation("matrix has non-finite entries");
  Eigen::JacobiSVD<CMatrix> svd(K);
  const double smin = svd.singularValues()(m - 1);
  const double smax = svd.singularValues()(0);
  if (smin <= 0 || smax / smin > 1e12)
    throw NonInvertible("condition number exceeds 1e12");
  const Complex det = Eigen::PartialPivLU<CMatrix>(K).determinant();
  if (std::abs(det - 1.0) > 1e-8)
    throw NotUnimodular("determinant differs from 1 beyond 1e-8");
}

}  // namespace

IwasawaFactors iwasawa_right(const CMatrix& K) {
  check_input(K);
  CMatrix M = (K.adjoint() * K).inverse();
  M = 0.5 * (M + CMatrix(M.adjoint()));
  IwasawaFactors f;
  f.b = reverse_cholesky(M);
  f.g = K * f.b;
  return f;
}

IwasawaFactors iwasawa_left(const CMatrix& K) {
  check_input(K);
  CMatrix M = K * K.adjoint();
  M = 0.5 * (M + CMatrix(M.adjoint()));
  IwasawaFactors f;
  f.b = reverse_cholesky(M);
  f.g = K.inverse() * f.b;  // K = b g^{-1}
  return f;
}

RVector cartan_position(const CMatrix& g, bool require_positive,
                        double unitary_tol) {
  if (!is_unitary(g, unitary_tol)) throw NotUnitary("matrix is not unitary");
  const Eigen::Index n = g.rows() / 2;
  const CMatrix D = g.topLeftCorner(n, n);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(D * D.adjoint());
  RVector lam = es.eigenvalues();  // ascending
  RVector q(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double l = std::clamp(lam[j], 0.0, 1.0);
    q[j] = std::acos(std::sqrt(l));  // ascending lam -> non-increasing q
  }
  if (require_positive && q[n - 1] <= 1e-12)
    throw DegeneratePosition("smallest Cartan angle is not positive");
  return q;
}

RVector cartan_p_hat(const CMatrix& g, double unitary_tol) {
  if (!is_unitary(g, unitary_tol)) throw NotUnitary("matrix is not unitary");
  const Eigen::Index n = g.rows() / 2;
  const CMatrix D = g.topLeftCorner(n, n);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(D * D.adjoint());
  RVector lam = es.eigenvalues();
  RVector p(n);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double s2 = std::clamp(1.0 - lam[j], 0.0, 1.0);  // sin^2 q_j
    if (s2 <= 0.0)
      throw DegeneratePosition("vanishing sin q: position escapes to -inf");
    p[j] = 0.5 * std::log(s2);
  }
  return p;
}

PolarFactors polar(const CMatrix& omega, double singular_tol) {
  Eigen::JacobiSVD<CMatrix> svd(omega,
                                Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector s = svd.singularValues();
  if (s(s.size() - 1) < singular_tol)
    throw Singular("polar factor would be singular");
  PolarFactors f;
  f.lambda = svd.matrixU() * s.asDiagonal() * svd.matrixU().adjoint();
  f.t = svd.matrixU() * svd.matrixV().adjoint();
  return f;
}

CMatrix herm_exp_action(const CMatrix& L, int k, double t, double herm_tol) {
  if (k < 1) throw DomainViolation("power k must be positive");
  if ((L - CMatrix(L.adjoint())).cwiseAbs().maxCoeff() > herm_tol)
    throw NotHermitian("generator is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (L + CMatrix(L.adjoint())));
  const RVector lam = es.eigenvalues();
  CVector phase(lam.size());
  for (Eigen::Index j = 0; j < lam.size(); ++j)
    phase[j] = std::exp(Complex(0.0, -t * std::pow(lam[j], k)));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace bcnd
