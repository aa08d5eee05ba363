#include "bcnd/momentum.hpp"

#include <cmath>

#include "bcnd/blocks_local.hpp"
#include "bcnd/linalg.hpp"

namespace bcnd {

namespace {

CMatrix block_project(const CMatrix& b) {
  const Eigen::Index n = b.rows() / 2;
  CMatrix out = b;
  out.topRightCorner(n, n).setZero();
  return out;
}

}  // namespace

MomentumValue momentum_plus(const CMatrix& K) {
  MomentumValue mv;
  mv.bL_proj = block_project(iwasawa_left(K).b);
  mv.bR_proj = block_project(iwasawa_right(K).b);
  return mv;
}

MomentumValue mu_target(const CouplingParams& cp) {
  cp.validate();
  const int n = cp.n;
  MomentumValue mv;
  mv.bL_proj = CMatrix::Zero(2 * n, 2 * n);
  mv.bL_proj.topLeftCorner(n, n) =
      std::exp(cp.u) * nu_matrix(cp.x, n).cast<Complex>();
  mv.bL_proj.bottomRightCorner(n, n) =
      std::exp(-cp.u) * CMatrix::Identity(n, n);
  mv.bR_proj = CMatrix::Zero(2 * n, 2 * n);
  mv.bR_proj.topLeftCorner(n, n) = std::exp(cp.v) * CMatrix::Identity(n, n);
  mv.bR_proj.bottomRightCorner(n, n) =
      std::exp(-cp.v) * CMatrix::Identity(n, n);
  return mv;
}

double constraint_residual(const CMatrix& K, const CouplingParams& cp) {
  const MomentumValue got = momentum_plus(K);
  const MomentumValue mu = mu_target(cp);
  return std::max((got.bL_proj - mu.bL_proj).norm(),
                  (got.bR_proj - mu.bR_proj).norm());
}

double constraint_residual_hermitian(const CMatrix& K,
                                     const CouplingParams& cp) {
  const MomentumValue got = momentum_plus(K);
  const MomentumValue mu = mu_target(cp);
  const CMatrix dl = got.bL_proj * got.bL_proj.adjoint() -
                     mu.bL_proj * mu.bL_proj.adjoint();
  const CMatrix dr = got.bR_proj * got.bR_proj.adjoint() -
                     mu.bR_proj * mu.bR_proj.adjoint();
  return std::max(dl.norm(), dr.norm());
}

double OnShellReport::max_residual() const {
  return std::max({lambda_sq_residual, left_factor_residual,
                   key_equation_residual});
}

OnShellReport onshell_relations(const CMatrix& K, const CouplingParams& cp,
                                double pre_tol) {
  cp.validate();
  const int n = cp.n;
  if (constraint_residual(K, cp) > pre_tol)
    throw OffShell("matrix does not satisfy the momentum constraint");

  OnShellReport rep;
  const CMatrix gL = iwasawa_right(K).g;
  const RVector q = cartan_position(gL, /*require_positive=*/true);
  rep.q_min = q[n - 1];
  RVector sinq(n), cosq(n);
  for (int j = 0; j < n; ++j) {
    sinq[j] = std::sin(q[j]);
    cosq[j] = std::cos(q[j]);
  }

  // Residuals are normalized by the magnitude of the matrices compared; the
  // triangular data grows like e^{2|p_n|} and absolute numbers would only
  // measure that scale.
  // (22) block: Omega Omega^dag = e^{-2u} - e^{-2v} sin^2 q.
  const CMatrix omega = K.bottomRightCorner(n, n);
  CMatrix want = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j)
    want(j, j) = std::exp(-2 * cp.u) - std::exp(-2 * cp.v) * sinq[j] * sinq[j];
  rep.lambda_sq_residual = (omega * omega.adjoint() - want).cwiseAbs().maxCoeff() /
                           (1.0 + want.cwiseAbs().maxCoeff());

  // Section form: K11 = rho cos(q) e^{-v}, so rho = e^v K11 cos(q)^{-1}.
  CMatrix rho(n, n);
  for (int j = 0; j < n; ++j) {
    if (cosq[j] < 1e-12)
      throw DegeneratePosition("cos q vanishes: cannot recover rho");
    rho.col(j) = std::exp(cp.v) * K.topLeftCorner(n, n).col(j) / cosq[j];
  }

  // chi from the off-diagonal blocks, then K K^dag = b_L b_L^dag.
  CMatrix chi(n, n);
  {
    CMatrix inner = CMatrix::Zero(n, n);
    const CMatrix od = omega.adjoint();
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Complex val = -std::exp(cp.u + cp.v) * od(j, k);
        if (j == k) val += std::exp(-cp.u) * cosq[j];
        inner(j, k) = val / (kImag * sinq[j]);
      }
    chi = rho * inner;
  }
  CMatrix bL = CMatrix::Zero(2 * n, 2 * n);
  bL.topLeftCorner(n, n) = std::exp(cp.u) * nu_matrix(cp.x, n).cast<Complex>();
  bL.topRightCorner(n, n) = chi;
  bL.bottomRightCorner(n, n) = std::exp(-cp.u) * CMatrix::Identity(n, n);
  const CMatrix kk = K * K.adjoint();
  rep.left_factor_residual = (kk - bL * bL.adjoint()).cwiseAbs().maxCoeff() /
                             (1.0 + kk.cwiseAbs().maxCoeff());

  // Key equation: rho sin(q)^{-1} T^dag sin(q)^2 T sin(q)^{-1} rho^dag = nu nu^T.
  const CMatrix T = polar(omega).t;
  CMatrix mid = CMatrix::Zero(n, n);
  for (int j = 0; j < n; ++j) mid(j, j) = sinq[j] * sinq[j];
  CMatrix lhs = rho * sinq.cwiseInverse().asDiagonal() * T.adjoint() * mid *
                T * sinq.cwiseInverse().asDiagonal() * rho.adjoint();
  const RMatrix nu = nu_matrix(cp.x, n);
  const CMatrix nunu = (nu * nu.transpose()).cast<Complex>();
  rep.key_equation_residual = (lhs - nunu).cwiseAbs().maxCoeff() /
                              (1.0 + nunu.cwiseAbs().maxCoeff());
  return rep;
}

CVector w_vector(double x, const RMatrix& rho) {
  const int n = static_cast<int>(rho.rows());
  return rho.transpose().cast<Complex>() * v_hat_vector(x, n).cast<Complex>();
}

RVector w_squared_oracle(double x, const RVector& p_hat) {
  const int n = static_cast<int>(p_hat.size());
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k)
      if (std::abs(p_hat[j] - p_hat[k]) < 1e-12)
        throw CoincidentComponents("positions must be pairwise distinct");
  const double sgn = x > 0 ? 1.0 : -1.0;
  RVector w2(n);
  for (int m = 0; m < n; ++m) {
    double val = sgn * (1.0 - std::exp(-x));
    for (int j = 0; j < n; ++j) {
      if (j == m) continue;
      val *= (std::exp(2 * p_hat[j] + x) - std::exp(2 * p_hat[m])) /
             (std::exp(2 * p_hat[j]) - std::exp(2 * p_hat[m]));
    }
    w2[m] = val;
  }
  return w2;
}

Complex charpoly_residual(double x, const RVector& p_hat, const RVector& w_sq,
                          Complex lambda) {
  const int n = static_cast<int>(p_hat.size());
  const double sgn = x > 0 ? 1.0 : -1.0;
  Complex lhs = 1.0, rhs = 1.0;
  for (int j = 0; j < n; ++j) {
    lhs *= std::exp(2 * p_hat[j]) - lambda;
    rhs *= std::exp(2 * p_hat[j] - x) - lambda;
  }
  for (int j = 0; j < n; ++j) {
    Complex term = std::exp(2 * p_hat[j]) * w_sq[j];
    for (int k = 0; k < n; ++k)
      if (k != j) term *= std::exp(2 * p_hat[k] - x) - lambda;
    rhs += sgn * term;
  }
  return lhs - rhs;
}

bool admissible(double x, const RVector& p_hat) {
  if (p_hat[0] > 1e-12) return false;
  const RVector w2 = w_squared_oracle(x, p_hat);
  return (w2.array() >= -1e-12).all();
}

}  // namespace bcnd
