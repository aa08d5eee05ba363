#pragma once

#include "bcnd/types.hpp"

namespace bcnd {

// Value of the projected momentum map: block-diagonal parts of the two
// Iwasawa triangular factors.
struct MomentumValue {
  CMatrix bL_proj;
  CMatrix bR_proj;
};

MomentumValue momentum_plus(const CMatrix& K);

// Target value mu: blockdiag(e^u nu(x), e^{-u} I) and
// blockdiag(e^v I, e^{-v} I).
MomentumValue mu_target(const CouplingParams& cp);

// max of the two Frobenius norms ||pi(b) - mu||.
double constraint_residual(const CMatrix& K, const CouplingParams& cp);
// Hermitian form ||pi(b) pi(b)^dagger - mu mu^dagger||; exactly invariant
// under the isotropy gauge action.
double constraint_residual_hermitian(const CMatrix& K, const CouplingParams& cp);

// On-shell structure checks for a section-form K: recovers (q, Omega, rho),
// verifies Lambda^2 = e^{-2u} - e^{-2v} sin^2 q, reconstructs the left
// triangular factor and checks K K^dagger against it, and checks the key
// quadratic equation relating (rho, T, sin q) to nu nu^T.
struct OnShellReport {
  double lambda_sq_residual = 0;   // |Omega Omega^dag - (e^{-2u} - e^{-2v} sin^2 q)|
  double left_factor_residual = 0; // |K K^dag - b_L b_L^dag| with chi reconstructed
  double key_equation_residual = 0;
  double q_min = 0;                // smallest Cartan angle; must stay positive
  double max_residual() const;
};
OnShellReport onshell_relations(const CMatrix& K, const CouplingParams& cp,
                                double pre_tol = 1e-8);

// w = rho^dagger v_hat and the closed-form values of |w_m|^2 on the
// constraint surface.
CVector w_vector(double x, const RMatrix& rho);
RVector w_squared_oracle(double x, const RVector& p_hat);

// Characteristic-polynomial residual of the similarity identity behind the
// admissibility analysis, at a probe value lambda.
Complex charpoly_residual(double x, const RVector& p_hat, const RVector& w_sq,
                          Complex lambda);

// p_hat admissible iff all |w_m|^2 >= -1e-12 and p_hat_1 <= 0 (equivalently,
// membership in the closed chamber).
bool admissible(double x, const RVector& p_hat);

}  // namespace bcnd
