#pragma once

#include <utility>

#include "bcnd/types.hpp"

namespace bcnd {

// J(y) = sqrt(sinh(y)/y), J(0) = 1; series switch below |y| = 1e-4.
double j_factor(double y);

// Q_jk(x, z) building block (0-based indices, j != k). For j > k defined as
// Q_kj(-x, z).
double q_factor(double x, const GlobalPoint& gp, int j, int k);

// r(x, p_hat(z)) expressed smoothly through the complex coordinates.
RVector r_hat_vector(double x, const GlobalPoint& gp);

// Smooth global counterparts of zeta, theta, gamma, alpha. All are finite on
// the whole model, including points with vanishing components; zeta_hat and
// theta_hat are unitary.
CMatrix zeta_hat(double x, const GlobalPoint& gp);
CMatrix theta_hat(double x, const GlobalPoint& gp);
CVector gamma_hat_diag(double x, const GlobalPoint& gp);
CMatrix gamma_hat(double x, const GlobalPoint& gp);
CMatrix alpha_hat(const CouplingParams& cp, const GlobalPoint& gp);

// Diagonal unitary gauge phases (tau, tau_tilde) built from suffix products
// of e^{i q_hat}. Slotting resolved by matching the section-to-global gauge
// identity; for x < 0 the phases are the conjugates of the |x| case.
std::pair<CVector, CVector> tau_factors(double x, const RVector& q_hat);

// The global section: unimodular, on-constraint for every z in the model.
CMatrix K_global(const CouplingParams& cp, const GlobalPoint& gp);

// Block-diagonal gauge pair (eta_L, eta_R) carrying the local section at
// (p_hat, q_hat) to the global section at z(p_hat, q_hat). Both members of
// the isotropy group of the momentum value.
std::pair<CMatrix, CMatrix> section_gauge_factors(const CouplingParams& cp,
                                                  const LocalPoint& pt);

}  // namespace bcnd
