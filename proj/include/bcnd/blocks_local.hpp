#pragma once

#include "bcnd/types.hpp"

namespace bcnd {

// Unit-determinant upper triangular matrix nu(x): ones on the diagonal,
// nu_jk = (1 - e^{-x}) e^{(k-j)x/2} above it.
RMatrix nu_matrix(double x, int n);

// v(x)_j = sqrt(n(e^x - 1)/(1 - e^{-nx})) e^{-jx/2}; ||v||^2 = n.
RVector v_vector(double x, int n);

// v_hat(x) = sqrt(sgn(x) e^{-x} (e^{nx} - 1)/n) v(x); satisfies
// nu nu^T = e^{-x} I + sgn(x) v_hat v_hat^T.
RVector v_hat_vector(double x, int n);

// Non-negative unit vector r(x, p_hat); components vanish on the chamber
// walls.
RVector r_vector(double x, const RVector& p_hat);

// Real orthogonal, det 1; theta(x, p_hat)^{-1} = theta(-x, p_hat).
RMatrix theta_matrix(double x, const RVector& p_hat);

// Rotation mapping e_a to r (a = n for x > 0, a = 1 for x < 0); orthogonal,
// det 1.
RMatrix zeta_matrix(double x, const RVector& p_hat);

// Rotation mapping e_a to v/sqrt(n); orthogonal, det 1.
RMatrix kappa_matrix(double x, int n);

// Pivot index (0-based): n-1 for x > 0, 0 for x < 0.
int pivot_index(double x, int n);

// Upper-right block of the section's triangular factor.
CMatrix alpha_matrix(const CouplingParams& cp, const LocalPoint& pt);

// The local section: a unimodular 2n x 2n matrix lying on the momentum
// constraint surface for every point of the closed chamber x torus.
CMatrix K_local(const CouplingParams& cp, const LocalPoint& pt);

// rho = kappa(x) zeta(x, p_hat)^{-1}, the special-unitary factor of the
// section.
RMatrix rho_matrix(const CouplingParams& cp, const RVector& p_hat);

// Local <-> global coordinate maps.
GlobalPoint z_of_local(const CouplingParams& cp, const LocalPoint& pt);
LocalPoint local_of_z(const CouplingParams& cp, const GlobalPoint& gp);
RVector p_hat_of_z(const CouplingParams& cp, const GlobalPoint& gp);

}  // namespace bcnd
