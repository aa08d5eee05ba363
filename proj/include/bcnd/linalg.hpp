#pragma once

#include "bcnd/types.hpp"

namespace bcnd {

// Factors of K = g * b^{-1} (right form) or K = b * g^{-1} (left form),
// with g unitary and b upper triangular with strictly positive diagonal.
struct IwasawaFactors {
  CMatrix g;
  CMatrix b;
};

// Upper-triangular positive-diagonal U with M = U * U^dagger, for Hermitian
// positive definite M ("reverse Cholesky": Cholesky of the flip-permuted M).
CMatrix reverse_cholesky(const CMatrix& M);

// K = g_L * b_R^{-1}; b_R b_R^dagger = (K^dagger K)^{-1}.
IwasawaFactors iwasawa_right(const CMatrix& K);
// K = b_L * g_R^{-1}; b_L b_L^dagger = K K^dagger.
IwasawaFactors iwasawa_left(const CMatrix& K);

// Angles q (non-increasing, in [0, pi/2]) of the generalized Cartan
// decomposition of a 2n x 2n unitary: cos^2 q_j are the eigenvalues of
// D D^dagger with D the upper-left n x n block. Eigenvalues are clamped to
// [0,1] before the arccos. With require_positive, q_n <= tol raises
// DegeneratePosition.
RVector cartan_position(const CMatrix& g, bool require_positive = false,
                        double unitary_tol = 1e-10);

// Positions p_hat = log sin q from the same data; requires q_n > 0.
RVector cartan_p_hat(const CMatrix& g, double unitary_tol = 1e-10);

// Polar decomposition Omega = Lambda * T with Lambda Hermitian PSD, T unitary.
struct PolarFactors {
  CMatrix lambda;
  CMatrix t;
};
PolarFactors polar(const CMatrix& omega, double singular_tol = 1e-12);

// exp(-i t L^k) for Hermitian L, via eigendecomposition (exactly unitary up
// to eigensolver error).
CMatrix herm_exp_action(const CMatrix& L, int k, double t,
                        double herm_tol = 1e-10);

bool is_unitary(const CMatrix& g, double tol = 1e-10);
bool is_finite(const CMatrix& m);

}  // namespace bcnd
