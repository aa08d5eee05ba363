#pragma once

#include <array>

#include "bcnd/types.hpp"

namespace bcnd {

// Main Hamiltonian in (p_hat, q_hat). Evaluates wherever its square roots are
// real (the closed chamber, and the shifted domains used by the Schneider
// limit); throws DomainViolation otherwise.
double h_main(const CouplingParams& cp, const LocalPoint& pt);

// The same Hamiltonian in Darboux variables e^{p_hat} = sin q,
// q_hat = p tan q; requires q in (0, pi/2)^n.
double h_cal1(const CouplingParams& cp, const RVector& q, const RVector& p);
LocalPoint darboux_change(const RVector& q, const RVector& p);

// Scaled Hamiltonian H_beta(q, p) = Hcal1(q, beta p; beta x, beta u, beta v).
double h_beta(const CouplingParams& cp, const RVector& q, const RVector& p,
              double beta);

struct SutherlandCouplings {
  double gamma;
  double gamma1;
  double gamma2;
};
SutherlandCouplings sutherland_couplings(const CouplingParams& cp);

// Trigonometric BC_n Sutherland Hamiltonian.
double sutherland_h(const SutherlandCouplings& sc, const RVector& q,
                    const RVector& p);

// (H_beta - n)/beta^2 - H_Sutherland; first order in beta.
double sutherland_residual(const CouplingParams& cp, const RVector& q,
                           const RVector& p, double beta);

// Hermitian positive definite Lax matrix b_R^dagger b_R, assembled from the
// global (resp. local) triangular block.
CMatrix lax_matrix(const CouplingParams& cp, const GlobalPoint& gp);
CMatrix lax_matrix_local(const CouplingParams& cp, const LocalPoint& pt);

// Commuting family h_k = tr(L^k)/(2k), k = 1..n.
double h_k(const CouplingParams& cp, const GlobalPoint& gp, int k);
double h_k_local(const CouplingParams& cp, const LocalPoint& pt, int k);
RVector conserved_values(const CouplingParams& cp, const GlobalPoint& gp);
RVector conserved_values_local(const CouplingParams& cp, const LocalPoint& pt);

// --- van Diejen five-coupling Hamiltonian and its singular limit ---

// Couplings mu, mu0, mu1, mu0', mu1' (complex-capable core; the real overload
// asserts a real result).
Complex vdiejen_h_complex(const std::array<Complex, 5>& mu, const CVector& lam,
                          const CVector& th, double pole_tol = 1e-10);
double vdiejen_h(const std::array<double, 5>& mu, const RVector& lam,
                 const RVector& th);

// H_vD at the complexified substitution (radius R) plus H minus the constant
// shift sum_j cosh((j-1)x + 2u); tends to 0 as R -> infinity.
double vdiejen_residual(const CouplingParams& cp, const LocalPoint& pt,
                        double R);

// --- Schneider's external-field Hamiltonian and its limit ---

double schneider_h(const RVector& Q, const RVector& P, double x, double u);
double schneider_residual(const CouplingParams& cp, const RVector& Q,
                          const RVector& P, double sigma);

}  // namespace bcnd
