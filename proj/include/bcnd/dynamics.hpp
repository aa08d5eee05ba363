#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "bcnd/types.hpp"

namespace bcnd {

// Central-difference gradient, error O(h^2). Default step 1e-6 (1 + |pt|_inf).
RVector gradient(const std::function<double(const RVector&)>& f,
                 const RVector& pt, double h = 0.0);
// Five-point stencil, error O(h^4); used for ODE right-hand sides where the
// subtraction noise of the two-point rule would dominate.
RVector gradient4(const std::function<double(const RVector&)>& f,
                  const RVector& pt, double h = 0.0);

// Free flow through K0 generated by the k-th invariant Hamiltonian:
// K(t) = g_L exp(-i t L^k) b_R^{-1} with L = b_R^dagger b_R. b_R is constant
// along the flow by construction.
CMatrix free_flow(const CMatrix& K0, int k, double t);

// Gauge-invariant positions along the free flow started at the global
// section over z0, extracted by the Cartan position of g_L(t).
std::vector<RVector> projected_p_trajectory(const CouplingParams& cp,
                                            const GlobalPoint& z0, int k,
                                            const RVector& t_grid);

enum class StopReason { Completed, Boundary, Escape };

// Sampled solution of a reduced flow. States are flattened chart coordinates:
// (p_hat; q_hat) for the local chart, (Re z; Im z) for the global model.
// conserved(i, j) holds h_{j+1} at times(i).
struct Trajectory {
  RVector times;
  std::vector<RVector> states;
  RMatrix conserved;
  StopReason stop = StopReason::Completed;
  double t_reached = 0.0;

  double conserved_drift() const;  // max_j max_t |h_j(t)-h_j(0)|/(1+|h_j(0)|)
};

// Reduced equations of motion, sign fixed against the projection oracle:
//   dq_hat/dt = -dH_k/dp_hat,   dp_hat/dt = +dH_k/dq_hat
// and in the complex model
//   dz_j/dt = +i dH_k/dzbar_j (j < n),   dz_n/dt = +i (1 - |z_n|^2) dH_k/dzbar_n.

// Integrates in the local chart; stops with StopReason::Boundary when the
// state comes within `boundary_eps` of a chamber wall.
Trajectory local_ode(const CouplingParams& cp, const LocalPoint& pt0, int k,
                     std::pair<double, double> t_span, double tol,
                     int samples, double boundary_eps = 1e-8);

// Integrates in the global model; complete across vanishing components.
// |z_n| >= 1 - 1e-12 signals integration failure (EscapeDisk).
Trajectory global_ode(const CouplingParams& cp, const GlobalPoint& z0, int k,
                      std::pair<double, double> t_span, double tol,
                      int samples);

LocalPoint local_state(const Trajectory& tr, int i);
GlobalPoint global_state(const Trajectory& tr, int i);

// Generic adaptive Dormand-Prince 5(4) driver with cubic Hermite sampling;
// exposed for reuse in tests.
struct OdeResult {
  RVector times;
  std::vector<RVector> states;
  StopReason stop = StopReason::Completed;
  double t_reached = 0.0;
};
OdeResult integrate_dp54(const std::function<RVector(double, const RVector&)>& f,
                         const RVector& y0, std::pair<double, double> t_span,
                         double rel_tol, int samples,
                         const std::function<bool(const RVector&)>& stop_event = {});

}  // namespace bcnd
