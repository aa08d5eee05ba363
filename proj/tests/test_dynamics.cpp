#include "doctest.h"

#include <cmath>

#include "bcnd/blocks_global.hpp"
#include "bcnd/blocks_local.hpp"
#include "bcnd/dynamics.hpp"
#include "bcnd/hamiltonians.hpp"
#include "bcnd/linalg.hpp"
#include "bcnd/momentum.hpp"
#include "bcnd/sampling.hpp"

using namespace bcnd;

TEST_CASE("finite-difference gradients") {
  auto lin = [](const RVector& y) { return 2.0 * y[0] - 3.0 * y[1]; };
  RVector pt(2);
  pt << 0.3, -0.8;
  RVector g = gradient(lin, pt);
  CHECK(std::abs(g[0] - 2.0) < 1e-9);
  CHECK(std::abs(g[1] + 3.0) < 1e-9);

  auto quad = [](const RVector& y) { return y.squaredNorm(); };
  pt << 1.0, 2.0;
  g = gradient(quad, pt);
  CHECK(std::abs(g[0] - 2.0) < 1e-9);
  CHECK(std::abs(g[1] - 4.0) < 1e-9);

  // order probe: quartic error drops by ~4 when h halves
  auto quart = [](const RVector& y) { return std::pow(y[0], 4); };
  RVector one(1);
  one << 1.0;
  const double e1 = std::abs(gradient(quart, one, 1e-3)[0] - 4.0);
  const double e2 = std::abs(gradient(quart, one, 5e-4)[0] - 4.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.2));
  // five-point stencil is much tighter at the same step
  CHECK(std::abs(gradient4(quart, one, 1e-3)[0] - 4.0) < 1e-10);
}

TEST_CASE("free flow fundamentals") {
  Sampler s(3);
  const CouplingParams cp{2, 1.0, -0.3, 0.5};
  const GlobalPoint z0 = s.global_point(cp);
  const CMatrix K0 = K_global(cp, z0);

  CHECK((free_flow(K0, 1, 0.0) - K0).cwiseAbs().maxCoeff() < 1e-12);

  const RVector h0 = conserved_values(cp, z0);
  for (double t : {0.3, 1.0}) {
    for (int k : {1, 2}) {
      const CMatrix Kt = free_flow(K0, k, t);
      // right triangular factor is constant along the flow
      const IwasawaFactors f0 = iwasawa_right(K0);
      const IwasawaFactors ft = iwasawa_right(Kt);
      CHECK((f0.b - ft.b).cwiseAbs().maxCoeff() < 1e-10);
      // whole commuting family conserved, constraint preserved
      const CMatrix L = ft.b.adjoint() * ft.b;
      CMatrix P = CMatrix::Identity(4, 4);
      for (int j = 1; j <= 2; ++j) {
        P = P * L;
        CHECK(std::abs(P.trace().real() / (2.0 * j) - h0[j - 1]) < 1e-10);
      }
      CHECK(constraint_residual(Kt, cp) < 1e-9);
    }
  }
}

TEST_CASE("projected positions stay admissible and start correctly") {
  Sampler s(7);
  const CouplingParams cp{3, -0.8, -0.3, 0.5};
  const GlobalPoint z0 = s.global_point(cp);
  RVector grid(21);
  for (int i = 0; i < 21; ++i) grid[i] = 0.05 * i;
  const auto traj = projected_p_trajectory(cp, z0, 1, grid);
  CHECK((traj[0] - p_hat_of_z(cp, z0)).cwiseAbs().maxCoeff() < 1e-10);
  for (const RVector& p : traj) CHECK(in_closed_chamber(cp.x, p, 1e-9));
}

TEST_CASE("local ODE conserves energy and matches the projection") {
  Sampler s(11);
  const CouplingParams cp{2, 0.3, -0.3, 0.5};
  LocalPoint pt0;
  pt0.p_hat = RVector(2);
  pt0.q_hat = RVector(2);
  pt0.p_hat << -0.08, -0.38;
  pt0.q_hat << 0.9, -2.1;
  const Trajectory tr = local_ode(cp, pt0, 1, {0.0, 1.0}, 1e-10, 34, 5e-3);
  CHECK(tr.conserved_drift() < 1e-8);

  const GlobalPoint z0 = z_of_local(cp, pt0);
  const auto proj = projected_p_trajectory(cp, z0, 1, tr.times);
  double worst = 0.0;
  int compared = 0;
  for (int i = 0; i < tr.times.size(); ++i) {
    if (tr.stop != StopReason::Completed && tr.times[i] > tr.t_reached) break;
    const LocalPoint st = local_state(tr, i);
    worst = std::max(worst, (st.p_hat - proj[i]).cwiseAbs().maxCoeff());
    ++compared;
  }
  CHECK(compared >= 5);
  CHECK(worst < 1e-6);
}

TEST_CASE("trajectories are even in the deformation sign") {
  CouplingParams cp{2, 0.3, -0.3, 0.5};
  LocalPoint pt0;
  pt0.p_hat = RVector(2);
  pt0.q_hat = RVector(2);
  pt0.p_hat << -0.1, -0.45;
  pt0.q_hat << 0.5, 1.7;
  const Trajectory a = local_ode(cp, pt0, 1, {0.0, 0.4}, 1e-11, 17, 5e-3);
  cp.x = -cp.x;
  const Trajectory b = local_ode(cp, pt0, 1, {0.0, 0.4}, 1e-11, 17, 5e-3);
  const int upto = std::min(a.times.size(), b.times.size());
  for (int i = 0; i < upto; ++i) {
    if (a.times[i] > a.t_reached || b.times[i] > b.t_reached) break;
    CHECK((a.states[i] - b.states[i]).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("global ODE: chart consistency, crossing, reversal") {
  Sampler s(17);
  const CouplingParams cp{2, 0.3, -0.3, 0.5};
  LocalPoint pt0;
  pt0.p_hat = RVector(2);
  pt0.q_hat = RVector(2);
  pt0.p_hat << -0.09, -0.42;
  pt0.q_hat << -1.3, 0.7;
  const GlobalPoint z0 = z_of_local(cp, pt0);

  const Trajectory tg = global_ode(cp, z0, 1, {0.0, 1.0}, 1e-10, 34);
  CHECK(tg.conserved_drift() < 1e-8);
  const Trajectory tl = local_ode(cp, pt0, 1, {0.0, 1.0}, 1e-10, 34, 5e-3);
  double worst = 0.0;
  for (int i = 0; i < 34; ++i) {
    if (tl.stop != StopReason::Completed && tl.times[i] > tl.t_reached) break;
    const GlobalPoint gz = global_state(tg, i);
    const LocalPoint lz = local_state(tl, i);
    worst = std::max(
        worst, (p_hat_of_z(cp, gz) - lz.p_hat).cwiseAbs().maxCoeff());
  }
  CHECK(worst < 1e-6);

  // flow through a vanishing component stays smooth
  GlobalPoint zc = s.global_point(cp);
  zc.z[0] = 0.0;
  const Trajectory tc = global_ode(cp, zc, 1, {0.0, 1.0}, 1e-10, 34);
  double drift = 0.0;
  for (int i = 0; i < 34; ++i)
    drift = std::max(drift, std::abs(tc.conserved(i, 0) - tc.conserved(0, 0)));
  CHECK(drift < 1e-7);

  // time reversal returns to the start
  const GlobalPoint zend = global_state(tg, 33);
  const Trajectory back = global_ode(cp, zend, 1, {1.0, 0.0}, 1e-10, 34);
  const GlobalPoint zback = global_state(back, 33);
  CHECK((zback.z - z0.z).cwiseAbs().maxCoeff() < 1e-7);
}

TEST_CASE("local ODE boundary event") {
  const CouplingParams cp{2, 1.0, -0.3, 0.5};
  LocalPoint edge;
  edge.p_hat = RVector(2);
  edge.p_hat << -1e-10, -0.8;  // hugging the p1 = 0 wall
  edge.q_hat = RVector::Zero(2);
  CHECK_THROWS_AS(local_ode(cp, edge, 1, {0.0, 1.0}, 1e-10, 9),
                  BoundaryReached);
}

TEST_CASE("degenerate time span produces a single repeated state") {
  Sampler s(19);
  const CouplingParams cp{2, 1.0, -0.3, 0.5};
  const LocalPoint pt0 = s.interior_point(cp);
  const Trajectory tr = local_ode(cp, pt0, 1, {0.0, 0.0}, 1e-10, 1);
  CHECK(tr.times.size() == 1);
  const LocalPoint st = local_state(tr, 0);
  CHECK((st.p_hat - pt0.p_hat).norm() == 0.0);
}
