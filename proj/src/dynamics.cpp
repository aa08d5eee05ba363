#include "bcnd/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "bcnd/blocks_global.hpp"
#include "bcnd/blocks_local.hpp"
#include "bcnd/hamiltonians.hpp"
#include "bcnd/linalg.hpp"

namespace bcnd {

RVector gradient(const std::function<double(const RVector&)>& f,
                 const RVector& pt, double h) {
  const int m = static_cast<int>(pt.size());
  if (h <= 0.0) h = 1e-6 * (1.0 + pt.cwiseAbs().maxCoeff());
  RVector g(m);
  RVector y = pt;
  for (int i = 0; i < m; ++i) {
    y[i] = pt[i] + h;
    const double fp = f(y);
    y[i] = pt[i] - h;
    const double fm = f(y);
    y[i] = pt[i];
    g[i] = (fp - fm) / (2 * h);
  }
  return g;
}

RVector gradient4(const std::function<double(const RVector&)>& f,
                  const RVector& pt, double h) {
  const int m = static_cast<int>(pt.size());
  if (h <= 0.0) h = 1e-4 * (1.0 + pt.cwiseAbs().maxCoeff());
  RVector g(m);
  RVector y = pt;
  for (int i = 0; i < m; ++i) {
    y[i] = pt[i] + 2 * h;
    const double f2p = f(y);
    y[i] = pt[i] + h;
    const double f1p = f(y);
    y[i] = pt[i] - h;
    const double f1m = f(y);
    y[i] = pt[i] - 2 * h;
    const double f2m = f(y);
    y[i] = pt[i];
    g[i] = (-f2p + 8 * f1p - 8 * f1m + f2m) / (12 * h);
  }
  return g;
}

namespace {

// exp(-i t (L^k - tr(L^k)/m)): the invariant Hamiltonians generate flows
// through the traceless part of i L^k, which keeps K(t) unimodular. The
// dropped central phase acts trivially on every reduced observable.
CMatrix traceless_exp(const CMatrix& L, int k, double t) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (L + CMatrix(L.adjoint())));
  const RVector lam = es.eigenvalues();
  double mean = 0.0;
  for (Eigen::Index j = 0; j < lam.size(); ++j) mean += std::pow(lam[j], k);
  mean /= static_cast<double>(lam.size());
  CVector phase(lam.size());
  for (Eigen::Index j = 0; j < lam.size(); ++j)
    phase[j] = std::exp(Complex(0.0, -t * (std::pow(lam[j], k) - mean)));
  return es.eigenvectors() * phase.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

CMatrix free_flow(const CMatrix& K0, int k, double t) {
  const IwasawaFactors f = iwasawa_right(K0);
  const CMatrix lax = f.b.adjoint() * f.b;
  return f.g * traceless_exp(lax, k, t) * f.b.inverse();
}

std::vector<RVector> projected_p_trajectory(const CouplingParams& cp,
                                            const GlobalPoint& z0, int k,
                                            const RVector& t_grid) {
  cp.validate();
  if (k < 1 || k > cp.n) throw DomainViolation("k must be in [1, n]");
  const CMatrix K0 = K_global(cp, z0);
  const IwasawaFactors f = iwasawa_right(K0);
  const CMatrix lax = 0.5 * (CMatrix(f.b.adjoint() * f.b) +
                             CMatrix((f.b.adjoint() * f.b).adjoint()));
  Eigen::SelfAdjointEigenSolver<CMatrix> es(lax);
  const RVector lam = es.eigenvalues();
  const CMatrix U = es.eigenvectors();

  std::vector<RVector> out;
  out.reserve(t_grid.size());
  for (Eigen::Index i = 0; i < t_grid.size(); ++i) {
    CVector phase(lam.size());
    for (Eigen::Index j = 0; j < lam.size(); ++j)
      phase[j] = std::exp(Complex(0.0, -t_grid[i] * std::pow(lam[j], k)));
    // the overall phase of g_L is irrelevant for the Cartan position
    const CMatrix gL = f.g * U * phase.asDiagonal() * U.adjoint();
    out.push_back(cartan_p_hat(gL, 1e-9));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4), FSAL, PI step control, cubic Hermite sampling.
// ---------------------------------------------------------------------------

namespace {

constexpr double kA21 = 1.0 / 5;
constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187,
                 kA53 = 64448.0 / 6561, kA54 = -212.0 / 729;
constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33,
                 kA63 = 46732.0 / 5247, kA64 = 49.0 / 176,
                 kA65 = -5103.0 / 18656;
constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                 kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
constexpr double kE1 = 71.0 / 57600, kE3 = -71.0 / 16695, kE4 = 71.0 / 1920,
                 kE5 = -17253.0 / 339200, kE6 = 22.0 / 525, kE7 = -1.0 / 40;

struct Step {
  double t0, t1;
  RVector y0, y1, f0, f1;
};

RVector hermite(const Step& s, double t) {
  const double h = s.t1 - s.t0;
  const double u = (t - s.t0) / h;
  const double u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * s.y0 + (u3 - 2 * u2 + u) * h * s.f0 +
         (-2 * u3 + 3 * u2) * s.y1 + (u3 - u2) * h * s.f1;
}

}  // namespace

OdeResult integrate_dp54(const std::function<RVector(double, const RVector&)>& f,
                         const RVector& y0, std::pair<double, double> t_span,
                         double rel_tol, int samples,
                         const std::function<bool(const RVector&)>& stop_event) {
  if (samples < 1) throw DomainViolation("need at least one sample");
  const double t_start = t_span.first, t_end = t_span.second;
  const double dir = t_end >= t_start ? 1.0 : -1.0;
  const double span = std::abs(t_end - t_start);

  OdeResult res;
  res.times = RVector(samples);
  for (int i = 0; i < samples; ++i)
    res.times[i] = samples == 1
                       ? t_start
                       : t_start + (t_end - t_start) * i / (samples - 1);
  res.states.resize(samples);
  res.states[0] = y0;
  res.t_reached = t_start;

  int next_sample = 1;
  if (span == 0.0 || samples == 1) {
    for (int i = 0; i < samples; ++i) res.states[i] = y0;
    res.t_reached = t_end;
    return res;
  }

  const double abs_tol = rel_tol;  // same scale; states are O(1) chart coords
  double t = t_start;
  RVector y = y0;
  RVector k1 = f(t, y);
  double h_ctrl = dir * std::min(1e-3, span / 16);
  double err_prev = 1.0;
  const int max_steps = 2'000'000;

  auto freeze_rest = [&](StopReason why) {
    res.stop = why;
    for (int i = next_sample; i < samples; ++i) res.states[i] = y;
  };

  for (int step = 0; step < max_steps; ++step) {
    if (dir * (t - t_end) >= -1e-14 * span) break;
    // land exactly on the end of the span and on pending sample times, so
    // reported states are integration endpoints rather than interpolants
    double h = h_ctrl;
    bool clamped = false;
    if (dir * (t + h - t_end) > 0.0) {
      h = t_end - t;
      clamped = true;
    }
    if (next_sample < samples) {
      const double t_next = res.times[next_sample];
      if (dir * (t_next - t) > 1e-14 * span && dir * (t + h - t_next) > 0.0) {
        h = t_next - t;
        clamped = true;
      }
    }

    RVector y1, k7, errv;
    try {
      const RVector k2 = f(t + kA21 * h, y + h * (kA21 * k1));
      const RVector k3 = f(t + 0.3 * h, y + h * (kA31 * k1 + kA32 * k2));
      const RVector k4 =
          f(t + 0.8 * h, y + h * (kA41 * k1 + kA42 * k2 + kA43 * k3));
      const RVector k5 = f(t + 8.0 / 9.0 * h,
                           y + h * (kA51 * k1 + kA52 * k2 + kA53 * k3 + kA54 * k4));
      const RVector k6 = f(
          t + h, y + h * (kA61 * k1 + kA62 * k2 + kA63 * k3 + kA64 * k4 + kA65 * k5));
      y1 = y + h * (kB1 * k1 + kB3 * k3 + kB4 * k4 + kB5 * k5 + kB6 * k6);
      k7 = f(t + h, y1);
      errv = h * (kE1 * k1 + kE3 * k3 + kE4 * k4 + kE5 * k5 + kE6 * k6 + kE7 * k7);
    } catch (const DomainViolation&) {
      // a stage left the admissible domain: retry with a shorter step, and
      // treat persistent failure as a boundary stop
      h_ctrl = h * 0.25;
      if (std::abs(h_ctrl) < 1e-13 * span) {
        freeze_rest(StopReason::Boundary);
        return res;
      }
      continue;
    }

    double err = 0.0;
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      const double sc =
          abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y1[i]));
      err = std::max(err, std::abs(errv[i]) / sc);
    }
    err = std::max(err, 1e-30);

    if (err <= 1.0) {
      Step s{t, t + h, y, y1, k1, k7};
      while (next_sample < samples &&
             dir * (res.times[next_sample] - s.t1) <= 1e-14 * span) {
        res.states[next_sample] = hermite(s, res.times[next_sample]);
        ++next_sample;
      }
      t = s.t1;
      y = y1;
      k1 = k7;  // FSAL
      res.t_reached = t;
      if (stop_event && stop_event(y)) {
        freeze_rest(StopReason::Boundary);
        return res;
      }
      const double fac =
          0.9 * std::pow(err, -0.7 / 5.0) * std::pow(err_prev, 0.4 / 5.0);
      const double cand = h * std::clamp(fac, 0.2, 5.0);
      // an output-clamped step must not shrink the controller step
      h_ctrl = clamped ? (dir * std::max(std::abs(cand), std::abs(h_ctrl)))
                       : cand;
      err_prev = err;
    } else {
      h_ctrl = h * std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
    if (std::abs(h_ctrl) < 1e-15 * span)
      throw StepFailure("step size underflow at t = " + std::to_string(t));
  }
  if (dir * (res.t_reached - t_end) < -1e-14 * span)
    throw StepFailure("step budget exhausted at t = " +
                      std::to_string(res.t_reached));
  res.t_reached = t_end;
  while (next_sample < samples) {
    res.states[next_sample] = y;
    ++next_sample;
  }
  return res;
}

double Trajectory::conserved_drift() const {
  if (conserved.rows() == 0) return 0.0;
  double worst = 0.0;
  for (Eigen::Index j = 0; j < conserved.cols(); ++j) {
    const double h0 = conserved(0, j);
    for (Eigen::Index i = 0; i < conserved.rows(); ++i)
      worst = std::max(worst,
                       std::abs(conserved(i, j) - h0) / (1.0 + std::abs(h0)));
  }
  return worst;
}

LocalPoint local_state(const Trajectory& tr, int i) {
  const int n = static_cast<int>(tr.states[i].size()) / 2;
  LocalPoint pt;
  pt.p_hat = tr.states[i].head(n);
  pt.q_hat = tr.states[i].tail(n);
  return pt;
}

GlobalPoint global_state(const Trajectory& tr, int i) {
  const int n = static_cast<int>(tr.states[i].size()) / 2;
  GlobalPoint gp;
  gp.z = CVector(n);
  for (int j = 0; j < n; ++j)
    gp.z[j] = Complex(tr.states[i][j], tr.states[i][n + j]);
  return gp;
}

// Sign convention (frozen against the projection oracle):
//   dq/dt = -dH/dp, dp/dt = +dH/dq;  dz = +i c_j dH/dzbar.

// Fixed stencil step for the Hamiltonian gradients in the equations of
// motion: balances the O(h^4) truncation of the five-point rule against
// subtraction noise for Hamiltonian magnitudes up to ~1e4.
constexpr double kOdeFdStep = 4e-5;

Trajectory local_ode(const CouplingParams& cp, const LocalPoint& pt0, int k,
                     std::pair<double, double> t_span, double tol, int samples,
                     double boundary_eps) {
  cp.validate();
  const int n = cp.n;
  if (chamber_margin(cp.x, pt0.p_hat) <= boundary_eps)
    throw BoundaryReached("initial point is not strictly interior");

  auto hfun = [&](const RVector& y) {
    LocalPoint pt;
    pt.p_hat = y.head(n);
    pt.q_hat = y.tail(n);
    return h_k_local(cp, pt, k);
  };
  auto rhs = [&](double, const RVector& y) {
    // the square roots in H degenerate on the walls; keep the stencil inside
    const double margin = chamber_margin(cp.x, RVector(y.head(n)));
    const double hfd =
        std::min(kOdeFdStep, std::max(margin / 16.0, 1e-8));
    const RVector g = gradient4(hfun, y, hfd);
    RVector dy(2 * n);
    dy.head(n) = g.tail(n);    // dp/dt = +dH/dq
    dy.tail(n) = -g.head(n);   // dq/dt = -dH/dp
    return dy;
  };
  auto stop = [&](const RVector& y) {
    return chamber_margin(cp.x, RVector(y.head(n))) < boundary_eps;
  };

  RVector y0(2 * n);
  y0.head(n) = pt0.p_hat;
  y0.tail(n) = pt0.q_hat;
  OdeResult r = integrate_dp54(rhs, y0, t_span, tol, samples, stop);

  Trajectory tr;
  tr.times = r.times;
  tr.states = std::move(r.states);
  tr.stop = r.stop;
  tr.t_reached = r.t_reached;
  tr.conserved = RMatrix(tr.times.size(), n);
  for (Eigen::Index i = 0; i < tr.times.size(); ++i) {
    LocalPoint pt = local_state(tr, static_cast<int>(i));
    tr.conserved.row(i) = conserved_values_local(cp, pt);
    if (tr.stop == StopReason::Boundary && tr.times[i] > tr.t_reached)
      tr.conserved.row(i) = tr.conserved.row(std::max<Eigen::Index>(i - 1, 0));
  }
  return tr;
}

Trajectory global_ode(const CouplingParams& cp, const GlobalPoint& z0, int k,
                      std::pair<double, double> t_span, double tol,
                      int samples) {
  cp.validate();
  check_global_point(z0);
  const int n = cp.n;

  auto hfun = [&](const RVector& y) {
    GlobalPoint gp;
    gp.z = CVector(n);
    for (int j = 0; j < n; ++j) gp.z[j] = Complex(y[j], y[n + j]);
    return h_k(cp, gp, k);
  };
  auto rhs = [&](double, const RVector& y) {
    const RVector g = gradient4(hfun, y, kOdeFdStep);
    RVector dy(2 * n);
    for (int j = 0; j < n; ++j) {
      const double c =
          j == n - 1 ? 1.0 - (y[n - 1] * y[n - 1] + y[2 * n - 1] * y[2 * n - 1])
                     : 1.0;
      // dz = +i c dH/dzbar with dH/dzbar = (dH/dx + i dH/dy)/2
      dy[j] = -0.5 * c * g[n + j];
      dy[n + j] = 0.5 * c * g[j];
    }
    return dy;
  };

  RVector y0(2 * n);
  for (int j = 0; j < n; ++j) {
    y0[j] = z0.z[j].real();
    y0[n + j] = z0.z[j].imag();
  }
  OdeResult r = integrate_dp54(rhs, y0, t_span, tol, samples);

  Trajectory tr;
  tr.times = r.times;
  tr.states = std::move(r.states);
  tr.stop = r.stop;
  tr.t_reached = r.t_reached;
  tr.conserved = RMatrix(tr.times.size(), n);
  for (Eigen::Index i = 0; i < tr.times.size(); ++i) {
    GlobalPoint gp = global_state(tr, static_cast<int>(i));
    const double zn = std::abs(gp.z[n - 1]);
    if (zn >= 1.0 - 1e-12)
      throw EscapeDisk(
          "trajectory reached the disk boundary (integration error); last "
          "good time " +
          std::to_string(i > 0 ? tr.times[i - 1] : tr.times[0]));
    tr.conserved.row(i) = conserved_values(cp, gp);
  }
  return tr;
}

}  // namespace bcnd
