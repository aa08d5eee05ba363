#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace bcnd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

constexpr Complex kImag{0.0, 1.0};

// ---------------------------------------------------------------------------
// Errors. One subclass per failure mode so callers can discriminate.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CouplingViolation : public Error { public: using Error::Error; };
class DomainViolation : public Error { public: using Error::Error; };
class ZeroDeformation : public Error { public: using Error::Error; };
class NonInvertible : public Error { public: using Error::Error; };
class NotUnimodular : public Error { public: using Error::Error; };
class NotUnitary : public Error { public: using Error::Error; };
class NotHermitian : public Error { public: using Error::Error; };
class Singular : public Error { public: using Error::Error; };
class DegeneratePosition : public Error { public: using Error::Error; };
class OffDenseLocus : public Error { public: using Error::Error; };
class OffShell : public Error { public: using Error::Error; };
class CoincidentComponents : public Error { public: using Error::Error; };
class BoundaryReached : public Error { public: using Error::Error; };
class StepFailure : public Error { public: using Error::Error; };
class EscapeDisk : public Error { public: using Error::Error; };
class PoleProximity : public Error { public: using Error::Error; };
class FdBreakdown : public Error { public: using Error::Error; };

// ---------------------------------------------------------------------------
// Tolerances. Construction residuals are tighter than property assertions.
// ---------------------------------------------------------------------------

struct ToleranceProfile {
  double construction = 1e-12;     // factorization / reconstruction residuals
  double property = 1e-10;         // orthogonality, identities, constraints
  double symplectic_local = 1e-6;  // local two-form pullback (FD limited)
  double symplectic_global = 1e-5; // global two-form pullback (FD limited)
  double commutativity = 1e-5;     // Poisson bracket residuals (FD limited)
  double cross_method = 1e-6;      // ODE vs projection trajectories
  double conserved_drift = 1e-8;   // relative drift of h_k along flows
  double crossing_drift = 1e-7;    // h_1 drift across a z_j = 0 crossing

  ToleranceProfile scaled(double factor) const {
    ToleranceProfile t = *this;
    t.construction *= factor;
    t.property *= factor;
    t.symplectic_local *= factor;
    t.symplectic_global *= factor;
    t.commutativity *= factor;
    t.cross_method *= factor;
    t.conserved_drift *= factor;
    t.crossing_drift *= factor;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Model parameters: particle number n and couplings (x, u, v), admissible when
// x != 0, u < v, v != -u.
// ---------------------------------------------------------------------------

struct CouplingParams {
  int n = 2;
  double x = 1.0;
  double u = -0.3;
  double v = 0.5;

  void validate() const {
    if (n < 1) throw CouplingViolation("particle number must satisfy n >= 1");
    if (x == 0.0) throw CouplingViolation("deformation parameter x must be nonzero");
    if (!(u < v)) throw CouplingViolation("couplings must satisfy u < v");
    if (v == -u) throw CouplingViolation("couplings must satisfy v != -u");
  }
};

// Point of the local Darboux chart: positions p_hat in the closed chamber
// (0 >= p1, gaps >= |x|/2), angles q_hat stored in (-pi, pi].
struct LocalPoint {
  RVector p_hat;
  RVector q_hat;

  int n() const { return static_cast<int>(p_hat.size()); }
};

// Point of the global complex model C^{n-1} x D (|z_n| < 1).
struct GlobalPoint {
  CVector z;

  int n() const { return static_cast<int>(z.size()); }
};

double reduce_angle(double q);             // to (-pi, pi]
RVector reduce_angles(const RVector& q);

// Closed-chamber membership: 0 >= p1 and p_k - p_{k+1} >= |x|/2, with slack
// for roundoff at the walls.
bool in_closed_chamber(double x, const RVector& p_hat, double slack = 1e-12);
// Distance (max-norm, signed) to the nearest chamber wall; positive inside.
double chamber_margin(double x, const RVector& p_hat);

void check_global_point(const GlobalPoint& z);

}  // namespace bcnd
