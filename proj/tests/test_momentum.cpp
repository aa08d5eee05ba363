#include "doctest.h"

#include <cmath>

#include "bcnd/blocks_local.hpp"
#include "bcnd/momentum.hpp"
#include "bcnd/sampling.hpp"

using namespace bcnd;

TEST_CASE("momentum of the identity and the target value") {
  const CouplingParams cp{2, 1.0, -0.3, 0.5};
  const MomentumValue mv = momentum_plus(CMatrix::Identity(4, 4));
  CHECK((mv.bL_proj - CMatrix::Identity(4, 4)).norm() < 1e-13);
  CHECK((mv.bR_proj - CMatrix::Identity(4, 4)).norm() < 1e-13);

  const MomentumValue mu = mu_target(cp);
  for (int j = 0; j < 2; ++j) {
    CHECK(std::abs(mu.bR_proj(j, j) - std::exp(0.5)) < 1e-15);
    CHECK(std::abs(mu.bR_proj(j + 2, j + 2) - std::exp(-0.5)) < 1e-15);
  }
  CHECK(std::abs(Eigen::PartialPivLU<CMatrix>(mu.bL_proj).determinant() - 1.0) <
        1e-13);
  CHECK(std::abs(Eigen::PartialPivLU<CMatrix>(mu.bR_proj).determinant() - 1.0) <
        1e-13);
}

TEST_CASE("section points sit on the constraint surface") {
  Sampler s(3);
  for (int n : {1, 2, 3}) {
    for (double x : {1.0, -0.8}) {
      const CouplingParams cp{n, x, -0.3, 0.5};
      for (int rep = 0; rep < 10; ++rep) {
        const LocalPoint pt = s.interior_point(cp);
        CHECK(constraint_residual(K_local(cp, pt), cp) < 1e-10);
      }
    }
  }
}

TEST_CASE("gauge equivariance of the constraint residual") {
  Sampler s(17);
  const CouplingParams cp{2, 1.0, -0.3, 0.5};
  for (int rep = 0; rep < 10; ++rep) {
    // on-shell point and a deliberately off-shell deformation of it
    const LocalPoint pt = s.interior_point(cp);
    CMatrix K = K_local(cp, pt);
    CMatrix Koff = K;
    Koff(0, 1) += Complex(0.05, -0.02);
    const Complex det = Eigen::PartialPivLU<CMatrix>(Koff).determinant();
    Koff *= std::pow(1.0 / det, 1.0 / 4.0);
    for (const CMatrix& probe : {K, Koff}) {
      const double base = constraint_residual_hermitian(probe, cp);
      auto [eL, eR] = s.gauge_pair(cp);
      const CMatrix moved = eL * probe * eR.adjoint();
      CHECK(std::abs(constraint_residual_hermitian(moved, cp) - base) < 1e-10);
    }
  }
}

TEST_CASE("on-shell structure relations hold on the section") {
  Sampler s(23);
  for (int n : {1, 2, 3}) {
    for (double x : {1.0, -0.8}) {
      const CouplingParams cp{n, x, -0.3, 0.5};
      for (int rep = 0; rep < 8; ++rep) {
        const LocalPoint pt = s.interior_point(cp);
        const OnShellReport rep_ = onshell_relations(K_local(cp, pt), cp);
        CHECK(rep_.max_residual() < 1e-10);
        CHECK(rep_.q_min > 0.0);
      }
    }
  }
  // off-shell input is rejected
  const CouplingParams cp{2, 1.0, -0.3, 0.5};
  CHECK_THROWS_AS(onshell_relations(CMatrix::Identity(4, 4), cp), OffShell);
}

TEST_CASE("w vector against its closed form") {
  Sampler s(29);
  for (int n : {2, 3, 4}) {
    for (double x : {1.0, -0.8}) {
      const CouplingParams cp{n, x, -0.3, 0.5};
      for (int rep = 0; rep < 15; ++rep) {
        const LocalPoint pt = s.interior_point(cp);
        const CVector w = w_vector(x, rho_matrix(cp, pt.p_hat));
        const RVector w2 = w_squared_oracle(x, pt.p_hat);
        for (int m = 0; m < n; ++m)
          CHECK(std::abs(std::norm(w[m]) - w2[m]) < 1e-10);
        const double sgn = x > 0 ? 1.0 : -1.0;
        CHECK(std::abs(w2.sum() - sgn * std::exp(-x) * (std::exp(n * x) - 1.0)) <
              1e-12);
        for (int l = 0; l < 20; ++l) {
          const Complex lam = std::exp(Complex(0.0, s.uniform(-M_PI, M_PI)));
          CHECK(std::abs(charpoly_residual(x, pt.p_hat, w2, lam)) < 1e-10);
        }
      }
    }
  }
}

TEST_CASE("oracle components vanish on the gap walls") {
  RVector p(3);
  p << -0.1, -0.6, -1.6;  // first gap exactly x/2 for x = 1
  const RVector w2 = w_squared_oracle(1.0, p);
  CHECK(std::abs(w2[0]) < 1e-14);

  RVector bad(2);
  bad << -0.3, -0.3;
  CHECK_THROWS_AS(w_squared_oracle(1.0, bad), CoincidentComponents);
}

TEST_CASE("admissibility") {
  RVector good(2);
  good << -0.1, -1.1;
  CHECK(admissible(1.0, good));
  RVector bad(2);
  bad << -0.1, -0.3;
  CHECK_FALSE(admissible(1.0, bad));
  RVector above(2);
  above << 0.2, -0.6;
  CHECK_FALSE(admissible(1.0, above));

  // dual criterion: oracle agrees with the wall inequalities
  Sampler s(37);
  int checked = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    RVector p(2);
    p[0] = s.uniform(-1.2, 0.4);
    p[1] = p[0] - s.uniform(0.02, 1.4);
    if (std::abs(p[0]) < 1e-9 || std::abs(p[0] - p[1] - 0.5) < 1e-9) continue;
    CHECK(admissible(1.0, p) == in_closed_chamber(1.0, p));
    ++checked;
  }
  CHECK(checked > 9000);
}
