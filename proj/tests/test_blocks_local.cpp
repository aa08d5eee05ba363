#include "doctest.h"

#include <cmath>

#include "bcnd/blocks_local.hpp"
#include "bcnd/hamiltonians.hpp"
#include "bcnd/linalg.hpp"
#include "bcnd/momentum.hpp"
#include "bcnd/sampling.hpp"

using namespace bcnd;

namespace {
const CouplingParams kDefault{2, 1.0, -0.3, 0.5};
}

TEST_CASE("nu matrix") {
  CHECK((nu_matrix(0.0, 3) - RMatrix::Identity(3, 3)).norm() == 0.0);
  const RMatrix nu = nu_matrix(2 * std::log(2.0), 2);
  CHECK(nu(0, 1) == doctest::Approx(1.5).epsilon(1e-15));
  for (double x : {0.3, -1.7, 2.4})
    CHECK(std::abs(nu_matrix(x, 4).determinant() - 1.0) < 1e-12);
}

TEST_CASE("v vectors and the rank-one completeness identity") {
  CHECK_THROWS_AS(v_vector(0.0, 2), ZeroDeformation);
  const double x = 2 * std::log(2.0);
  const RVector vh = v_hat_vector(x, 2);
  CHECK(vh[0] * vh[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(vh[1] * vh[1] == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(vh[0] * vh[1] == doctest::Approx(1.5).epsilon(1e-14));

  for (int n = 1; n <= 6; ++n) {
    for (double xx : {0.3, -0.3, 1.0, -1.0, x, -x}) {
      CHECK(v_vector(xx, n).squaredNorm() == doctest::Approx(double(n)).epsilon(1e-13));
      const RVector w = v_hat_vector(xx, n);
      const double sgn = xx > 0 ? 1.0 : -1.0;
      const RMatrix nu = nu_matrix(xx, n);
      const RMatrix lhs = nu * nu.transpose();
      const RMatrix rhs =
          std::exp(-xx) * RMatrix::Identity(n, n) + sgn * w * w.transpose();
      CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("r vector") {
  RVector p1(1);
  p1 << -0.4;
  CHECK(r_vector(1.0, p1)[0] == doctest::Approx(1.0).epsilon(1e-15));

  RVector p(2);
  p << -0.1, -1.1;
  CHECK(std::abs(r_vector(1.0, p).squaredNorm() - 1.0) < 1e-12);

  // wall: gap exactly |x|/2 kills the corresponding component
  RVector pw(2);
  pw << -0.2, -0.7;
  const RVector r = r_vector(1.0, pw);
  CHECK(std::abs(r[0]) < 1e-12);

  RVector bad(2);
  bad << -0.1, -0.3;
  CHECK_THROWS_AS(r_vector(1.0, bad), DomainViolation);
}

TEST_CASE("theta matrix against hand values") {
  RVector p(2);
  p << -0.1, -1.1;
  const RMatrix th = theta_matrix(1.0, p);
  CHECK(th(0, 1) == doctest::Approx(-0.44340944198503701).epsilon(1e-12));
  CHECK(th(0, 0) == doctest::Approx(0.89631917683296181).epsilon(1e-12));
  CHECK(std::abs(th.row(0).norm() - 1.0) < 1e-10);
}

TEST_CASE("theta, zeta, kappa orthogonality and inverse relation") {
  Sampler s(5);
  for (int n : {1, 2, 3, 4}) {
    for (double x : {0.7, -0.7, 1.0, -1.3}) {
      const CouplingParams cp{n, x, -0.3, 0.5};
      const RMatrix kap = kappa_matrix(x, n);
      CHECK((kap * kap.transpose() - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <
            1e-12);
      CHECK(kap.determinant() == doctest::Approx(1.0).epsilon(1e-12));
      for (int rep = 0; rep < 25; ++rep) {
        const LocalPoint pt = s.interior_point(cp);
        const RMatrix th = theta_matrix(x, pt.p_hat);
        CHECK((th * th.transpose() - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <
              1e-10);
        CHECK((th * theta_matrix(-x, pt.p_hat) - RMatrix::Identity(n, n))
                  .cwiseAbs()
                  .maxCoeff() < 1e-10);
        CHECK(th.determinant() == doctest::Approx(1.0).epsilon(1e-10));
        const RMatrix ze = zeta_matrix(x, pt.p_hat);
        CHECK((ze * ze.transpose() - RMatrix::Identity(n, n)).cwiseAbs().maxCoeff() <
              1e-10);
        CHECK(ze.determinant() == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("nonvanishing theta entries for positive deformation") {
  Sampler s(61);
  for (int n : {2, 3, 4}) {
    const CouplingParams cp{n, 0.9, -0.3, 0.5};
    for (int rep = 0; rep < 30; ++rep) {
      const LocalPoint pt = s.interior_point(cp);
      const RMatrix th = theta_matrix(cp.x, pt.p_hat);
      CHECK(std::abs(th(n - 1, 0)) > 1e-12);
      for (int j = 0; j + 1 < n; ++j) CHECK(std::abs(th(j, j + 1)) > 1e-12);
    }
  }
}

TEST_CASE("alpha matrix") {
  // boundary p1 = 0: the diagonal subtraction vanishes
  CouplingParams cp1{1, 1.0, -0.3, 0.5};
  LocalPoint pt;
  pt.p_hat = RVector::Zero(1);
  pt.q_hat = RVector::Zero(1);
  const CMatrix a0 = alpha_matrix(cp1, pt);
  CHECK(std::abs(a0(0, 0) -
                 -kImag * std::sqrt(std::exp(0.6) - std::exp(-1.0))) < 1e-14);

  // hand value at p = -1, q = 0
  pt.p_hat[0] = -1.0;
  const CMatrix a1 = alpha_matrix(cp1, pt);
  CHECK(std::abs(a1(0, 0).real()) < 1e-15);
  CHECK(a1(0, 0).imag() ==
        doctest::Approx(0.54858382401859362).epsilon(1e-13));
}

TEST_CASE("local section: constraint, cartan data, energy match") {
  Sampler s(9);
  for (int n : {1, 2, 3}) {
    for (double x : {1.0, -0.8}) {
      const CouplingParams cp{n, x, -0.3, 0.5};
      for (int rep = 0; rep < 15; ++rep) {
        const LocalPoint pt = s.interior_point(cp);
        const CMatrix K = K_local(cp, pt);
        CHECK(std::abs(Eigen::PartialPivLU<CMatrix>(K).determinant() - 1.0) <
              1e-10);
        CHECK(constraint_residual(K, cp) < 1e-10);

        const IwasawaFactors f = iwasawa_right(K);
        const RVector p = cartan_p_hat(f.g);
        CHECK((p - pt.p_hat).cwiseAbs().maxCoeff() < 1e-10);

        const double h1 = 0.5 * (f.b.adjoint() * f.b).trace().real();
        CHECK(std::abs(h1 - h_main(cp, pt)) < 1e-10);
      }
    }
  }
}

TEST_CASE("coordinate maps between the chart and the complex model") {
  Sampler s(13);
  for (int n : {1, 2, 3, 4}) {
    const CouplingParams cp{n, n % 2 ? 1.0 : -0.9, -0.3, 0.5};
    for (int rep = 0; rep < 25; ++rep) {
      const LocalPoint pt = s.interior_point(cp);
      const GlobalPoint z = z_of_local(cp, pt);
      const LocalPoint back = local_of_z(cp, z);
      CHECK((back.p_hat - pt.p_hat).cwiseAbs().maxCoeff() < 1e-12);
      for (int j = 0; j < n; ++j) {
        const Complex d = std::exp(Complex(0.0, back.q_hat[j])) -
                          std::exp(Complex(0.0, pt.q_hat[j]));
        CHECK(std::abs(d) < 1e-12);
      }
      CHECK((p_hat_of_z(cp, z) - pt.p_hat).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  // chamber vertex maps to the origin
  const CouplingParams cp{3, 1.0, -0.3, 0.5};
  LocalPoint vertex;
  vertex.p_hat = RVector(3);
  vertex.p_hat << 0.0, -0.5, -1.0;
  vertex.q_hat = RVector(3);
  vertex.q_hat << 0.4, -0.9, 2.2;
  const GlobalPoint z = z_of_local(cp, vertex);
  CHECK(z.z.cwiseAbs().maxCoeff() < 1e-15);

  // boundary positions survive p_hat_of_z round trip
  CHECK((p_hat_of_z(cp, z) - vertex.p_hat).cwiseAbs().maxCoeff() < 1e-12);

  // dense-locus guard
  GlobalPoint zz;
  zz.z = CVector::Zero(3);
  CHECK_THROWS_AS(local_of_z(cp, zz), OffDenseLocus);
}
