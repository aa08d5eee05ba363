#include "doctest.h"

#include <cmath>

#include "bcnd/linalg.hpp"
#include "bcnd/sampling.hpp"

using namespace bcnd;

namespace {

double recon_right(const CMatrix& K, const IwasawaFactors& f) {
  return (K - f.g * f.b.inverse()).norm() / K.norm();
}

double recon_left(const CMatrix& K, const IwasawaFactors& f) {
  return (K - f.b * f.g.inverse()).norm() / K.norm();
}

bool upper_positive(const CMatrix& b) {
  for (Eigen::Index i = 0; i < b.rows(); ++i) {
    if (b(i, i).real() <= 0 || std::abs(b(i, i).imag()) > 1e-13) return false;
    for (Eigen::Index j = 0; j < i; ++j)
      if (std::abs(b(i, j)) > 1e-13) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("iwasawa of the identity and of unitaries") {
  const int m = 6;
  const CMatrix I = CMatrix::Identity(m, m);
  auto f = iwasawa_right(I);
  CHECK((f.g - I).norm() < 1e-14);
  CHECK((f.b - I).norm() < 1e-14);

  Sampler s(101);
  CMatrix U = s.unitary(m);
  const Complex det = Eigen::PartialPivLU<CMatrix>(U).determinant();
  U *= std::pow(1.0 / det, 1.0 / m);
  f = iwasawa_right(U);
  CHECK((f.b - I).norm() < 1e-12);
  CHECK((f.g - U).norm() < 1e-12);

  auto l = iwasawa_left(I);
  CHECK((l.g - I).norm() < 1e-14);
  CHECK((l.b - I).norm() < 1e-14);
}

TEST_CASE("iwasawa left of an upper triangular positive matrix is trivial") {
  CMatrix b = CMatrix::Zero(4, 4);
  b(0, 0) = 2.0; b(1, 1) = 0.5; b(2, 2) = 0.25; b(3, 3) = 4.0;
  b(0, 2) = Complex(0.3, -0.1);
  b(1, 3) = Complex(-0.2, 0.7);
  auto f = iwasawa_left(b);
  CHECK((f.b - b).norm() < 1e-12);
  CHECK((f.g - CMatrix::Identity(4, 4)).norm() < 1e-12);
}

TEST_CASE("iwasawa round trips and triangular-factor identities") {
  Sampler s(7);
  for (int m : {2, 4, 6, 8}) {
    for (int rep = 0; rep < 25; ++rep) {
      const CMatrix K = s.unimodular(m);
      const auto r = iwasawa_right(K);
      const auto l = iwasawa_left(K);
      CHECK(recon_right(K, r) < 1e-12);
      CHECK(recon_left(K, l) < 1e-12);
      CHECK(upper_positive(r.b));
      CHECK(upper_positive(l.b));
      CHECK(is_unitary(r.g, 1e-11));
      CHECK(is_unitary(l.g, 1e-11));
      // b_R b_R^dag = (K^dag K)^{-1}, b_L b_L^dag = K K^dag
      const CMatrix M1 = (K.adjoint() * K).inverse();
      CHECK((r.b * r.b.adjoint() - M1).norm() / M1.norm() < 1e-11);
      const CMatrix M2 = K * K.adjoint();
      CHECK((l.b * l.b.adjoint() - M2).norm() / M2.norm() < 1e-11);
      // det b = 1 for unimodular input
      CHECK(std::abs(Eigen::PartialPivLU<CMatrix>(r.b).determinant() - 1.0) <
            1e-10);
    }
  }
}

TEST_CASE("iwasawa input validation") {
  CMatrix K = 2.0 * CMatrix::Identity(4, 4);
  CHECK_THROWS_AS(iwasawa_right(K), NotUnimodular);
  CMatrix S = CMatrix::Identity(4, 4);
  S(3, 3) = 1e-14;
  CHECK_THROWS_AS(iwasawa_right(S), NonInvertible);
  CHECK_THROWS_AS(iwasawa_right(CMatrix::Identity(3, 3)), DomainViolation);
}

TEST_CASE("cartan position of exact block forms") {
  // identity: all angles zero, degenerate when positivity is demanded
  const CMatrix I = CMatrix::Identity(4, 4);
  RVector q = cartan_position(I);
  CHECK(q.cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(cartan_position(I, true), DegeneratePosition);

  // explicit angle block [[cos q, i sin q], [i sin q, cos q]]
  const int n = 2;
  RVector q0(n);
  q0 << 0.8, 0.3;
  CMatrix g = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    g(j, j) = std::cos(q0[j]);
    g(j, j + n) = kImag * std::sin(q0[j]);
    g(j + n, j) = kImag * std::sin(q0[j]);
    g(j + n, j + n) = std::cos(q0[j]);
  }
  q = cartan_position(g);
  CHECK((q - q0).cwiseAbs().maxCoeff() < 1e-12);

  CHECK_THROWS_AS(cartan_position(2.0 * I), NotUnitary);
}

TEST_CASE("cartan position invariant under block-diagonal multiplication") {
  Sampler s(21);
  const int n = 2;
  RVector q0(n);
  q0 << 1.2, 0.5;
  CMatrix C = CMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    C(j, j) = std::cos(q0[j]);
    C(j, j + n) = kImag * std::sin(q0[j]);
    C(j + n, j) = kImag * std::sin(q0[j]);
    C(j + n, j + n) = std::cos(q0[j]);
  }
  for (int rep = 0; rep < 20; ++rep) {
    CMatrix gp = CMatrix::Zero(2 * n, 2 * n);
    gp.topLeftCorner(n, n) = s.unitary(n);
    gp.bottomRightCorner(n, n) = s.unitary(n);
    CMatrix hp = CMatrix::Zero(2 * n, 2 * n);
    hp.topLeftCorner(n, n) = s.unitary(n);
    hp.bottomRightCorner(n, n) = s.unitary(n);
    const RVector q = cartan_position(gp * C * hp);
    CHECK((q - q0).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("polar decomposition") {
  Sampler s(33);
  // unitary input: Lambda = 1
  CMatrix U = s.unitary(3);
  auto f = polar(U);
  CHECK((f.lambda - CMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((f.t - U).norm() < 1e-12);

  // positive diagonal input: T = 1
  CMatrix D = CMatrix::Zero(2, 2);
  D(0, 0) = 2.0;
  D(1, 1) = 3.0;
  f = polar(D);
  CHECK((f.lambda - D).norm() < 1e-13);
  CHECK((f.t - CMatrix::Identity(2, 2)).norm() < 1e-13);

  for (int rep = 0; rep < 30; ++rep) {
    const CMatrix A = s.unimodular(4);
    f = polar(A);
    CHECK((f.lambda * f.t - A).norm() < 1e-12 * A.norm());
    CHECK((f.lambda * f.lambda - A * A.adjoint()).norm() <
          1e-12 * (A * A.adjoint()).norm());
    CHECK(is_unitary(f.t, 1e-12));
  }

  CMatrix sing = CMatrix::Zero(2, 2);
  sing(0, 0) = 1.0;
  CHECK_THROWS_AS(polar(sing), Singular);
}

TEST_CASE("hermitian exponential action") {
  Sampler s(55);
  const CMatrix L = s.hermitian(6);
  CHECK((herm_exp_action(L, 1, 0.0) - CMatrix::Identity(6, 6)).norm() < 1e-12);

  // diagonal case
  CMatrix D = CMatrix::Zero(3, 3);
  D(0, 0) = 0.4; D(1, 1) = -1.1; D(2, 2) = 2.0;
  const CMatrix E = herm_exp_action(D, 1, 0.7);
  for (int j = 0; j < 3; ++j)
    CHECK(std::abs(E(j, j) - std::exp(Complex(0, -0.7 * D(j, j).real()))) <
          1e-13);

  // one-parameter group law and unitarity
  for (int k : {1, 2, 3}) {
    const CMatrix A = herm_exp_action(L, k, 0.3);
    const CMatrix B = herm_exp_action(L, k, 0.45);
    const CMatrix C = herm_exp_action(L, k, 0.75);
    CHECK((A * B - C).norm() < 1e-10);
    CHECK(is_unitary(A, 1e-10));
  }

  // spectrum preserved under the conjugation it generates
  const CMatrix U = herm_exp_action(L, 2, 1.3);
  const CMatrix H2 = s.hermitian(6);
  Eigen::SelfAdjointEigenSolver<CMatrix> e1(H2), e2(U * H2 * U.adjoint());
  CHECK((e1.eigenvalues() - e2.eigenvalues()).cwiseAbs().maxCoeff() < 1e-10);

  CMatrix notH = CMatrix::Zero(2, 2);
  notH(0, 1) = 1.0;
  CHECK_THROWS_AS(herm_exp_action(notH, 1, 1.0), NotHermitian);
}
