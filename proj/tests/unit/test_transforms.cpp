// Copyright 2026 The fermiq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "fermiq/dynamics.hpp"
#include "fermiq/transforms.hpp"
#include "../support.hpp"

namespace fermiq {
namespace {

using test::max_abs;
using test::single;

const Complex kI(0.0, 1.0);

ComplexMatrix scalar(Complex v) { return ComplexMatrix::Constant(1, 1, v); }

TEST(StructureMatrices, Identities) {
  for (int m = 1; m <= 4; ++m) {
    const StructureMatrices s = structure_matrices(m);
    const int n = 2 * m;
    EXPECT_LT(max_abs(s.J * s.J - RealMatrix::Identity(n, n)), 1e-15);
    EXPECT_LT(max_abs(ComplexMatrix(s.U0.adjoint()) - 2.0 * s.U0.inverse()), 1e-12);
    EXPECT_LT(max_abs(ComplexMatrix(s.U0.adjoint() * s.U0) - 2.0 * ComplexMatrix::Identity(n, n)), 1e-12);
    const ComplexMatrix ical = kI * s.U0 * s.J.cast<Complex>() * s.U0.inverse();
    EXPECT_LT(max_abs(ComplexMatrix(ical - s.calI.mat().cast<Complex>())), 1e-12);
  }
}

TEST(YFromMu, ZeroAndRoundTrip) {
  EXPECT_EQ(max_abs(y_from_mu(ComplexMatrix::Zero(2, 2)).mat()), 0.0);
  std::mt19937_64 rng(21);
  for (int m = 1; m <= 3; ++m) {
    const AntisymMatrix y = random_antisym(m, rng);
    const ComplexMatrix mu = mu_from_y(y);
    EXPECT_LT(max_abs(y_from_mu(mu).mat() - y.mat()), 1e-12);
  }
}

TEST(YFromMu, SingleModeUnitY) {
  const ComplexMatrix mu = mu_from_y(single(1.0));
  EXPECT_NEAR(y_from_mu(mu)(0, 1), 1.0, 1e-14);
  // Lambda^u(Y) = 1 + 2 n Y: diag(1, 3) in the occupation basis.
  const FockMatrix lu = gaussian_op_unnormalized(single(1.0));
  EXPECT_NEAR(lu(0, 0).real(), 1.0, 1e-12);
  EXPECT_NEAR(lu(1, 1).real(), 3.0, 1e-12);
}

TEST(YFromMu, RejectsNonClassD) {
  EXPECT_FERMIQ_ERROR(y_from_mu(ComplexMatrix::Identity(2, 2)), ErrorCode::NotClassD);
}

TEST(XFromSigma, SingleModeOccupations) {
  const auto sig = [](double n) { return CovarianceSigma::hermitian(scalar(n), scalar(0.0)); };
  EXPECT_LT(max_abs(X_from_sigma(sig(0.5)).mat()), 1e-15);
  EXPECT_NEAR(X_from_sigma(sig(1.0))(0, 1), 1.0, 1e-14);
  EXPECT_NEAR(X_from_sigma(sig(0.0))(0, 1), -1.0, 1e-14);
  for (double n : {0.0, 0.3, 0.8}) EXPECT_LT(max_abs(x_from_sigma(sig(n)).mat() - X_from_sigma(sig(n)).mat()), 1e-15);
}

TEST(XFromSigma, MatchesOracleCovarianceOfOccupiedMode) {
  const AntisymMatrix x = x_from_sigma(CovarianceSigma::hermitian(scalar(1.0), scalar(0.0)));
  EXPECT_LT(max_abs(x.mat() - covariance_of(FockState::basis(1, 1u).mat()).mat()), 1e-14);
}

TEST(XFromSigma, ParticleHoleNegates) {
  for (double n : {0.1, 0.35, 0.9}) {
    const AntisymMatrix a = X_from_sigma(CovarianceSigma::hermitian(scalar(n), scalar(0.0)));
    const AntisymMatrix b = X_from_sigma(CovarianceSigma::hermitian(scalar(1.0 - n), scalar(0.0)));
    EXPECT_LT(max_abs(a.mat() + b.mat()), 1e-14);
  }
}

TEST(XFromSigma, RejectsNonHermitian) {
  CovarianceSigma s = CovarianceSigma::hermitian(scalar(Complex(0.5, 0.0)), scalar(0.0));
  s.n(0, 0) = Complex(0.5, 0.2);
  EXPECT_FALSE(s.is_hermitian());
  EXPECT_FERMIQ_ERROR(X_from_sigma(s), ErrorCode::NotHermitianCovariance);
}

TEST(XFromSigma, SigmaRoundTrip) {
  std::mt19937_64 rng(22);
  for (int m = 1; m <= 3; ++m) {
    const AntisymMatrix X = random_domain_point(m, rng);
    EXPECT_LT(max_abs(X_from_sigma(sigma_from_X(X)).mat() - X.mat()), 1e-12);
  }
}

TEST(XFromY, Examples) {
  EXPECT_NEAR(X_from_Y(single(1.0))(0, 1), 0.5, 1e-15);
  EXPECT_LT(max_abs(X_from_Y(AntisymMatrix::zero(2)).mat()), 1e-15);
  std::mt19937_64 rng(23);
  const AntisymMatrix y = random_antisym(2, rng, 0.5);
  EXPECT_LT(max_abs(Y_from_X(X_from_Y(y)).mat() - y.mat()), 1e-10);
}

TEST(XFromY, SingularShift) {
  EXPECT_FERMIQ_ERROR(Y_from_X(antisym_identity(1)), ErrorCode::SingularShift);
  EXPECT_FERMIQ_ERROR(X_from_Y(-antisym_identity(2)), ErrorCode::SingularShift);
}

TEST(XOfX, InvolutionAndSingleModeIdentity) {
  std::mt19937_64 rng(24);
  const AntisymMatrix a = single(0.37);
  EXPECT_LT(max_abs(x_of_X(a).mat() - a.mat()), 1e-15);
  EXPECT_LT(max_abs(x_of_X(AntisymMatrix::zero(2)).mat()), 1e-15);
  const AntisymMatrix X = random_antisym(2, rng);
  EXPECT_LT(max_abs(x_of_X(x_of_X(X)).mat() - X.mat()), 1e-14);
  EXPECT_LT((canonical_form(x_of_X(X)).lambdas - canonical_form(X).lambdas).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(GaussianNorm, SingleModeClosedForm) {
  for (double v : {-0.7, 0.0, 0.4, 0.99}) EXPECT_NEAR(gaussian_norm(single(v)), 0.5 * (1.0 - v), 1e-15);
}

TEST(OmegaFromModel, SingleModeNumberConserving) {
  const double w0 = 1.7;
  const AntisymMatrix om = omega_from_model(scalar(w0), scalar(0.0));
  EXPECT_LT(max_abs(om.mat() - w0 * antisym_identity(1).mat()), 1e-14);
}

TEST(OmegaFromModel, ZeroModel) {
  EXPECT_EQ(max_abs(omega_from_model(ComplexMatrix::Zero(2, 2), ComplexMatrix::Zero(2, 2)).mat()), 0.0);
}

TEST(OmegaFromModel, HoppingHasOnlyOffDiagonalBlocks) {
  ComplexMatrix h(2, 2);
  h << 0.0, 0.8, 0.8, 0.0;
  const RealMatrix om = omega_from_model(h, ComplexMatrix::Zero(2, 2)).mat();
  EXPECT_LT(max_abs(RealMatrix(om.topLeftCorner(2, 2))), 1e-15);
  EXPECT_LT(max_abs(RealMatrix(om.bottomRightCorner(2, 2))), 1e-15);
  EXPECT_GT(max_abs(RealMatrix(om.topRightCorner(2, 2))), 0.5);
  EXPECT_LT(max_abs(RealMatrix(om + om.transpose())), 1e-15);
}

TEST(OmegaFromModel, SignMatchesHeisenbergEvolution) {
  ComplexMatrix h(2, 2), d(2, 2);
  h << 0.3, Complex(0.5, 0.2), Complex(0.5, -0.2), -0.4;
  d << 0.0, Complex(0.25, 0.1), Complex(-0.25, -0.1), 0.0;
  const AntisymMatrix om = omega_from_model(h, d);
  std::mt19937_64 rng(25);
  const AntisymMatrix x0 = random_domain_point(2, rng);
  const FockMatrix rho = gaussian_from_covariance(x0);
  const double t = 0.8;
  const AntisymMatrix oracle = covariance_of(evolve_unitary_oracle(rho, bdg_hamiltonian(h, d), t));
  EXPECT_LT(max_abs(evolve_unitary_exact(x0, om, t).mat() - oracle.mat()), 1e-10);
}

TEST(OmegaFromModel, RejectsBadSymmetry) {
  ComplexMatrix h(1, 1);
  h << Complex(1.0, 0.5);
  EXPECT_FERMIQ_ERROR(omega_from_model(h, scalar(0.0)), ErrorCode::SymmetryViolation);
  ComplexMatrix d(2, 2);
  d << 0.0, 1.0, 1.0, 0.0;
  EXPECT_FERMIQ_ERROR(omega_from_model(ComplexMatrix::Zero(2, 2), d), ErrorCode::SymmetryViolation);
}

TEST(QuadraticModel, CarriesOmega) {
  const QuadraticModel q = make_quadratic_model(scalar(2.0), scalar(0.0));
  EXPECT_NEAR(q.omega(0, 1), 2.0, 1e-14);
}

}  // namespace
}  // namespace fermiq
