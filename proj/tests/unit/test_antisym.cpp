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


#include <Eigen/Eigenvalues>
#include <algorithm>

#include "../support.hpp"

namespace fermiq {
namespace {

using test::max_abs;
using test::with_lambdas;

TEST(MakeAntisym, AcceptsIdentityLikeMatrix) {
  RealMatrix e(2, 2);
  e << 0, 1, -1, 0;
  EXPECT_EQ(max_abs(make_antisym(e).mat() - antisym_identity(1).mat()), 0.0);
}

TEST(MakeAntisym, AcceptsZero) { EXPECT_EQ(max_abs(make_antisym(RealMatrix::Zero(2, 2)).mat()), 0.0); }

TEST(MakeAntisym, RejectsAsymmetricEntries) {
  RealMatrix e(2, 2);
  e << 0, 1, -0.9, 0;
  EXPECT_FERMIQ_ERROR(make_antisym(e), ErrorCode::NotAntisymmetric);
}

TEST(MakeAntisym, RejectsOddDimension) {
  EXPECT_FERMIQ_ERROR(make_antisym(RealMatrix::Zero(3, 3)), ErrorCode::OddDimension);
}

TEST(MakeAntisym, SymmetrizesWithinTolerance) {
  RealMatrix e(2, 2);
  e << 0, 1, -1 + 5e-13, 0;
  const AntisymMatrix a = make_antisym(e);
  EXPECT_EQ(a(0, 1), -a(1, 0));
}

TEST(CanonicalForm, AlreadyCanonical) {
  const AntisymMatrix a = antisym_identity(1) * 0.5;
  const CanonicalForm cf = canonical_form(a);
  ASSERT_EQ(cf.lambdas.size(), 1);
  EXPECT_NEAR(cf.lambdas(0), 0.5, 1e-14);
  EXPECT_LT(max_abs(cf.rotation * a.mat() * cf.rotation.transpose() - canonical_block(cf.lambdas)), 1e-12);
}

TEST(CanonicalForm, ZeroMatrixHasZeroAmplitudes) {
  const CanonicalForm cf = canonical_form(AntisymMatrix::zero(2));
  EXPECT_EQ(cf.lambdas.size(), 2);
  EXPECT_LT(cf.lambdas.cwiseAbs().maxCoeff(), 1e-15);
}

TEST(CanonicalForm, AmplitudesAreEigenvalueMagnitudes) {
  std::mt19937_64 rng(11);
  const AntisymMatrix a = random_antisym(2, rng);
  const CanonicalForm cf = canonical_form(a);
  Eigen::EigenSolver<RealMatrix> es(a.mat());
  std::vector<double> im;
  for (int i = 0; i < 4; ++i)
    if (es.eigenvalues()(i).imag() > 0) im.push_back(es.eigenvalues()(i).imag());
  std::sort(im.rbegin(), im.rend());
  ASSERT_EQ(im.size(), 2u);
  EXPECT_NEAR(cf.lambdas(0), im[0], 1e-10);
  EXPECT_NEAR(cf.lambdas(1), im[1], 1e-10);
}

TEST(CanonicalForm, ReconstructsAndIsOrthogonal) {
  std::mt19937_64 rng(12);
  for (int m = 1; m <= 4; ++m) {
    const AntisymMatrix a = random_antisym(m, rng);
    const CanonicalForm cf = canonical_form(a);
    const int n = 2 * m;
    EXPECT_LT((cf.rotation * a.mat() * cf.rotation.transpose() - canonical_block(cf.lambdas)).norm(), 1e-10);
    EXPECT_LT(max_abs(cf.rotation * cf.rotation.transpose() - RealMatrix::Identity(n, n)), 1e-12);
    for (int k = 0; k + 1 < m; ++k) EXPECT_GE(cf.lambdas(k), cf.lambdas(k + 1));
    if (pfaffian(a) > 0) {
      EXPECT_NEAR(cf.rotation.determinant(), 1.0, 1e-12);
    }
  }
}

TEST(Pfaffian, SmallCases) {
  EXPECT_DOUBLE_EQ(pfaffian(antisym_identity(1)), 1.0);
  EXPECT_DOUBLE_EQ(pfaffian(antisym_identity(1) - antisym_identity(1) * 0.5), 0.5);
  EXPECT_DOUBLE_EQ(pfaffian(AntisymMatrix::zero(2)), 0.0);
}

TEST(Pfaffian, SquareIsDeterminant) {
  std::mt19937_64 rng(13);
  const AntisymMatrix a = random_antisym(3, rng);
  const double pf = pfaffian(a);
  const double det = a.mat().determinant();
  EXPECT_NEAR(pf * pf, det, 1e-8 * std::abs(det));
}

TEST(Pfaffian, IdentityLikeAtLargerSize) {
  // Pf of [[0, I], [-I, 0]] is (-1)^{M(M-1)/2}.
  for (int m = 1; m <= 5; ++m) EXPECT_DOUBLE_EQ(pfaffian(antisym_identity(m)), (m * (m - 1) / 2) % 2 ? -1.0 : 1.0);
}

TEST(Domain, Examples) {
  EXPECT_TRUE(domain_contains(AntisymMatrix::zero(1)));
  const AntisymMatrix near = antisym_identity(1) * 0.999;
  EXPECT_TRUE(domain_contains(near, 0.0));
  EXPECT_FALSE(domain_contains(near, 0.01));
  std::mt19937_64 rng(14);
  RealVector l(2);
  l << 0.3, 1.2;
  EXPECT_FALSE(domain_contains(with_lambdas(l, rng)));
  l << 0.3, 0.8;
  EXPECT_TRUE(domain_contains(with_lambdas(l, rng)));
}

TEST(Domain, BoundaryIsExcluded) {
  EXPECT_FALSE(domain_contains(antisym_identity(1)));
  EXPECT_FALSE(domain_contains(antisym_identity(2)));
  EXPECT_FALSE(domain_contains(AntisymMatrix::zero(1), 1.0));
}

TEST(Domain, MaxLambdaIsSpectralNorm) {
  std::mt19937_64 rng(15);
  RealVector l(3);
  l << 0.2, 0.7, 0.4;
  EXPECT_NEAR(max_lambda(with_lambdas(l, rng)), 0.7, 1e-12);
}

TEST(Commutator, SelfAndSingleModeVanish) {
  std::mt19937_64 rng(16);
  const AntisymMatrix w = random_antisym(2, rng);
  EXPECT_LT(max_abs(commutator(w, w).mat()), 1e-15);
  const AntisymMatrix a = random_antisym(1, rng), b = random_antisym(1, rng);
  EXPECT_LT(max_abs(commutator(a, b).mat()), 1e-15);
}

TEST(Commutator, MatchesTripleLoop) {
  std::mt19937_64 rng(17);
  const AntisymMatrix a = random_antisym(2, rng), b = random_antisym(2, rng);
  RealMatrix ref = RealMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = 0; k < 4; ++k) ref(i, j) += a(i, k) * b(k, j) - b(i, k) * a(k, j);
  EXPECT_LT(max_abs(commutator(a, b).mat() - ref), 1e-14);
}

TEST(Commutator, DimensionMismatch) {
  EXPECT_FERMIQ_ERROR(commutator(AntisymMatrix::zero(1), AntisymMatrix::zero(2)), ErrorCode::DimensionMismatch);
}

}  // namespace
}  // namespace fermiq
