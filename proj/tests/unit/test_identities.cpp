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


#include "fermiq/identities.hpp"
#include "fermiq/transforms.hpp"
#include "../support.hpp"

namespace fermiq {
namespace {

using test::max_abs;
using test::single;

const Complex kI(0.0, 1.0);

double op_residual(const OperatorMatrix& a, const OperatorMatrix& b) { return relative_residual(a, b); }

TEST(Kinds, NamesRoundTrip) {
  for (IdentityKind k : kAllIdentityKinds) EXPECT_EQ(kind_from_name(kind_name(k)), k);
  EXPECT_FERMIQ_ERROR(kind_from_name("SIDEWAYS"), ErrorCode::InvalidArgument);
}

TEST(OperatorMatrix, SandwichContractsParameterIndex) {
  OperatorMatrix d(2, 2);
  d(0, 1) = FockMatrix::Identity(2, 2);
  d(1, 0) = -FockMatrix::Identity(2, 2);
  ComplexMatrix a(2, 2);
  a << 1, 2, 3, 4;
  const OperatorMatrix s = OperatorMatrix::sandwich(a, d, ComplexMatrix::Identity(2, 2));
  // (A D)_{00} = A_01 D_10 = -2
  EXPECT_NEAR(s(0, 0)(0, 0).real(), -2.0, 1e-15);
  EXPECT_NEAR(s(1, 1)(1, 1).real(), 3.0, 1e-15);
  const OperatorMatrix t = s.transposed();
  EXPECT_EQ(max_abs(t(0, 1) - s(1, 0)), 0.0);
  EXPECT_EQ(relative_residual(s + s, s * Complex(2.0)), 0.0);
  EXPECT_EQ(relative_residual(s - s, OperatorMatrix(2, 2)), 0.0);
}

TEST(Derivative, NormalizationIsUnity) { EXPECT_NEAR(derivative_normalization(), 1.0, 1e-9); }

TEST(Derivative, SingleModeAnalytic) {
  const FockMatrix n = number_op(1, 0);
  const FockMatrix half = 0.5 * FockMatrix::Identity(2, 2);
  for (double v : {-0.5, 0.0, 0.3}) {
    const OperatorMatrix d = operator_derivative(single(v), 1e-5);
    EXPECT_LT(max_abs(d(1, 0) - (n - half)), 1e-10);
    EXPECT_LT(max_abs(d(0, 1) + (n - half)), 1e-10);
    EXPECT_LT(max_abs(d(0, 0)), 1e-15);
  }
}

TEST(Derivative, RichardsonIsStepConsistent) {
  std::mt19937_64 rng(51);
  const AntisymMatrix X = random_domain_point(2, rng, 0.5);
  EXPECT_LT(op_residual(operator_derivative(X, 1e-5), operator_derivative(X, 1e-4)), 1e-9);
}

TEST(Derivative, StepRange) {
  EXPECT_FERMIQ_ERROR(operator_derivative(single(0.1), 1e-2), ErrorCode::StepOutOfRange);
  EXPECT_FERMIQ_ERROR(operator_derivative(single(0.1), 1e-9), ErrorCode::StepOutOfRange);
}

TEST(Derivative, UnnormalizedChainRuleMatchesDirect) {
  std::mt19937_64 rng(52);
  for (int m = 1; m <= 2; ++m) {
    const AntisymMatrix X = random_domain_point(m, rng, 0.8);
    const AntisymMatrix Y = Y_from_X(X);
    EXPECT_LT(op_residual(unnormalized_y_derivative(X, 1e-5), unnormalized_y_derivative_direct(Y, 1e-5)), 1e-6);
  }
}

TEST(Lhs, NormalSingleModeEntry) {
  const FockMatrix n = number_op(1, 0);
  EXPECT_LT(max_abs(lhs_product(IdentityKind::NORMAL, single(0.0))(0, 1) - (-kI) * n), 1e-14);
  const double v = 0.4;
  EXPECT_LT(max_abs(lhs_product(IdentityKind::NORMAL, single(v))(0, 1) - kI * (v - 1.0) * n), 1e-14);
  EXPECT_LT(max_abs(rhs_identity(IdentityKind::NORMAL, single(v), 1e-5)(0, 1) - kI * (v - 1.0) * n), 1e-9);
}

TEST(Lhs, UnorderedLeftDiagonalIsLambda) {
  std::mt19937_64 rng(53);
  const AntisymMatrix X = random_domain_point(2, rng);
  const OperatorMatrix l = lhs_product(IdentityKind::UNORD_LEFT, X);
  const FockMatrix lam = gaussian_op(X);
  for (int mu = 0; mu < 4; ++mu) EXPECT_LT(max_abs(l(mu, mu) - lam), 1e-14);
}

TEST(Lhs, BlockRoutesMatchDirectExpansion) {
  std::mt19937_64 rng(54);
  const AntisymMatrix X = random_domain_point(2, rng);
  const LhsOptions direct{OrderingRoute::Direct, TransposeReading::Entry};
  for (IdentityKind k : {IdentityKind::MIXED_1, IdentityKind::MIXED_2, IdentityKind::NORMAL, IdentityKind::ANTINORMAL})
    EXPECT_LT(op_residual(lhs_product(k, X), lhs_product(k, X, direct)), 1e-12) << kind_name(k);
}

TEST(Lhs, SwappedMixedBlockDisagrees) {
  std::mt19937_64 rng(55);
  const AntisymMatrix X = random_domain_point(2, rng);
  const LhsOptions swapped{OrderingRoute::BlockFormulasSwapped, TransposeReading::Entry};
  EXPECT_GT(op_residual(lhs_product(IdentityKind::MIXED_1, X, swapped), lhs_product(IdentityKind::MIXED_1, X)), 1e-3);
}

TEST(Lhs, TransposeReadingsAgreeAtOneModeOnly) {
  const LhsOptions dropped{OrderingRoute::BlockFormulas, TransposeReading::Dropped};
  const AntisymMatrix one = single(0.35);
  for (IdentityKind k : {IdentityKind::MIXED_2, IdentityKind::NORMAL})
    EXPECT_LT(op_residual(lhs_product(k, one, dropped), lhs_product(k, one)), 1e-14) << kind_name(k);
  std::mt19937_64 rng(56);
  const AntisymMatrix X = random_domain_point(2, rng);
  for (IdentityKind k : {IdentityKind::MIXED_2, IdentityKind::NORMAL})
    EXPECT_GT(op_residual(lhs_product(k, X, dropped), lhs_product(k, X)), 1e-3) << kind_name(k);
}

TEST(Identities, AllKindsSingleMode) {
  for (double v : {-0.85, -0.3, 0.0, 0.45, 0.88})
    for (IdentityKind k : kAllIdentityKinds) EXPECT_LE(check_identity(k, single(v), 1e-5), 1e-6) << kind_name(k) << " x=" << v;
}

TEST(Identities, AllKindsTwoModes) {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 3; ++trial) {
    const AntisymMatrix X = random_domain_point(2, rng, 0.9);
    for (IdentityKind k : kAllIdentityKinds) EXPECT_LE(check_identity(k, X, 1e-5), 1e-6) << kind_name(k);
  }
}

TEST(Identities, UnorderedMixedAtOrigin) {
  EXPECT_LE(check_identity(IdentityKind::UNORD_MIXED, single(0.0), 1e-5), 1e-10);
}

TEST(Relations, SecondMixedFromFirst) {
  std::mt19937_64 rng(58);
  for (int m = 1; m <= 3; ++m) {
    const AntisymMatrix X = random_domain_point(m, rng);
    const FockMatrix lam = gaussian_op(X);
    const OperatorMatrix m1 = ordered_product(IdentityKind::MIXED_1, lam, m);
    const OperatorMatrix m2 = ordered_product(IdentityKind::MIXED_2, lam, m);
    const ComplexMatrix ical = antisym_identity(m).mat().cast<Complex>();
    const OperatorMatrix rhs = m1.transposed() * Complex(-1.0) - OperatorMatrix::scalar(lam, ical) * Complex(0.0, 2.0);
    EXPECT_LE(relative_residual(m2, rhs), 1e-8) << "M=" << m;
  }
}

TEST(Relations, LeftAndRightAreConjugates) {
  std::mt19937_64 rng(59);
  const AntisymMatrix X = random_domain_point(2, rng);
  const OperatorMatrix l = lhs_product(IdentityKind::UNORD_LEFT, X);
  const OperatorMatrix r = lhs_product(IdentityKind::UNORD_RIGHT, X);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) EXPECT_LT(max_abs(r(nu, mu) - l(mu, nu).adjoint()), 1e-14);
}

TEST(Relations, AnticommutatorClosure) {
  std::mt19937_64 rng(60);
  const AntisymMatrix X = random_domain_point(2, rng);
  const OperatorMatrix l = lhs_product(IdentityKind::UNORD_LEFT, X);
  const FockMatrix lam = gaussian_op(X);
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const FockMatrix expect = mu == nu ? FockMatrix(2.0 * lam) : FockMatrix(FockMatrix::Zero(4, 4));
      EXPECT_LT(max_abs(l(mu, nu) + l(nu, mu) - expect), 1e-14);
    }
}

TEST(Relations, NormalizedAndUnnormalizedConsistent) {
  std::mt19937_64 rng(61);
  const AntisymMatrix X = random_domain_point(2, rng, 0.8);
  const double n = gaussian_norm(X);
  const std::pair<IdentityKind, IdentityKind> pairs[] = {{IdentityKind::UNNORM_NORMAL, IdentityKind::NORMAL},
                                                         {IdentityKind::UNNORM_MIXED, IdentityKind::MIXED_1},
                                                         {IdentityKind::UNNORM_ANTINORMAL, IdentityKind::ANTINORMAL}};
  for (const auto& [u, k] : pairs) {
    EXPECT_LE(relative_residual(lhs_product(u, X) * Complex(n), lhs_product(k, X)), 1e-10) << kind_name(u);
    EXPECT_LE(relative_residual(rhs_identity(u, X, 1e-5) * Complex(n), rhs_identity(k, X, 1e-5)), 1e-6) << kind_name(u);
  }
}

TEST(Sweep, DeterministicAcrossThreads) {
  const auto a = identity_sweep({1, 2}, 2, 1e-5, 9, 1);
  const auto b = identity_sweep({1, 2}, 2, 1e-5, 9, 4);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].kind, b[i].kind);
    EXPECT_EQ(a[i].max_residual, b[i].max_residual);
    EXPECT_EQ(a[i].mean_residual, b[i].mean_residual);
  }
}

TEST(Audit, CorrectedRoutesMatchDirect) {
  for (const auto& b : block_formula_audit({1, 2}, 3)) {
    const double worst = *std::max_element(b.block_residual.begin(), b.block_residual.end());
    const bool alt = b.label.find("swapped") != std::string::npos || b.label.find("dropped") != std::string::npos;
    if (!alt) {
      EXPECT_LE(worst, 1e-12) << b.label << " M=" << b.modes;
    } else if (b.label == "MIXED_1/swapped" || b.modes == 2) {
      EXPECT_GT(worst, 1e-3) << b.label << " M=" << b.modes;
    }
  }
}

}  // namespace
}  // namespace fermiq
