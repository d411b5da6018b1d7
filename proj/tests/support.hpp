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


#pragma once

#include <gtest/gtest.h>

#include <random>
#include <string>

#include "fermiq/antisym.hpp"
#include "fermiq/errors.hpp"
#include "fermiq/fock.hpp"
#include "fermiq/random.hpp"

namespace fermiq::test {

// Asserts that `stmt` throws fermiq::Error carrying `code`.
#define EXPECT_FERMIQ_ERROR(stmt, expected)                                           \
  do {                                                                                \
    bool thrown_ = false;                                                             \
    try {                                                                             \
      stmt;                                                                           \
    } catch (const ::fermiq::Error& e_) {                                             \
      thrown_ = true;                                                                 \
      EXPECT_EQ(e_.code(), expected) << e_.what();                                    \
    }                                                                                 \
    EXPECT_TRUE(thrown_) << "expected " << ::fermiq::error_name(expected) << " from " #stmt; \
  } while (0)

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : static_cast<double>(m.cwiseAbs().maxCoeff());
}

// R^T diag(lambda_k J) R for a Haar rotation R.
inline AntisymMatrix with_lambdas(const RealVector& lambdas, std::mt19937_64& rng) {
  const int n = 2 * static_cast<int>(lambdas.size());
  const RealMatrix r = random_rotation(n, rng);
  return AntisymMatrix::project(r.transpose() * canonical_block(lambdas) * r);
}

// Single-mode phase point with X_12 = v.
inline AntisymMatrix single(double v) {
  RealMatrix e(2, 2);
  e << 0.0, v, -v, 0.0;
  return AntisymMatrix::checked(e);
}

// Random density matrix rho = G G^dag / Tr, G complex Ginibre.
inline FockState random_state(int modes, std::mt19937_64& rng) {
  const int d = 1 << modes;
  std::normal_distribution<double> nd(0.0, 1.0);
  ComplexMatrix g(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) g(i, j) = Complex(nd(rng), nd(rng));
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return FockState::checked(rho);
}

}  // namespace fermiq::test
