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

#include "fermiq/random.hpp"

#include <Eigen/QR>

namespace fermiq {

RealMatrix random_rotation(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  RealMatrix g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = normal(rng);
  Eigen::HouseholderQR<RealMatrix> qr(g);
  RealMatrix q = qr.householderQ() * RealMatrix::Identity(n, n);
  const RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

AntisymMatrix random_domain_point(int modes, std::mt19937_64& rng, double max_lambda) {
  std::uniform_real_distribution<double> uni(0.0, max_lambda);
  RealVector lambdas(modes);
  for (int k = 0; k < modes; ++k) lambdas(k) = uni(rng);
  const RealMatrix r = random_rotation(2 * modes, rng);
  return AntisymMatrix::project(r.transpose() * canonical_block(lambdas) * r);
}

AntisymMatrix random_antisym(int modes, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  RealMatrix g(2 * modes, 2 * modes);
  for (int i = 0; i < 2 * modes; ++i)
    for (int j = 0; j < 2 * modes; ++j) g(i, j) = normal(rng);
  return AntisymMatrix::project(g);
}

}  // namespace fermiq
