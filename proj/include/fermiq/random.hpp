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

#include <random>

#include "fermiq/antisym.hpp"

namespace fermiq {

// Haar-random element of SO(n).
RealMatrix random_rotation(int n, std::mt19937_64& rng);

// R^T diag(lambda_k J) R with lambda_k ~ U(0, max_lambda) and R in SO(2M).
AntisymMatrix random_domain_point(int modes, std::mt19937_64& rng, double max_lambda = 0.9);

// Entries ~ N(0, scale^2), antisymmetrized; no domain constraint.
AntisymMatrix random_antisym(int modes, std::mt19937_64& rng, double scale = 1.0);

}  // namespace fermiq
