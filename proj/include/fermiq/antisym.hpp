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

#include <Eigen/Dense>

namespace fermiq {

using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Real antisymmetric matrix of even dimension 2M.
class AntisymMatrix {
 public:
  AntisymMatrix() = default;

  // Validates squareness, even dimension and antisymmetry (1e-12), then
  // stores the exactly antisymmetrized copy.
  static AntisymMatrix checked(const RealMatrix& entries);
  // Stores (A - A^T)/2 without validation; for results of closed operations.
  static AntisymMatrix project(const RealMatrix& entries);
  static AntisymMatrix zero(int modes);

  const RealMatrix& mat() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }
  int dim() const { return static_cast<int>(m_.rows()); }
  int modes() const { return dim() / 2; }

  AntisymMatrix operator+(const AntisymMatrix& o) const;
  AntisymMatrix operator-(const AntisymMatrix& o) const;
  AntisymMatrix operator*(double s) const;
  AntisymMatrix operator-() const { return *this * -1.0; }

 private:
  explicit AntisymMatrix(RealMatrix m) : m_(std::move(m)) {}
  RealMatrix m_;
};

struct CanonicalForm {
  RealMatrix rotation;  // R with R A R^T block diagonal
  RealVector lambdas;   // nonnegative, descending
};

AntisymMatrix make_antisym(const RealMatrix& entries);

// Block matrix [[0, I], [-I, 0]] with M x M blocks.
AntisymMatrix antisym_identity(int modes);

// R A R^T = diag(lambda_k [[0,1],[-1,0]]), lambdas >= 0 sorted descending.
// det R = +1 unless Pf(A) < 0, where no proper rotation with nonnegative
// lambdas exists; then det R = -1.
CanonicalForm canonical_form(const AntisymMatrix& a);

// Block-diagonal matrix built from canonical amplitudes.
RealMatrix canonical_block(const RealVector& lambdas);

double pfaffian(const RealMatrix& a);
inline double pfaffian(const AntisymMatrix& a) { return pfaffian(a.mat()); }

// Largest canonical amplitude (spectral norm).
double max_lambda(const AntisymMatrix& x);

// true iff every canonical amplitude is below 1 - margin.
bool domain_contains(const AntisymMatrix& x, double margin = 0.0);

AntisymMatrix commutator(const AntisymMatrix& a, const AntisymMatrix& b);

}  // namespace fermiq
