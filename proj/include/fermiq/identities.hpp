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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "fermiq/fock.hpp"

namespace fermiq {

enum class IdentityKind {
  UNNORM_MIXED,
  UNNORM_NORMAL,
  UNNORM_ANTINORMAL,
  MIXED_1,
  MIXED_2,
  NORMAL,
  ANTINORMAL,
  UNORD_LEFT,
  UNORD_RIGHT,
  UNORD_MIXED,
};

inline constexpr std::array<IdentityKind, 10> kAllIdentityKinds = {
    IdentityKind::UNNORM_MIXED, IdentityKind::UNNORM_NORMAL, IdentityKind::UNNORM_ANTINORMAL,
    IdentityKind::MIXED_1,      IdentityKind::MIXED_2,       IdentityKind::NORMAL,
    IdentityKind::ANTINORMAL,   IdentityKind::UNORD_LEFT,    IdentityKind::UNORD_RIGHT,
    IdentityKind::UNORD_MIXED};

const char* kind_name(IdentityKind kind);
IdentityKind kind_from_name(const std::string& name);

// 2M x 2M array of Fock operators; products with scalar matrices contract the
// parameter index, never the Fock index.
class OperatorMatrix {
 public:
  OperatorMatrix(int n, int fock_dim);
  int size() const { return n_; }
  int fock_dim() const { return d_; }
  FockMatrix& operator()(int i, int j) { return e_[static_cast<std::size_t>(i * n_ + j)]; }
  const FockMatrix& operator()(int i, int j) const { return e_[static_cast<std::size_t>(i * n_ + j)]; }

  OperatorMatrix operator+(const OperatorMatrix& o) const;
  OperatorMatrix operator-(const OperatorMatrix& o) const;
  OperatorMatrix operator*(Complex s) const;
  OperatorMatrix transposed() const;  // (mu, nu) -> (nu, mu)

  // entries sum_ab A_ma D_ab B_bn
  static OperatorMatrix sandwich(const ComplexMatrix& a, const OperatorMatrix& d, const ComplexMatrix& b);
  // entries op * C_mn
  static OperatorMatrix scalar(const FockMatrix& op, const ComplexMatrix& c);

 private:
  int n_;
  int d_;
  std::vector<FockMatrix> e_;
};

// max over entries of ||L - R||_F / max(1, ||L||_F)
double relative_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs);

enum class OrderingRoute {
  BlockFormulas,         // block formulas written in ladder operators, first-mixed (2,2) block corrected
  BlockFormulasSwapped,  // block formulas with the two first-mixed (2,2) terms exchanged
  Direct,                // gamma = U0 b expansion with per-pair ordering rules
};

// Reading of the parameter-index transpose marks inside bracketed subterms
// (second-mixed T2' and normal T4): applied to the entry, or dropped.
enum class TransposeReading { Entry, Dropped };

struct LhsOptions {
  OrderingRoute route = OrderingRoute::BlockFormulas;
  TransposeReading transpose = TransposeReading::Entry;
};

// Ordered product of gamma gamma^T with op, for ordering tags NORMAL,
// ANTINORMAL, MIXED_1, MIXED_2 or unordered UNORD_LEFT/RIGHT/MIXED.
OperatorMatrix ordered_product(IdentityKind ordering, const FockMatrix& op, int modes, const LhsOptions& opt = {});

// Left side of an identity; un-normalized kinds use Lambda^u(Y_from_X(X)).
OperatorMatrix lhs_product(IdentityKind kind, const AntisymMatrix& X, const LhsOptions& opt = {});

// D_{mu nu} = c d/dt Lambda(X + t (E_{nu mu} - E_{mu nu})): central differences at
// h and h/2 combined by Richardson extrapolation; h in [1e-7, 1e-3].
OperatorMatrix operator_derivative(const AntisymMatrix& X, double h);
// Derivative of Lambda^u with respect to Y through -(X - I) D_X (X - I).
OperatorMatrix unnormalized_y_derivative(const AntisymMatrix& X, double h);
// Direct finite difference of Lambda^u(Y) in Y; cross-check of the chain relation.
OperatorMatrix unnormalized_y_derivative_direct(const AntisymMatrix& Y, double h);

// Normalization constant of the derivative convention, fixed by the
// single-mode normal identity with the analytic derivative.
double derivative_normalization();

OperatorMatrix rhs_identity(IdentityKind kind, const AntisymMatrix& X, double h);

double check_identity(IdentityKind kind, const AntisymMatrix& X, double h, const LhsOptions& opt = {});

struct IdentityStats {
  IdentityKind kind;
  int modes;
  int trials;
  double max_residual;
  double mean_residual;
};

// Runs every kind on `trials` random domain points per M (lambdas < 0.9).
std::vector<IdentityStats> identity_sweep(const std::vector<int>& modes, int trials, double h, std::uint64_t seed,
                                          int threads = 1);

// Per-block residuals of a block-formula route against the direct route.
struct BlockComparison {
  std::string label;
  int modes;
  std::array<double, 4> block_residual;  // (1,1), (1,2), (2,1), (2,2)
};
std::vector<BlockComparison> block_formula_audit(const std::vector<int>& modes, std::uint64_t seed);

}  // namespace fermiq
