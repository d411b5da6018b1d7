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

#include <utility>
#include <vector>

#include "fermiq/antisym.hpp"
#include "fermiq/transforms.hpp"

namespace fermiq {

// Dense operator on the 2^M dimensional Fock space. Basis index bit i is the
// occupation of mode i+1; a_i carries the parity of modes below i.
using FockMatrix = ComplexMatrix;

constexpr int kMaxFockModes = 12;
constexpr int kMaxExpansionModes = 3;

struct FockTables {
  int modes = 0;
  std::vector<FockMatrix> a;      // annihilators
  std::vector<FockMatrix> adag;   // creators
  std::vector<FockMatrix> gamma;  // gamma_i = a_i + a_i^dag, gamma_{M+i} = -i(a_i - a_i^dag)
  FockMatrix identity;
};

// Cached per M (M <= 6) and shared read-only; larger M is rebuilt per call.
const FockTables& fock_tables(int modes);

std::vector<std::pair<FockMatrix, FockMatrix>> ladder_ops(int modes);
std::vector<FockMatrix> majorana_ops(int modes);

// Unit-trace Gaussian with Tr[Lambda i gamma_mu gamma_nu] = cov_{mu nu}.
FockMatrix gaussian_from_covariance(const AntisymMatrix& cov);
// Lambda(X): covariance x = calI X^T calI.
FockMatrix gaussian_op(const AntisymMatrix& X);
// Lambda(X(Y)) / N(X(Y)).
FockMatrix gaussian_op_unnormalized(const AntisymMatrix& Y);
// :exp[(i/2) gamma^T Y gamma]: expanded term by term (M <= 3).
FockMatrix normal_ordered_expansion(const AntisymMatrix& Y);

// (i/2)[gamma_mu, gamma_nu], zero-based indices, mu != nu.
FockMatrix xhat_op(int modes, int mu, int nu);
FockMatrix number_op(int modes, int mode);

// x_{mu nu} = Tr[rho i gamma_mu gamma_nu] (real part).
AntisymMatrix covariance_of(const FockMatrix& rho);

class FockState {
 public:
  // Validates hermiticity (1e-12), unit trace (1e-12) and eigenvalues >= -1e-10.
  static FockState checked(const FockMatrix& rho);
  static FockState basis(int modes, unsigned occupation_bits);
  // (1 - n)|0><0| + n|1><1| for one mode.
  static FockState single_mode(double n);
  static FockState gaussian(const AntisymMatrix& cov);

  const FockMatrix& mat() const { return rho_; }
  int modes() const { return modes_; }

 private:
  FockState(int modes, FockMatrix rho) : modes_(modes), rho_(std::move(rho)) {}
  int modes_ = 0;
  FockMatrix rho_;
};

// Tr[rho Lambda(x)] S(x; k) / norm_const(M, k).
double qfunction_oracle(const FockState& rho, const AntisymMatrix& x, double k);

// H = (1/2) sum_ij [h_ij (a_i^dag a_j - a_j a_i^dag) + delta_ij a_i^dag a_j^dag - delta_ij^* a_i a_j].
FockMatrix bdg_hamiltonian(const ComplexMatrix& h, const ComplexMatrix& delta);
FockMatrix evolve_unitary_oracle(const FockMatrix& rho, const FockMatrix& hamiltonian, double t);

// drho/dt = -i[sum omega_ij a_i^dag a_j, rho] + sum gamma_ij (a_i rho a_j^dag - {a_j^dag a_i, rho}/2).
FockMatrix lindblad_rhs(const FockMatrix& rho, const RealMatrix& omega, const RealMatrix& gamma);
// Exact propagation through the exponential of the vectorized generator.
FockMatrix evolve_lindblad_oracle(const FockMatrix& rho, const RealMatrix& omega, const RealMatrix& gamma,
                                  double t);

}  // namespace fermiq
