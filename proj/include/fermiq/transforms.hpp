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
#include <complex>

#include "fermiq/antisym.hpp"

namespace fermiq {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

struct StructureMatrices {
  RealMatrix J;          // diag(-I, I)
  ComplexMatrix U0;      // [[I, I], [-iI, iI]]
  AntisymMatrix calI;    // [[0, I], [-I, 0]]
};

StructureMatrices structure_matrices(int modes);

// Fermi-basis covariance [[n^T - I, m], [m_plus, I - n]], with
// n_ij = <a_i^dag a_j> and m_ij = <a_i a_j> for a physical state.
struct CovarianceSigma {
  int modes = 0;
  ComplexMatrix n;
  ComplexMatrix m;
  ComplexMatrix m_plus;

  static CovarianceSigma hermitian(const ComplexMatrix& n, const ComplexMatrix& m);
  bool is_hermitian(double tol = 1e-12) const;
  ComplexMatrix full() const;
};

// Y = (i/2) U0 mu U0^{-1}; throws NotClassD if the result is not real antisymmetric.
AntisymMatrix y_from_mu(const ComplexMatrix& mu);
ComplexMatrix mu_from_y(const AntisymMatrix& y);

// X = i U0 (J - 2 sigma) U0^{-1}.
AntisymMatrix X_from_sigma(const CovarianceSigma& sigma);
// x = calI X^T calI applied to X_from_sigma.
AntisymMatrix x_from_sigma(const CovarianceSigma& sigma);

// Inverse of X_from_sigma for real X.
CovarianceSigma sigma_from_X(const AntisymMatrix& X);

AntisymMatrix X_from_Y(const AntisymMatrix& y);
AntisymMatrix Y_from_X(const AntisymMatrix& X);

// calI X^T calI; an involution that preserves canonical amplitudes.
AntisymMatrix x_of_X(const AntisymMatrix& X);

// Unit-trace normalization 2^{-M} Pf(calI - X) Pf(calI).
double gaussian_norm(const AntisymMatrix& X);

struct QuadraticModel {
  ComplexMatrix h;
  ComplexMatrix delta;
  AntisymMatrix omega;
};

// Generator of dx/dt = [Omega, x] for H = (1/2) sum h_ij (a_i^dag a_j - a_j a_i^dag)
// + (1/2) sum (delta_ij a_i^dag a_j^dag - delta_ij^* a_i a_j), hbar = 1.
AntisymMatrix omega_from_model(const ComplexMatrix& h, const ComplexMatrix& delta);
QuadraticModel make_quadratic_model(const ComplexMatrix& h, const ComplexMatrix& delta);

}  // namespace fermiq
