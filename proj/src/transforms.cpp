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

#include "fermiq/transforms.hpp"

#include <cmath>

#include "fermiq/errors.hpp"

namespace fermiq {
namespace {

constexpr Complex kI(0.0, 1.0);

ComplexMatrix u0_inverse(int modes) {
  // U0^{-1} = U0^dag / 2.
  return structure_matrices(modes).U0.adjoint() * 0.5;
}

// Real antisymmetric part of a nominally real antisymmetric complex matrix,
// with the residues reported through the out-parameters.
RealMatrix real_part_checked(const ComplexMatrix& c, double* imag_res, double* asym_res) {
  *imag_res = c.imag().cwiseAbs().maxCoeff();
  *asym_res = (c.real() + c.real().transpose()).cwiseAbs().maxCoeff();
  return c.real();
}

RealMatrix shifted_inverse(const RealMatrix& a, const char* what) {
  Eigen::PartialPivLU<RealMatrix> lu(a);
  const double rc = lu.rcond();
  if (!(rc > 1e-12)) fail(ErrorCode::SingularShift, std::string(what) + " has reciprocal condition " + std::to_string(rc));
  return lu.inverse();
}

}  // namespace

StructureMatrices structure_matrices(int modes) {
  if (modes < 1) fail(ErrorCode::InvalidArgument, "modes must be positive");
  const int n = 2 * modes;
  StructureMatrices s;
  s.J = RealMatrix::Identity(n, n);
  s.J.topLeftCorner(modes, modes) *= -1.0;
  const ComplexMatrix id = ComplexMatrix::Identity(modes, modes);
  s.U0.resize(n, n);
  s.U0 << id, id, -kI * id, kI * id;
  s.calI = antisym_identity(modes);
  return s;
}

CovarianceSigma CovarianceSigma::hermitian(const ComplexMatrix& n, const ComplexMatrix& m) {
  CovarianceSigma s;
  s.modes = static_cast<int>(n.rows());
  s.n = n;
  s.m = m;
  s.m_plus = m.adjoint();
  return s;
}

bool CovarianceSigma::is_hermitian(double tol) const {
  if ((m + m.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  if ((m_plus + m_plus.transpose()).cwiseAbs().maxCoeff() > tol) return false;
  if ((n - n.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  return (m_plus - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix CovarianceSigma::full() const {
  const ComplexMatrix id = ComplexMatrix::Identity(modes, modes);
  ComplexMatrix s(2 * modes, 2 * modes);
  s << n.transpose() - id, m, m_plus, id - n;
  return s;
}

AntisymMatrix y_from_mu(const ComplexMatrix& mu) {
  if (mu.rows() != mu.cols() || mu.rows() % 2 != 0) fail(ErrorCode::DimensionMismatch, "mu must be 2M x 2M");
  const int modes = static_cast<int>(mu.rows()) / 2;
  const ComplexMatrix y = 0.5 * kI * structure_matrices(modes).U0 * mu * u0_inverse(modes);
  double imag_res = 0.0;
  double asym_res = 0.0;
  const RealMatrix re = real_part_checked(y, &imag_res, &asym_res);
  if (imag_res > 1e-10 || asym_res > 1e-10)
    fail(ErrorCode::NotClassD,
         "imaginary residue " + std::to_string(imag_res) + ", symmetry residue " + std::to_string(asym_res));
  return AntisymMatrix::project(re);
}

ComplexMatrix mu_from_y(const AntisymMatrix& y) {
  const int modes = y.modes();
  return -2.0 * kI * u0_inverse(modes) * y.mat().cast<Complex>() * structure_matrices(modes).U0;
}

AntisymMatrix X_from_sigma(const CovarianceSigma& sigma) {
  if (!sigma.is_hermitian()) fail(ErrorCode::NotHermitianCovariance, "sigma blocks violate n = n^dag, m_plus = m^dag");
  const StructureMatrices s = structure_matrices(sigma.modes);
  const ComplexMatrix x =
      kI * s.U0 * (s.J.cast<Complex>() - 2.0 * sigma.full()) * u0_inverse(sigma.modes);
  double imag_res = 0.0;
  double asym_res = 0.0;
  const RealMatrix re = real_part_checked(x, &imag_res, &asym_res);
  if (imag_res > 1e-10 || asym_res > 1e-10)
    fail(ErrorCode::NotHermitianCovariance, "X is not real antisymmetric (residue " +
                                                std::to_string(std::max(imag_res, asym_res)) + ")");
  return AntisymMatrix::project(re);
}

AntisymMatrix x_from_sigma(const CovarianceSigma& sigma) { return x_of_X(X_from_sigma(sigma)); }

CovarianceSigma sigma_from_X(const AntisymMatrix& X) {
  const int modes = X.modes();
  const StructureMatrices s = structure_matrices(modes);
  const ComplexMatrix full =
      0.5 * (s.J.cast<Complex>() + kI * u0_inverse(modes) * X.mat().cast<Complex>() * s.U0);
  CovarianceSigma out;
  out.modes = modes;
  out.n = ComplexMatrix::Identity(modes, modes) - full.bottomRightCorner(modes, modes);
  out.m = full.topRightCorner(modes, modes);
  out.m_plus = full.bottomLeftCorner(modes, modes);
  return out;
}

AntisymMatrix X_from_Y(const AntisymMatrix& y) {
  const RealMatrix cal = antisym_identity(y.modes()).mat();
  return AntisymMatrix::project(cal + shifted_inverse(y.mat() + cal, "Y + calI"));
}

AntisymMatrix Y_from_X(const AntisymMatrix& X) {
  const RealMatrix cal = antisym_identity(X.modes()).mat();
  return AntisymMatrix::project(shifted_inverse(X.mat() - cal, "X - calI") - cal);
}

AntisymMatrix x_of_X(const AntisymMatrix& X) {
  const RealMatrix cal = antisym_identity(X.modes()).mat();
  return AntisymMatrix::project(cal * X.mat().transpose() * cal);
}

double gaussian_norm(const AntisymMatrix& X) {
  const int modes = X.modes();
  const AntisymMatrix cal = antisym_identity(modes);
  // Pf(calI) = (-1)^{M(M-1)/2} restores a positive trace at every M.
  const double pf_cal = ((modes * (modes - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
  return std::ldexp(pfaffian(cal.mat() - X.mat()) * pf_cal, -modes);
}

AntisymMatrix omega_from_model(const ComplexMatrix& h, const ComplexMatrix& delta) {
  const int modes = static_cast<int>(h.rows());
  if (h.cols() != modes || delta.rows() != modes || delta.cols() != modes)
    fail(ErrorCode::DimensionMismatch, "h and delta must both be M x M");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-12) fail(ErrorCode::SymmetryViolation, "h is not hermitian");
  if ((delta + delta.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::SymmetryViolation, "delta is not antisymmetric");
  const ComplexMatrix hp = h + h.transpose();
  const ComplexMatrix hm = h - h.transpose();
  const ComplexMatrix dp = delta + delta.conjugate();
  const ComplexMatrix dm = delta - delta.conjugate();
  ComplexMatrix w(2 * modes, 2 * modes);
  w << hm + dm, kI * hp - kI * dp, -kI * hp - kI * dp, hm - dm;
  w /= 2.0 * kI;
  double imag_res = 0.0;
  double asym_res = 0.0;
  const RealMatrix re = real_part_checked(w, &imag_res, &asym_res);
  if (imag_res > 1e-10 || asym_res > 1e-10) fail(ErrorCode::SymmetryViolation, "Omega is not real antisymmetric");
  return AntisymMatrix::project(re);
}

QuadraticModel make_quadratic_model(const ComplexMatrix& h, const ComplexMatrix& delta) {
  return QuadraticModel{h, delta, omega_from_model(h, delta)};
}

}  // namespace fermiq
