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

#include "fermiq/antisym.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "fermiq/errors.hpp"

namespace fermiq {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OddDimension: return "OddDimension";
    case ErrorCode::NotAntisymmetric: return "NotAntisymmetric";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotClassD: return "NotClassD";
    case ErrorCode::NotHermitianCovariance: return "NotHermitianCovariance";
    case ErrorCode::SingularShift: return "SingularShift";
    case ErrorCode::SymmetryViolation: return "SymmetryViolation";
    case ErrorCode::TooManyModes: return "TooManyModes";
    case ErrorCode::TooManyModesForExpansion: return "TooManyModesForExpansion";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::StepOutOfRange: return "StepOutOfRange";
    case ErrorCode::RejectionStall: return "RejectionStall";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::StepTooLarge: return "StepTooLarge";
    case ErrorCode::AllTrajectoriesLost: return "AllTrajectoriesLost";
    case ErrorCode::CFLViolation: return "CFLViolation";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

AntisymMatrix AntisymMatrix::checked(const RealMatrix& entries) {
  if (entries.rows() != entries.cols()) fail(ErrorCode::DimensionMismatch, "matrix is not square");
  if (entries.rows() == 0 || entries.rows() % 2 != 0)
    fail(ErrorCode::OddDimension, "dimension " + std::to_string(entries.rows()) + " is not even and positive");
  const double asym = (entries + entries.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12) fail(ErrorCode::NotAntisymmetric, "max |A + A^T| = " + std::to_string(asym));
  return project(entries);
}

AntisymMatrix AntisymMatrix::project(const RealMatrix& entries) {
  return AntisymMatrix(0.5 * (entries - entries.transpose()));
}

AntisymMatrix AntisymMatrix::zero(int modes) {
  return AntisymMatrix(RealMatrix::Zero(2 * modes, 2 * modes));
}

AntisymMatrix AntisymMatrix::operator+(const AntisymMatrix& o) const {
  if (o.dim() != dim()) fail(ErrorCode::DimensionMismatch, "sum of unequal dimensions");
  return AntisymMatrix(m_ + o.m_);
}

AntisymMatrix AntisymMatrix::operator-(const AntisymMatrix& o) const {
  if (o.dim() != dim()) fail(ErrorCode::DimensionMismatch, "difference of unequal dimensions");
  return AntisymMatrix(m_ - o.m_);
}

AntisymMatrix AntisymMatrix::operator*(double s) const { return AntisymMatrix(m_ * s); }

AntisymMatrix make_antisym(const RealMatrix& entries) { return AntisymMatrix::checked(entries); }

AntisymMatrix antisym_identity(int modes) {
  RealMatrix m = RealMatrix::Zero(2 * modes, 2 * modes);
  m.topRightCorner(modes, modes).setIdentity();
  m.bottomLeftCorner(modes, modes) = -RealMatrix::Identity(modes, modes);
  return AntisymMatrix::project(m);
}

RealMatrix canonical_block(const RealVector& lambdas) {
  const int modes = static_cast<int>(lambdas.size());
  RealMatrix b = RealMatrix::Zero(2 * modes, 2 * modes);
  for (int k = 0; k < modes; ++k) {
    b(2 * k, 2 * k + 1) = lambdas(k);
    b(2 * k + 1, 2 * k) = -lambdas(k);
  }
  return b;
}

CanonicalForm canonical_form(const AntisymMatrix& a) {
  const int n = a.dim();
  const int modes = n / 2;
  // For a normal matrix the real Schur form is block diagonal.
  Eigen::RealSchur<RealMatrix> schur(a.mat());
  const RealMatrix& t = schur.matrixT();
  const RealMatrix& u = schur.matrixU();

  struct Pair {
    int first;
    int second;
    double lambda;
  };
  std::vector<Pair> pairs;
  std::vector<int> singles;
  for (int i = 0; i < n;) {
    if (i + 1 < n && t(i + 1, i) != 0.0) {
      const double lam = 0.5 * (t(i, i + 1) - t(i + 1, i));
      if (lam >= 0.0)
        pairs.push_back({i, i + 1, lam});
      else
        pairs.push_back({i + 1, i, -lam});
      i += 2;
    } else {
      singles.push_back(i);
      i += 1;
    }
  }
  // 1x1 blocks carry zero eigenvalues; pair them in order.
  for (std::size_t s = 0; s + 1 < singles.size(); s += 2) pairs.push_back({singles[s], singles[s + 1], 0.0});

  std::stable_sort(pairs.begin(), pairs.end(), [](const Pair& l, const Pair& r) { return l.lambda > r.lambda; });

  CanonicalForm cf;
  cf.rotation.resize(n, n);
  cf.lambdas.resize(modes);
  for (int k = 0; k < modes; ++k) {
    cf.rotation.row(2 * k) = u.col(pairs[k].first).transpose();
    cf.rotation.row(2 * k + 1) = u.col(pairs[k].second).transpose();
    cf.lambdas(k) = pairs[k].lambda;
  }
  if (cf.rotation.determinant() < 0.0) {
    // Swapping the rows of a (numerically) zero block flips det R at no cost.
    const int last = modes - 1;
    if (cf.lambdas(last) <= 1e-12) {
      cf.rotation.row(2 * last).swap(cf.rotation.row(2 * last + 1));
      cf.lambdas(last) = 0.0;
    }
  }
  return cf;
}

double pfaffian(const RealMatrix& input) {
  const int n = static_cast<int>(input.rows());
  if (n % 2 != 0) return 0.0;
  RealMatrix a = input;
  double result = 1.0;
  for (int k = 0; k + 1 < n; k += 2) {
    Eigen::Index rel = 0;
    a.col(k).tail(n - k - 1).cwiseAbs().maxCoeff(&rel);
    const int piv = k + 1 + static_cast<int>(rel);
    if (piv != k + 1) {
      a.row(k + 1).swap(a.row(piv));
      a.col(k + 1).swap(a.col(piv));
      result = -result;
    }
    if (a(k + 1, k) == 0.0) return 0.0;
    result *= a(k, k + 1);
    if (k + 2 < n) {
      const int rest = n - k - 2;
      const RealVector tau = a.row(k).tail(rest).transpose() / a(k, k + 1);
      const RealVector col = a.col(k + 1).tail(rest);
      a.bottomRightCorner(rest, rest) += tau * col.transpose() - col * tau.transpose();
    }
  }
  return result;
}

double max_lambda(const AntisymMatrix& x) {
  // Eigenvalues of x^T x are the squared canonical amplitudes.
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(x.mat().transpose() * x.mat(), Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

bool domain_contains(const AntisymMatrix& x, double margin) {
  // lambda_max < r  iff  r^2 I - x^T x is positive definite.
  const double r = 1.0 - margin;
  if (!(r > 0.0)) return false;
  const RealMatrix g = r * r * RealMatrix::Identity(x.dim(), x.dim()) - x.mat().transpose() * x.mat();
  Eigen::LLT<RealMatrix> llt(g);
  if (llt.info() != Eigen::Success) return false;
  // Pivots near zero mean a point within rounding of the boundary; decide exactly.
  const double pivot = llt.matrixLLT().diagonal().minCoeff();
  if (pivot * pivot > 1e-10 * r * r) return true;
  return max_lambda(x) < r;
}

AntisymMatrix commutator(const AntisymMatrix& a, const AntisymMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorCode::DimensionMismatch, "commutator of unequal dimensions");
  return AntisymMatrix::project(a.mat() * b.mat() - b.mat() * a.mat());
}

}  // namespace fermiq
