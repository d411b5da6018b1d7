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

#include "fermiq/fock.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <unsupported/Eigen/MatrixFunctions>

#include "fermiq/errors.hpp"
#include "fermiq/qfunction.hpp"

namespace fermiq {
namespace {

constexpr Complex kI(0.0, 1.0);
constexpr int kCachedModes = 6;

void check_modes(int modes) {
  if (modes < 1 || modes > kMaxFockModes)
    fail(ErrorCode::TooManyModes, "M = " + std::to_string(modes) + " outside [1, " +
                                      std::to_string(kMaxFockModes) + "]");
}

std::shared_ptr<FockTables> build_tables(int modes) {
  auto t = std::make_shared<FockTables>();
  t->modes = modes;
  const int d = 1 << modes;
  t->identity = FockMatrix::Identity(d, d);
  for (int i = 0; i < modes; ++i) {
    FockMatrix a = FockMatrix::Zero(d, d);
    for (unsigned s = 0; s < static_cast<unsigned>(d); ++s) {
      if (!((s >> i) & 1u)) continue;
      const unsigned below = s & ((1u << i) - 1u);
      a(static_cast<int>(s ^ (1u << i)), static_cast<int>(s)) = (std::popcount(below) % 2 == 0) ? 1.0 : -1.0;
    }
    t->a.push_back(a);
    t->adag.push_back(a.adjoint());
  }
  t->gamma.resize(2 * modes);
  for (int i = 0; i < modes; ++i) {
    t->gamma[i] = t->a[i] + t->adag[i];
    t->gamma[modes + i] = -kI * (t->a[i] - t->adag[i]);
  }
  return t;
}

// Grassmann polynomial over generators b_0..b_{2M-1}; key bit g marks b_g.
using Grassmann = std::map<unsigned, Complex>;

Grassmann grassmann_mul(const Grassmann& p, const Grassmann& q) {
  Grassmann r;
  for (const auto& [m1, c1] : p) {
    for (const auto& [m2, c2] : q) {
      if (m1 & m2) continue;
      // Sign of sorting the concatenation: count pairs (i in m1, j in m2), i > j.
      int swaps = 0;
      for (unsigned rest = m2; rest; rest &= rest - 1) {
        const unsigned j = static_cast<unsigned>(std::countr_zero(rest));
        swaps += std::popcount(m1 >> (j + 1));
      }
      r[m1 | m2] += (swaps % 2 == 0 ? 1.0 : -1.0) * c1 * c2;
    }
  }
  return r;
}

}  // namespace

const FockTables& fock_tables(int modes) {
  check_modes(modes);
  static std::mutex mu;
  static std::map<int, std::shared_ptr<FockTables>> cache;
  thread_local std::shared_ptr<FockTables> scratch;
  if (modes > kCachedModes) {
    scratch = build_tables(modes);
    return *scratch;
  }
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[modes];
  if (!slot) slot = build_tables(modes);
  return *slot;
}

std::vector<std::pair<FockMatrix, FockMatrix>> ladder_ops(int modes) {
  const FockTables& t = fock_tables(modes);
  std::vector<std::pair<FockMatrix, FockMatrix>> out;
  for (int i = 0; i < modes; ++i) out.emplace_back(t.a[i], t.adag[i]);
  return out;
}

std::vector<FockMatrix> majorana_ops(int modes) { return fock_tables(modes).gamma; }

FockMatrix gaussian_from_covariance(const AntisymMatrix& cov) {
  const int modes = cov.modes();
  const FockTables& t = fock_tables(modes);
  const CanonicalForm cf = canonical_form(cov);
  // Rotated Majoranas gamma'_a = sum_m R_am gamma_m keep the Clifford relations.
  FockMatrix lambda = t.identity;
  for (int k = 0; k < modes; ++k) {
    FockMatrix g1 = FockMatrix::Zero(t.identity.rows(), t.identity.cols());
    FockMatrix g2 = g1;
    for (int m = 0; m < 2 * modes; ++m) {
      g1 += cf.rotation(2 * k, m) * t.gamma[m];
      g2 += cf.rotation(2 * k + 1, m) * t.gamma[m];
    }
    lambda = lambda * (0.5 * (t.identity + kI * cf.lambdas(k) * g1 * g2));
  }
  return lambda;
}

FockMatrix gaussian_op(const AntisymMatrix& X) { return gaussian_from_covariance(x_of_X(X)); }

FockMatrix gaussian_op_unnormalized(const AntisymMatrix& Y) {
  const AntisymMatrix X = X_from_Y(Y);
  return gaussian_op(X) / gaussian_norm(X);
}

FockMatrix normal_ordered_expansion(const AntisymMatrix& Y) {
  const int modes = Y.modes();
  if (modes > kMaxExpansionModes)
    fail(ErrorCode::TooManyModesForExpansion, "expansion supports M <= " + std::to_string(kMaxExpansionModes));
  const FockTables& t = fock_tables(modes);
  const int n = 2 * modes;
  // gamma = U0 b with b = (a_1..a_M, a_1^dag..a_M^dag), so the exponent is
  // sum_AB C_AB b_A b_B with C = (i/2) U0^T Y U0.
  const ComplexMatrix u0 = structure_matrices(modes).U0;
  const ComplexMatrix c = 0.5 * kI * u0.transpose() * Y.mat().cast<Complex>() * u0;
  Grassmann quad;
  for (int A = 0; A < n; ++A)
    for (int B = 0; B < n; ++B)
      if (A != B) {
        const Grassmann prod = grassmann_mul({{1u << A, 1.0}}, {{1u << B, c(A, B)}});
        for (const auto& [k, v] : prod) quad[k] += v;
      }
  Grassmann sum{{0u, 1.0}};
  Grassmann term{{0u, 1.0}};
  for (int order = 1; order <= modes; ++order) {
    term = grassmann_mul(term, quad);
    for (auto& [k, v] : term) v /= static_cast<double>(order);
    for (const auto& [k, v] : term) sum[k] += v;
  }
  FockMatrix out = FockMatrix::Zero(t.identity.rows(), t.identity.cols());
  for (const auto& [mono, coef] : sum) {
    const unsigned ann = mono & ((1u << modes) - 1u);
    const unsigned cre = mono >> modes;
    // Sorted order puts annihilators first; moving creators left costs (-1)^{|ann||cre|}.
    const double sign = ((std::popcount(ann) * std::popcount(cre)) % 2 == 0) ? 1.0 : -1.0;
    FockMatrix op = t.identity;
    for (int i = 0; i < modes; ++i)
      if ((cre >> i) & 1u) op = op * t.adag[i];
    for (int i = 0; i < modes; ++i)
      if ((ann >> i) & 1u) op = op * t.a[i];
    out += sign * coef * op;
  }
  return out;
}

FockMatrix xhat_op(int modes, int mu, int nu) {
  const FockTables& t = fock_tables(modes);
  if (mu < 0 || nu < 0 || mu >= 2 * modes || nu >= 2 * modes || mu == nu)
    fail(ErrorCode::BadIndex, "xhat indices (" + std::to_string(mu) + ", " + std::to_string(nu) + ")");
  return kI * t.gamma[mu] * t.gamma[nu];
}

FockMatrix number_op(int modes, int mode) {
  const FockTables& t = fock_tables(modes);
  if (mode < 0 || mode >= modes) fail(ErrorCode::BadIndex, "mode index " + std::to_string(mode));
  return t.adag[mode] * t.a[mode];
}

AntisymMatrix covariance_of(const FockMatrix& rho) {
  const int d = static_cast<int>(rho.rows());
  const int modes = std::countr_zero(static_cast<unsigned>(d));
  const FockTables& t = fock_tables(modes);
  RealMatrix x = RealMatrix::Zero(2 * modes, 2 * modes);
  for (int m = 0; m < 2 * modes; ++m)
    for (int n = m + 1; n < 2 * modes; ++n) {
      const double v = (rho * (kI * t.gamma[m] * t.gamma[n])).trace().real();
      x(m, n) = v;
      x(n, m) = -v;
    }
  return AntisymMatrix::project(x);
}

FockState FockState::checked(const FockMatrix& rho) {
  const int d = static_cast<int>(rho.rows());
  if (rho.cols() != d || d < 2 || std::popcount(static_cast<unsigned>(d)) != 1)
    fail(ErrorCode::DimensionMismatch, "density matrix must be 2^M x 2^M");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12) fail(ErrorCode::InvalidArgument, "rho not hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-12) fail(ErrorCode::InvalidArgument, "rho trace differs from 1");
  Eigen::SelfAdjointEigenSolver<FockMatrix> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) fail(ErrorCode::InvalidArgument, "rho has a negative eigenvalue");
  return FockState(std::countr_zero(static_cast<unsigned>(d)), rho);
}

FockState FockState::basis(int modes, unsigned occupation_bits) {
  check_modes(modes);
  const int d = 1 << modes;
  FockMatrix rho = FockMatrix::Zero(d, d);
  rho(static_cast<int>(occupation_bits), static_cast<int>(occupation_bits)) = 1.0;
  return FockState(modes, rho);
}

FockState FockState::single_mode(double n) {
  if (!(n >= 0.0 && n <= 1.0)) fail(ErrorCode::InvalidArgument, "occupation must lie in [0, 1]");
  FockMatrix rho = FockMatrix::Zero(2, 2);
  rho(0, 0) = 1.0 - n;
  rho(1, 1) = n;
  return FockState(1, rho);
}

FockState FockState::gaussian(const AntisymMatrix& cov) {
  if (!domain_contains(cov, -1e-12)) fail(ErrorCode::OutOfDomain, "covariance outside the closed domain");
  FockMatrix rho = gaussian_from_covariance(cov);
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return FockState(cov.modes(), rho);
}

double qfunction_oracle(const FockState& rho, const AntisymMatrix& x, double k) {
  if (x.modes() != rho.modes()) fail(ErrorCode::DimensionMismatch, "state and phase point differ in M");
  if (!domain_contains(x)) fail(ErrorCode::OutOfDomain, "x outside the domain");
  const double overlap = (rho.mat() * gaussian_from_covariance(x)).trace().real();
  return overlap * scaling(x, k) / norm_const(x.modes(), k);
}

FockMatrix bdg_hamiltonian(const ComplexMatrix& h, const ComplexMatrix& delta) {
  const int modes = static_cast<int>(h.rows());
  const FockTables& t = fock_tables(modes);
  FockMatrix hm = FockMatrix::Zero(t.identity.rows(), t.identity.cols());
  for (int i = 0; i < modes; ++i)
    for (int j = 0; j < modes; ++j) {
      hm += 0.5 * h(i, j) * (t.adag[i] * t.a[j] - t.a[j] * t.adag[i]);
      hm += 0.5 * (delta(i, j) * t.adag[i] * t.adag[j] - std::conj(delta(i, j)) * t.a[i] * t.a[j]);
    }
  return hm;
}

FockMatrix evolve_unitary_oracle(const FockMatrix& rho, const FockMatrix& hamiltonian, double t) {
  const FockMatrix gen = (-kI * t) * hamiltonian;
  const FockMatrix u = gen.exp();
  return u * rho * u.adjoint();
}

FockMatrix lindblad_rhs(const FockMatrix& rho, const RealMatrix& omega, const RealMatrix& gamma) {
  const int d = static_cast<int>(rho.rows());
  const int modes = std::countr_zero(static_cast<unsigned>(d));
  const FockTables& t = fock_tables(modes);
  FockMatrix h = FockMatrix::Zero(d, d);
  FockMatrix out = FockMatrix::Zero(d, d);
  for (int i = 0; i < modes; ++i)
    for (int j = 0; j < modes; ++j) {
      h += omega(i, j) * t.adag[i] * t.a[j];
      if (gamma(i, j) != 0.0) {
        const FockMatrix n = t.adag[j] * t.a[i];
        out += gamma(i, j) * (t.a[i] * rho * t.adag[j] - 0.5 * (n * rho + rho * n));
      }
    }
  out += -kI * (h * rho - rho * h);
  return out;
}

FockMatrix evolve_lindblad_oracle(const FockMatrix& rho, const RealMatrix& omega, const RealMatrix& gamma,
                                  double t) {
  const int d = static_cast<int>(rho.rows());
  // Column-major vectorization: column c of the generator is L(E_c).
  ComplexMatrix gen(d * d, d * d);
  for (int c = 0; c < d * d; ++c) {
    FockMatrix e = FockMatrix::Zero(d, d);
    e(c % d, c / d) = 1.0;
    const FockMatrix img = lindblad_rhs(e, omega, gamma);
    gen.col(c) = Eigen::Map<const Eigen::VectorXcd>(img.data(), d * d);
  }
  const ComplexMatrix prop = (gen * t).exp();
  const Eigen::VectorXcd v = prop * Eigen::Map<const Eigen::VectorXcd>(rho.data(), d * d);
  return Eigen::Map<const FockMatrix>(v.data(), d, d);
}

}  // namespace fermiq
