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

#include <cstdint>
#include <optional>
#include <vector>

#include "fermiq/antisym.hpp"
#include "fermiq/transforms.hpp"

namespace fermiq {

// ---------------------------------------------------------------------------
// Unitary characteristics: dx/dt = [Omega, x].

AntisymMatrix drift_unitary(const AntisymMatrix& omega, const AntisymMatrix& x);

struct TimedState {
  double t;
  AntisymMatrix x;
};

// Fixed-step RK4; the step actually used is t_final / ceil(t_final / dt).
// Throws StepTooLarge if dt > 0.1 / ||Omega||_2.
std::vector<TimedState> evolve_unitary(const AntisymMatrix& x0, const AntisymMatrix& omega, double t_final,
                                       double dt, int record_every = 1);

// e^{Omega t} x0 e^{-Omega t}.
AntisymMatrix evolve_unitary_exact(const AntisymMatrix& x0, const AntisymMatrix& omega, double t);

// ---------------------------------------------------------------------------
// Dissipative model: number-conserving frequencies plus zero-temperature loss.

class DissipativeModel {
 public:
  // omega, gamma: M x M real symmetric; gamma positive semidefinite.
  static DissipativeModel checked(const RealMatrix& omega, const RealMatrix& gamma);
  static DissipativeModel single_mode(double gamma, double omega = 0.0);

  int modes() const { return static_cast<int>(omega_.rows()); }
  const RealMatrix& omega() const { return omega_; }
  const RealMatrix& gamma() const { return gamma_; }
  const RealMatrix& hopping_block() const { return hopping_block_; }  // diag(omega, omega)
  const RealMatrix& loss_block() const { return loss_block_; }        // [[0, -gamma/2], [gamma/2, 0]]

 private:
  DissipativeModel() = default;
  RealMatrix omega_, gamma_, hopping_block_, loss_block_;
};

// Rates on the phase point X. The Q-function at scaling k obeys
//   dQ/dt = div(A Q) + (b - A . grad ln S) Q,   A = F - F^T,
//   F = (1/2) X^- OmegaTilde X^+ + X^- Upsilon X.
struct DissipativeRates {
  AntisymMatrix dXdt;  // -A
  double weight_rate;  // value rate: d ln Q / dt along the characteristic
  double divergence;   // sum over upper coordinates of dA_pl / dX_pl
  double mass_rate;    // weight_rate - divergence: growth of a transported sample's mass
};

// X may lie on the boundary when k = 0.
DissipativeRates dissipative_drift(const AntisymMatrix& X, const DissipativeModel& model, double k = 0.0);

// Closed form 1 / (1 + (1/X0 - 1) e^{-gamma t}); 0 for X0 = 0.
double analytic_quantum_dot(double x0, double gamma, double t);
// First time the closed form reaches -1, for X0 < 0; empty otherwise.
std::optional<double> quantum_dot_exit_time(double x0, double gamma);

// RK4 along dX/dt = -A(X) with ln w integrated alongside at the value rate.
struct CharacteristicPoint {
  double t;
  AntisymMatrix X;
  double log_weight;
  bool alive;
};
std::vector<CharacteristicPoint> integrate_characteristic(const AntisymMatrix& X0, const DissipativeModel& model,
                                                          double k, double t_final, double dt,
                                                          int record_every = 1);

// ---------------------------------------------------------------------------
// Weighted-trajectory ensembles.

struct EnsembleInitial {
  // Single mode: occupation n0 drawn with the stratified sampler.
  static EnsembleInitial single_mode(double n0);
  // Gaussian state with covariance x0, drawn by thinning domain samples with the overlap.
  static EnsembleInitial gaussian(const AntisymMatrix& x0);

  int modes = 1;
  bool is_single_mode = true;
  double n0 = 0.0;
  AntisymMatrix x0 = AntisymMatrix::zero(1);
};

struct EnsembleOptions {
  double k = 1.0;
  double t_final = 1.0;
  double dt = 1e-3;
  std::size_t trajectories = 10000;
  int record_every = 100;  // steps between records
  std::uint64_t seed = 1;
  int threads = 1;
};

struct EnsembleRecord {
  double t;
  AntisymMatrix xhat;          // covariance-coordinate estimate of <Xhat>
  RealMatrix standard_error;   // per entry
  RealVector occupations;      // (1 + <Xhat>_{i, M+i}) / 2
  double surviving_fraction;   // alive / initial
  double lost_weight;          // cumulative, normalized by the initial count
  double mean_weight;          // sum of live weights / initial count
  double effective_samples;    // (sum w)^2 / sum w^2 over live trajectories
};

struct EnsembleResult {
  std::vector<EnsembleRecord> records;
  std::uint64_t proposals = 0;  // initial-state draws (Gaussian start)
};

EnsembleResult evolve_ensemble(const EnsembleInitial& init, const DissipativeModel& model, const EnsembleOptions& opt);

// ---------------------------------------------------------------------------
// One-mode PDE on (-1, 1): dQ/dt = d/dX[Q a] + c Q with a = gamma X (X - 1).
// The scheme advances P = Q / S with an upwind flux and an exact source
// factor, then restores Q = S P.

struct PdeSnapshot {
  double t;
  std::vector<double> q;
};

struct PdeResult {
  std::vector<double> x;  // cell centres
  double h = 0.0;
  double dt = 0.0;        // largest step used
  std::vector<PdeSnapshot> snapshots;
  double initial_mass = 0.0;
  double final_mass = 0.0;
  double boundary_outflow = 0.0;  // cumulative, positive when leaving
  double source = 0.0;            // cumulative mass added by the exponential source substep
  // Total probability is conserved by the exact dynamics, so this ratio
  // measures the scheme's drift, which is first order in the cell width.
  double audit() const { return final_mass / initial_mass; }
};

// cfl is the Courant number |v| dt / h; values above 1 raise CFLViolation.
PdeResult pde_q_single_mode(double n0, double gamma, double k, int cells, const std::vector<double>& times,
                            double cfl = 0.4);

// ---------------------------------------------------------------------------
// Bosonic comparator: d alpha/dt = -i omega alpha, x_b = v v^T with v = (Re alpha, Im alpha).

struct BosonicComparison {
  ComplexMatrix alpha_t;  // M x 1
  RealMatrix xb_direct;   // built from alpha(t)
  RealMatrix xb_commutator;  // e^{Omega_b t} x_b(0) e^{-Omega_b t}
  double residual = 0.0;  // max entry difference
};

RealMatrix bosonic_generator(const RealMatrix& omega);
BosonicComparison bosonic_compare(const RealMatrix& omega, const ComplexMatrix& alpha0, double t);

}  // namespace fermiq
