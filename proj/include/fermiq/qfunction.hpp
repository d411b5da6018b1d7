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
#include <functional>
#include <ostream>
#include <random>
#include <vector>

#include "fermiq/antisym.hpp"

namespace fermiq {

struct QConfig {
  int modes = 1;
  double k = 1.0;
  double norm = 0.0;  // filled by make_qconfig
};

QConfig make_qconfig(int modes, double k);

struct DomainSample {
  AntisymMatrix x;
  double weight = 1.0;
};

struct DomainSampleSet {
  std::vector<DomainSample> samples;
  std::uint64_t proposals = 0;
  double acceptance() const { return samples.empty() ? 0.0 : double(samples.size()) / double(proposals); }
};

// Normalization of the scaled Q-function: 2^{-M} times the S-weighted domain volume.
double norm_const(int modes, double k);

// det[I + x^2]^{k/2} = prod (1 - lambda^2)^k; exactly 1 for k = 0.
double scaling(const AntisymMatrix& x, double k);

double single_mode_q(double n, double x, double k);

// Upper-triangle coordinates in row order (0,1), (0,2), ..., (2M-2, 2M-1).
int coordinate_count(int modes);
RealVector upper_coordinates(const AntisymMatrix& x);
AntisymMatrix from_upper_coordinates(int modes, const RealVector& c);

// Uniform proposals on the cube, accepted inside the domain and thinned by S.
// Each fixed block of samples draws from its own stream, so output is
// independent of the thread count.
DomainSampleSet sample_domain(int modes, double k, std::size_t count, std::uint64_t seed, int threads = 1);

// One accepted draw from the S-weighted domain measure using rng.
AntisymMatrix draw_domain_point(int modes, double k, std::mt19937_64& rng, std::uint64_t* proposals);

// Moments from samples drawn with density p and importance weights
// w_i = Q(x_i)/p(x_i): <Xhat> = (4M - 1 + 2k) mean(w_i x_i).
struct MomentEstimate {
  AntisymMatrix mean;
  RealMatrix standard_error;
};
double moment_factor(int modes, double k);
MomentEstimate moment_xhat(const std::vector<DomainSample>& samples, const std::vector<double>& q_weights, double k);
RealVector occupations(const AntisymMatrix& xhat_mean);

// Closed-form Tr[Lambda(x1) Lambda(x2)] = 2^{-M} sqrt(det(I - x1 x2)).
double gaussian_overlap(const AntisymMatrix& x1, const AntisymMatrix& x2);
// Q-function of the Gaussian state with covariance x0.
double gaussian_state_q(const AntisymMatrix& x0, const AntisymMatrix& x, double k);

// Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
void gauss_legendre(int nodes, std::vector<double>* x, std::vector<double>* w);

struct ResolutionResult {
  double residual = 0.0;        // max |int Lambda^N dX - I|
  double standard_error = 0.0;  // zero for quadrature
};
// M = 1: quadrature with `nodes` points. M = 2: Monte Carlo with `samples` draws.
ResolutionResult identity_resolution_residual(int modes, double k, int nodes, std::size_t samples = 1000000,
                                              std::uint64_t seed = 1, int threads = 1);

// Single-mode sampler: stratified inverse-CDF draws from Q(x) for occupation n.
// Stratum i is [i/count, (i+1)/count) in CDF space, jittered by stream i.
std::vector<double> sample_single_mode_q(double n, double k, std::size_t count, std::uint64_t seed);
double single_mode_cdf(double n, double x, double k);

// CSV columns: upper-triangle coordinates, S-weight, Q-value.
void write_samples_csv(std::ostream& os, const std::vector<DomainSample>& samples, const std::vector<double>& q_values,
                       double k);

}  // namespace fermiq
