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

#include "fermiq/qfunction.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/special_functions/beta.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <iomanip>
#include <numbers>

#include "fermiq/errors.hpp"
#include "fermiq/fock.hpp"
#include "fermiq/parallel.hpp"

namespace fermiq {
namespace {

constexpr std::uint64_t kMaxProposalsPerDraw = 10000000;
constexpr std::size_t kChunk = 4096;

}  // namespace

QConfig make_qconfig(int modes, double k) {
  if (modes < 1) fail(ErrorCode::InvalidArgument, "modes must be positive");
  if (!(k >= 0.0)) fail(ErrorCode::InvalidArgument, "scaling exponent k must be >= 0");
  return QConfig{modes, k, norm_const(modes, k)};
}

double norm_const(int modes, double k) {
  if (modes < 1 || !(k >= 0.0)) fail(ErrorCode::InvalidArgument, "norm_const needs M >= 1 and k >= 0");
  const double m = modes;
  double log_n = m * (m - 0.5) * std::log(std::numbers::pi) - m * std::log(2.0);
  for (int j = 1; j <= modes; ++j) log_n += std::lgamma(k + j) - std::lgamma(k + m + j - 0.5);
  return std::exp(log_n);
}

double scaling(const AntisymMatrix& x, double k) {
  if (!domain_contains(x)) fail(ErrorCode::OutOfDomain, "scaling requested outside the domain");
  if (k == 0.0) return 1.0;
  // Each lambda^2 appears twice among the eigenvalues of x^T x.
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(x.mat().transpose() * x.mat(), Eigen::EigenvaluesOnly);
  double log_s = 0.0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) log_s += 0.5 * k * std::log1p(-std::max(0.0, es.eigenvalues()(i)));
  return std::exp(log_s);
}

double single_mode_q(double n, double x, double k) {
  if (!(n >= 0.0 && n <= 1.0)) fail(ErrorCode::InvalidArgument, "occupation must lie in [0, 1]");
  if (!(x > -1.0 && x < 1.0)) fail(ErrorCode::OutOfDomain, "x must lie in (-1, 1)");
  const double s = (k == 0.0) ? 1.0 : std::pow(1.0 - x * x, k);
  return s * (0.5 * (1.0 - x) + n * x) / norm_const(1, k);
}

int coordinate_count(int modes) { return modes * (2 * modes - 1); }

RealVector upper_coordinates(const AntisymMatrix& x) {
  RealVector c(coordinate_count(x.modes()));
  int idx = 0;
  for (int i = 0; i < x.dim(); ++i)
    for (int j = i + 1; j < x.dim(); ++j) c(idx++) = x(i, j);
  return c;
}

AntisymMatrix from_upper_coordinates(int modes, const RealVector& c) {
  if (c.size() != coordinate_count(modes)) fail(ErrorCode::DimensionMismatch, "coordinate count");
  RealMatrix m = RealMatrix::Zero(2 * modes, 2 * modes);
  int idx = 0;
  for (int i = 0; i < 2 * modes; ++i)
    for (int j = i + 1; j < 2 * modes; ++j) {
      m(i, j) = c(idx);
      m(j, i) = -c(idx);
      ++idx;
    }
  return AntisymMatrix::project(m);
}

AntisymMatrix draw_domain_point(int modes, double k, std::mt19937_64& rng, std::uint64_t* proposals) {
  std::uniform_real_distribution<double> cube(-1.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector c(coordinate_count(modes));
  for (std::uint64_t attempt = 1; attempt <= kMaxProposalsPerDraw; ++attempt) {
    for (int i = 0; i < c.size(); ++i) c(i) = cube(rng);
    const AntisymMatrix x = from_upper_coordinates(modes, c);
    bool accept = domain_contains(x);
    if (accept && k > 0.0) accept = unit(rng) < scaling(x, k);
    if (accept) {
      if (proposals) *proposals += attempt;
      return x;
    }
  }
  fail(ErrorCode::RejectionStall, "no acceptance in " + std::to_string(kMaxProposalsPerDraw) +
                                      " proposals at M = " + std::to_string(modes) +
                                      "; the cube-to-domain volume ratio is too small for plain rejection");
}

DomainSampleSet sample_domain(int modes, double k, std::size_t count, std::uint64_t seed, int threads) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "count must be >= 1");
  if (modes < 1) fail(ErrorCode::InvalidArgument, "modes must be positive");
  DomainSampleSet set;
  set.samples.resize(count);
  // One stream per fixed chunk keeps the draws independent of the thread count.
  const std::size_t chunks = (count + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> tries(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    std::mt19937_64 rng = stream_rng(seed, c);
    for (std::size_t i = c * kChunk; i < std::min(count, (c + 1) * kChunk); ++i) {
      set.samples[i].x = draw_domain_point(modes, k, rng, &tries[c]);
      set.samples[i].weight = 1.0;
    }
  });
  for (auto t : tries) set.proposals += t;
  if (set.proposals >= 100000 && set.acceptance() < 1e-4)
    fail(ErrorCode::RejectionStall, "acceptance " + std::to_string(set.acceptance()) + " below 1e-4 at M = " +
                                        std::to_string(modes) + "; reduce M or k");
  return set;
}

double moment_factor(int modes, double k) { return 4.0 * modes - 1.0 + 2.0 * k; }

MomentEstimate moment_xhat(const std::vector<DomainSample>& samples, const std::vector<double>& q_weights, double k) {
  if (samples.empty()) fail(ErrorCode::EmptySample, "no samples");
  if (q_weights.size() != samples.size()) fail(ErrorCode::DimensionMismatch, "one weight per sample required");
  const int dim = samples.front().x.dim();
  const std::size_t n = samples.size();
  RealMatrix sum = RealMatrix::Zero(dim, dim);
  RealMatrix sum2 = RealMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < n; ++i) {
    const RealMatrix v = q_weights[i] * samples[i].x.mat();
    sum += v;
    sum2 += v.cwiseProduct(v);
  }
  const double f = moment_factor(dim / 2, k);
  const RealMatrix mean = sum / double(n);
  RealMatrix var = (sum2 / double(n) - mean.cwiseProduct(mean)).cwiseMax(0.0);
  MomentEstimate est;
  est.mean = AntisymMatrix::project(f * mean);
  est.standard_error = f * (var * (1.0 / std::max<double>(1.0, double(n) - 1.0))).cwiseSqrt();
  return est;
}

RealVector occupations(const AntisymMatrix& xhat_mean) {
  const int modes = xhat_mean.modes();
  RealVector n(modes);
  for (int i = 0; i < modes; ++i) n(i) = 0.5 * (1.0 + xhat_mean(i, modes + i));
  return n;
}

double gaussian_overlap(const AntisymMatrix& x1, const AntisymMatrix& x2) {
  if (x1.dim() != x2.dim()) fail(ErrorCode::DimensionMismatch, "overlap of unequal dimensions");
  const int n = x1.dim();
  const double det = (RealMatrix::Identity(n, n) - x1.mat() * x2.mat()).determinant();
  return std::ldexp(std::sqrt(std::max(0.0, det)), -x1.modes());
}

double gaussian_state_q(const AntisymMatrix& x0, const AntisymMatrix& x, double k) {
  return gaussian_overlap(x0, x) * scaling(x, k) / norm_const(x.modes(), k);
}

void gauss_legendre(int nodes, std::vector<double>* x, std::vector<double>* w) {
  if (nodes < 1) fail(ErrorCode::InvalidArgument, "need at least one node");
  RealMatrix jac = RealMatrix::Zero(nodes, nodes);
  for (int i = 1; i < nodes; ++i) {
    const double b = i / std::sqrt(4.0 * i * i - 1.0);
    jac(i, i - 1) = b;
    jac(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(jac);
  x->resize(nodes);
  w->resize(nodes);
  for (int i = 0; i < nodes; ++i) {
    (*x)[i] = es.eigenvalues()(i);
    const double v0 = es.eigenvectors()(0, i);
    (*w)[i] = 2.0 * v0 * v0;
  }
}

ResolutionResult identity_resolution_residual(int modes, double k, int nodes, std::size_t samples,
                                              std::uint64_t seed, int threads) {
  const double norm = norm_const(modes, k);
  const int d = 1 << modes;
  ResolutionResult res;
  if (modes == 1) {
    std::vector<double> xs;
    std::vector<double> ws;
    gauss_legendre(nodes, &xs, &ws);
    FockMatrix acc = FockMatrix::Zero(d, d);
    for (int i = 0; i < nodes; ++i) {
      RealMatrix xm(2, 2);
      xm << 0.0, xs[i], -xs[i], 0.0;
      const AntisymMatrix x = AntisymMatrix::project(xm);
      acc += ws[i] * gaussian_from_covariance(x) * (scaling(x, k) / norm);
    }
    res.residual = (acc - FockMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
    return res;
  }
  if (modes != 2) fail(ErrorCode::InvalidArgument, "resolution check supports M = 1 or 2");
  // Samples follow S dX / int S, so int Lambda^N dX = 2^M E[Lambda].
  const DomainSampleSet set = sample_domain(modes, k, samples, seed, threads);
  const std::size_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<FockMatrix> s1(chunks), s2(chunks);
  parallel_for(chunks, threads, [&](std::size_t c) {
    FockMatrix a = FockMatrix::Zero(d, d);
    FockMatrix b = FockMatrix::Zero(d, d);
    for (std::size_t i = c * kChunk; i < std::min(samples, (c + 1) * kChunk); ++i) {
      const FockMatrix l = gaussian_from_covariance(set.samples[i].x);
      a += l;
      b += l.cwiseAbs2().cast<Complex>();
    }
    s1[c] = a;
    s2[c] = b;
  });
  const FockMatrix zero = FockMatrix::Zero(d, d);
  auto add = [](const FockMatrix& l, const FockMatrix& r) { return FockMatrix(l + r); };
  const FockMatrix mean = pairwise_reduce(s1, zero, add) / double(samples);
  const FockMatrix mean2 = pairwise_reduce(s2, zero, add) / double(samples);
  const double scale = std::ldexp(1.0, modes);
  res.residual = (scale * mean - FockMatrix::Identity(d, d)).cwiseAbs().maxCoeff();
  const RealMatrix var = (mean2.real() - mean.cwiseAbs2()).cwiseMax(0.0);
  res.standard_error = scale * std::sqrt(var.maxCoeff() / double(samples));
  return res;
}

double single_mode_cdf(double n, double x, double k) {
  if (x <= -1.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double u = 0.5 * (1.0 + x);
  const double even = std::pow(2.0, 2.0 * k + 1.0) * boost::math::beta(k + 1.0, k + 1.0) *
                      boost::math::ibeta(k + 1.0, k + 1.0, u);
  const double odd = -std::pow(1.0 - x * x, k + 1.0) / (2.0 * (k + 1.0));
  return (0.5 * even + (n - 0.5) * odd) / norm_const(1, k);
}

std::vector<double> sample_single_mode_q(double n, double k, std::size_t count, std::uint64_t seed) {
  if (count < 1) fail(ErrorCode::InvalidArgument, "count must be >= 1");
  if (!(n >= 0.0 && n <= 1.0)) fail(ErrorCode::InvalidArgument, "occupation must lie in [0, 1]");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng = stream_rng(seed, i);
    const double target = (double(i) + std::uniform_real_distribution<double>(0.0, 1.0)(rng)) / double(count);
    auto f = [&](double x) { return single_mode_cdf(n, x, k) - target; };
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t iters = 200;
    const auto bracket = boost::math::tools::toms748_solve(f, -1.0, 1.0, -target, 1.0 - target, tol, iters);
    out[i] = std::clamp(0.5 * (bracket.first + bracket.second), std::nextafter(-1.0, 0.0), std::nextafter(1.0, 0.0));
  }
  return out;
}

void write_samples_csv(std::ostream& os, const std::vector<DomainSample>& samples, const std::vector<double>& q_values,
                       double k) {
  if (samples.empty()) return;
  const int dim = samples.front().x.dim();
  os << std::setprecision(17);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) os << "x_" << i + 1 << "_" << j + 1 << ",";
  os << "s_weight,q_value\n";
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const RealVector c = upper_coordinates(samples[s].x);
    for (int i = 0; i < c.size(); ++i) os << c(i) << ",";
    os << scaling(samples[s].x, k) << "," << (s < q_values.size() ? q_values[s] : 0.0) << "\n";
  }
}

}  // namespace fermiq
