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


#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>
#include <sstream>

#include "fermiq/qfunction.hpp"
#include "../support.hpp"

namespace fermiq {
namespace {

using test::max_abs;
using test::single;
using test::with_lambdas;

double quad(const std::function<double(double)>& f, int nodes = 64) {
  std::vector<double> x, w;
  gauss_legendre(nodes, &x, &w);
  double s = 0.0;
  for (int i = 0; i < nodes; ++i) s += w[i] * f(x[i]);
  return s;
}

TEST(NormConst, SingleModeValues) {
  EXPECT_EQ(norm_const(1, 0.0), 1.0);
  EXPECT_NEAR(norm_const(1, 1.0), 2.0 / 3.0, 1e-14);
  for (double k : {1.0, 2.0, 3.0, 4.5})
    EXPECT_NEAR(norm_const(1, k), quad([k](double x) { return 0.5 * std::pow(1.0 - x * x, k); }), 1e-10) << k;
  // The endpoint singularity of the derivative slows quadrature for half-integer k.
  EXPECT_NEAR(norm_const(1, 0.5), std::numbers::pi / 4.0, 1e-14);
}

TEST(NormConst, PositiveForLargerModes) {
  for (int m = 1; m <= 6; ++m)
    for (double k : {0.0, 1.0, 4.0}) EXPECT_GT(norm_const(m, k), 0.0);
  EXPECT_EQ(make_qconfig(2, 1.0).norm, norm_const(2, 1.0));
}

TEST(Scaling, Examples) {
  std::mt19937_64 rng(41);
  const AntisymMatrix any = random_domain_point(2, rng);
  EXPECT_EQ(scaling(any, 0.0), 1.0);
  EXPECT_NEAR(scaling(single(0.6), 1.0), 0.64, 1e-14);
  RealVector l(2);
  l << 0.5, 0.5;
  EXPECT_NEAR(scaling(with_lambdas(l, rng), 2.0), std::pow(0.75, 4), 1e-12);
  EXPECT_FERMIQ_ERROR(scaling(single(1.0), 1.0), ErrorCode::OutOfDomain);
}

TEST(Scaling, EvenAndBounded) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 20; ++i) {
    const AntisymMatrix x = random_domain_point(2, rng, 0.99);
    const double s = scaling(x, 1.5);
    EXPECT_EQ(s, scaling(-x, 1.5));
    EXPECT_GT(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(SingleModeQ, Examples) {
  EXPECT_NEAR(single_mode_q(1.0, 0.0, 0.0), 0.5, 1e-15);
  EXPECT_NEAR(single_mode_q(0.5, 0.77, 0.0), 0.5, 1e-15);
  for (double n : {0.0, 0.2, 0.9})
    for (double x : {-0.8, 0.3})
      for (double k : {0.0, 1.0}) EXPECT_NEAR(single_mode_q(n, x, k), single_mode_q(1.0 - n, -x, k), 1e-15);
  EXPECT_FERMIQ_ERROR(single_mode_q(1.2, 0.0, 0.0), ErrorCode::InvalidArgument);
  EXPECT_FERMIQ_ERROR(single_mode_q(0.5, 1.0, 0.0), ErrorCode::OutOfDomain);
}

TEST(SingleModeQ, NormalizedAndMoments) {
  for (double k : {0.0, 1.0, 2.0})
    for (double n : {0.0, 0.3, 0.5, 1.0}) {
      EXPECT_NEAR(quad([&](double x) { return single_mode_q(n, x, k); }), 1.0, 1e-12);
      const double first = quad([&](double x) { return x * single_mode_q(n, x, k); });
      EXPECT_NEAR(moment_factor(1, k) * first, 2.0 * n - 1.0, 1e-12);
    }
}

TEST(Coordinates, RoundTrip) {
  EXPECT_EQ(coordinate_count(1), 1);
  EXPECT_EQ(coordinate_count(3), 15);
  std::mt19937_64 rng(43);
  const AntisymMatrix x = random_antisym(3, rng);
  const RealVector c = upper_coordinates(x);
  EXPECT_EQ(c(0), x(0, 1));
  EXPECT_EQ(c(1), x(0, 2));
  EXPECT_EQ(max_abs(from_upper_coordinates(3, c).mat() - x.mat()), 0.0);
}

TEST(SampleDomain, SingleModeFlatAcceptsEverything) {
  const DomainSampleSet s = sample_domain(1, 0.0, 5000, 7);
  EXPECT_EQ(s.samples.size(), 5000u);
  EXPECT_DOUBLE_EQ(s.acceptance(), 1.0);
}

TEST(SampleDomain, SingleModeScaledIsSymmetric) {
  const DomainSampleSet s = sample_domain(1, 1.0, 40000, 8);
  double sum = 0.0, sq = 0.0;
  for (const auto& d : s.samples) {
    sum += d.x(0, 1);
    sq += d.x(0, 1) * d.x(0, 1);
    EXPECT_TRUE(domain_contains(d.x));
  }
  const double n = double(s.samples.size());
  const double mean = sum / n;
  const double se = std::sqrt((sq / n - mean * mean) / n);
  EXPECT_LT(std::abs(mean), 3.0 * se);
  // Acceptance equals the S-weighted volume fraction, norm_const(1,1) = 2/3.
  EXPECT_NEAR(s.acceptance(), 2.0 / 3.0, 0.01);
}

TEST(SampleDomain, TwoModeAcceptanceMatchesVolume) {
  const DomainSampleSet s = sample_domain(2, 0.0, 50000, 9);
  const double expected = norm_const(2, 0.0) * 4.0 / 64.0;
  const double a = s.acceptance();
  const double se = std::sqrt(a * (1.0 - a) / double(s.proposals));
  EXPECT_LT(std::abs(a - expected), 4.0 * se);
}

TEST(SampleDomain, DeterministicAcrossThreads) {
  const DomainSampleSet a = sample_domain(2, 1.0, 9000, 3, 1);
  const DomainSampleSet b = sample_domain(2, 1.0, 9000, 3, 3);
  ASSERT_EQ(a.proposals, b.proposals);
  for (std::size_t i = 0; i < a.samples.size(); ++i) ASSERT_EQ(max_abs(a.samples[i].x.mat() - b.samples[i].x.mat()), 0.0);
}

TEST(SampleDomain, Errors) {
  EXPECT_FERMIQ_ERROR(sample_domain(1, 0.0, 0, 1), ErrorCode::InvalidArgument);
  EXPECT_FERMIQ_ERROR(sample_domain(0, 0.0, 10, 1), ErrorCode::InvalidArgument);
}

TEST(Moments, SingleModeFromSamples) {
  const DomainSampleSet s = sample_domain(1, 0.0, 200000, 10);
  std::vector<double> w(s.samples.size());
  // Samples are uniform on (-1, 1); weight Q / p with p = 1/2.
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = 2.0 * single_mode_q(1.0, s.samples[i].x(0, 1), 0.0);
  const MomentEstimate est = moment_xhat(s.samples, w, 0.0);
  EXPECT_LT(std::abs(est.mean(0, 1) - 1.0), 3.0 * est.standard_error(0, 1));
  EXPECT_NEAR(occupations(est.mean)(0), 0.5 * (1.0 + est.mean(0, 1)), 1e-15);
}

TEST(Moments, Errors) {
  EXPECT_FERMIQ_ERROR(moment_xhat({}, {}, 0.0), ErrorCode::EmptySample);
  const DomainSampleSet s = sample_domain(1, 0.0, 4, 1);
  EXPECT_FERMIQ_ERROR(moment_xhat(s.samples, {1.0}, 0.0), ErrorCode::DimensionMismatch);
  EXPECT_EQ(moment_factor(2, 1.0), 9.0);
}

TEST(Overlap, MatchesOracleTrace) {
  std::mt19937_64 rng(44);
  for (int m = 1; m <= 3; ++m) {
    const AntisymMatrix a = random_domain_point(m, rng), b = random_domain_point(m, rng);
    const double tr = (gaussian_from_covariance(a) * gaussian_from_covariance(b)).trace().real();
    EXPECT_NEAR(gaussian_overlap(a, b), tr, 1e-12);
    EXPECT_NEAR(gaussian_state_q(a, b, 1.0), qfunction_oracle(FockState::gaussian(a), b, 1.0), 1e-12);
  }
}

TEST(GaussLegendre, ExactForPolynomials) {
  std::vector<double> x, w;
  gauss_legendre(8, &x, &w);
  EXPECT_NEAR(std::accumulate(w.begin(), w.end(), 0.0), 2.0, 1e-14);
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += w[i] * std::pow(x[i], 14);
  EXPECT_NEAR(s, 2.0 / 15.0, 1e-14);
}

TEST(Resolution, SingleModeQuadrature) {
  for (double k : {0.0, 1.0, 2.0}) EXPECT_LE(identity_resolution_residual(1, k, 64).residual, 1e-8) << k;
}

TEST(SingleModeSampler, CdfAndStratifiedMoments) {
  for (double k : {0.0, 1.0}) {
    EXPECT_NEAR(single_mode_cdf(0.7, -1.0, k), 0.0, 1e-14);
    EXPECT_NEAR(single_mode_cdf(0.7, 1.0, k), 1.0, 1e-12);
    EXPECT_LT(single_mode_cdf(0.7, -0.2, k), single_mode_cdf(0.7, 0.1, k));
    const std::vector<double> xs = sample_single_mode_q(0.7, k, 20000, 5);
    double mean = 0.0;
    for (double v : xs) mean += v;
    mean /= double(xs.size());
    EXPECT_NEAR(moment_factor(1, k) * mean, 2.0 * 0.7 - 1.0, 1e-3);
  }
}

TEST(SamplesCsv, HeaderAndRows) {
  const DomainSampleSet s = sample_domain(2, 1.0, 3, 2);
  std::ostringstream os;
  write_samples_csv(os, s.samples, {0.1, 0.2, 0.3}, 1.0);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x_1_2,x_1_3,x_1_4,x_2_3,x_2_4,x_3_4,s_weight,q_value");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(std::count(line.begin(), line.end(), ','), 7);
  }
  EXPECT_EQ(rows, 3);
}

}  // namespace
}  // namespace fermiq
