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

#include "fermiq/dynamics.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "fermiq/errors.hpp"
#include "fermiq/parallel.hpp"
#include "fermiq/qfunction.hpp"

namespace fermiq {

namespace {

double spectral_norm(const RealMatrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(a.transpose() * a, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

int step_count(double t_final, double dt) {
  if (!(dt > 0.0)) fail(ErrorCode::InvalidArgument, "time step must be positive");
  if (t_final < 0.0) fail(ErrorCode::InvalidArgument, "final time must be nonnegative");
  return std::max(1, static_cast<int>(std::ceil(t_final / dt - 1e-9)));
}

}  // namespace

// ---------------------------------------------------------------------------

AntisymMatrix drift_unitary(const AntisymMatrix& omega, const AntisymMatrix& x) {
  if (omega.dim() != x.dim()) fail(ErrorCode::DimensionMismatch, "Omega and x differ in size");
  return commutator(omega, x);
}

std::vector<TimedState> evolve_unitary(const AntisymMatrix& x0, const AntisymMatrix& omega, double t_final,
                                       double dt, int record_every) {
  if (omega.dim() != x0.dim()) fail(ErrorCode::DimensionMismatch, "Omega and x differ in size");
  const double norm = spectral_norm(omega.mat());
  if (norm > 0.0 && dt > 0.1 / norm) fail(ErrorCode::StepTooLarge, "dt exceeds 0.1 / ||Omega||_2");
  const int steps = step_count(t_final, dt);
  const double h = t_final / steps;
  const RealMatrix& w = omega.mat();
  auto f = [&w](const RealMatrix& x) -> RealMatrix { return w * x - x * w; };
  RealMatrix x = x0.mat();
  std::vector<TimedState> out{{0.0, x0}};
  record_every = std::max(1, record_every);
  for (int s = 1; s <= steps; ++s) {
    const RealMatrix k1 = f(x);
    const RealMatrix k2 = f(x + 0.5 * h * k1);
    const RealMatrix k3 = f(x + 0.5 * h * k2);
    const RealMatrix k4 = f(x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    x = 0.5 * (x - x.transpose());
    if (s % record_every == 0 || s == steps) out.push_back({s * h, AntisymMatrix::project(x)});
  }
  return out;
}

AntisymMatrix evolve_unitary_exact(const AntisymMatrix& x0, const AntisymMatrix& omega, double t) {
  const RealMatrix u = (omega.mat() * t).exp();
  return AntisymMatrix::project(u * x0.mat() * u.transpose());
}

// ---------------------------------------------------------------------------

DissipativeModel DissipativeModel::checked(const RealMatrix& omega, const RealMatrix& gamma) {
  const auto m = omega.rows();
  if (omega.cols() != m || gamma.rows() != m || gamma.cols() != m || m == 0)
    fail(ErrorCode::DimensionMismatch, "omega and gamma must be equal-size square matrices");
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::SymmetryViolation, "omega must be symmetric");
  if ((gamma - gamma.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::SymmetryViolation, "gamma must be symmetric");
  const RealMatrix gs = 0.5 * (gamma + gamma.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(gs, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-12) fail(ErrorCode::InvalidArgument, "gamma must be positive semidefinite");

  DissipativeModel d;
  d.omega_ = 0.5 * (omega + omega.transpose());
  d.gamma_ = gs;
  const auto n = 2 * m;
  d.hopping_block_ = RealMatrix::Zero(n, n);
  d.hopping_block_.topLeftCorner(m, m) = d.omega_;
  d.hopping_block_.bottomRightCorner(m, m) = d.omega_;
  d.loss_block_ = RealMatrix::Zero(n, n);
  d.loss_block_.topRightCorner(m, m) = -0.5 * d.gamma_;
  d.loss_block_.bottomLeftCorner(m, m) = 0.5 * d.gamma_;
  return d;
}

DissipativeModel DissipativeModel::single_mode(double gamma, double omega) {
  return checked(RealMatrix::Constant(1, 1, omega), RealMatrix::Constant(1, 1, gamma));
}

namespace {

struct FieldParts {
  RealMatrix a;      // advective field A
  double source;     // b
  double slope;      // A . grad ln S
  bool inside;
};

// I + X^2 must be positive definite inside the domain.
FieldParts field(const RealMatrix& X, const DissipativeModel& model, double k) {
  const int n = static_cast<int>(X.rows());
  const int m = n / 2;
  const RealMatrix ical = antisym_identity(m).mat();
  const RealMatrix eye = RealMatrix::Identity(n, n);
  FieldParts p;
  const RealMatrix g = eye + X * X;
  Eigen::LLT<RealMatrix> llt(g);
  p.inside = llt.info() == Eigen::Success && llt.matrixL().toDenseMatrix().diagonal().minCoeff() > 0.0;
  const RealMatrix xm = X - ical;
  const RealMatrix xp = X + ical;
  const RealMatrix f = 0.5 * xm * model.hopping_block() * xp + xm * model.loss_block() * X;
  p.a = f - f.transpose();
  p.source = -(4.0 * m - 1.0) * (X * model.loss_block()).trace() + (2.0 * m - 1.0) * (model.loss_block() * ical).trace();
  p.slope = 0.0;
  if (k != 0.0 && p.inside) p.slope = k * llt.solve(X * p.a).trace();
  return p;
}

double field_divergence(const RealMatrix& X, const DissipativeModel& model) {
  const int n = static_cast<int>(X.rows());
  const RealMatrix ical = antisym_identity(n / 2).mat();
  const RealMatrix xm = X - ical;
  const RealMatrix xp = X + ical;
  const RealMatrix& ot = model.hopping_block();
  const RealMatrix& up = model.loss_block();
  double div = 0.0;
  for (int p = 0; p < n; ++p)
    for (int l = p + 1; l < n; ++l) {
      RealMatrix g = RealMatrix::Zero(n, n);
      g(p, l) = 1.0;
      g(l, p) = -1.0;
      const RealMatrix df = 0.5 * (g * ot * xp + xm * ot * g) + g * up * X + xm * up * g;
      div += df(p, l) - df(l, p);
    }
  return div;
}

}  // namespace

DissipativeRates dissipative_drift(const AntisymMatrix& X, const DissipativeModel& model, double k) {
  if (X.modes() != model.modes()) fail(ErrorCode::DimensionMismatch, "phase point and model differ in modes");
  // The closed domain is allowed: fixed points sit on the boundary.
  if (max_lambda(X) > 1.0 + 1e-12) fail(ErrorCode::OutOfDomain, "phase point outside the domain");
  const FieldParts p = field(X.mat(), model, k);
  if (k != 0.0 && !p.inside) fail(ErrorCode::OutOfDomain, "the scaling gradient is singular on the boundary");
  DissipativeRates r;
  r.dXdt = AntisymMatrix::project(-p.a);
  r.divergence = field_divergence(X.mat(), model);
  r.mass_rate = p.source - p.slope;
  r.weight_rate = r.mass_rate + r.divergence;
  return r;
}

double analytic_quantum_dot(double x0, double gamma, double t) {
  if (x0 == 0.0) return 0.0;
  return 1.0 / (1.0 + (1.0 / x0 - 1.0) * std::exp(-gamma * t));
}

std::optional<double> quantum_dot_exit_time(double x0, double gamma) {
  if (!(x0 < 0.0) || !(gamma > 0.0)) return std::nullopt;
  // 1 + c e^{-g t} = -1  =>  t = ln(-c / 2) / g with c = 1/x0 - 1 < -1.
  const double c = 1.0 / x0 - 1.0;
  return std::log(-c / 2.0) / gamma;
}

std::vector<CharacteristicPoint> integrate_characteristic(const AntisymMatrix& X0, const DissipativeModel& model,
                                                          double k, double t_final, double dt, int record_every) {
  if (X0.modes() != model.modes()) fail(ErrorCode::DimensionMismatch, "phase point and model differ in modes");
  if (!domain_contains(X0)) fail(ErrorCode::OutOfDomain, "initial point outside the domain");
  const int steps = step_count(t_final, dt);
  const double h = t_final / steps;
  record_every = std::max(1, record_every);
  struct Deriv {
    RealMatrix dx;
    double dlw;
    bool ok;
  };
  auto f = [&](const RealMatrix& x) -> Deriv {
    const FieldParts p = field(x, model, k);
    if (!p.inside) return {RealMatrix::Zero(x.rows(), x.cols()), 0.0, false};
    return {-p.a, p.source - p.slope + field_divergence(x, model), true};
  };
  RealMatrix x = X0.mat();
  double lw = 0.0;
  std::vector<CharacteristicPoint> out{{0.0, X0, 0.0, true}};
  for (int s = 1; s <= steps; ++s) {
    const Deriv k1 = f(x);
    const Deriv k2 = f(x + 0.5 * h * k1.dx);
    const Deriv k3 = f(x + 0.5 * h * k2.dx);
    const Deriv k4 = f(x + h * k3.dx);
    const RealMatrix xn = x + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx);
    const bool ok = k1.ok && k2.ok && k3.ok && k4.ok && domain_contains(AntisymMatrix::project(xn));
    if (!ok) {
      out.push_back({s * h, AntisymMatrix::project(x), lw, false});
      return out;
    }
    lw += (h / 6.0) * (k1.dlw + 2.0 * k2.dlw + 2.0 * k3.dlw + k4.dlw);
    x = 0.5 * (xn - xn.transpose());
    if (s % record_every == 0 || s == steps) out.push_back({s * h, AntisymMatrix::project(x), lw, true});
  }
  return out;
}

// ---------------------------------------------------------------------------

EnsembleInitial EnsembleInitial::single_mode(double n0) {
  if (!(n0 >= 0.0 && n0 <= 1.0)) fail(ErrorCode::InvalidArgument, "occupation must lie in [0, 1]");
  EnsembleInitial e;
  e.modes = 1;
  e.is_single_mode = true;
  e.n0 = n0;
  RealMatrix c(2, 2);
  c << 0.0, 2.0 * n0 - 1.0, 1.0 - 2.0 * n0, 0.0;
  e.x0 = AntisymMatrix::project(c);
  return e;
}

EnsembleInitial EnsembleInitial::gaussian(const AntisymMatrix& x0) {
  if (!domain_contains(x0) && max_lambda(x0) > 1.0 + 1e-12)
    fail(ErrorCode::OutOfDomain, "Gaussian covariance must have canonical amplitudes <= 1");
  EnsembleInitial e;
  e.modes = x0.modes();
  e.is_single_mode = false;
  e.x0 = x0;
  return e;
}

namespace {

constexpr std::size_t kChunk = 1024;

// Per-record partial sums for one chunk of trajectories, in covariance coordinates.
struct Accum {
  std::vector<RealVector> sum;    // sum w x (upper coordinates)
  std::vector<RealVector> sumsq;  // sum (w x)^2
  std::vector<double> alive;
  std::vector<double> lost;       // cumulative lost weight
  std::vector<double> weight;     // live weight
  std::vector<double> weight_sq;  // sum w^2 over live trajectories

  Accum(std::size_t records, int coords)
      : sum(records, RealVector::Zero(coords)),
        sumsq(records, RealVector::Zero(coords)),
        alive(records, 0.0),
        lost(records, 0.0),
        weight(records, 0.0),
        weight_sq(records, 0.0) {}

  Accum& operator+=(const Accum& o) {
    for (std::size_t r = 0; r < sum.size(); ++r) {
      sum[r] += o.sum[r];
      sumsq[r] += o.sumsq[r];
      alive[r] += o.alive[r];
      lost[r] += o.lost[r];
      weight[r] += o.weight[r];
      weight_sq[r] += o.weight_sq[r];
    }
    return *this;
  }
};

struct Schedule {
  int steps;
  double h;
  std::vector<int> record_steps;  // includes 0
};

Schedule make_schedule(const EnsembleOptions& opt) {
  Schedule s;
  s.steps = step_count(opt.t_final, opt.dt);
  s.h = opt.t_final / s.steps;
  const int every = std::max(1, opt.record_every);
  for (int i = 0; i <= s.steps; i += every) s.record_steps.push_back(i);
  if (s.record_steps.back() != s.steps) s.record_steps.push_back(s.steps);
  return s;
}

// One mode: X = X_12 is a scalar and the field reduces to closed forms.
void run_scalar(double x, const DissipativeModel& model, double k, const Schedule& sch, Accum& acc) {
  const double g = model.gamma()(0, 0);
  auto vel = [g](double y) { return g * y * (1.0 - y); };
  auto rate = [g, k](double y) { return g * (1.0 - 3.0 * y) - (k != 0.0 ? 2.0 * k * g * y * y / (1.0 + y) : 0.0); };
  double lw = 0.0;
  std::size_t r = 0;
  const double h = sch.h;
  auto record = [&](bool alive_now, double lost_w) {
    const double w = std::exp(lw);
    if (alive_now) {
      acc.sum[r](0) += w * x;
      acc.sumsq[r](0) += w * w * x * x;
      acc.alive[r] += 1.0;
      acc.weight[r] += w;
      acc.weight_sq[r] += w * w;
    }
    acc.lost[r] += lost_w;
  };
  record(true, 0.0);
  ++r;
  bool alive = true;
  double lost_w = 0.0;
  for (int s = 1; s <= sch.steps; ++s) {
    if (alive) {
      const double k1 = vel(x);
      const double y2 = x + 0.5 * h * k1;
      const double k2 = vel(y2);
      const double y3 = x + 0.5 * h * k2;
      const double k3 = vel(y3);
      const double y4 = x + h * k3;
      const double k4 = vel(y4);
      const double xn = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      const bool inside = std::abs(y2) < 1.0 && std::abs(y3) < 1.0 && std::abs(y4) < 1.0 && std::abs(xn) < 1.0;
      if (!inside) {
        alive = false;
        lost_w = std::exp(lw);
      } else {
        lw += (h / 6.0) * (rate(x) + 2.0 * rate(y2) + 2.0 * rate(y3) + rate(y4));
        x = xn;
      }
    }
    if (r < sch.record_steps.size() && s == sch.record_steps[r]) {
      record(alive, lost_w);
      ++r;
    }
  }
}

void run_matrix(const RealMatrix& X0, const DissipativeModel& model, double k, const Schedule& sch, Accum& acc) {
  const int n = static_cast<int>(X0.rows());
  const int m = n / 2;
  const RealMatrix ical = antisym_identity(m).mat();
  RealMatrix X = X0;
  double lw = 0.0;
  std::size_t r = 0;
  const double h = sch.h;
  auto record = [&](bool alive_now, double lost_w) {
    if (alive_now) {
      const double w = std::exp(lw);
      // covariance coordinates x = calI X^T calI
      const RealMatrix x = ical * X.transpose() * ical;
      int c = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j, ++c) {
          acc.sum[r](c) += w * x(i, j);
          acc.sumsq[r](c) += w * w * x(i, j) * x(i, j);
        }
      acc.alive[r] += 1.0;
      acc.weight[r] += w;
      acc.weight_sq[r] += w * w;
    }
    acc.lost[r] += lost_w;
  };
  record(true, 0.0);
  ++r;
  bool alive = true;
  double lost_w = 0.0;
  for (int s = 1; s <= sch.steps; ++s) {
    if (alive) {
      const FieldParts p1 = field(X, model, k);
      const RealMatrix y2 = X - 0.5 * h * p1.a;
      const FieldParts p2 = field(y2, model, k);
      const RealMatrix y3 = X - 0.5 * h * p2.a;
      const FieldParts p3 = field(y3, model, k);
      const RealMatrix y4 = X - h * p3.a;
      const FieldParts p4 = field(y4, model, k);
      RealMatrix xn = X - (h / 6.0) * (p1.a + 2.0 * p2.a + 2.0 * p3.a + p4.a);
      xn = 0.5 * (xn - xn.transpose());
      const bool inside = p1.inside && p2.inside && p3.inside && p4.inside && field(xn, model, 0.0).inside;
      if (!inside) {
        alive = false;
        lost_w = std::exp(lw);
      } else {
        auto mr = [](const FieldParts& p) { return p.source - p.slope; };
        lw += (h / 6.0) * (mr(p1) + 2.0 * mr(p2) + 2.0 * mr(p3) + mr(p4));
        X = xn;
      }
    }
    if (r < sch.record_steps.size() && s == sch.record_steps[r]) {
      record(alive, lost_w);
      ++r;
    }
  }
}

}  // namespace

EnsembleResult evolve_ensemble(const EnsembleInitial& init, const DissipativeModel& model, const EnsembleOptions& opt) {
  if (init.modes != model.modes()) fail(ErrorCode::DimensionMismatch, "initial state and model differ in modes");
  if (opt.trajectories == 0) fail(ErrorCode::InvalidArgument, "need at least one trajectory");
  if (opt.k < 0.0) fail(ErrorCode::InvalidArgument, "k must be nonnegative");
  const int m = init.modes;
  const int coords = coordinate_count(m);
  const Schedule sch = make_schedule(opt);
  const std::size_t n = opt.trajectories;
  const bool scalar = m == 1;

  // Initial points in covariance coordinates.
  std::vector<double> x_scalar;
  std::vector<AntisymMatrix> x_start;
  std::uint64_t proposals = 0;
  if (init.is_single_mode) {
    x_scalar = sample_single_mode_q(init.n0, opt.k, n, opt.seed);
    proposals = n;
  } else {
    x_start.resize(n);
    std::vector<std::uint64_t> props(n, 0);
    parallel_for(n, opt.threads, [&](std::size_t i) {
      std::mt19937_64 rng = stream_rng(opt.seed, i);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      for (;;) {
        std::uint64_t p = 0;
        AntisymMatrix x = draw_domain_point(m, opt.k, rng, &p);
        props[i] += p;
        if (uni(rng) < gaussian_overlap(init.x0, x)) {
          x_start[i] = x;
          break;
        }
        if (props[i] > 10000000ULL) fail(ErrorCode::RejectionStall, "initial-state thinning stalled");
      }
    });
    for (auto p : props) proposals += p;
    if (scalar) {
      x_scalar.resize(n);
      for (std::size_t i = 0; i < n; ++i) x_scalar[i] = x_start[i](0, 1);
    }
  }

  const std::size_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<Accum> parts(chunks, Accum(sch.record_steps.size(), coords));
  parallel_for(chunks, opt.threads, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(n, lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      if (scalar)
        run_scalar(x_scalar[i], model, opt.k, sch, parts[c]);  // X_12 = x_12 for one mode
      else
        run_matrix(x_of_X(x_start[i]).mat(), model, opt.k, sch, parts[c]);
    }
  });
  const Accum total = pairwise_reduce(parts, Accum(sch.record_steps.size(), coords), [](Accum a, const Accum& b) {
    a += b;
    return a;
  });

  const double factor = moment_factor(m, opt.k);
  const double nn = static_cast<double>(n);
  EnsembleResult res;
  res.proposals = proposals;
  for (std::size_t r = 0; r < sch.record_steps.size(); ++r) {
    if (total.alive[r] == 0.0) fail(ErrorCode::AllTrajectoriesLost, "every trajectory left the domain");
    const RealVector mean = total.sum[r] / nn;
    RealVector var = (total.sumsq[r] / nn - mean.cwiseAbs2()).cwiseMax(0.0);
    const RealVector se = (var / std::max(1.0, nn - 1.0)).cwiseSqrt() * factor;
    EnsembleRecord rec;
    rec.t = sch.record_steps[r] * sch.h;
    rec.xhat = from_upper_coordinates(m, mean * factor);
    rec.standard_error = from_upper_coordinates(m, se).mat().cwiseAbs();
    rec.occupations = occupations(rec.xhat);
    rec.surviving_fraction = total.alive[r] / nn;
    rec.lost_weight = total.lost[r] / nn;
    rec.mean_weight = total.weight[r] / nn;
    rec.effective_samples = total.weight_sq[r] > 0.0 ? total.weight[r] * total.weight[r] / total.weight_sq[r] : 0.0;
    res.records.push_back(std::move(rec));
  }
  return res;
}

// ---------------------------------------------------------------------------

PdeResult pde_q_single_mode(double n0, double gamma, double k, int cells, const std::vector<double>& times,
                            double cfl) {
  if (cells < 2) fail(ErrorCode::InvalidArgument, "grid needs at least two cells");
  if (!(cfl > 0.0)) fail(ErrorCode::InvalidArgument, "Courant number must be positive");
  if (cfl > 1.0) fail(ErrorCode::CFLViolation, "Courant number above 1 is unstable for explicit upwind");
  if (!std::is_sorted(times.begin(), times.end()) || (!times.empty() && times.front() < 0.0))
    fail(ErrorCode::InvalidArgument, "output times must be nonnegative and ascending");

  PdeResult res;
  const std::size_t nc = static_cast<std::size_t>(cells);
  const double h = 2.0 / cells;
  res.h = h;
  res.x.resize(nc);
  std::vector<double> sc(nc), b0(nc), q(nc), vf(nc + 1), sf(nc + 1);
  for (std::size_t i = 0; i < nc; ++i) {
    const double x = -1.0 + h * (static_cast<double>(i) + 0.5);
    res.x[i] = x;
    sc[i] = std::pow(1.0 - x * x, k);
    b0[i] = gamma * (1.0 - 3.0 * x);
    q[i] = single_mode_q(n0, x, k);
  }
  double vmax = 0.0;
  for (std::size_t i = 0; i <= nc; ++i) {
    const double x = -1.0 + h * static_cast<double>(i);
    vf[i] = gamma * x * (1.0 - x);
    sf[i] = k == 0.0 ? 1.0 : std::pow(std::max(0.0, 1.0 - x * x), k);
    vmax = std::max(vmax, std::abs(vf[i]));
  }
  auto mass = [&] {
    std::vector<double> cellmass(nc);
    for (std::size_t i = 0; i < nc; ++i) cellmass[i] = q[i] * h;
    return pairwise_sum(cellmass);
  };
  res.initial_mass = mass();
  const double dt_max = vmax > 0.0 ? cfl * h / vmax : std::numeric_limits<double>::infinity();

  std::vector<double> p(nc), fp(nc + 1), qn(nc);
  double t = 0.0;
  for (double target : times) {
    const double span = target - t;
    if (span > 0.0) {
      const int steps = std::isfinite(dt_max) ? std::max(1, static_cast<int>(std::ceil(span / dt_max - 1e-12))) : 1;
      const double dt = span / steps;
      res.dt = std::max(res.dt, dt);
      for (int s = 0; s < steps; ++s) {
        for (std::size_t i = 0; i < nc; ++i) p[i] = q[i] / sc[i];
        for (std::size_t f = 0; f <= nc; ++f) {
          const double left = f == 0 ? 0.0 : p[f - 1];
          const double right = f == nc ? 0.0 : p[f];
          fp[f] = vf[f] * (vf[f] > 0.0 ? left : right);
        }
        std::vector<double> gained(nc);
        for (std::size_t i = 0; i < nc; ++i) {
          const double pt = p[i] - dt / h * (fp[i + 1] - fp[i]);
          const double pn = pt * std::exp(b0[i] * dt);
          qn[i] = sc[i] * pn;
          gained[i] = sc[i] * (pn - pt) * h;
        }
        res.boundary_outflow += (fp[nc] * sf[nc] - fp[0] * sf[0]) * dt;
        res.source += pairwise_sum(gained);
        q.swap(qn);
      }
      t = target;
    }
    res.snapshots.push_back({target, q});
  }
  res.final_mass = mass();
  return res;
}

// ---------------------------------------------------------------------------

RealMatrix bosonic_generator(const RealMatrix& omega) {
  const auto m = omega.rows();
  RealMatrix g = RealMatrix::Zero(2 * m, 2 * m);
  g.topRightCorner(m, m) = omega;
  g.bottomLeftCorner(m, m) = -omega;
  return g;
}

BosonicComparison bosonic_compare(const RealMatrix& omega, const ComplexMatrix& alpha0, double t) {
  const auto m = omega.rows();
  if (omega.cols() != m || alpha0.rows() != m || alpha0.cols() != 1)
    fail(ErrorCode::DimensionMismatch, "omega must be M x M and alpha an M-vector");
  if ((omega - omega.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    fail(ErrorCode::SymmetryViolation, "omega must be symmetric");
  auto stack = [m](const ComplexMatrix& a) {
    RealVector v(2 * m);
    v.head(m) = a.real();
    v.tail(m) = a.imag();
    return v;
  };
  BosonicComparison out;
  const ComplexMatrix prop = (ComplexMatrix(omega.cast<Complex>()) * Complex(0.0, -t)).exp();
  out.alpha_t = prop * alpha0;
  const RealVector vt = stack(out.alpha_t);
  out.xb_direct = vt * vt.transpose();
  const RealVector v0 = stack(alpha0);
  const RealMatrix u = (bosonic_generator(omega) * t).exp();
  out.xb_commutator = u * (v0 * v0.transpose()) * u.transpose();
  out.residual = (out.xb_direct - out.xb_commutator).cwiseAbs().maxCoeff();
  return out;
}

}  // namespace fermiq
