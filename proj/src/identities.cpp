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

#include "fermiq/identities.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>

#include "fermiq/errors.hpp"
#include "fermiq/parallel.hpp"
#include "fermiq/random.hpp"

namespace fermiq {

namespace {

constexpr Complex kI(0.0, 1.0);

const char* const kKindNames[] = {"UNNORM_MIXED", "UNNORM_NORMAL", "UNNORM_ANTINORMAL", "MIXED_1",    "MIXED_2",
                                  "NORMAL",       "ANTINORMAL",    "UNORD_LEFT",        "UNORD_RIGHT", "UNORD_MIXED"};

ComplexMatrix cplx(const AntisymMatrix& a) { return a.mat().cast<Complex>(); }

// ---------------------------------------------------------------------------
// Ladder-operator block patterns.

enum class Tok { A, AD, L };

struct Term {
  Complex coef;
  std::vector<Tok> pattern;
  bool transposed;  // parameter-index transpose: entry (i,j) reads (j,i)
  bool ambiguous;   // transpose mark whose scope is uncertain
};

using Block = std::vector<Term>;

Term term(Complex c, std::initializer_list<Tok> p, bool tr = false, bool amb = false) {
  return Term{c, std::vector<Tok>(p), tr, amb};
}

Block scaled(Block b, Complex s) {
  for (auto& t : b) t.coef *= s;
  return b;
}

Block join(std::initializer_list<Block> parts) {
  Block out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

FockMatrix eval_pattern(const std::vector<Tok>& p, const FockTables& ft, const FockMatrix& op, int i, int j) {
  FockMatrix out = FockMatrix::Identity(op.rows(), op.cols());
  const int idx[2] = {i, j};
  int k = 0;
  for (Tok t : p) {
    if (t == Tok::L) {
      out = out * op;
    } else {
      out = out * (t == Tok::A ? ft.a[static_cast<std::size_t>(idx[k])] : ft.adag[static_cast<std::size_t>(idx[k])]);
      ++k;
    }
  }
  return out;
}

struct BlockSet {
  Block b11, b12, b21, b22;
};

BlockSet block_formulas(IdentityKind kind, const LhsOptions& opt) {
  using enum Tok;
  const bool swapped = opt.route == OrderingRoute::BlockFormulasSwapped;
  BlockSet s;
  switch (kind) {
    case IdentityKind::MIXED_1: {
      const Block t1 = {term(1, {A, L, A}), term(1, {A, AD, L})};
      const Block t2 = {term(1, {A, L, A}), term(-1, {A, AD, L})};
      const Term a = term(1, {L, A, AD}, true);
      const Term bt = term(1, {AD, L, AD}, true);
      s.b11 = join({t1, scaled({a}, -1), scaled({bt}, -1)});
      s.b12 = scaled(join({t2, scaled({a}, -1), {bt}}), -kI);
      s.b21 = scaled(join({t1, {a}, {bt}}), -kI);
      s.b22 = swapped ? scaled(join({t2, {bt}, scaled({a}, -1)}), -1) : scaled(join({t2, {a}, scaled({bt}, -1)}), -1);
      break;
    }
    case IdentityKind::MIXED_2: {
      const Block t1 = {term(1, {AD, A, L}), term(1, {AD, L, AD})};
      const Block t2 = {term(-1, {L, AD, A}, true, true), term(1, {A, L, A}, true, true)};
      const Term a = term(1, {L, AD, A}, true);
      const Term bt = term(1, {A, L, A}, true);
      s.b11 = join({t1, scaled({a}, -1), scaled({bt}, -1)});
      s.b12 = scaled(join({t2, {term(-1, {AD, A, L}), term(1, {AD, L, AD})}}), kI);
      s.b21 = scaled(join({t1, {a}, {bt}}), kI);
      s.b22 = join({t2, {term(1, {AD, A, L}), term(-1, {AD, L, AD})}});
      break;
    }
    case IdentityKind::NORMAL: {
      const Block t3 = {term(1, {L, A, A}), term(-1, {AD, L, A}, true)};
      const Block t4 = {term(1, {L, A, A}), term(1, {AD, L, A}, true, true)};
      s.b11 = join({t3, {term(1, {AD, L, A}), term(1, {AD, AD, L})}});
      s.b12 = scaled(join({t4, {term(1, {AD, L, A}), term(-1, {AD, AD, L})}}), -kI);
      s.b21 = scaled(join({t3, {term(-1, {AD, L, A}), term(-1, {AD, AD, L})}}), -kI);
      s.b22 = scaled(join({t4, {term(-1, {AD, L, A}), term(1, {AD, AD, L})}}), -1);
      break;
    }
    case IdentityKind::ANTINORMAL: {
      const Block t5 = {term(1, {A, A, L}), term(1, {A, L, AD})};
      const Block t6 = {term(1, {A, A, L}), term(-1, {A, L, AD})};
      s.b11 = join({t5, {term(-1, {A, L, AD}, true), term(1, {L, AD, AD})}});
      s.b12 = scaled(join({t6, {term(-1, {A, L, AD}, true), term(-1, {L, AD, AD})}}), -kI);
      s.b21 = scaled(join({t5, {term(1, {A, L, AD}, true), term(-1, {L, AD, AD})}}), -kI);
      s.b22 = scaled(join({t6, {term(1, {A, L, AD}, true), term(1, {L, AD, AD})}}), -1);
      break;
    }
    case IdentityKind::UNORD_LEFT: {
      const Block t7 = {term(1, {A, AD, L}), term(1, {A, A, L})};
      const Block t8 = {term(1, {A, AD, L}), term(-1, {A, A, L})};
      s.b11 = join({t7, {term(1, {AD, AD, L}), term(1, {AD, A, L})}});
      s.b12 = scaled(join({t8, {term(1, {AD, AD, L}), term(-1, {AD, A, L})}}), kI);
      s.b21 = scaled(join({scaled(t7, -1), {term(1, {AD, AD, L}), term(1, {AD, A, L})}}), kI);
      s.b22 = join({t8, {term(-1, {AD, AD, L}), term(1, {AD, A, L})}});
      break;
    }
    default:
      fail(ErrorCode::InvalidArgument, "no block formula for this kind");
  }
  return s;
}

OperatorMatrix assemble_blocks(const BlockSet& s, const FockMatrix& op, int modes, const LhsOptions& opt) {
  const FockTables& ft = fock_tables(modes);
  const int d = static_cast<int>(op.rows());
  OperatorMatrix out(2 * modes, d);
  const Block* blocks[4] = {&s.b11, &s.b12, &s.b21, &s.b22};
  for (int b = 0; b < 4; ++b) {
    const int r0 = (b / 2) * modes;
    const int c0 = (b % 2) * modes;
    for (int i = 0; i < modes; ++i)
      for (int j = 0; j < modes; ++j) {
        FockMatrix acc = FockMatrix::Zero(d, d);
        for (const Term& t : *blocks[b]) {
          const bool tr = t.transposed && !(t.ambiguous && opt.transpose == TransposeReading::Dropped);
          acc += t.coef * (tr ? eval_pattern(t.pattern, ft, op, j, i) : eval_pattern(t.pattern, ft, op, i, j));
        }
        out(r0 + i, c0 + j) = acc;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Direct route: gamma_mu = sum_A U0_{mu A} b_A with b = (a, a^dag).

FockMatrix ordered_pair(IdentityKind kind, const FockMatrix& ba, bool ca, const FockMatrix& bb, bool cb,
                        const FockMatrix& op) {
  switch (kind) {
    case IdentityKind::NORMAL:  // creators left, annihilators right
      if (ca && cb) return ba * bb * op;
      if (!ca && !cb) return op * ba * bb;
      if (ca) return ba * op * bb;
      return -(bb * op * ba);
    case IdentityKind::ANTINORMAL:
      if (!ca && !cb) return ba * bb * op;
      if (ca && cb) return op * ba * bb;
      if (!ca) return ba * op * bb;
      return -(bb * op * ba);
    case IdentityKind::MIXED_1: {  // antinormal outside, normal inside
      const FockMatrix inner = cb ? FockMatrix(bb * op) : FockMatrix(op * bb);
      return ca ? FockMatrix(-(inner * ba)) : FockMatrix(ba * inner);
    }
    case IdentityKind::MIXED_2: {  // normal outside, antinormal inside
      const FockMatrix inner = cb ? FockMatrix(op * bb) : FockMatrix(bb * op);
      return ca ? FockMatrix(ba * inner) : FockMatrix(-(inner * ba));
    }
    default:
      fail(ErrorCode::InvalidArgument, "not an ordered kind");
  }
}

OperatorMatrix direct_ordered(IdentityKind kind, const FockMatrix& op, int modes) {
  const FockTables& ft = fock_tables(modes);
  const StructureMatrices sm = structure_matrices(modes);
  const int n = 2 * modes;
  const int d = static_cast<int>(op.rows());
  std::vector<FockMatrix> pair(static_cast<std::size_t>(n * n));
  auto ladder = [&](int a) -> const FockMatrix& {
    return a < modes ? ft.a[static_cast<std::size_t>(a)] : ft.adag[static_cast<std::size_t>(a - modes)];
  };
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      pair[static_cast<std::size_t>(a * n + b)] = ordered_pair(kind, ladder(a), a >= modes, ladder(b), b >= modes, op);
  OperatorMatrix out(n, d);
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v) {
      FockMatrix acc = FockMatrix::Zero(d, d);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
          const Complex c = sm.U0(m, a) * sm.U0(v, b);
          if (c != Complex(0.0)) acc += c * pair[static_cast<std::size_t>(a * n + b)];
        }
      out(m, v) = acc;
    }
  return out;
}

OperatorMatrix literal_unordered(IdentityKind kind, const FockMatrix& op, int modes) {
  const FockTables& ft = fock_tables(modes);
  const int n = 2 * modes;
  OperatorMatrix out(n, static_cast<int>(op.rows()));
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v) {
      const FockMatrix& gm = ft.gamma[static_cast<std::size_t>(m)];
      const FockMatrix& gv = ft.gamma[static_cast<std::size_t>(v)];
      if (kind == IdentityKind::UNORD_LEFT)
        out(m, v) = gm * gv * op;
      else if (kind == IdentityKind::UNORD_RIGHT)
        out(m, v) = op * gm * gv;
      else
        out(m, v) = gm * op * gv;
    }
  return out;
}

// ---------------------------------------------------------------------------
// Finite differences.

OperatorMatrix directional_derivative(const std::function<FockMatrix(const AntisymMatrix&)>& f,
                                      const AntisymMatrix& p, double h, double normalization) {
  if (!(h >= 1e-7 && h <= 1e-3)) fail(ErrorCode::StepOutOfRange, "finite-difference step must lie in [1e-7, 1e-3]");
  const int n = p.dim();
  const FockMatrix f0 = f(p);
  const int d = static_cast<int>(f0.rows());
  OperatorMatrix out(n, d);
  for (int m = 0; m < n; ++m)
    for (int v = m + 1; v < n; ++v) {
      RealMatrix e = RealMatrix::Zero(n, n);
      e(v, m) = 1.0;
      e(m, v) = -1.0;
      auto central = [&](double s) -> FockMatrix {
        const AntisymMatrix dp = AntisymMatrix::project(e * s);
        return (f(p + dp) - f(p - dp)) / (2.0 * s);
      };
      const FockMatrix coarse = central(h);
      const FockMatrix fine = central(0.5 * h);
      const FockMatrix rich = (4.0 * fine - coarse) / 3.0;
      out(m, v) = normalization * rich;
      out(v, m) = -normalization * rich;
    }
  return out;
}

OperatorMatrix x_derivative(const AntisymMatrix& x, double h) {
  return directional_derivative([](const AntisymMatrix& p) { return gaussian_from_covariance(p); }, x, h,
                                derivative_normalization());
}

}  // namespace

const char* kind_name(IdentityKind kind) { return kKindNames[static_cast<int>(kind)]; }

IdentityKind kind_from_name(const std::string& name) {
  for (IdentityKind k : kAllIdentityKinds)
    if (name == kind_name(k)) return k;
  fail(ErrorCode::InvalidArgument, "unknown identity kind: " + name);
}

// ---------------------------------------------------------------------------

OperatorMatrix::OperatorMatrix(int n, int fock_dim)
    : n_(n), d_(fock_dim), e_(static_cast<std::size_t>(n * n), FockMatrix::Zero(fock_dim, fock_dim)) {}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
  if (o.n_ != n_ || o.d_ != d_) fail(ErrorCode::DimensionMismatch, "operator matrices differ in shape");
  OperatorMatrix r(*this);
  for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
  return r;
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const { return *this + o * Complex(-1.0); }

OperatorMatrix OperatorMatrix::operator*(Complex s) const {
  OperatorMatrix r(*this);
  for (auto& e : r.e_) e *= s;
  return r;
}

OperatorMatrix OperatorMatrix::transposed() const {
  OperatorMatrix r(n_, d_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) r(i, j) = (*this)(j, i);
  return r;
}

OperatorMatrix OperatorMatrix::sandwich(const ComplexMatrix& a, const OperatorMatrix& d, const ComplexMatrix& b) {
  const int n = d.size();
  const int fd = d.fock_dim();
  OperatorMatrix left(n, fd);
  for (int m = 0; m < n; ++m)
    for (int bb = 0; bb < n; ++bb)
      for (int aa = 0; aa < n; ++aa)
        if (a(m, aa) != Complex(0.0)) left(m, bb) += a(m, aa) * d(aa, bb);
  OperatorMatrix out(n, fd);
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v)
      for (int bb = 0; bb < n; ++bb)
        if (b(bb, v) != Complex(0.0)) out(m, v) += left(m, bb) * b(bb, v);
  return out;
}

OperatorMatrix OperatorMatrix::scalar(const FockMatrix& op, const ComplexMatrix& c) {
  const int n = static_cast<int>(c.rows());
  OperatorMatrix out(n, static_cast<int>(op.rows()));
  for (int m = 0; m < n; ++m)
    for (int v = 0; v < n; ++v) out(m, v) = c(m, v) * op;
  return out;
}

double relative_residual(const OperatorMatrix& lhs, const OperatorMatrix& rhs) {
  if (lhs.size() != rhs.size() || lhs.fock_dim() != rhs.fock_dim())
    fail(ErrorCode::DimensionMismatch, "operator matrices differ in shape");
  double worst = 0.0;
  for (int i = 0; i < lhs.size(); ++i)
    for (int j = 0; j < lhs.size(); ++j) {
      const double num = (lhs(i, j) - rhs(i, j)).norm();
      worst = std::max(worst, num / std::max(1.0, lhs(i, j).norm()));
    }
  return worst;
}

OperatorMatrix ordered_product(IdentityKind ordering, const FockMatrix& op, int modes, const LhsOptions& opt) {
  if (modes > kMaxExpansionModes) fail(ErrorCode::TooManyModes, "identity products support M <= 3");
  switch (ordering) {
    case IdentityKind::UNORD_LEFT:
      if (opt.route == OrderingRoute::Direct) return literal_unordered(ordering, op, modes);
      return assemble_blocks(block_formulas(ordering, opt), op, modes, opt);
    case IdentityKind::UNORD_RIGHT:
    case IdentityKind::UNORD_MIXED:
      return literal_unordered(ordering, op, modes);
    case IdentityKind::NORMAL:
    case IdentityKind::ANTINORMAL:
    case IdentityKind::MIXED_1:
    case IdentityKind::MIXED_2:
      if (opt.route == OrderingRoute::Direct) return direct_ordered(ordering, op, modes);
      return assemble_blocks(block_formulas(ordering, opt), op, modes, opt);
    default:
      fail(ErrorCode::InvalidArgument, "un-normalized kinds carry no ordering of their own");
  }
}

namespace {

IdentityKind ordering_of(IdentityKind kind) {
  switch (kind) {
    case IdentityKind::UNNORM_MIXED:
      return IdentityKind::MIXED_1;
    case IdentityKind::UNNORM_NORMAL:
      return IdentityKind::NORMAL;
    case IdentityKind::UNNORM_ANTINORMAL:
      return IdentityKind::ANTINORMAL;
    default:
      return kind;
  }
}

bool is_unnormalized(IdentityKind kind) {
  return kind == IdentityKind::UNNORM_MIXED || kind == IdentityKind::UNNORM_NORMAL ||
         kind == IdentityKind::UNNORM_ANTINORMAL;
}

FockMatrix unnormalized_at_X(const AntisymMatrix& X) { return gaussian_op(X) / gaussian_norm(X); }

}  // namespace

OperatorMatrix lhs_product(IdentityKind kind, const AntisymMatrix& X, const LhsOptions& opt) {
  if (X.modes() > kMaxExpansionModes) fail(ErrorCode::TooManyModes, "identity products support M <= 3");
  const FockMatrix op = is_unnormalized(kind) ? gaussian_op_unnormalized(Y_from_X(X)) : gaussian_op(X);
  return ordered_product(ordering_of(kind), op, X.modes(), opt);
}

OperatorMatrix operator_derivative(const AntisymMatrix& X, double h) {
  return directional_derivative([](const AntisymMatrix& p) { return gaussian_op(p); }, X, h,
                                derivative_normalization());
}

OperatorMatrix unnormalized_y_derivative(const AntisymMatrix& X, double h) {
  const OperatorMatrix dx = directional_derivative(unnormalized_at_X, X, h, derivative_normalization());
  const ComplexMatrix xm = cplx(X - antisym_identity(X.modes()));
  return OperatorMatrix::sandwich(xm, dx, xm) * Complex(-1.0);
}

OperatorMatrix unnormalized_y_derivative_direct(const AntisymMatrix& Y, double h) {
  return directional_derivative([](const AntisymMatrix& p) { return gaussian_op_unnormalized(p); }, Y, h,
                                derivative_normalization());
}

double derivative_normalization() {
  static const double c = [] {
    // Single mode: Lambda = (1 - X)/2 + n X, so d Lambda / d X_12 = n - 1/2.
    const double x12 = 0.3;
    RealMatrix e(2, 2);
    e << 0.0, x12, -x12, 0.0;
    const AntisymMatrix X = AntisymMatrix::checked(e);
    const FockTables& ft = fock_tables(1);
    const FockMatrix nhat = ft.adag[0] * ft.a[0];
    const FockMatrix lam = 0.5 * (1.0 - x12) * ft.identity + x12 * nhat;
    const FockMatrix dl = nhat - 0.5 * ft.identity;
    OperatorMatrix d(2, 2);
    d(0, 1) = -dl;  // direction E_21 - E_12 lowers X_12
    d(1, 0) = dl;
    const ComplexMatrix xm = cplx(X - antisym_identity(1));
    const OperatorMatrix lhs = ordered_product(IdentityKind::NORMAL, lam, 1, {OrderingRoute::Direct});
    // lhs = -i c (X- D X-) + i Lambda X-
    const OperatorMatrix basis = OperatorMatrix::sandwich(xm, d, xm) * Complex(0.0, -1.0);
    const OperatorMatrix rest = lhs - OperatorMatrix::scalar(lam, xm) * kI;
    Complex num = 0.0;
    double den = 0.0;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        num += (basis(i, j).conjugate().cwiseProduct(rest(i, j))).sum();
        den += basis(i, j).squaredNorm();
      }
    return num.real() / den;
  }();
  return c;
}

OperatorMatrix rhs_identity(IdentityKind kind, const AntisymMatrix& X, double h) {
  const int modes = X.modes();
  if (modes > kMaxExpansionModes) fail(ErrorCode::TooManyModes, "identity products support M <= 3");
  const int n = 2 * modes;
  const ComplexMatrix ical = cplx(antisym_identity(modes));
  const ComplexMatrix eye = ComplexMatrix::Identity(n, n);
  const ComplexMatrix Xc = cplx(X);
  const ComplexMatrix xp_ = Xc + ical;  // X+
  const ComplexMatrix xm_ = Xc - ical;  // X-
  using OM = OperatorMatrix;

  if (is_unnormalized(kind)) {
    const FockMatrix lu = unnormalized_at_X(X);
    const OM dy = unnormalized_y_derivative(X, h);
    const ComplexMatrix t = 2.0 * cplx(Y_from_X(X)) + ical;
    switch (kind) {
      case IdentityKind::UNNORM_NORMAL:
        return dy * kI;
      case IdentityKind::UNNORM_MIXED:
        return (OM::sandwich(ical * t, dy, eye) * Complex(-1.0) + OM::scalar(lu, 2.0 * ical)) * kI;
      default:
        return (OM::sandwich(ical * t, dy, t * ical) - OM::scalar(lu, 2.0 * ical * t * ical)) * kI;
    }
  }

  const FockMatrix lam = gaussian_op(X);
  switch (kind) {
    case IdentityKind::MIXED_1:
    case IdentityKind::MIXED_2:
    case IdentityKind::NORMAL:
    case IdentityKind::ANTINORMAL: {
      const OM d = operator_derivative(X, h);
      if (kind == IdentityKind::MIXED_1) return (OM::sandwich(xp_, d, xm_) - OM::scalar(lam, xm_)) * kI;
      if (kind == IdentityKind::MIXED_2) return (OM::sandwich(xm_, d, xp_) - OM::scalar(lam, xp_)) * kI;
      if (kind == IdentityKind::NORMAL) return (OM::sandwich(xm_, d, xm_) - OM::scalar(lam, xm_)) * (-kI);
      return (OM::sandwich(xp_, d, xp_) - OM::scalar(lam, xp_)) * (-kI);
    }
    default: {
      const AntisymMatrix x = x_of_X(X);
      const OM dx = x_derivative(x, h);
      const ComplexMatrix xp = cplx(x) + kI * eye;
      const ComplexMatrix xm = cplx(x) - kI * eye;
      if (kind == IdentityKind::UNORD_LEFT) return (OM::sandwich(xm, dx, xp) - OM::scalar(lam, xp)) * kI;
      if (kind == IdentityKind::UNORD_RIGHT) return (OM::sandwich(xp, dx, xm) - OM::scalar(lam, xp)) * kI;
      return (OM::scalar(lam, xm) - OM::sandwich(xm, dx, xm)) * kI;
    }
  }
}

double check_identity(IdentityKind kind, const AntisymMatrix& X, double h, const LhsOptions& opt) {
  return relative_residual(lhs_product(kind, X, opt), rhs_identity(kind, X, h));
}

std::vector<IdentityStats> identity_sweep(const std::vector<int>& modes, int trials, double h, std::uint64_t seed,
                                          int threads) {
  constexpr std::size_t nk = kAllIdentityKinds.size();
  struct Item {
    int modes;
    int trial;
  };
  std::vector<Item> items;
  for (int m : modes)
    for (int t = 0; t < trials; ++t) items.push_back({m, t});
  std::vector<std::array<double, nk>> res(items.size());
  parallel_for(items.size(), threads, [&](std::size_t i) {
    std::mt19937_64 rng = stream_rng(seed, static_cast<std::uint64_t>(items[i].modes) * 1000003ULL +
                                               static_cast<std::uint64_t>(items[i].trial));
    const AntisymMatrix X = random_domain_point(items[i].modes, rng, 0.9);
    for (std::size_t k = 0; k < nk; ++k) res[i][k] = check_identity(kAllIdentityKinds[k], X, h);
  });
  std::vector<IdentityStats> out;
  for (int m : modes)
    for (std::size_t k = 0; k < nk; ++k) {
      IdentityStats s{kAllIdentityKinds[k], m, 0, 0.0, 0.0};
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (items[i].modes != m) continue;
        ++s.trials;
        s.max_residual = std::max(s.max_residual, res[i][k]);
        s.mean_residual += res[i][k];
      }
      if (s.trials > 0) s.mean_residual /= s.trials;
      out.push_back(s);
    }
  return out;
}

std::vector<BlockComparison> block_formula_audit(const std::vector<int>& modes, std::uint64_t seed) {
  struct Variant {
    const char* label;
    IdentityKind kind;
    LhsOptions opt;
  };
  const Variant variants[] = {
      {"MIXED_1/corrected", IdentityKind::MIXED_1, {OrderingRoute::BlockFormulas, TransposeReading::Entry}},
      {"MIXED_1/swapped", IdentityKind::MIXED_1, {OrderingRoute::BlockFormulasSwapped, TransposeReading::Entry}},
      {"MIXED_2/transpose-entry", IdentityKind::MIXED_2, {OrderingRoute::BlockFormulas, TransposeReading::Entry}},
      {"MIXED_2/transpose-dropped", IdentityKind::MIXED_2, {OrderingRoute::BlockFormulas, TransposeReading::Dropped}},
      {"NORMAL/transpose-entry", IdentityKind::NORMAL, {OrderingRoute::BlockFormulas, TransposeReading::Entry}},
      {"NORMAL/transpose-dropped", IdentityKind::NORMAL, {OrderingRoute::BlockFormulas, TransposeReading::Dropped}},
      {"ANTINORMAL", IdentityKind::ANTINORMAL, {OrderingRoute::BlockFormulas, TransposeReading::Entry}},
      {"UNORD_LEFT", IdentityKind::UNORD_LEFT, {OrderingRoute::BlockFormulas, TransposeReading::Entry}},
  };
  std::vector<BlockComparison> out;
  for (int m : modes) {
    std::mt19937_64 rng = stream_rng(seed, static_cast<std::uint64_t>(m));
    const AntisymMatrix X = random_domain_point(m, rng, 0.9);
    const FockMatrix lam = gaussian_op(X);
    for (const Variant& v : variants) {
      const OperatorMatrix ref = ordered_product(v.kind, lam, m, {OrderingRoute::Direct});
      const OperatorMatrix got = ordered_product(v.kind, lam, m, v.opt);
      BlockComparison bc{v.label, m, {0.0, 0.0, 0.0, 0.0}};
      for (int i = 0; i < 2 * m; ++i)
        for (int j = 0; j < 2 * m; ++j) {
          const int b = (i >= m ? 2 : 0) + (j >= m ? 1 : 0);
          const double r = (got(i, j) - ref(i, j)).norm() / std::max(1.0, ref(i, j).norm());
          bc.block_residual[static_cast<std::size_t>(b)] = std::max(bc.block_residual[static_cast<std::size_t>(b)], r);
        }
      out.push_back(bc);
    }
  }
  return out;
}

}  // namespace fermiq
