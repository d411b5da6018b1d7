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


// Python bindings: fermiq._core. Antisymmetric matrices cross the boundary as
// float64 numpy arrays and are validated on entry.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fermiq/dynamics.hpp"
#include "fermiq/errors.hpp"
#include "fermiq/identities.hpp"
#include "fermiq/qfunction.hpp"
#include "fermiq/transforms.hpp"

namespace py = pybind11;
using namespace fermiq;

namespace {

AntisymMatrix as_antisym(const RealMatrix& m) { return AntisymMatrix::checked(m); }

FockState as_state(const ComplexMatrix& rho) { return FockState::checked(rho); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Majorana phase-space core: Gaussian operators, Q-functions and dynamics";

  // Messages lead with the error code name, e.g. "OutOfDomain: ...".
  py::register_exception<fermiq::Error>(m, "FermiqError", PyExc_ValueError);

  // antisym
  m.def("pfaffian", [](const RealMatrix& a) { return pfaffian(a); }, py::arg("a"));
  m.def(
      "canonical_form",
      [](const RealMatrix& a) {
        const CanonicalForm cf = canonical_form(as_antisym(a));
        return py::make_tuple(cf.rotation, cf.lambdas);
      },
      py::arg("a"), "Returns (R, lambdas) with R a R^T block diagonal and lambdas descending.");
  m.def("canonical_block", &canonical_block, py::arg("lambdas"));
  m.def("antisym_identity", [](int modes) { return antisym_identity(modes).mat(); }, py::arg("modes"));
  m.def("max_lambda", [](const RealMatrix& x) { return max_lambda(as_antisym(x)); }, py::arg("x"));
  m.def(
      "domain_contains", [](const RealMatrix& x, double margin) { return domain_contains(as_antisym(x), margin); },
      py::arg("x"), py::arg("margin") = 0.0);

  // transforms
  m.def("X_from_Y", [](const RealMatrix& y) { return X_from_Y(as_antisym(y)).mat(); }, py::arg("y"));
  m.def("Y_from_X", [](const RealMatrix& X) { return Y_from_X(as_antisym(X)).mat(); }, py::arg("X"));
  m.def("x_of_X", [](const RealMatrix& X) { return x_of_X(as_antisym(X)).mat(); }, py::arg("X"));
  m.def("gaussian_norm", [](const RealMatrix& X) { return gaussian_norm(as_antisym(X)); }, py::arg("X"));
  m.def(
      "omega_from_model", [](const ComplexMatrix& h, const ComplexMatrix& d) { return omega_from_model(h, d).mat(); },
      py::arg("h"), py::arg("delta"));

  // Fock-space oracle
  m.def("gaussian_op", [](const RealMatrix& X) { return gaussian_op(as_antisym(X)); }, py::arg("X"));
  m.def(
      "gaussian_from_covariance", [](const RealMatrix& x) { return gaussian_from_covariance(as_antisym(x)); },
      py::arg("x"));
  m.def("covariance_of", [](const ComplexMatrix& rho) { return covariance_of(rho).mat(); }, py::arg("rho"));
  m.def("majorana_ops", &majorana_ops, py::arg("modes"));
  m.def("number_op", &number_op, py::arg("modes"), py::arg("mode"));
  m.def("bdg_hamiltonian", &bdg_hamiltonian, py::arg("h"), py::arg("delta"));
  m.def(
      "qfunction_oracle",
      [](const ComplexMatrix& rho, const RealMatrix& x, double k) { return qfunction_oracle(as_state(rho), as_antisym(x), k); },
      py::arg("rho"), py::arg("x"), py::arg("k") = 1.0);

  // identities
  m.def("identity_kinds", [] {
    std::vector<std::string> v;
    for (IdentityKind k : kAllIdentityKinds) v.emplace_back(kind_name(k));
    return v;
  });
  m.def(
      "check_identity",
      [](const std::string& kind, const RealMatrix& X, double h) { return check_identity(kind_from_name(kind), as_antisym(X), h); },
      py::arg("kind"), py::arg("X"), py::arg("h") = 1e-5, "Relative residual between both sides of one identity.");

  // Q-function
  m.def("norm_const", &norm_const, py::arg("modes"), py::arg("k"));
  m.def("scaling", [](const RealMatrix& x, double k) { return scaling(as_antisym(x), k); }, py::arg("x"), py::arg("k"));
  m.def("single_mode_q", &single_mode_q, py::arg("n"), py::arg("x"), py::arg("k"));
  m.def("moment_factor", &moment_factor, py::arg("modes"), py::arg("k"));
  m.def(
      "sample_domain",
      [](int modes, double k, std::size_t count, std::uint64_t seed, int threads) {
        const DomainSampleSet s = sample_domain(modes, k, count, seed, threads);
        std::vector<RealMatrix> xs;
        xs.reserve(s.samples.size());
        for (const auto& p : s.samples) xs.push_back(p.x.mat());
        return py::make_tuple(xs, s.proposals);
      },
      py::arg("modes"), py::arg("k"), py::arg("count"), py::arg("seed") = 1, py::arg("threads") = 1,
      "Returns (samples, proposals).");

  // dynamics
  m.def(
      "evolve_unitary",
      [](const RealMatrix& x0, const RealMatrix& omega, double t_final, double dt, int record_every) {
        std::vector<double> ts;
        std::vector<RealMatrix> xs;
        for (const auto& p : evolve_unitary(as_antisym(x0), as_antisym(omega), t_final, dt, record_every)) {
          ts.push_back(p.t);
          xs.push_back(p.x.mat());
        }
        return py::make_tuple(ts, xs);
      },
      py::arg("x0"), py::arg("omega"), py::arg("t_final"), py::arg("dt"), py::arg("record_every") = 1);
  m.def(
      "evolve_unitary_exact",
      [](const RealMatrix& x0, const RealMatrix& omega, double t) {
        return evolve_unitary_exact(as_antisym(x0), as_antisym(omega), t).mat();
      },
      py::arg("x0"), py::arg("omega"), py::arg("t"));
  m.def("analytic_quantum_dot", &analytic_quantum_dot, py::arg("x0"), py::arg("gamma"), py::arg("t"));
  m.def(
      "integrate_characteristic",
      [](const RealMatrix& X0, const RealMatrix& omega, const RealMatrix& gamma, double k, double t_final, double dt,
         int record_every) {
        const DissipativeModel model = DissipativeModel::checked(omega, gamma);
        std::vector<double> ts, lw;
        std::vector<RealMatrix> xs;
        std::vector<bool> alive;
        for (const auto& p : integrate_characteristic(as_antisym(X0), model, k, t_final, dt, record_every)) {
          ts.push_back(p.t);
          xs.push_back(p.X.mat());
          lw.push_back(p.log_weight);
          alive.push_back(p.alive);
        }
        return py::dict(py::arg("t") = ts, py::arg("X") = xs, py::arg("log_weight") = lw, py::arg("alive") = alive);
      },
      py::arg("X0"), py::arg("omega"), py::arg("gamma"), py::arg("k") = 0.0, py::arg("t_final") = 1.0,
      py::arg("dt") = 1e-3, py::arg("record_every") = 1);
  m.def(
      "pde_q_single_mode",
      [](double n0, double gamma, double k, int cells, const std::vector<double>& times) {
        const PdeResult r = pde_q_single_mode(n0, gamma, k, cells, times);
        std::vector<double> ts;
        std::vector<std::vector<double>> qs;
        for (const auto& s : r.snapshots) {
          ts.push_back(s.t);
          qs.push_back(s.q);
        }
        return py::dict(py::arg("x") = r.x, py::arg("t") = ts, py::arg("q") = qs, py::arg("audit") = r.audit());
      },
      py::arg("n0"), py::arg("gamma"), py::arg("k"), py::arg("cells"), py::arg("times"));
  m.def(
      "bosonic_residual",
      [](const RealMatrix& omega, const ComplexMatrix& alpha0, double t) { return bosonic_compare(omega, alpha0, t).residual; },
      py::arg("omega"), py::arg("alpha0"), py::arg("t"));
}
