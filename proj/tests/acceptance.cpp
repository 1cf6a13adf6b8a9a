// Copyright 2026 The qfddf Authors
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

// Acceptance report: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "qfddf/cdf.hpp"
#include "qfddf/compiler.hpp"
#include "qfddf/dense_operators.hpp"
#include "qfddf/fock.hpp"
#include "qfddf/qfd.hpp"
#include "qfddf/rng.hpp"
#include "qfddf/statevector.hpp"
#include "qfddf/synthetic.hpp"
#include "qfddf/zeta_form.hpp"

#include "support/dense_gates.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace qfddf;
using testing::CMat;
using testing::Cx;
using testing::expm_hermitian;
using testing::spectral_norm;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Jordan-Wigner a+_j on `modes` modes, bit j of the index is mode j.
Matrix creation(int modes, int j) {
  const std::size_t dim = std::size_t{1} << modes;
  Matrix c = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) {
    if (i >> j & 1) continue;
    const int parity = std::popcount(i & ((std::size_t{1} << j) - 1)) & 1;
    c(i | std::size_t{1} << j, i) = parity ? -1.0 : 1.0;
  }
  return c;
}

// E_ext + sum_k f_k n~_k + 1/2 sum_t sum_kl Z_kl n~_k n~_l with n~ summed over spin.
Matrix df_operator_reference(const DFDecomposition& dec) {
  const int m = dec.n_orbitals;
  std::vector<Matrix> a;
  for (int j = 0; j < 2 * m; ++j) a.push_back(creation(2 * m, j));
  const Eigen::Index dim = a[0].rows();
  auto number = [&](const Matrix& u, int k) {
    Matrix n = Matrix::Zero(dim, dim);
    for (int s = 0; s < 2; ++s)
      for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) n += u(p, k) * u(q, k) * a[p + s * m] * a[q + s * m].transpose();
    return n;
  };
  Matrix h = dec.e_ext * Matrix::Identity(dim, dim);
  for (int k = 0; k < m; ++k) h += dec.one_body.eigenvalues(k) * number(dec.one_body.leaf, k);
  for (const DFLayer& layer : dec.layers) {
    std::vector<Matrix> n;
    for (int k = 0; k < m; ++k) n.push_back(number(layer.leaf, k));
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) h += 0.5 * layer.core(k, l) * n[k] * n[l];
  }
  return h;
}

ZetaForm one_body_part(const ZetaForm& form) {
  ZetaForm out = form;
  out.layers.clear();
  out.e_ext = 0.0;
  return out;
}

ZetaForm layer_part(const ZetaForm& form, std::size_t t) {
  ZetaForm out;
  out.n_orbitals = form.n_orbitals;
  out.one_body_coefficients = Vector::Zero(form.n_orbitals);
  out.one_body_leaf = Matrix::Identity(form.n_orbitals, form.n_orbitals);
  out.layers = {form.layers[t]};
  return out;
}

double toeplitz_deviation(const ComplexMatrix& a) {
  double d = 0.0;
  for (Eigen::Index m = 0; m < a.rows(); ++m)
    for (Eigen::Index n = m; n < a.cols(); ++n) d = std::max(d, std::abs(a(m, n) - a(0, n - m)));
  return d;
}

// Largest |a - b| / (3 sigma) over the upper triangle; <= 1 means every element is within 3 sigma.
double worst_sigma_ratio(const ComplexMatrix& a, const ComplexMatrix& b, const Matrix& sigma) {
  double worst = 0.0;
  for (Eigen::Index m = 0; m < a.rows(); ++m)
    for (Eigen::Index n = m; n < a.cols(); ++n) {
      const double diff = std::abs(a(m, n) - b(m, n));
      worst = std::max(worst, diff <= 1e-12 ? 0.0 : diff / (3.0 * sigma(m, n)));
    }
  return worst;
}

DFDecomposition exact_m2_decomposition(const ActiveSpaceHamiltonian& ham) {
  CdfOptions o;
  o.grad_tol = 1e-14;
  return make_decomposition(ham, cdf_two_step(ham.eri, 2, o).layers);
}

Outcome gradient_fidelity() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    auto rng = make_rng(seed, {0xa1});
    const Tensor4 eri = random_eri(3, seed + 500);
    GeneratorParams params;
    std::vector<Matrix> cores;
    for (int t = 0; t < 2; ++t) {
      Matrix x = 0.5 * random_symmetric(3, rng);
      x = (x - x.transpose()).eval();
      params.generators.push_back(x);
      cores.push_back(random_symmetric(3, rng, 0.3));
    }
    const auto g = cdf_objective_gradient(params, cores, eri);
    auto objective = [&](const GeneratorParams& p, const std::vector<Matrix>& z) {
      return cdf_objective_gradient(p, z, eri).objective;
    };
    auto central = [&](auto&& f, double h) { return (4.0 * (f(h / 2) - f(-h / 2)) / h - (f(h) - f(-h)) / (2 * h)) / 3.0; };
    double num = 0.0, den = 0.0;
    for (int t = 0; t < 2; ++t) {
      for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
          const double fd = central(
              [&](double h) {
                GeneratorParams p = params;
                p.generators[t](a, b) += h;
                p.generators[t](b, a) -= h;
                return objective(p, cores);
              },
              1e-4);
          num += std::pow(g.grad_generator[t](a, b) - fd, 2);
          den += fd * fd;
        }
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const double fd = central(
              [&](double h) {
                std::vector<Matrix> z = cores;
                z[t](k, l) += h;
                return objective(params, z);
              },
              1e-4);
          num += std::pow(g.grad_core[t](k, l) - fd, 2);
          den += fd * fd;
        }
    }
    worst = std::max(worst, std::sqrt(num / den));
  }
  return {worst < 1e-6, fmt("max relative error %.2e over 5 instances (M=3, n_DF=2)", worst)};
}

Outcome stage_monotonicity() {
  bool monotone = true;
  int improved = 0;
  double min_ratio = INFINITY;
  for (int n_df : {1, 2})
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const int m = seed % 2 ? 6 : 4;
      const CdfResult r = cdf_two_step(ppp_like_eri(m, seed), n_df);
      const double o0 = r.stages[0].objective, o1 = r.stages[1].objective, o2 = r.stages[2].objective;
      monotone = monotone && o1 <= o0 * (1 + 1e-12) && o2 <= o1;
      if (n_df == 1) {
        improved += o0 >= 2.0 * o2;
        min_ratio = std::min(min_ratio, o0 / o2);
      }
    }
  return {monotone && improved >= 8,
          fmt("monotone=%s, n_DF=1 improvement >= 2x on %d/10 (min ratio %.2f)", monotone ? "yes" : "no", improved,
              min_ratio)};
}

Outcome small_rank_exactness() {
  double worst = 0.0;
  int cases = 0;
  CdfOptions o;
  o.grad_tol = 1e-14;
  auto check = [&](const Tensor4& eri) {
    worst = std::max(worst, cdf_two_step(eri, 2, o).stages[2].mad);
    ++cases;
  };
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    check(random_eri(2, seed));
    check(homo_lumo_model(random_homo_lumo_params(seed)).eri);
  }
  check(hubbard_dimer(1.0, 4.0).eri);
  return {worst < 1e-10, fmt("max MAD %.2e over %d M=2 Hamiltonians at n_DF=2", worst, cases)};
}

Outcome operator_equality() {
  double worst = 0.0;
  const int shapes[5][2] = {{1, 1}, {2, 1}, {2, 3}, {3, 2}, {3, 4}};
  for (int i = 0; i < 5; ++i) {
    const DFDecomposition dec = random_decomposition(shapes[i][0], shapes[i][1], 700 + i);
    const Matrix zeta = dense_operator(FockSpace(dec.n_orbitals), to_zeta_form(dec));
    const Matrix unfolded = dense_operator(FockSpace(dec.n_orbitals), to_unfolded_zeta_form(dec));
    const Matrix reference = df_operator_reference(dec);
    worst = std::max({worst, (zeta - reference).cwiseAbs().maxCoeff(), (unfolded - reference).cwiseAbs().maxCoeff()});
  }
  return {worst < 1e-10, fmt("max |H_zeta - H_DF| = %.2e over 5 decompositions (M<=3)", worst)};
}

Outcome circuit_correctness() {
  double product_err = 0.0, control_err = 0.0;
  double ratio_lo = INFINITY, ratio_hi = 0.0;
  const QubitLayout plain{2, false}, with_anc{2, true};
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const DFDecomposition dec = random_decomposition(2, 1 + static_cast<int>(seed % 2), 800 + seed);
    const ZetaForm form = to_zeta_form(dec);
    const FockSpace space(2);

    const double dt = 0.1;
    CMat ordered = expm_hermitian(dense_operator(space, one_body_part(form)), dt);
    for (std::size_t t = 0; t < form.layers.size(); ++t)
      ordered = expm_hermitian(dense_operator(space, layer_part(form, t)), dt) * ordered;
    ordered *= std::exp(Cx(0, -dt * form.e_ext));
    const CMat step = circuit_unitary(trotter_step_circuit(form, dt, plain));
    product_err = std::max(product_err, (step - ordered).cwiseAbs().maxCoeff());

    const Matrix h = dense_operator(space, dec);
    auto error = [&](double tau) {
      return spectral_norm(circuit_unitary(trotter_step_circuit(form, tau, plain)) - expm_hermitian(h, tau));
    };
    const double ratio = error(0.1) / error(0.05);
    ratio_lo = std::min(ratio_lo, ratio);
    ratio_hi = std::max(ratio_hi, ratio);

    const Eigen::Index d = step.rows();
    for (int power : {0, 1, 2}) {
      const CMat u = circuit_unitary(controlled_trotter_circuit(form, dt, power, with_anc));
      CMat target = CMat::Identity(d, d);
      for (int i = 0; i < power; ++i) target = step * target;
      control_err = std::max({control_err, (u.topLeftCorner(d, d) - CMat::Identity(d, d)).cwiseAbs().maxCoeff(),
                              u.topRightCorner(d, d).cwiseAbs().maxCoeff(),
                              u.bottomLeftCorner(d, d).cwiseAbs().maxCoeff(),
                              (u.bottomRightCorner(d, d) - target).cwiseAbs().maxCoeff()});
    }
  }
  const bool pass = product_err < 1e-10 && ratio_lo >= 3.2 && ratio_hi <= 4.8 && control_err < 1e-10;
  return {pass, fmt("ordered-product error %.1e, halving ratio in [%.3f, %.3f], control error %.1e", product_err,
                    ratio_lo, ratio_hi, control_err)};
}

Outcome qfd_fci_agreement() {
  double worst = 0.0;
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const ActiveSpaceHamiltonian ham = homo_lumo_model(random_homo_lumo_params(seed));
    QfdConfig c;
    c.n_qfd = 2;
    c.dt = 0.1;
    const SpectrumResult r = run_qfd(c, to_zeta_form(exact_m2_decomposition(ham)), 1, 1);
    const Vector fci = fci_oracle(ham, 1, 1);
    if (r.eigenvalues.size() != fci.size()) return {false, fmt("seed %d: %d eigenvalues, expected %d", int(seed),
                                                                int(r.eigenvalues.size()), int(fci.size()))};
    worst = std::max(worst, (r.eigenvalues - fci).cwiseAbs().maxCoeff());
  }

  // Variational and monotone ground energy while every added Krylov vector is retained.
  const ActiveSpaceHamiltonian ham = random_hamiltonian(3, 1, 1, 900);
  const ZetaForm form = to_zeta_form(make_decomposition(ham, xdf_factorize(ham.eri, 6)));
  const double e0 = fci_oracle(ham, 1, 1)(0);
  bool variational = true, monotone = true;
  double previous = INFINITY;
  std::ostringstream series;
  for (int n = 1; n <= 6; ++n) {
    QfdConfig c;
    c.n_qfd = n;
    c.dt = 0.5;
    c.references = {Determinant{1, 1}};
    const SpectrumResult r = run_qfd(c, form, 1, 1);
    const double e = r.eigenvalues(0);
    variational = variational && e >= e0 - 1e-10 && r.runs[0].spectrum.retained == n;
    monotone = monotone && e <= previous + 1e-10;
    previous = e;
    series << " " << fmt("%.2e", e - e0);
  }
  return {worst < 1e-8 && variational && monotone,
          fmt("M=2 max |E_QFD - E_FCI| = %.1e; M=3 (dt 0.5) ground error vs n_qfd:", worst) + series.str()};
}

Outcome toeplitz_property() {
  const ZetaForm form = to_zeta_form(random_decomposition(2, 2, 1000));
  QfdConfig c;
  c.n_qfd = 4;
  c.references = {Determinant{1, 1}};
  c.exact_propagator = true;
  const SubspaceMatrices exact = run_qfd(c, form, 1, 1).runs[0].matrices;
  c.exact_propagator = false;
  const SubspaceMatrices trotter = run_qfd(c, form, 1, 1).runs[0].matrices;
  const double es = toeplitz_deviation(exact.s), eh = toeplitz_deviation(exact.h);
  const double ts = toeplitz_deviation(trotter.s), th = toeplitz_deviation(trotter.h);
  const bool pass = es < 1e-12 && eh < 1e-12 && th > 1e-6 && std::abs(trotter.toeplitz_deviation_h - th) < 1e-14;
  return {pass, fmt("exact propagator: S %.1e, H %.1e; Trotter: S %.1e, H %.2e (recorded %.2e)", es, eh, ts, th,
                    trotter.toeplitz_deviation_h)};
}

Outcome estimator_consistency() {
  const ActiveSpaceHamiltonian ham = homo_lumo_model(random_homo_lumo_params(11));
  const ZetaForm form = to_zeta_form(exact_m2_decomposition(ham));
  QfdConfig c;
  c.n_qfd = 2;
  const SpectrumResult exact = run_qfd(c, form, 1, 1);
  c.mode = QfdMode::kHadamardShots;
  c.shots = 1000000;
  c.seed = 8;
  const SpectrumResult shots = run_qfd(c, form, 1, 1);
  double worst = 0.0;
  for (std::size_t i = 0; i < exact.runs.size(); ++i) {
    const SubspaceMatrices& a = exact.runs[i].matrices;
    const SubspaceMatrices& b = shots.runs[i].matrices;
    worst = std::max({worst, worst_sigma_ratio(b.s, a.s, b.s_stderr), worst_sigma_ratio(b.h, a.h, b.h_stderr)});
  }
  return {worst <= 1.0, fmt("largest deviation %.2f of 3 sigma over S and H of %d references (10^6 shots)",
                            worst, int(exact.runs.size()))};
}

Outcome mitigation_efficacy() {
  int wins = 0;
  std::ostringstream errors;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ActiveSpaceHamiltonian ham = homo_lumo_model(random_homo_lumo_params(seed));
    CdfOptions o;
    o.max_epochs = 500;
    const ZetaForm form = to_zeta_form(make_decomposition(ham, cdf_two_step(ham.eri, 2, o).layers));
    const double e0 = fci_oracle(ham, 1, 1)(0);
    QfdConfig c;
    c.mode = QfdMode::kHadamardShots;
    c.n_qfd = 2;
    c.shots = 8000;
    c.noise = NoiseModel{1e-3, 1e-2, 0.0};
    c.seed = seed;
    c.references = {Determinant{1, 1}};
    const double raw = std::abs(run_qfd(c, form, 1, 1).eigenvalues(0) - e0);
    c.post_select = true;
    c.n_echo = 10;
    const double mitigated = std::abs(run_qfd(c, form, 1, 1).eigenvalues(0) - e0);
    wins += mitigated <= raw;
    errors << fmt(" %.3f/%.3f", raw, mitigated);
  }

  const ActiveSpaceHamiltonian ham = homo_lumo_model(random_homo_lumo_params(20));
  const ZetaForm form = to_zeta_form(exact_m2_decomposition(ham));
  QfdConfig c;
  c.mode = QfdMode::kHadamardShots;
  c.n_qfd = 2;
  c.seed = 21;
  const SpectrumResult raw = run_qfd(c, form, 1, 1);
  c.post_select = true;
  c.n_echo = 10;
  c.seed = 22;
  const SpectrumResult mitigated = run_qfd(c, form, 1, 1);
  double worst = 0.0, discarded = 0.0;
  for (std::size_t i = 0; i < raw.runs.size(); ++i) {
    const SubspaceMatrices& a = raw.runs[i].matrices;
    const SubspaceMatrices& b = mitigated.runs[i].matrices;
    const Matrix s_sigma = (a.s_stderr.array().square() + b.s_stderr.array().square()).sqrt();
    const Matrix h_sigma = (a.h_stderr.array().square() + b.h_stderr.array().square()).sqrt();
    worst = std::max({worst, worst_sigma_ratio(a.s, b.s, s_sigma), worst_sigma_ratio(a.h, b.h, h_sigma)});
    discarded = std::max(discarded, b.discard_fraction());
  }
  return {wins >= 8 && worst <= 1.0 && discarded == 0.0,
          fmt("ps+echo <= raw on %d/10 seeds; noiseless raw vs ps+echo within %.2f of 3 sigma, discard %.0f%%; "
              "raw/mitigated errors:",
              wins, worst, 100 * discarded) +
              errors.str()};
}

Outcome gate_accounting() {
  Circuit g(2), z(2);
  g.givens(0, 1, 0.3);
  z.rzz(0, 1, 0.3);
  const GateCounts gc = lower_and_count(g).after, zc = lower_and_count(z).after;
  bool pass = gc.cnot() == 2 && gc.total() == gc.cnot() + gc.count(GateKind::kRY) + gc.count(GateKind::kRZ) +
                                                   gc.count(GateKind::kH) + gc.count(GateKind::kSDG) +
                                                   gc.count(GateKind::kX);
  pass = pass && zc.cnot() == 2 && zc.count(GateKind::kRZ) == 1 && zc.total() == 3;
  std::ostringstream savings;
  for (auto [m, n_df] : {std::pair{1, 1}, std::pair{2, 1}, std::pair{2, 2}, std::pair{3, 1}, std::pair{3, 3}}) {
    const DFDecomposition dec = random_decomposition(m, n_df, 1100 + 10 * m + n_df);
    const auto report = controlled_step_report(to_zeta_form(dec), to_unfolded_zeta_form(dec), 0.1, QubitLayout{m, true});
    pass = pass && report.cnot_saving == 2 * (2 * m) * n_df;
    savings << fmt(" (M=%d,n_DF=%d)->%d", m, n_df, report.cnot_saving);
  }
  return {pass, fmt("Givens %d CNOT, RZZ %d CNOT + %d RZ, savings", gc.cnot(), zc.cnot(), zc.count(GateKind::kRZ)) +
                    savings.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"gradient fidelity", gradient_fidelity},
      {"stage monotonicity", stage_monotonicity},
      {"small-rank exactness", small_rank_exactness},
      {"operator equality", operator_equality},
      {"circuit correctness", circuit_correctness},
      {"QFD-FCI agreement", qfd_fci_agreement},
      {"Toeplitz property", toeplitz_property},
      {"estimator consistency", estimator_consistency},
      {"mitigation efficacy", mitigation_efficacy},
      {"gate accounting", gate_accounting},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !o.pass;
    std::printf("%s criterion %zu (%s): %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
