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

#include "qfddf/qfd.hpp"

#include "qfddf/rng.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

namespace qfddf {

void QfdConfig::validate() const {
  if (n_qfd < 1) throw std::invalid_argument("n_qfd must be >= 1");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw std::invalid_argument("dt must be positive");
  if (n_df < 0) throw std::invalid_argument("n_df must be >= 0");
  if (mode == QfdMode::kHadamardShots && shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (n_echo < 0) throw std::invalid_argument("n_echo must be >= 0");
  if (n_echo > 0 && shots < n_echo && !infinite_shots)
    throw std::invalid_argument("shots must be at least n_echo");
  if (eps_s && !(*eps_s >= 0.0)) throw std::invalid_argument("eps_s must be non-negative");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
  noise.validate();
}

GevpResult solve_gevp(const ComplexMatrix& s_in, const ComplexMatrix& h_in, double eps_s) {
  if (s_in.rows() != s_in.cols() || h_in.rows() != h_in.cols() || s_in.rows() != h_in.rows())
    throw std::invalid_argument("solve_gevp: dimension mismatch");
  const ComplexMatrix s = 0.5 * (s_in + s_in.adjoint());
  const ComplexMatrix h = 0.5 * (h_in + h_in.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(s);
  const Vector& lambda = es.eigenvalues();
  const double cutoff = eps_s * lambda.maxCoeff();
  std::vector<Eigen::Index> keep;
  for (Eigen::Index k = 0; k < lambda.size(); ++k)
    if (lambda(k) > cutoff && lambda(k) > 0.0) keep.push_back(k);
  if (keep.empty()) throw EngineAbort("solve_gevp: overlap matrix has no retained eigenvalues");

  ComplexMatrix x(s.rows(), static_cast<Eigen::Index>(keep.size()));
  for (std::size_t j = 0; j < keep.size(); ++j) x.col(j) = es.eigenvectors().col(keep[j]) / std::sqrt(lambda(keep[j]));
  const ComplexMatrix reduced = x.adjoint() * h * x;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> hs(0.5 * (reduced + reduced.adjoint()));
  return {hs.eigenvalues(), x * hs.eigenvectors(), static_cast<int>(keep.size())};
}

std::vector<Determinant> default_references(int n_orbitals, int n_alpha, int n_beta) {
  if (n_alpha < 0 || n_beta < 0 || n_alpha > n_orbitals || n_beta > n_orbitals)
    throw std::invalid_argument("default_references: bad particle numbers");
  const Determinant rhf{(Bitstring{1} << n_alpha) - 1, (Bitstring{1} << n_beta) - 1};
  std::vector<Determinant> refs{rhf};
  if (n_alpha >= 1 && n_alpha < n_orbitals) {
    Determinant excited = rhf;
    excited.alpha ^= (Bitstring{1} << (n_alpha - 1)) | (Bitstring{1} << n_alpha);
    refs.push_back(excited);
  }
  return refs;
}

namespace {

const Matrix& leaf_of(const ZetaForm& form, int factor) {
  return factor == 0 ? form.one_body_leaf : form.layers[factor - 1].leaf;
}

int factor_count(const ZetaForm& form) { return 1 + static_cast<int>(form.layers.size()); }

}  // namespace

ComplexVector apply_zeta_hamiltonian(const ZetaForm& form, const StateVector& state) {
  const QubitLayout layout{form.n_orbitals, false};
  if (state.n_qubits() != layout.n_qubits()) throw std::invalid_argument("apply_zeta_hamiltonian: qubit count");
  ComplexVector out = form.e_ext * state.amplitudes();
  for (int factor = 0; factor < factor_count(form); ++factor) {
    Circuit into(layout.n_qubits()), back(layout.n_qubits());
    append_orbital_rotation(into, leaf_of(form, factor).transpose(), layout);
    append_orbital_rotation(back, leaf_of(form, factor), layout);
    StateVector t = apply_circuit(state, into);
    for (std::size_t i = 0; i < t.dimension(); ++i) t.amplitudes()[i] *= factor_value(form, factor, i);
    out += apply_circuit(t, back).amplitudes();
  }
  return out;
}

Matrix zeta_sector_matrix(const ZetaForm& form, const SectorBasis& basis) {
  const int n = form.n_orbitals;
  if (basis.n_orbitals() != n) throw std::invalid_argument("zeta_sector_matrix: orbital count mismatch");
  const auto combined = basis.combined();
  const auto dim = static_cast<Eigen::Index>(combined.size());
  Matrix h(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const ComplexVector col = apply_zeta_hamiltonian(form, StateVector::basis_state(2 * n, combined[j]));
    for (Eigen::Index i = 0; i < dim; ++i) h(i, j) = col[combined[i]].real();
  }
  return 0.5 * (h + h.transpose());
}

namespace {

double toeplitz_deviation(const ComplexMatrix& a) {
  double d = 0.0;
  for (Eigen::Index m = 0; m < a.rows(); ++m)
    for (Eigen::Index n = m; n < a.cols(); ++n) d = std::max(d, std::abs(a(m, n) - a(0, n - m)));
  return d;
}

void finalize(SubspaceMatrices& out) {
  out.hermiticity_deviation =
      std::max((out.s - out.s.adjoint()).cwiseAbs().maxCoeff(), (out.h - out.h.adjoint()).cwiseAbs().maxCoeff());
  out.s = 0.5 * (out.s + out.s.adjoint()).eval();
  out.h = 0.5 * (out.h + out.h.adjoint()).eval();
  out.toeplitz_deviation_s = toeplitz_deviation(out.s);
  out.toeplitz_deviation_h = toeplitz_deviation(out.h);
}

}  // namespace

SubspaceMatrices build_matrices_exact(const QfdConfig& config, const ZetaForm& form, const Determinant& reference) {
  config.validate();
  const int n = form.n_orbitals;
  const int nq = config.n_qfd;
  SubspaceMatrices out;
  out.s = ComplexMatrix::Zero(nq, nq);
  out.h = ComplexMatrix::Zero(nq, nq);
  out.s_stderr = Matrix::Zero(nq, nq);
  out.h_stderr = Matrix::Zero(nq, nq);

  std::vector<ComplexVector> psi, h_psi;
  if (config.exact_propagator) {
    const SectorBasis basis(n, std::popcount(reference.alpha), std::popcount(reference.beta));
    const Matrix hs = zeta_sector_matrix(form, basis);
    Eigen::SelfAdjointEigenSolver<Matrix> es(hs);
    const auto index = basis.index_of(reference.combined(n));
    if (!index) throw std::invalid_argument("reference outside its own sector");
    const ComplexMatrix v = es.eigenvectors().cast<Complex>();
    const ComplexVector c0 = v.row(*index).adjoint();
    for (int m = 0; m < nq; ++m) {
      ComplexVector phases(c0.size());
      for (Eigen::Index k = 0; k < c0.size(); ++k)
        phases(k) = std::exp(Complex(0.0, -config.dt * m * es.eigenvalues()(k))) * c0(k);
      psi.push_back(v * phases);
      h_psi.push_back(hs.cast<Complex>() * psi.back());
    }
  } else {
    const QubitLayout layout{n, false};
    const Circuit step = trotter_step_circuit(form, config.dt, layout);
    StateVector state = StateVector::basis_state(layout.n_qubits(), reference.combined(n));
    for (int m = 0; m < nq; ++m) {
      if (m > 0) state = apply_circuit(state, step);
      psi.push_back(state.amplitudes());
      h_psi.push_back(apply_zeta_hamiltonian(form, state));
    }
  }
  for (int a = 0; a < nq; ++a)
    for (int b = 0; b < nq; ++b) {
      out.s(a, b) = psi[a].dot(psi[b]);
      out.h(a, b) = psi[a].dot(h_psi[b]);
    }
  finalize(out);
  return out;
}

PostSelection post_select(const ShotRecord& shots, const QubitLayout& layout, int n_alpha, int n_beta) {
  const int n = layout.n_orbitals;
  const Bitstring block = (Bitstring{1} << n) - 1;
  PostSelection out;
  out.kept.n_qubits = shots.n_qubits;
  for (const auto& [bits, count] : shots.counts) {
    if (std::popcount(bits & block) == n_alpha && std::popcount((bits >> n) & block) == n_beta) {
      out.kept.counts[bits] += count;
      out.kept.total += count;
    } else {
      out.discarded += count;
    }
  }
  out.discard_fraction = shots.total ? double(out.discarded) / shots.total : 0.0;
  return out;
}

namespace {

double signed_factor(const ZetaForm& form, int factor, const QubitLayout& layout, Bitstring bits) {
  const int anc = layout.ancilla();
  const double sign = (bits >> anc & 1) ? -1.0 : 1.0;
  return sign * factor_value(form, factor, bits & ~(Bitstring{1} << anc));
}

}  // namespace

Estimate estimate_factor_value(const ShotRecord& shots, const ZetaForm& form, int factor, const QubitLayout& layout) {
  if (shots.total < 1) throw EngineAbort("estimate_factor_value: no shots");
  double sum = 0.0, sq = 0.0;
  for (const auto& [bits, count] : shots.counts) {
    const double v = signed_factor(form, factor, layout, bits);
    sum += count * v;
    sq += count * v * v;
  }
  const double n = static_cast<double>(shots.total);
  const double mean = sum / n;
  const double var = shots.total > 1 ? std::max(0.0, (sq - n * mean * mean) / (n - 1.0)) : 0.0;
  return {mean, std::sqrt(var / n)};
}

int hadamard_circuit_count(int n_qfd, int n_df) { return 2 * (n_df + 2) * n_qfd * (n_qfd + 1) / 2; }

namespace {

struct WorkItem {
  int m, n, factor, part, echo;
};

struct WorkResult {
  Estimate estimate;
  long shots = 0;
  long discarded = 0;
};

template <class F>
void parallel_for(std::size_t count, int threads, F&& body) {
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(count)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t k = v.size() / 2;
  return v.size() % 2 ? v[k] : 0.5 * (v[k - 1] + v[k]);
}

}  // namespace

SubspaceMatrices build_matrices_hadamard(const QfdConfig& config, const ZetaForm& form, const Determinant& reference) {
  config.validate();
  const int n_orb = form.n_orbitals;
  const int nq = config.n_qfd;
  const int n_factors = factor_count(form);
  const int n_echo_samples = std::max(1, config.n_echo);
  const long shots_per_sample = config.shots / n_echo_samples;
  const QubitLayout layout{n_orb, true};
  const int n_alpha = std::popcount(reference.alpha), n_beta = std::popcount(reference.beta);

  std::vector<WorkItem> items;
  for (int m = 0; m < nq; ++m)
    for (int n = m; n < nq; ++n)
      for (int factor = kIdentityFactor; factor < n_factors; ++factor)
        for (int part = 0; part < 2; ++part)
          for (int e = 0; e < n_echo_samples; ++e) items.push_back({m, n, factor, part, e});

  std::vector<WorkResult> results(items.size());
  parallel_for(items.size(), config.threads, [&](std::size_t i) {
    const WorkItem& w = items[i];
    const std::initializer_list<std::uint64_t> ids = {reference.alpha,
                                                      reference.beta,
                                                      static_cast<std::uint64_t>(w.m),
                                                      static_cast<std::uint64_t>(w.n),
                                                      static_cast<std::uint64_t>(w.factor + 1),
                                                      static_cast<std::uint64_t>(w.part),
                                                      static_cast<std::uint64_t>(w.echo)};
    auto stream = make_rng(config.seed, ids);
    const std::uint64_t echo_seed = stream();
    const std::uint64_t shot_seed = stream();

    Circuit circuit = hadamard_test_circuit(reference, w.m, w.n, w.part ? Part::kImag : Part::kReal, w.factor, form,
                                            config.dt, layout);
    if (config.n_echo > 0 && circuit.has_blocks()) circuit = insert_echoes(circuit, layout, echo_seed);
    WorkResult& r = results[i];

    if (config.infinite_shots) {
      const StateVector out = apply_circuit(StateVector(layout.n_qubits()), circuit);
      double weight = 0.0, sum = 0.0;
      const Bitstring block = (Bitstring{1} << n_orb) - 1;
      for (std::size_t b = 0; b < out.dimension(); ++b) {
        const double p = std::norm(out.amplitudes()[b]);
        if (p == 0.0) continue;
        if (config.post_select &&
            (std::popcount(b & block) != n_alpha || std::popcount((b >> n_orb) & block) != n_beta))
          continue;
        weight += p;
        sum += p * signed_factor(form, w.factor, layout, b);
      }
      if (weight <= 0.0) throw EngineAbort("post-selection removed all probability weight");
      r.estimate = {sum / weight, 0.0};
      return;
    }

    if (config.noise.gate_noise()) circuit = lower_and_count(circuit).circuit;
    const ShotRecord raw = run_shots(StateVector(layout.n_qubits()), circuit, shots_per_sample, config.noise,
                                     shot_seed);
    r.shots = raw.total;
    if (config.post_select) {
      const PostSelection ps = post_select(raw, layout, n_alpha, n_beta);
      r.discarded = ps.discarded;
      if (ps.kept.total == 0) {
        std::ostringstream msg;
        msg << "post-selection discarded every shot for element (" << w.m << "," << w.n << "), factor " << w.factor
            << ", " << (w.part ? "imag" : "real") << " part, echo sample " << w.echo;
        throw EngineAbort(msg.str());
      }
      r.estimate = estimate_factor_value(ps.kept, form, w.factor, layout);
    } else {
      r.estimate = estimate_factor_value(raw, form, w.factor, layout);
    }
  });

  SubspaceMatrices out;
  out.s = ComplexMatrix::Zero(nq, nq);
  out.h = ComplexMatrix::Zero(nq, nq);
  out.s_stderr = Matrix::Zero(nq, nq);
  out.h_stderr = Matrix::Zero(nq, nq);
  out.circuits = static_cast<int>(items.size() / n_echo_samples);

  // Items are laid out as [element][factor][part][echo].
  std::size_t cursor = 0;
  for (int m = 0; m < nq; ++m)
    for (int n = m; n < nq; ++n) {
      Complex s(0.0), h(0.0);
      double s_var = 0.0, h_var = 0.0;
      for (int factor = kIdentityFactor; factor < n_factors; ++factor) {
        double value[2], var[2];
        for (int part = 0; part < 2; ++part) {
          double sum = 0.0, sum_sq = 0.0, shot_var = 0.0;
          for (int e = 0; e < n_echo_samples; ++e) {
            const WorkResult& r = results[cursor++];
            sum += r.estimate.value;
            sum_sq += r.estimate.value * r.estimate.value;
            shot_var += r.estimate.stderr_ * r.estimate.stderr_;
            out.shots_total += r.shots;
            out.shots_discarded += r.discarded;
          }
          const double k = n_echo_samples;
          value[part] = sum / k;
          double v = shot_var / (k * k);
          if (n_echo_samples > 1) v = std::max(v, std::max(0.0, (sum_sq - k * value[part] * value[part]) / (k - 1)) / k);
          var[part] = v;
        }
        const Complex z(value[0], value[1]);
        if (factor == kIdentityFactor) {
          s = z;
          s_var = var[0] + var[1];
        } else {
          h += z;
          h_var += var[0] + var[1];
        }
      }
      h += form.e_ext * s;
      h_var += form.e_ext * form.e_ext * s_var;
      out.s(m, n) = s;
      out.h(m, n) = h;
      out.s(n, m) = std::conj(s);
      out.h(n, m) = std::conj(h);
      out.s_stderr(m, n) = out.s_stderr(n, m) = std::sqrt(s_var);
      out.h_stderr(m, n) = out.h_stderr(n, m) = std::sqrt(h_var);
    }
  finalize(out);
  return out;
}

Gaps classify_gaps(const std::vector<ReferenceRun>& runs) {
  const ReferenceRun* closed = nullptr;
  const ReferenceRun* open = nullptr;
  const ReferenceRun* flipped = nullptr;
  for (const ReferenceRun& r : runs) {
    if (r.spectrum.eigenvalues.size() == 0) continue;
    if (r.n_alpha != r.n_beta) {
      if (!flipped) flipped = &r;
    } else if (r.closed_shell) {
      if (!closed) closed = &r;
    } else if (!open) {
      open = &r;
    }
  }
  Gaps g;
  if (closed) g.s0 = closed->spectrum.eigenvalues(0);
  if (flipped)
    g.t1 = flipped->spectrum.eigenvalues(0);
  else if (open)
    g.t1 = open->spectrum.eigenvalues(0);
  for (const ReferenceRun* r : {closed, open})
    if (r && r->spectrum.eigenvalues.size() > 1) {
      const double second = r->spectrum.eigenvalues(1);
      g.s1 = g.s1 ? std::min(*g.s1, second) : second;
    }
  if (g.s0 && g.t1) g.s0t1 = *g.t1 - *g.s0;
  if (g.s0 && g.s1) g.s0s1 = *g.s1 - *g.s0;
  return g;
}

SpectrumResult run_qfd(const QfdConfig& config, const ZetaForm& form, int n_alpha, int n_beta) {
  config.validate();
  const auto refs = config.references.empty() ? default_references(form.n_orbitals, n_alpha, n_beta)
                                              : config.references;
  SpectrumResult result;
  std::vector<std::pair<double, int>> merged;
  for (const Determinant& ref : refs) {
    if ((ref.alpha | ref.beta) >> form.n_orbitals)
      throw std::invalid_argument("reference determinant outside the active space");
    ReferenceRun run;
    run.reference = ref;
    run.n_alpha = std::popcount(ref.alpha);
    run.n_beta = std::popcount(ref.beta);
    run.s_z = 0.5 * (run.n_alpha - run.n_beta);
    run.closed_shell = ref.alpha == ref.beta;
    run.matrices = config.mode == QfdMode::kExact ? build_matrices_exact(config, form, ref)
                                                  : build_matrices_hadamard(config, form, ref);
    double eps = 1e-8;
    if (config.eps_s) {
      eps = *config.eps_s;
    } else if (config.mode == QfdMode::kHadamardShots && !config.infinite_shots) {
      std::vector<double> errs;
      for (Eigen::Index a = 0; a < run.matrices.s_stderr.rows(); ++a)
        for (Eigen::Index b = a; b < run.matrices.s_stderr.cols(); ++b)
          if (run.matrices.s_stderr(a, b) > 0.0) errs.push_back(run.matrices.s_stderr(a, b));
      if (!errs.empty()) eps = 10.0 * median(errs);
    }
    result.eps_s_used = std::max(result.eps_s_used, eps);
    run.spectrum = solve_gevp(run.matrices.s, run.matrices.h, eps);
    for (Eigen::Index k = 0; k < run.spectrum.eigenvalues.size(); ++k)
      merged.emplace_back(run.spectrum.eigenvalues(k), static_cast<int>(result.runs.size()));
    result.runs.push_back(std::move(run));
  }
  std::stable_sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  result.eigenvalues.resize(static_cast<Eigen::Index>(merged.size()));
  for (std::size_t i = 0; i < merged.size(); ++i) {
    result.eigenvalues(static_cast<Eigen::Index>(i)) = merged[i].first;
    result.labels.push_back(merged[i].second);
  }
  result.gaps = classify_gaps(result.runs);
  return result;
}

QfdPipelineResult run_qfd(const QfdConfig& config, const ActiveSpaceHamiltonian& ham, const CdfOptions& cdf) {
  config.validate();
  ham.validate();
  QfdPipelineResult out;
  out.factorization = cdf_two_step(ham.eri, config.n_df, cdf);
  out.decomposition = make_decomposition(ham, out.factorization.layers);
  out.spectrum = run_qfd(config, to_zeta_form(out.decomposition), ham.n_alpha, ham.n_beta);
  return out;
}

}  // namespace qfddf
