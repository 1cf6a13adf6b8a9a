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

#pragma once

#include "qfddf/cdf.hpp"
#include "qfddf/compiler.hpp"
#include "qfddf/fock.hpp"
#include "qfddf/statevector.hpp"
#include "qfddf/zeta_form.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qfddf {

enum class QfdMode { kExact, kHadamardShots };

struct QfdConfig {
  int n_qfd = 2;
  double dt = 0.1;
  int n_df = 1;
  QfdMode mode = QfdMode::kExact;
  long shots = kDefaultShots;  ///< per circuit, split evenly across echo samples
  int n_echo = 0;
  bool post_select = false;
  /// Canonical-orthogonalization threshold relative to the largest overlap
  /// eigenvalue. Unset: 1e-8 in exact mode, 10 x median stderr in shot mode.
  std::optional<double> eps_s;
  std::vector<Determinant> references;  ///< empty: RHF and HOMO->LUMO alpha excitation
  bool exact_propagator = false;         ///< exact mode: exp(-i t H) instead of Trotter steps
  bool infinite_shots = false;           ///< shot mode: exact expectations of the test circuits
  NoiseModel noise;
  std::uint64_t seed = 0;
  int threads = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

/// The post-selection or estimator could not produce a matrix element.
class EngineAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SubspaceMatrices {
  ComplexMatrix s;
  ComplexMatrix h;
  Matrix s_stderr;  ///< |stderr| combined over real and imaginary parts; zero in exact mode
  Matrix h_stderr;
  double hermiticity_deviation = 0.0;  ///< before symmetrization
  double toeplitz_deviation_s = 0.0;   ///< max |S_mn - S_0,n-m|
  double toeplitz_deviation_h = 0.0;
  long shots_total = 0;
  long shots_discarded = 0;
  int circuits = 0;

  double discard_fraction() const { return shots_total ? double(shots_discarded) / shots_total : 0.0; }
};

struct GevpResult {
  Vector eigenvalues;      ///< ascending
  ComplexMatrix vectors;   ///< columns c_I in the original (non-orthogonal) basis
  int retained = 0;
};

/// Canonical orthogonalization: S and H are Hermitized, overlap eigenvalues
/// below eps_s * max are dropped. Throws EngineAbort when nothing is kept.
GevpResult solve_gevp(const ComplexMatrix& s, const ComplexMatrix& h, double eps_s);

/// RHF determinant (lowest orbitals occupied) and its HOMO->LUMO alpha excitation.
std::vector<Determinant> default_references(int n_orbitals, int n_alpha, int n_beta);

/// H|psi> for the zeta-form operator, factor by factor in each eigenframe.
ComplexVector apply_zeta_hamiltonian(const ZetaForm& form, const StateVector& state);

/// Zeta-form operator restricted to a particle-number sector.
Matrix zeta_sector_matrix(const ZetaForm& form, const SectorBasis& basis);

SubspaceMatrices build_matrices_exact(const QfdConfig& config, const ZetaForm& form, const Determinant& reference);

struct PostSelection {
  ShotRecord kept;
  long discarded = 0;
  double discard_fraction = 0.0;
};

/// Keeps bitstrings whose alpha and beta blocks have the given popcounts;
/// bits above the system register (the ancilla) are ignored.
PostSelection post_select(const ShotRecord& shots, const QubitLayout& layout, int n_alpha, int n_beta);

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

/// mean(s_anc * f(x)) with s_anc = +1 for ancilla bit 0, and its standard
/// error. Throws EngineAbort on an empty record.
Estimate estimate_factor_value(const ShotRecord& shots, const ZetaForm& form, int factor, const QubitLayout& layout);

SubspaceMatrices build_matrices_hadamard(const QfdConfig& config, const ZetaForm& form, const Determinant& reference);

/// Number of Hadamard-test circuits per reference (distinct echo samples not counted).
int hadamard_circuit_count(int n_qfd, int n_df);

struct ReferenceRun {
  Determinant reference;
  int n_alpha = 0;
  int n_beta = 0;
  double s_z = 0.0;
  bool closed_shell = false;
  SubspaceMatrices matrices;
  GevpResult spectrum;
};

struct Gaps {
  std::optional<double> s0;
  std::optional<double> t1;
  std::optional<double> s1;
  std::optional<double> s0t1;
  std::optional<double> s0s1;
};

struct SpectrumResult {
  std::vector<ReferenceRun> runs;
  Vector eigenvalues;       ///< all runs merged, ascending
  std::vector<int> labels;  ///< run index of each merged eigenvalue
  Gaps gaps;
  double eps_s_used = 0.0;
};

/// S0: lowest closed-shell-run eigenvalue. T1: lowest eigenvalue of a run with
/// S_z != 0 if any, otherwise of the open-shell S_z = 0 run. S1: the smaller of
/// the second closed-shell and second open-shell eigenvalues.
Gaps classify_gaps(const std::vector<ReferenceRun>& runs);

SpectrumResult run_qfd(const QfdConfig& config, const ZetaForm& form, int n_alpha, int n_beta);

struct QfdPipelineResult {
  CdfResult factorization;
  DFDecomposition decomposition;
  SpectrumResult spectrum;
};

/// Factorizes with the C-DF two-step pipeline (n_df layers) and runs QFD.
QfdPipelineResult run_qfd(const QfdConfig& config, const ActiveSpaceHamiltonian& ham, const CdfOptions& cdf = {});

}  // namespace qfddf
