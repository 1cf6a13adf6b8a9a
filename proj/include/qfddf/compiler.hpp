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

#include "qfddf/circuit.hpp"
#include "qfddf/fock.hpp"
#include "qfddf/zeta_form.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qfddf {

/// Alpha orbital k -> qubit k, beta orbital k -> qubit k + M, ancilla -> 2M.
struct QubitLayout {
  int n_orbitals = 0;
  bool has_ancilla = false;

  int n_system() const { return 2 * n_orbitals; }
  int n_qubits() const { return 2 * n_orbitals + (has_ancilla ? 1 : 0); }
  int qubit(int orbital, int spin) const { return orbital + spin * n_orbitals; }
  int ancilla() const;
};

/// Rotation of adjacent rows (row_a, row_b = row_a + 1) by `angle`, as in plane_rotation.
struct GivensRotation {
  int row_a = 0;
  int row_b = 0;
  double angle = 0.0;
};

/// U = R(g_1) R(g_2) ... R(g_k) with nearest-neighbour plane rotations,
/// obtained by zeroing the below-diagonal entries column by column from the
/// bottom up. Identity rotations are omitted. Throws for det(U) = -1.
std::vector<GivensRotation> givens_decompose(const Matrix& u, double tol = 1e-8);

/// Ordered product R(g_1) ... R(g_k).
Matrix givens_product(const std::vector<GivensRotation>& rotations, int n);

/// Appends the Fock-space orbital rotation G(U) (a+_p -> sum_q U_qp a+_q)
/// on both spin copies.
void append_orbital_rotation(Circuit& circuit, const Matrix& u, const QubitLayout& layout);

/// One first-order Trotter step of the zeta-form Hamiltonian: one-body term,
/// then layers 1..n_DF, each diagonal term wrapped in block markers. The
/// E'_ext phase goes to the global phase.
Circuit trotter_step_circuit(const ZetaForm& form, double dt, const QubitLayout& layout);

/// `power` Trotter steps controlled on the ancilla (|1> branch evolves).
/// Only the diagonal rotations are controlled.
Circuit controlled_trotter_circuit(const ZetaForm& form, double dt, int power, const QubitLayout& layout);

enum class Part { kReal, kImag };

/// Factor index: 0 is the one-body term, t = 1..n_DF the two-body layers.
inline constexpr int kIdentityFactor = -1;

/// Hadamard test for <Psi_m| h_factor |Psi_n>: reference preparation, H on
/// the ancilla, U^m, controlled U^(n-m), optional S^dagger, H, then the
/// factor's measurement basis change and MEASURE_ALL.
Circuit hadamard_test_circuit(const Determinant& reference, int m, int n, Part part, int factor,
                              const ZetaForm& form, double dt, const QubitLayout& layout);

/// Basis change into the factor's eigenframe followed by MEASURE_ALL.
Circuit diagonal_measurement_circuit(int factor, const ZetaForm& form, const QubitLayout& layout);

/// Classical value of a factor on a measured system bitstring
/// (zeta = +1 for bit 0, -1 for bit 1). The identity factor evaluates to 1.
double factor_value(const ZetaForm& form, int factor, Bitstring system_bits);

/// Wraps every marked block in C^dagger ... C with
/// C = exp(i eta_a N_a) exp(i eta_b N_b), eta ~ U[0, 2 pi) drawn per block.
/// With `zero_angles` every eta is 0.
Circuit insert_echoes(const Circuit& circuit, const QubitLayout& layout, std::uint64_t seed,
                      bool zero_angles = false);

struct GateCounts {
  std::map<std::string, int> by_kind;
  int cnot_in_blocks = 0;

  int count(GateKind kind) const;
  int cnot() const { return count(GateKind::kCNOT); }
  int total() const;
};

GateCounts count_gates(const Circuit& circuit);

struct LoweredCircuit {
  Circuit circuit;
  GateCounts before;
  GateCounts after;
  int swaps_inserted = 0;
};

/// Rewrites into {H, X, SDG, RZ, RY, CNOT}: Givens -> 2 CNOT, RZZ -> CNOT RZ CNOT,
/// CRZ -> 2 CNOT + 2 RZ, CRZZ -> CNOT CRZ CNOT, SWAP -> 3 CNOT. With
/// `linear_topology`, CNOTs between non-adjacent qubits are routed through
/// SWAP chains.
LoweredCircuit lower_and_count(const Circuit& circuit, bool linear_topology = false);

struct ControlledCostReport {
  GateCounts optimized;
  GateCounts unfolded;
  int optimized_cnot = 0;
  int unfolded_cnot = 0;
  int optimized_controlled_cnot = 0;
  int unfolded_controlled_cnot = 0;
  /// CNOTs saved in the controlled diagonal blocks by folding the linear
  /// zeta terms of each layer into the one-body term.
  int cnot_saving = 0;
};

ControlledCostReport controlled_step_report(const ZetaForm& folded, const ZetaForm& unfolded, double dt,
                                            const QubitLayout& layout);

}  // namespace qfddf
