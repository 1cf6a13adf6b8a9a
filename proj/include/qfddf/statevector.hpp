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
#include "qfddf/compiler.hpp"
#include "qfddf/linalg.hpp"

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>

namespace qfddf {

using Complex = std::complex<double>;

/// 2^n amplitudes; bit q of the index is qubit q.
class StateVector {
 public:
  explicit StateVector(int n_qubits = 0);
  static StateVector basis_state(int n_qubits, Bitstring bits);

  int n_qubits() const { return n_qubits_; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }
  ComplexVector& amplitudes() { return amplitudes_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  double norm() const { return amplitudes_.norm(); }

 private:
  int n_qubits_;
  ComplexVector amplitudes_;
};

/// X on each occupied spin orbital; ancilla (if any) left in |0>.
StateVector prepare_determinant(const QubitLayout& layout, std::span<const int> alpha_occupied,
                                std::span<const int> beta_occupied);

void apply_gate(StateVector& state, const Gate& gate);

/// Noiseless application including the circuit's global phase.
StateVector apply_circuit(const StateVector& state, const Circuit& circuit);

struct NoiseModel {
  double p1 = 0.0;       ///< depolarizing probability after 1-qubit gates
  double p2 = 0.0;       ///< depolarizing probability after multi-qubit gates
  double readout = 0.0;  ///< independent bit-flip probability per measured qubit

  bool gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
  bool any() const { return gate_noise() || readout > 0.0; }
  /// Throws std::invalid_argument outside [0, 1].
  void validate() const;
};

/// One stochastic trajectory: after every gate, with probability p a Pauli
/// drawn uniformly from {I,X,Y,Z}^k is applied to the gate's qubits.
StateVector apply_circuit(const StateVector& state, const Circuit& circuit, const NoiseModel& noise,
                          std::mt19937_64& rng);

/// Dense unitary (including global phase) from the images of all basis states.
ComplexMatrix circuit_unitary(const Circuit& circuit);

Complex inner_product(const StateVector& bra, const StateVector& ket);

/// <psi| D |psi> for a diagonal observable D(bits).
double exact_expectation(const StateVector& state, const std::function<double(Bitstring)>& diagonal);

/// <psi| P_anc (x) D |psi> with P = X (kReal) or Y (kImag); D acts on the
/// bits with the ancilla cleared.
double exact_expectation_ancilla(const StateVector& state, int ancilla, Part part,
                                 const std::function<double(Bitstring)>& diagonal);

struct ShotRecord {
  int n_qubits = 0;
  std::map<Bitstring, long> counts;
  long total = 0;
};

inline constexpr int kDefaultShots = 8000;

/// Multinomial sampling of |amplitude|^2 with optional readout bit flips.
ShotRecord sample_shots(const StateVector& state, long shots, std::mt19937_64& rng, double readout = 0.0);

/// Executes `circuit` on `initial` for `shots` shots. Without gate noise the
/// final distribution is sampled directly; with gate noise every shot is a
/// trajectory (shots drawing no error reuse the noiseless distribution).
ShotRecord run_shots(const StateVector& initial, const Circuit& circuit, long shots, const NoiseModel& noise,
                     std::uint64_t seed);

}  // namespace qfddf
