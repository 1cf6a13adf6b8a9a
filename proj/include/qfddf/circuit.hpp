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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qfddf {

enum class GateKind {
  kGivens,      ///< (a, b, phi): |10>,|01> amplitudes (x, y) -> (c x - s y, s x + c y); bit a first
  kRZ,          ///< exp(-i theta Z / 2)
  kRY,          ///< exp(-i theta Y / 2)
  kRZZ,         ///< exp(-i theta Z Z / 2)
  kCNOT,        ///< (control, target)
  kH,
  kSDG,
  kX,
  kCRZ,         ///< (control, target, theta)
  kCRZZ,        ///< (control, a, b, theta)
  kSWAP,
  kMeasureAll,
  kBlockBegin,  ///< marks the start of a Trotter-term block
  kBlockEnd,
};

int gate_arity(GateKind kind);
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_from_name(std::string_view name);

struct Gate {
  GateKind kind = GateKind::kH;
  std::array<int, 3> qubits{-1, -1, -1};
  double angle = 0.0;

  bool operator==(const Gate&) const = default;
};

/// Ordered gate list plus a classical global phase: the represented unitary
/// is exp(i * global_phase) times the product of the gates.
class Circuit {
 public:
  explicit Circuit(int n_qubits = 0) : n_qubits_(n_qubits) {}

  int n_qubits() const { return n_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }
  double global_phase() const { return global_phase_; }
  void add_global_phase(double phase) { global_phase_ += phase; }

  /// Validates qubit indices and angle finiteness; throws std::invalid_argument.
  void push(const Gate& gate);
  void append(const Circuit& other);

  void givens(int a, int b, double phi) { push({GateKind::kGivens, {a, b, -1}, phi}); }
  void rz(int q, double theta) { push({GateKind::kRZ, {q, -1, -1}, theta}); }
  void ry(int q, double theta) { push({GateKind::kRY, {q, -1, -1}, theta}); }
  void rzz(int a, int b, double theta) { push({GateKind::kRZZ, {a, b, -1}, theta}); }
  void cnot(int control, int target) { push({GateKind::kCNOT, {control, target, -1}, 0.0}); }
  void h(int q) { push({GateKind::kH, {q, -1, -1}, 0.0}); }
  void sdg(int q) { push({GateKind::kSDG, {q, -1, -1}, 0.0}); }
  void x(int q) { push({GateKind::kX, {q, -1, -1}, 0.0}); }
  void crz(int control, int target, double theta) { push({GateKind::kCRZ, {control, target, -1}, theta}); }
  void crzz(int control, int a, int b, double theta) { push({GateKind::kCRZZ, {control, a, b}, theta}); }
  void swap(int a, int b) { push({GateKind::kSWAP, {a, b, -1}, 0.0}); }
  void measure_all() { push({GateKind::kMeasureAll, {-1, -1, -1}, 0.0}); }
  void begin_block() { push({GateKind::kBlockBegin, {-1, -1, -1}, 0.0}); }
  void end_block() { push({GateKind::kBlockEnd, {-1, -1, -1}, 0.0}); }

  bool has_blocks() const;
  bool measures() const;

 private:
  int n_qubits_;
  std::vector<Gate> gates_;
  double global_phase_ = 0.0;
};

}  // namespace qfddf
