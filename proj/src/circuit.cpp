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

#include "qfddf/circuit.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfddf {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
};

constexpr std::array<KindInfo, 14> kKinds = {{
    {GateKind::kGivens, "givens", 2},
    {GateKind::kRZ, "rz", 1},
    {GateKind::kRY, "ry", 1},
    {GateKind::kRZZ, "rzz", 2},
    {GateKind::kCNOT, "cnot", 2},
    {GateKind::kH, "h", 1},
    {GateKind::kSDG, "sdg", 1},
    {GateKind::kX, "x", 1},
    {GateKind::kCRZ, "crz", 2},
    {GateKind::kCRZZ, "crzz", 3},
    {GateKind::kSWAP, "swap", 2},
    {GateKind::kMeasureAll, "measure_all", 0},
    {GateKind::kBlockBegin, "block_begin", 0},
    {GateKind::kBlockEnd, "block_end", 0},
}};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds)
    if (k.kind == kind) return k;
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace

int gate_arity(GateKind kind) { return info(kind).arity; }

std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_from_name(std::string_view name) {
  for (const auto& k : kKinds)
    if (k.name == name) return k.kind;
  return std::nullopt;
}

void Circuit::push(const Gate& gate) {
  const int arity = gate_arity(gate.kind);
  for (int i = 0; i < 3; ++i) {
    const int q = gate.qubits[i];
    if (i < arity) {
      if (q < 0 || q >= n_qubits_) throw std::invalid_argument("circuit: qubit index out of range");
      for (int j = 0; j < i; ++j)
        if (gate.qubits[j] == q) throw std::invalid_argument("circuit: repeated qubit in gate");
    } else if (q != -1) {
      throw std::invalid_argument("circuit: unexpected qubit operand");
    }
  }
  if (!std::isfinite(gate.angle)) throw std::invalid_argument("circuit: non-finite angle");
  gates_.push_back(gate);
}

void Circuit::append(const Circuit& other) {
  if (other.n_qubits_ > n_qubits_) throw std::invalid_argument("circuit: appended circuit is wider");
  for (const Gate& g : other.gates_) push(g);
  global_phase_ += other.global_phase_;
}

bool Circuit::has_blocks() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.kind == GateKind::kBlockBegin; });
}

bool Circuit::measures() const {
  return std::any_of(gates_.begin(), gates_.end(), [](const Gate& g) { return g.kind == GateKind::kMeasureAll; });
}

}  // namespace qfddf
