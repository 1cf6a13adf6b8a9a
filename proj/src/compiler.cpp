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

#include "qfddf/compiler.hpp"

#include "qfddf/linalg.hpp"
#include "qfddf/rng.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qfddf {

int QubitLayout::ancilla() const {
  if (!has_ancilla) throw std::logic_error("layout has no ancilla");
  return 2 * n_orbitals;
}

std::vector<GivensRotation> givens_decompose(const Matrix& u, double tol) {
  if (u.rows() != u.cols()) throw std::invalid_argument("givens_decompose: matrix not square");
  const int n = static_cast<int>(u.rows());
  if (n == 0) return {};
  if (orthogonality_error(u) > tol) throw std::invalid_argument("givens_decompose: matrix not orthogonal");
  if (u.determinant() < 0.0) throw std::invalid_argument("givens_decompose: determinant is -1");

  Matrix a = u;
  std::vector<GivensRotation> out;
  for (int col = 0; col + 1 < n; ++col) {
    for (int row = n - 1; row > col; --row) {
      const double top = a(row - 1, col), bottom = a(row, col);
      if (bottom == 0.0 && top >= 0.0) continue;
      const double phi = std::atan2(bottom, top);
      const double c = std::cos(phi), s = std::sin(phi);
      for (int k = 0; k < n; ++k) {
        const double x = a(row - 1, k), y = a(row, k);
        a(row - 1, k) = c * x + s * y;
        a(row, k) = -s * x + c * y;
      }
      out.push_back({row - 1, row, phi});
    }
  }
  return out;
}

Matrix givens_product(const std::vector<GivensRotation>& rotations, int n) {
  Matrix out = Matrix::Identity(n, n);
  for (const auto& g : rotations) out = out * plane_rotation(n, g.row_a, g.row_b, g.angle);
  return out;
}

void append_orbital_rotation(Circuit& circuit, const Matrix& u, const QubitLayout& layout) {
  const auto rotations = givens_decompose(u);
  for (auto it = rotations.rbegin(); it != rotations.rend(); ++it)
    for (int spin = 0; spin < 2; ++spin)
      circuit.givens(layout.qubit(it->row_a, spin), layout.qubit(it->row_b, spin), it->angle);
}

namespace {

void append_step(Circuit& c, const ZetaForm& form, double dt, const QubitLayout& layout, bool controlled) {
  const int n = form.n_orbitals;
  const int anc = controlled ? layout.ancilla() : -1;
  auto z_rotation = [&](int q, double theta) {
    if (controlled)
      c.crz(anc, q, theta);
    else
      c.rz(q, theta);
  };

  append_orbital_rotation(c, form.one_body_leaf.transpose(), layout);
  c.begin_block();
  for (int spin = 0; spin < 2; ++spin)
    for (int k = 0; k < n; ++k) z_rotation(layout.qubit(k, spin), 2.0 * dt * form.one_body_coefficients(k));
  c.end_block();

  const Matrix* previous = &form.one_body_leaf;
  for (const ZetaLayer& layer : form.layers) {
    append_orbital_rotation(c, layer.leaf.transpose() * *previous, layout);
    c.begin_block();
    for (const ZetaPair& pair : layer.pairs) {
      const int qa = layout.qubit(pair.mode_a % n, pair.mode_a / n);
      const int qb = layout.qubit(pair.mode_b % n, pair.mode_b / n);
      if (controlled)
        c.crzz(anc, qa, qb, 2.0 * dt * pair.coefficient);
      else
        c.rzz(qa, qb, 2.0 * dt * pair.coefficient);
    }
    for (int spin = 0; spin < 2; ++spin)
      for (Eigen::Index k = 0; k < layer.linear.size(); ++k)
        z_rotation(layout.qubit(static_cast<int>(k), spin), 2.0 * dt * layer.linear(k));
    c.end_block();
    previous = &layer.leaf;
  }
  append_orbital_rotation(c, *previous, layout);

  if (controlled) {
    c.rz(anc, -dt * form.e_ext);
    c.add_global_phase(-0.5 * dt * form.e_ext);
  } else {
    c.add_global_phase(-dt * form.e_ext);
  }
}

const Matrix& factor_leaf(const ZetaForm& form, int factor) {
  if (factor == 0) return form.one_body_leaf;
  if (factor < 1 || factor > static_cast<int>(form.layers.size()))
    throw std::out_of_range("factor index out of range");
  return form.layers[factor - 1].leaf;
}

}  // namespace

Circuit trotter_step_circuit(const ZetaForm& form, double dt, const QubitLayout& layout) {
  Circuit c(layout.n_qubits());
  append_step(c, form, dt, layout, false);
  return c;
}

Circuit controlled_trotter_circuit(const ZetaForm& form, double dt, int power, const QubitLayout& layout) {
  if (power < 0) throw std::invalid_argument("controlled_trotter_circuit: negative power");
  Circuit c(layout.n_qubits());
  for (int i = 0; i < power; ++i) append_step(c, form, dt, layout, true);
  return c;
}

Circuit diagonal_measurement_circuit(int factor, const ZetaForm& form, const QubitLayout& layout) {
  Circuit c(layout.n_qubits());
  if (factor != kIdentityFactor) append_orbital_rotation(c, factor_leaf(form, factor).transpose(), layout);
  c.measure_all();
  return c;
}

Circuit hadamard_test_circuit(const Determinant& reference, int m, int n, Part part, int factor,
                              const ZetaForm& form, double dt, const QubitLayout& layout) {
  if (m < 0 || m > n) throw std::invalid_argument("hadamard_test_circuit: requires 0 <= m <= n");
  if (!layout.has_ancilla) throw std::invalid_argument("hadamard_test_circuit: layout needs an ancilla");
  Circuit c(layout.n_qubits());
  for (int k = 0; k < layout.n_orbitals; ++k) {
    if (reference.alpha >> k & 1) c.x(layout.qubit(k, 0));
    if (reference.beta >> k & 1) c.x(layout.qubit(k, 1));
  }
  const int anc = layout.ancilla();
  c.h(anc);
  for (int i = 0; i < m; ++i) append_step(c, form, dt, layout, false);
  c.append(controlled_trotter_circuit(form, dt, n - m, layout));
  if (part == Part::kImag) c.sdg(anc);
  c.h(anc);
  c.append(diagonal_measurement_circuit(factor, form, layout));
  return c;
}

double factor_value(const ZetaForm& form, int factor, Bitstring bits) {
  const int n = form.n_orbitals;
  auto zeta = [&](int mode) { return (bits >> mode & 1) ? -1.0 : 1.0; };
  if (factor == kIdentityFactor) return 1.0;
  if (factor == 0) {
    double v = 0.0;
    for (int k = 0; k < n; ++k) v += form.one_body_coefficients(k) * (zeta(k) + zeta(k + n));
    return v;
  }
  if (factor < 1 || factor > static_cast<int>(form.layers.size()))
    throw std::out_of_range("factor index out of range");
  const ZetaLayer& layer = form.layers[factor - 1];
  double v = 0.0;
  for (const ZetaPair& pair : layer.pairs) v += pair.coefficient * zeta(pair.mode_a) * zeta(pair.mode_b);
  for (Eigen::Index k = 0; k < layer.linear.size(); ++k)
    v += layer.linear(k) * (zeta(static_cast<int>(k)) + zeta(static_cast<int>(k) + n));
  return v;
}

Circuit insert_echoes(const Circuit& circuit, const QubitLayout& layout, std::uint64_t seed, bool zero_angles) {
  if (!circuit.has_blocks()) throw std::invalid_argument("insert_echoes: circuit has no block markers");
  auto rng = make_rng(seed, {0xec});
  std::uniform_real_distribution<double> uniform(0.0, 2.0 * std::numbers::pi);
  const int n = layout.n_orbitals;

  Circuit out(circuit.n_qubits());
  out.add_global_phase(circuit.global_phase());
  double eta[2] = {0.0, 0.0};
  auto twirl = [&](double sign) {
    for (int spin = 0; spin < 2; ++spin) {
      for (int k = 0; k < n; ++k) out.rz(layout.qubit(k, spin), sign * eta[spin]);
      out.add_global_phase(sign * 0.5 * n * eta[spin]);
    }
  };
  int depth = 0;
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kBlockBegin) {
      if (depth++ != 0) throw std::invalid_argument("insert_echoes: nested blocks");
      eta[0] = zero_angles ? 0.0 : uniform(rng);
      eta[1] = zero_angles ? 0.0 : uniform(rng);
      twirl(-1.0);
      out.push(g);
    } else if (g.kind == GateKind::kBlockEnd) {
      if (--depth != 0) throw std::invalid_argument("insert_echoes: unbalanced blocks");
      out.push(g);
      twirl(1.0);
    } else {
      out.push(g);
    }
  }
  if (depth != 0) throw std::invalid_argument("insert_echoes: unbalanced blocks");
  return out;
}

int GateCounts::count(GateKind kind) const {
  const auto it = by_kind.find(std::string(gate_name(kind)));
  return it == by_kind.end() ? 0 : it->second;
}

int GateCounts::total() const {
  int t = 0;
  for (const auto& [name, c] : by_kind)
    if (name != "measure_all") t += c;
  return t;
}

GateCounts count_gates(const Circuit& circuit) {
  GateCounts counts;
  bool inside = false;
  for (const Gate& g : circuit.gates()) {
    if (g.kind == GateKind::kBlockBegin) {
      inside = true;
      continue;
    }
    if (g.kind == GateKind::kBlockEnd) {
      inside = false;
      continue;
    }
    ++counts.by_kind[std::string(gate_name(g.kind))];
    if (inside && g.kind == GateKind::kCNOT) ++counts.cnot_in_blocks;
  }
  return counts;
}

namespace {

void routed_cnot(Circuit& out, int control, int target, bool linear, int& swaps) {
  if (!linear || std::abs(control - target) == 1) {
    out.cnot(control, target);
    return;
  }
  const int dir = target > control ? 1 : -1;
  std::vector<int> path;
  for (int q = control; q + dir != target; q += dir) path.push_back(q);
  auto swap3 = [&](int a, int b) {
    out.cnot(a, b);
    out.cnot(b, a);
    out.cnot(a, b);
    ++swaps;
  };
  for (int q : path) swap3(q, q + dir);
  out.cnot(target - dir, target);
  for (auto it = path.rbegin(); it != path.rend(); ++it) swap3(*it, *it + dir);
}

}  // namespace

LoweredCircuit lower_and_count(const Circuit& circuit, bool linear_topology) {
  LoweredCircuit result{Circuit(circuit.n_qubits()), count_gates(circuit), {}, 0};
  Circuit& out = result.circuit;
  out.add_global_phase(circuit.global_phase());
  int& swaps = result.swaps_inserted;
  auto cx = [&](int c, int t) { routed_cnot(out, c, t, linear_topology, swaps); };
  auto crz = [&](int c, int t, double theta) {
    out.rz(t, 0.5 * theta);
    cx(c, t);
    out.rz(t, -0.5 * theta);
    cx(c, t);
  };
  for (const Gate& g : circuit.gates()) {
    const auto& q = g.qubits;
    switch (g.kind) {
      case GateKind::kGivens:
        out.h(q[0]);
        cx(q[0], q[1]);
        out.ry(q[0], g.angle);
        out.ry(q[1], g.angle);
        cx(q[0], q[1]);
        out.h(q[0]);
        break;
      case GateKind::kRZZ:
        cx(q[0], q[1]);
        out.rz(q[1], g.angle);
        cx(q[0], q[1]);
        break;
      case GateKind::kCRZ:
        crz(q[0], q[1], g.angle);
        break;
      case GateKind::kCRZZ:
        cx(q[1], q[2]);
        crz(q[0], q[2], g.angle);
        cx(q[1], q[2]);
        break;
      case GateKind::kSWAP:
        cx(q[0], q[1]);
        cx(q[1], q[0]);
        cx(q[0], q[1]);
        break;
      case GateKind::kCNOT:
        cx(q[0], q[1]);
        break;
      default:
        out.push(g);
    }
  }
  result.after = count_gates(out);
  return result;
}

ControlledCostReport controlled_step_report(const ZetaForm& folded, const ZetaForm& unfolded, double dt,
                                            const QubitLayout& layout) {
  ControlledCostReport r;
  r.optimized = lower_and_count(controlled_trotter_circuit(folded, dt, 1, layout)).after;
  r.unfolded = lower_and_count(controlled_trotter_circuit(unfolded, dt, 1, layout)).after;
  r.optimized_cnot = r.optimized.cnot();
  r.unfolded_cnot = r.unfolded.cnot();
  r.optimized_controlled_cnot = r.optimized.cnot_in_blocks;
  r.unfolded_controlled_cnot = r.unfolded.cnot_in_blocks;
  r.cnot_saving = r.unfolded_controlled_cnot - r.optimized_controlled_cnot;
  return r;
}

}  // namespace qfddf
