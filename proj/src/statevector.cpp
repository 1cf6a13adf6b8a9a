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

#include "qfddf/statevector.hpp"

#include "qfddf/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfddf {

namespace {

constexpr Complex kI(0.0, 1.0);

template <class F>
void for_pairs(StateVector& s, int q, F&& f) {
  const std::size_t bit = std::size_t{1} << q;
  auto& a = s.amplitudes();
  for (std::size_t i = 0; i < s.dimension(); ++i)
    if (!(i & bit)) f(a[i], a[i | bit], i);
}

void apply_pauli(StateVector& s, int q, int pauli) {
  const std::size_t bit = std::size_t{1} << q;
  auto& a = s.amplitudes();
  switch (pauli) {
    case 1:
      for_pairs(s, q, [](Complex& x, Complex& y, std::size_t) { std::swap(x, y); });
      break;
    case 2:
      for_pairs(s, q, [](Complex& x, Complex& y, std::size_t) {
        const Complex t = x;
        x = -kI * y;
        y = kI * t;
      });
      break;
    case 3:
      for (std::size_t i = 0; i < s.dimension(); ++i)
        if (i & bit) a[i] = -a[i];
      break;
    default:
      break;
  }
}

bool bit_of(std::size_t i, int q) { return (i >> q) & 1; }

}  // namespace

StateVector::StateVector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > 26) throw std::invalid_argument("StateVector: unsupported qubit count");
  amplitudes_ = ComplexVector::Zero(std::size_t{1} << n_qubits);
  amplitudes_[0] = 1.0;
}

StateVector StateVector::basis_state(int n_qubits, Bitstring bits) {
  StateVector s(n_qubits);
  if (bits >= s.dimension()) throw std::invalid_argument("basis_state: bitstring out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[bits] = 1.0;
  return s;
}

StateVector prepare_determinant(const QubitLayout& layout, std::span<const int> alpha, std::span<const int> beta) {
  Bitstring bits = 0;
  auto occupy = [&](std::span<const int> occ, int spin) {
    for (int k : occ) {
      if (k < 0 || k >= layout.n_orbitals) throw std::invalid_argument("prepare_determinant: orbital out of range");
      const Bitstring b = Bitstring{1} << layout.qubit(k, spin);
      if (bits & b) throw std::invalid_argument("prepare_determinant: duplicate occupation");
      bits |= b;
    }
  };
  occupy(alpha, 0);
  occupy(beta, 1);
  return StateVector::basis_state(layout.n_qubits(), bits);
}

void apply_gate(StateVector& s, const Gate& g) {
  auto& a = s.amplitudes();
  const auto& q = g.qubits;
  const std::size_t dim = s.dimension();
  switch (g.kind) {
    case GateKind::kGivens: {
      const double c = std::cos(g.angle), sn = std::sin(g.angle);
      const std::size_t ba = std::size_t{1} << q[0], bb = std::size_t{1} << q[1];
      for (std::size_t i = 0; i < dim; ++i) {
        if ((i & ba) && !(i & bb)) {
          const std::size_t j = (i ^ ba) | bb;
          const Complex x = a[i], y = a[j];
          a[i] = c * x - sn * y;
          a[j] = sn * x + c * y;
        }
      }
      break;
    }
    case GateKind::kRZ: {
      const Complex m0 = std::exp(-0.5 * kI * g.angle), m1 = std::exp(0.5 * kI * g.angle);
      for (std::size_t i = 0; i < dim; ++i) a[i] *= bit_of(i, q[0]) ? m1 : m0;
      break;
    }
    case GateKind::kRY: {
      const double c = std::cos(0.5 * g.angle), sn = std::sin(0.5 * g.angle);
      for_pairs(s, q[0], [&](Complex& x, Complex& y, std::size_t) {
        const Complex t = x;
        x = c * t - sn * y;
        y = sn * t + c * y;
      });
      break;
    }
    case GateKind::kRZZ: {
      const Complex even = std::exp(-0.5 * kI * g.angle), odd = std::exp(0.5 * kI * g.angle);
      for (std::size_t i = 0; i < dim; ++i) a[i] *= (bit_of(i, q[0]) ^ bit_of(i, q[1])) ? odd : even;
      break;
    }
    case GateKind::kCNOT: {
      const std::size_t bc = std::size_t{1} << q[0], bt = std::size_t{1} << q[1];
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & bc) && !(i & bt)) std::swap(a[i], a[i | bt]);
      break;
    }
    case GateKind::kH: {
      const double r = 1.0 / std::sqrt(2.0);
      for_pairs(s, q[0], [&](Complex& x, Complex& y, std::size_t) {
        const Complex t = x;
        x = r * (t + y);
        y = r * (t - y);
      });
      break;
    }
    case GateKind::kSDG:
      for (std::size_t i = 0; i < dim; ++i)
        if (bit_of(i, q[0])) a[i] *= -kI;
      break;
    case GateKind::kX:
      apply_pauli(s, q[0], 1);
      break;
    case GateKind::kCRZ: {
      const Complex m0 = std::exp(-0.5 * kI * g.angle), m1 = std::exp(0.5 * kI * g.angle);
      for (std::size_t i = 0; i < dim; ++i)
        if (bit_of(i, q[0])) a[i] *= bit_of(i, q[1]) ? m1 : m0;
      break;
    }
    case GateKind::kCRZZ: {
      const Complex even = std::exp(-0.5 * kI * g.angle), odd = std::exp(0.5 * kI * g.angle);
      for (std::size_t i = 0; i < dim; ++i)
        if (bit_of(i, q[0])) a[i] *= (bit_of(i, q[1]) ^ bit_of(i, q[2])) ? odd : even;
      break;
    }
    case GateKind::kSWAP: {
      const std::size_t ba = std::size_t{1} << q[0], bb = std::size_t{1} << q[1];
      for (std::size_t i = 0; i < dim; ++i)
        if ((i & ba) && !(i & bb)) std::swap(a[i], a[(i ^ ba) | bb]);
      break;
    }
    case GateKind::kMeasureAll:
    case GateKind::kBlockBegin:
    case GateKind::kBlockEnd:
      break;
  }
}

StateVector apply_circuit(const StateVector& state, const Circuit& circuit) {
  if (state.n_qubits() != circuit.n_qubits()) throw std::invalid_argument("apply_circuit: qubit count mismatch");
  StateVector s = state;
  for (const Gate& g : circuit.gates()) apply_gate(s, g);
  if (circuit.global_phase() != 0.0) s.amplitudes() *= std::exp(kI * circuit.global_phase());
  return s;
}

void NoiseModel::validate() const {
  for (double p : {p1, p2, readout})
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("noise model: probabilities must lie in [0, 1]");
}

namespace {

/// Applies the depolarizing error of gate `g`, if one is drawn.
void maybe_depolarize(StateVector& s, const Gate& g, const NoiseModel& noise, std::mt19937_64& rng) {
  const int arity = gate_arity(g.kind);
  if (arity == 0) return;
  const double p = arity == 1 ? noise.p1 : noise.p2;
  if (p <= 0.0) return;
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) >= p) return;
  std::uniform_int_distribution<int> pauli(0, 3);
  for (int i = 0; i < arity; ++i) apply_pauli(s, g.qubits[i], pauli(rng));
}

}  // namespace

StateVector apply_circuit(const StateVector& state, const Circuit& circuit, const NoiseModel& noise,
                          std::mt19937_64& rng) {
  noise.validate();
  if (state.n_qubits() != circuit.n_qubits()) throw std::invalid_argument("apply_circuit: qubit count mismatch");
  StateVector s = state;
  for (const Gate& g : circuit.gates()) {
    apply_gate(s, g);
    maybe_depolarize(s, g, noise, rng);
  }
  if (circuit.global_phase() != 0.0) s.amplitudes() *= std::exp(kI * circuit.global_phase());
  return s;
}

ComplexMatrix circuit_unitary(const Circuit& circuit) {
  const std::size_t dim = std::size_t{1} << circuit.n_qubits();
  ComplexMatrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    u.col(j) = apply_circuit(StateVector::basis_state(circuit.n_qubits(), j), circuit).amplitudes();
  return u;
}

Complex inner_product(const StateVector& bra, const StateVector& ket) {
  if (bra.dimension() != ket.dimension()) throw std::invalid_argument("inner_product: dimension mismatch");
  return bra.amplitudes().dot(ket.amplitudes());
}

double exact_expectation(const StateVector& state, const std::function<double(Bitstring)>& diagonal) {
  double v = 0.0;
  const auto& a = state.amplitudes();
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    const double w = std::norm(a[i]);
    if (w != 0.0) v += w * diagonal(i);
  }
  return v;
}

double exact_expectation_ancilla(const StateVector& state, int ancilla, Part part,
                                 const std::function<double(Bitstring)>& diagonal) {
  if (ancilla < 0 || ancilla >= state.n_qubits()) throw std::invalid_argument("exact_expectation: bad ancilla");
  const std::size_t bit = std::size_t{1} << ancilla;
  const auto& a = state.amplitudes();
  double v = 0.0;
  for (std::size_t i = 0; i < state.dimension(); ++i) {
    if (i & bit) continue;
    const Complex overlap = std::conj(a[i]) * a[i | bit];
    if (overlap == Complex(0.0)) continue;
    v += 2.0 * (part == Part::kReal ? overlap.real() : overlap.imag()) * diagonal(i);
  }
  return v;
}

namespace {

Bitstring flip_readout(Bitstring bits, int n_qubits, double readout, std::mt19937_64& rng) {
  if (readout <= 0.0) return bits;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int q = 0; q < n_qubits; ++q)
    if (u(rng) < readout) bits ^= Bitstring{1} << q;
  return bits;
}

class Sampler {
 public:
  explicit Sampler(const StateVector& s) : cumulative_(s.dimension()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.dimension(); ++i) {
      acc += std::norm(s.amplitudes()[i]);
      cumulative_[i] = acc;
    }
  }

  Bitstring draw(std::mt19937_64& rng) const {
    const double r = std::uniform_real_distribution<double>(0.0, cumulative_.back())(rng);
    auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), r);
    if (it == cumulative_.end()) --it;
    // Skip zero-probability entries that share the cumulative value.
    return static_cast<Bitstring>(it - cumulative_.begin());
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace

ShotRecord sample_shots(const StateVector& state, long shots, std::mt19937_64& rng, double readout) {
  if (shots < 1) throw std::invalid_argument("sample_shots: shots must be >= 1");
  ShotRecord rec;
  rec.n_qubits = state.n_qubits();
  rec.total = shots;
  const Sampler sampler(state);
  for (long i = 0; i < shots; ++i) ++rec.counts[flip_readout(sampler.draw(rng), state.n_qubits(), readout, rng)];
  return rec;
}

ShotRecord run_shots(const StateVector& initial, const Circuit& circuit, long shots, const NoiseModel& noise,
                     std::uint64_t seed) {
  noise.validate();
  if (shots < 1) throw std::invalid_argument("run_shots: shots must be >= 1");
  if (initial.n_qubits() != circuit.n_qubits()) throw std::invalid_argument("run_shots: qubit count mismatch");
  auto rng = make_rng(seed, {0x5e});
  if (!noise.gate_noise()) return sample_shots(apply_circuit(initial, circuit), shots, rng, noise.readout);

  const auto& gates = circuit.gates();
  const std::size_t n_gates = gates.size();
  // Noiseless prefix states, kept when they fit in memory.
  const std::size_t bytes = (n_gates + 1) * initial.dimension() * sizeof(Complex);
  const bool cache = bytes <= (std::size_t{256} << 20);
  std::vector<StateVector> prefix;
  StateVector s = initial;
  if (cache) prefix.push_back(s);
  for (const Gate& g : gates) {
    apply_gate(s, g);
    if (cache) prefix.push_back(s);
  }
  const Complex phase = std::exp(kI * circuit.global_phase());
  s.amplitudes() *= phase;
  const Sampler clean(s);

  ShotRecord rec;
  rec.n_qubits = circuit.n_qubits();
  rec.total = shots;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pauli(0, 3);
  struct Error {
    std::size_t gate;
    std::array<int, 3> paulis;
  };
  std::vector<Error> errors;
  for (long shot = 0; shot < shots; ++shot) {
    errors.clear();
    for (std::size_t k = 0; k < n_gates; ++k) {
      const int arity = gate_arity(gates[k].kind);
      if (arity == 0) continue;
      const double p = arity == 1 ? noise.p1 : noise.p2;
      if (p > 0.0 && u(rng) < p) {
        Error e{k, {0, 0, 0}};
        for (int i = 0; i < arity; ++i) e.paulis[i] = pauli(rng);
        errors.push_back(e);
      }
    }
    Bitstring outcome;
    if (errors.empty()) {
      outcome = clean.draw(rng);
    } else {
      StateVector t = cache ? prefix[errors.front().gate + 1] : initial;
      std::size_t next = 0;
      std::size_t start = errors.front().gate;
      if (!cache) {
        for (std::size_t k = 0; k <= start; ++k) apply_gate(t, gates[k]);
      }
      for (std::size_t k = start;; ++k) {
        while (next < errors.size() && errors[next].gate == k) {
          for (int i = 0; i < gate_arity(gates[k].kind); ++i) apply_pauli(t, gates[k].qubits[i], errors[next].paulis[i]);
          ++next;
        }
        if (k + 1 >= n_gates) break;
        apply_gate(t, gates[k + 1]);
      }
      outcome = Sampler(t).draw(rng);
    }
    ++rec.counts[flip_readout(outcome, rec.n_qubits, noise.readout, rng)];
  }
  return rec;
}

}  // namespace qfddf
