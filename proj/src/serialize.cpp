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

#include "qfddf/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qfddf {

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("matrix: expected an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols)
      throw std::invalid_argument("matrix: ragged rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
  }
  return m;
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Vector vector_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("vector: expected an array");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j[i].get<double>();
  return v;
}

Json to_json(const DFDecomposition& dec) {
  Json j;
  j["n_orbitals"] = dec.n_orbitals;
  j["e_ext"] = dec.e_ext;
  j["one_body"] = {{"eigenvalues", vector_to_json(dec.one_body.eigenvalues)},
                   {"leaf", matrix_to_json(dec.one_body.leaf)},
                   {"determinant_fixed", dec.one_body.determinant_fixed}};
  j["layers"] = Json::array();
  for (const DFLayer& layer : dec.layers)
    j["layers"].push_back({{"leaf", matrix_to_json(layer.leaf)}, {"core", matrix_to_json(layer.core)}});
  return j;
}

DFDecomposition decomposition_from_json(const Json& j) {
  try {
    DFDecomposition dec;
    dec.n_orbitals = j.at("n_orbitals").get<int>();
    dec.e_ext = j.at("e_ext").get<double>();
    const Json& ob = j.at("one_body");
    dec.one_body.eigenvalues = vector_from_json(ob.at("eigenvalues"));
    dec.one_body.leaf = matrix_from_json(ob.at("leaf"));
    dec.one_body.determinant_fixed = ob.value("determinant_fixed", false);
    for (const Json& layer : j.at("layers"))
      dec.layers.push_back({matrix_from_json(layer.at("leaf")), matrix_from_json(layer.at("core"))});
    const int n = dec.n_orbitals;
    auto check = [n](const Matrix& m, const char* what) {
      if (m.rows() != n || m.cols() != n) throw std::invalid_argument(std::string("decomposition: bad shape of ") + what);
    };
    if (n < 1 || dec.one_body.eigenvalues.size() != n) throw std::invalid_argument("decomposition: bad one-body size");
    check(dec.one_body.leaf, "one-body leaf");
    for (const DFLayer& layer : dec.layers) {
      check(layer.leaf, "leaf");
      check(layer.core, "core");
    }
    return dec;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("decomposition: ") + e.what());
  }
}

Json to_json(const Circuit& circuit) {
  Json gates = Json::array();
  for (const Gate& g : circuit.gates()) {
    Json qubits = Json::array();
    for (int i = 0; i < gate_arity(g.kind); ++i) qubits.push_back(g.qubits[i]);
    Json entry = {{"kind", std::string(gate_name(g.kind))}, {"qubits", qubits}};
    if (g.angle != 0.0) entry["angle"] = g.angle;
    gates.push_back(std::move(entry));
  }
  return {{"n_qubits", circuit.n_qubits()}, {"global_phase", circuit.global_phase()}, {"gates", gates}};
}

Circuit circuit_from_json(const Json& j) {
  try {
    Circuit c(j.at("n_qubits").get<int>());
    c.add_global_phase(j.value("global_phase", 0.0));
    for (const Json& entry : j.at("gates")) {
      const auto kind = gate_from_name(entry.at("kind").get<std::string>());
      if (!kind) throw std::invalid_argument("circuit: unknown gate " + entry.at("kind").get<std::string>());
      Gate g;
      g.kind = *kind;
      const Json& qubits = entry.at("qubits");
      if (static_cast<int>(qubits.size()) != gate_arity(g.kind)) throw std::invalid_argument("circuit: wrong arity");
      for (std::size_t i = 0; i < qubits.size(); ++i) g.qubits[i] = qubits[i].get<int>();
      g.angle = entry.value("angle", 0.0);
      c.push(g);
    }
    return c;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("circuit: ") + e.what());
  }
}

Json to_json(const GateCounts& counts) {
  Json by_kind = Json::object();
  for (const auto& [name, c] : counts.by_kind) by_kind[name] = c;
  return {{"by_kind", by_kind}, {"cnot", counts.cnot()}, {"cnot_in_blocks", counts.cnot_in_blocks},
          {"total", counts.total()}};
}

namespace {

std::string hex(Bitstring b) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(b));
  return buf;
}

}  // namespace

Json to_json(const ShotRecord& shots) {
  Json counts = Json::object();
  for (const auto& [bits, c] : shots.counts) counts[hex(bits)] = c;
  return {{"n_qubits", shots.n_qubits}, {"total", shots.total}, {"counts", counts}};
}

ShotRecord shots_from_json(const Json& j) {
  try {
    ShotRecord rec;
    rec.n_qubits = j.at("n_qubits").get<int>();
    for (const auto& [key, value] : j.at("counts").items()) {
      const long c = value.get<long>();
      rec.counts[std::stoull(key, nullptr, 16)] += c;
      rec.total += c;
    }
    if (j.contains("total") && j["total"].get<long>() != rec.total)
      throw std::invalid_argument("shots: counts do not sum to total");
    return rec;
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("shots: ") + e.what());
  }
}

Json to_json(const NoiseModel& noise) { return {{"p1", noise.p1}, {"p2", noise.p2}, {"readout", noise.readout}}; }

NoiseModel noise_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("noise: expected an object");
  NoiseModel n;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "p1")
        n.p1 = value.get<double>();
      else if (key == "p2")
        n.p2 = value.get<double>();
      else if (key == "readout")
        n.readout = value.get<double>();
      else
        throw std::invalid_argument("noise: unknown key " + key);
    }
  } catch (const Json::exception& e) {
    throw std::invalid_argument(std::string("noise: ") + e.what());
  }
  n.validate();
  return n;
}

namespace {

Json complex_matrix_to_json(const ComplexMatrix& m) {
  return {{"real", matrix_to_json(m.real())}, {"imag", matrix_to_json(m.imag())}};
}

Json optional_json(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

Json to_json(const SubspaceMatrices& m) {
  return {{"S", complex_matrix_to_json(m.s)},
          {"H", complex_matrix_to_json(m.h)},
          {"S_stderr", matrix_to_json(m.s_stderr)},
          {"H_stderr", matrix_to_json(m.h_stderr)},
          {"hermiticity_deviation", m.hermiticity_deviation},
          {"toeplitz_deviation_S", m.toeplitz_deviation_s},
          {"toeplitz_deviation_H", m.toeplitz_deviation_h},
          {"shots_total", m.shots_total},
          {"shots_discarded", m.shots_discarded},
          {"discard_fraction", m.discard_fraction()},
          {"circuits", m.circuits}};
}

Json to_json(const Gaps& g) {
  return {{"S0", optional_json(g.s0)},     {"T1", optional_json(g.t1)},      {"S1", optional_json(g.s1)},
          {"S0T1", optional_json(g.s0t1)}, {"S0S1", optional_json(g.s0s1)}};
}

Json occupation_to_json(Bitstring bits) {
  Json out = Json::array();
  for (int k = 0; bits >> k; ++k)
    if (bits >> k & 1) out.push_back(k);
  return out;
}

Json to_json(const SpectrumResult& result) {
  Json runs = Json::array();
  for (const ReferenceRun& r : result.runs) {
    runs.push_back({{"reference", {{"alpha", occupation_to_json(r.reference.alpha)},
                                   {"beta", occupation_to_json(r.reference.beta)}}},
                    {"n_alpha", r.n_alpha},
                    {"n_beta", r.n_beta},
                    {"s_z", r.s_z},
                    {"closed_shell", r.closed_shell},
                    {"retained", r.spectrum.retained},
                    {"eigenvalues", vector_to_json(r.spectrum.eigenvalues)},
                    {"matrices", to_json(r.matrices)}});
  }
  Json labels = Json::array();
  for (int l : result.labels) labels.push_back(l);
  return {{"eigenvalues", vector_to_json(result.eigenvalues)},
          {"run_of_eigenvalue", labels},
          {"gaps", to_json(result.gaps)},
          {"eps_s", result.eps_s_used},
          {"runs", runs}};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::ios_base::failure("cannot write " + path);
    out << text;
    if (!out.flush()) throw std::ios_base::failure("cannot write " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    throw std::ios_base::failure("cannot write " + path);
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace qfddf
